#include "erdg/driver.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>

#include "json.hpp"

#include "erdg/cases.hpp"
#include "erdg/cubature_filter.hpp"
#include "erdg/error.hpp"
#include "erdg/sampling.hpp"
#include "erdg/time_integration.hpp"

namespace erdg {

namespace {

ConsState abs_totals(const DGOperator& op, const Field& u) {
  ConsState s{};
  const Vector& w = op.filter().weights;
  for (int c = 0; c < u.num_cells; ++c) {
    const double det = op.mesh().geometry(c).det_jacobian;
    for (int k = 0; k < u.nodes_per_cell; ++k) {
      const ConsState& v = u.at(c, k);
      s += (det * w(k)) * ConsState{std::abs(v.rho), std::abs(v.mx), std::abs(v.my), std::abs(v.E)};
    }
  }
  return s;
}

void fill_state_columns(DiagnosticsRow& r, const DGOperator& op, const Field& u) {
  r.t = u.t;
  r.totals = op.totals(u);
  r.entropy = op.total_entropy(u);
  r.min_rho = std::numeric_limits<double>::infinity();
  r.min_p = std::numeric_limits<double>::infinity();
  for (const ConsState& s : u.values) {
    r.min_rho = std::min(r.min_rho, s.rho);
    r.min_p = std::min(r.min_p, op.gas().pressure(s));
  }
}

std::string snapshot_name(const RunConfig& cfg, int index) {
  return cfg.case_name + "_p" + std::to_string(cfg.degree) + "_" + std::to_string(index) + ".vtk";
}

void write_summary(const std::string& path, const RunConfig& cfg, const RunResult& r) {
  nlohmann::json j;
  j["case"] = cfg.case_name;
  j["mesh"] = cfg.mesh;
  j["degree"] = cfg.degree;
  j["cells"] = r.cells;
  j["steps"] = r.steps;
  j["t_final"] = r.final_state.t;
  j["min_rho"] = r.min_rho;
  j["min_p"] = r.min_p;
  j["max_rate_bound_excess"] = r.max_rate_bound_excess;
  j["max_cell_inequality_excess"] = r.max_cell_inequality_excess;
  j["max_entropy_step_residual"] = r.max_entropy_step_residual;
  j["max_conservation_residual"] = r.max_conservation_residual;
  j["max_deviation"] = r.max_deviation;
  if (r.l2_error >= 0.0) j["l2_error"] = r.l2_error;
  if (r.symmetry_defect >= 0.0) j["symmetry_defect"] = r.symmetry_defect;
  std::ofstream out(path);
  if (!out) throw Error("io", "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace

RunResult run_simulation(const RunConfig& cfg, const RunOptions& opt) {
  const Mesh mesh = read_triangle_mesh(cfg.mesh);
  validate_mesh(mesh);
  const ReferenceElement element(cfg.degree);
  const PositiveCubature cubature = pocs_cubature(element);
  const FilterGenerator filter = build_filter_generator(element, cubature);
  const IdealGas gas(cfg.gamma);
  const CaseSetup setup = make_case(cfg);
  const DGOperator op(mesh, element, filter, make_boundary_map(cfg, setup, gas), gas);

  RunResult res;
  res.cells = mesh.num_cells();
  double area = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) area += mesh.area(c);
  res.mean_area = area / mesh.num_cells();

  const std::filesystem::path outdir(cfg.output);
  if (opt.write_files) std::filesystem::create_directories(outdir);
  int snapshot_index = 0;
  auto snapshot = [&](const Field& u) {
    if (!opt.write_files || !cfg.write_vtk) return;
    const std::string path = (outdir / snapshot_name(cfg, snapshot_index++)).string();
    write_vtk(path, u, mesh, element, gas);
    res.files.push_back(path);
  };

  Field u = interpolate(setup.initial, mesh, element, gas);
  const Field u0 = u;
  op.check_physical(u, "initial state");
  DiagnosticsRow row0;
  fill_state_columns(row0, op, u);
  res.rows.push_back(row0);
  res.min_rho = row0.min_rho;
  res.min_p = row0.min_p;
  snapshot(u);

  auto finish_files = [&] {
    if (!opt.write_files) return;
    const std::string diag = (outdir / "diagnostics.csv").string();
    write_diagnostics(diag, res.rows);
    res.files.push_back(diag);
  };

  try {
    StepReport report;
    while (u.t < cfg.t_end && (cfg.max_steps < 0 || res.steps < cfg.max_steps)) {
      const double dt = clip_dt(compute_dt(u, mesh, gas, cfg.cfl), u.t, cfg.t_end, cfg.snapshots);
      Field next = step(op, u, dt, report);
      // Land exactly on the targets despite rounding in t + dt.
      if (std::abs(next.t - cfg.t_end) <= 1e-12 * cfg.t_end) next.t = cfg.t_end;
      for (double s : cfg.snapshots) {
        if (std::abs(next.t - s) <= 1e-12 * std::max(1.0, s)) next.t = s;
      }

      DiagnosticsRow r;
      fill_state_columns(r, op, next);
      r.step = ++res.steps;
      r.dt = dt;
      r.lambda_ed_sum = report.lambda_ed_sum();
      r.lambda_er_sum = report.lambda_er_sum();
      r.sigma_sum = report.sigma_sum();
      r.entropy_rate = report.entropy_rate();
      r.boundary_entropy_flux = report.boundary_entropy_flux();
      r.rate_bound_excess = report.max_rate_bound_excess();
      r.cell_inequality_excess = report.max_cell_inequality_excess();
      const DiagnosticsRow& prev = res.rows.back();
      r.entropy_step_residual = r.entropy - prev.entropy + dt * r.boundary_entropy_flux;
      const ConsState bflux = report.boundary_flux();
      const ConsState scale_old = abs_totals(op, u);
      const ConsState scale_new = abs_totals(op, next);
      // Both momentum components share one scale so a vanishing component is not
      // measured against its own round-off.
      const double mom_scale = std::max(scale_old.mx + scale_old.my, scale_new.mx + scale_new.my);
      for (int i = 0; i < 4; ++i) {
        const double scale = (i == 1 || i == 2) ? mom_scale : std::max(scale_old[i], scale_new[i]);
        const double resid = r.totals[i] - prev.totals[i] + dt * bflux[i];
        if (scale > 0.0) r.conservation_residual = std::max(r.conservation_residual, std::abs(resid) / scale);
      }

      res.max_rate_bound_excess = res.steps == 1 ? r.rate_bound_excess
                                                 : std::max(res.max_rate_bound_excess, r.rate_bound_excess);
      res.max_cell_inequality_excess = res.steps == 1
                                           ? r.cell_inequality_excess
                                           : std::max(res.max_cell_inequality_excess, r.cell_inequality_excess);
      res.max_entropy_step_residual = res.steps == 1
                                          ? r.entropy_step_residual
                                          : std::max(res.max_entropy_step_residual, r.entropy_step_residual);
      res.max_conservation_residual = std::max(res.max_conservation_residual, r.conservation_residual);
      res.min_rho = std::min(res.min_rho, r.min_rho);
      res.min_p = std::min(res.min_p, r.min_p);
      res.rows.push_back(r);
      u = std::move(next);

      if (opt.on_step) opt.on_step(r);
      if (opt.log && opt.log_every > 0 && res.steps % opt.log_every == 0) {
        *opt.log << "step " << res.steps << " t=" << u.t << " dt=" << dt << " entropy=" << r.entropy
                 << " min_rho=" << r.min_rho << " min_p=" << r.min_p << std::endl;
      }
      for (double s : cfg.snapshots) {
        if (u.t == s && s < cfg.t_end) snapshot(u);
      }
    }
  } catch (...) {
    finish_files();
    throw;
  }

  for (std::size_t i = 0; i < u.values.size(); ++i) {
    for (int k = 0; k < 4; ++k) {
      res.max_deviation = std::max(res.max_deviation, std::abs(u.values[i][k] - u0.values[i][k]));
    }
  }
  if (setup.exact) {
    const auto& exact = *setup.exact;
    const double t = u.t;
    res.l2_error = density_l2_error(u, mesh, element, [&](Vec2 x) { return exact(x, t).rho; });
  }
  if (cfg.case_kind == CaseKind::sedov) {
    res.symmetry_defect = point_symmetry_defect(u, mesh, element, filter.weights);
  }
  snapshot(u);
  res.final_state = std::move(u);
  finish_files();
  if (opt.write_files) {
    const std::string summary = (outdir / "summary.json").string();
    write_summary(summary, cfg, res);
    res.files.push_back(summary);
  }
  return res;
}

std::vector<EocRow> convergence_study(const RunConfig& cfg, const std::vector<std::string>& meshes,
                                      const RunOptions& opt) {
  if (meshes.empty()) throw ConfigError("convergence study needs at least one mesh");
  std::vector<EocRow> rows;
  for (std::size_t i = 0; i < meshes.size(); ++i) {
    RunConfig level = cfg;
    level.mesh = meshes[i];
    level.output = (std::filesystem::path(cfg.output) / ("level_" + std::to_string(i + 1))).string();
    const RunResult r = run_simulation(level, opt);
    if (r.l2_error < 0.0) throw ConfigError("case '" + cfg.case_name + "' has no exact solution");
    rows.push_back({r.cells, r.mean_area, 0.0, r.l2_error, 0.0});
    if (opt.log) *opt.log << "level " << i + 1 << ": " << r.cells << " cells, L2 error " << r.l2_error << std::endl;
  }
  fill_eoc(rows);
  if (opt.write_files) {
    std::filesystem::create_directories(cfg.output);
    std::ofstream csv(std::filesystem::path(cfg.output) / "eoc.csv");
    write_eoc_csv(csv, rows);
    std::ofstream txt(std::filesystem::path(cfg.output) / "eoc.txt");
    txt << format_eoc_table(rows);
  }
  return rows;
}

}  // namespace erdg
