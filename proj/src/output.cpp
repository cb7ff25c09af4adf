#include "erdg/output.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "erdg/error.hpp"

namespace erdg {

namespace {

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("io", "cannot write " + path);
  return out;
}

}  // namespace

std::vector<std::array<int, 3>> output_subtriangles(int degree) {
  if (degree == 1) return {{0, 1, 2}};
  // Node index at lattice point (i, j) of the cubic triangle.
  const int lattice[4][4] = {{0, 8, 7, 2}, {3, 9, 6, -1}, {4, 5, -1, -1}, {1, -1, -1, -1}};
  std::vector<std::array<int, 3>> tris;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; i + j < 3; ++j) {
      tris.push_back({lattice[i][j], lattice[i + 1][j], lattice[i][j + 1]});
      if (i + j < 2) tris.push_back({lattice[i + 1][j], lattice[i + 1][j + 1], lattice[i][j + 1]});
    }
  }
  return tris;
}

void write_vtk(std::ostream& out, const Field& u, const Mesh& mesh, const ReferenceElement& element,
               const IdealGas& gas, const std::string& title) {
  const int n = element.num_nodes();
  const int nc = mesh.num_cells();
  const auto sub = output_subtriangles(element.degree());
  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << std::setprecision(12);
  out << "POINTS " << std::size_t(nc) * n << " double\n";
  for (int c = 0; c < nc; ++c) {
    const auto v = mesh.cell_vertices(c);
    for (const Vec2& rs : element.nodes()) {
      const Vec2 x = v[0] + rs.x * (v[1] - v[0]) + rs.y * (v[2] - v[0]);
      out << x.x << ' ' << x.y << " 0\n";
    }
  }
  const std::size_t ntri = std::size_t(nc) * sub.size();
  out << "CELLS " << ntri << ' ' << 4 * ntri << '\n';
  for (int c = 0; c < nc; ++c) {
    const std::size_t base = std::size_t(c) * n;
    for (const auto& t : sub) out << "3 " << base + t[0] << ' ' << base + t[1] << ' ' << base + t[2] << '\n';
  }
  out << "CELL_TYPES " << ntri << '\n';
  for (std::size_t i = 0; i < ntri; ++i) out << "5\n";
  out << "POINT_DATA " << std::size_t(nc) * n << '\n';
  auto scalar = [&](const char* name, auto&& f) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (const ConsState& s : u.values) out << f(s) << '\n';
  };
  scalar("rho", [](const ConsState& s) { return s.rho; });
  scalar("pressure", [&](const ConsState& s) { return gas.pressure(s); });
  scalar("Mach", [&](const ConsState& s) { return std::hypot(s.mx, s.my) / s.rho / gas.sound_speed(s); });
  scalar("entropy", [&](const ConsState& s) { return gas.entropy(s); });
}

void write_vtk(const std::string& path, const Field& u, const Mesh& mesh,
               const ReferenceElement& element, const IdealGas& gas) {
  auto out = open_or_throw(path);
  std::ostringstream title;
  title << "erdg t=" << std::setprecision(10) << u.t;
  write_vtk(out, u, mesh, element, gas, title.str());
  if (!out) throw Error("io", "write failed: " + path);
}

void write_diagnostics(std::ostream& out, const std::vector<DiagnosticsRow>& rows) {
  out << "t,mass,mom_x,mom_y,energy,entropy,lambda_ed_sum,lambda_er_sum,min_rho,min_p,"
         "step,dt,sigma_sum,entropy_rate,boundary_entropy_flux,rate_bound_excess,"
         "cell_inequality_excess,entropy_step_residual,conservation_residual\n";
  out << std::setprecision(17);
  for (const auto& r : rows) {
    out << r.t << ',' << r.totals.rho << ',' << r.totals.mx << ',' << r.totals.my << ',' << r.totals.E << ','
        << r.entropy << ',' << r.lambda_ed_sum << ',' << r.lambda_er_sum << ',' << r.min_rho << ','
        << r.min_p << ',' << r.step << ',' << r.dt << ',' << r.sigma_sum << ',' << r.entropy_rate << ','
        << r.boundary_entropy_flux << ',' << r.rate_bound_excess << ',' << r.cell_inequality_excess << ','
        << r.entropy_step_residual << ',' << r.conservation_residual << '\n';
  }
}

void write_diagnostics(const std::string& path, const std::vector<DiagnosticsRow>& rows) {
  auto out = open_or_throw(path);
  write_diagnostics(out, rows);
}

void fill_eoc(std::vector<EocRow>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].h = std::sqrt(rows[i].mean_area);
    rows[i].eoc = i == 0 ? std::numeric_limits<double>::quiet_NaN()
                         : std::log(rows[i - 1].error / rows[i].error) / std::log(rows[i - 1].h / rows[i].h);
  }
}

void write_eoc_csv(std::ostream& out, const std::vector<EocRow>& rows) {
  out << "cells,mean_area,h,l2_error,eoc\n" << std::setprecision(10);
  for (const auto& r : rows) {
    out << r.cells << ',' << r.mean_area << ',' << r.h << ',' << r.error << ',';
    if (!std::isnan(r.eoc)) out << r.eoc;
    out << '\n';
  }
}

std::string format_eoc_table(const std::vector<EocRow>& rows) {
  std::ostringstream os;
  os << std::setw(8) << "cells" << std::setw(14) << "mean area" << std::setw(12) << "h" << std::setw(14)
     << "L2 error" << std::setw(8) << "EOC" << '\n';
  for (const auto& r : rows) {
    os << std::setw(8) << r.cells << std::setw(14) << std::setprecision(4) << std::scientific << r.mean_area
       << std::setw(12) << r.h << std::setw(14) << r.error << std::defaultfloat << std::fixed
       << std::setprecision(2) << std::setw(8);
    if (std::isnan(r.eoc)) {
      os << "-";
    } else {
      os << r.eoc;
    }
    os << std::defaultfloat << '\n';
  }
  return os.str();
}

}  // namespace erdg
