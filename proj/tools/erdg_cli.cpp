// erdg: entropy-rate corrected DG solver for the 2D Euler equations.
//
//   erdg run <config> [--output DIR] [--max-steps N] [--quiet]
//   erdg convergence <config> <mesh>... [--output DIR]
//   erdg inspect-mesh <mesh base>
//
// On failure prints `error: code=<code> message=<text>` to stderr and exits 1.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "erdg/driver.hpp"
#include "erdg/error.hpp"
#include "erdg/mesh.hpp"

namespace {

int fail(const std::string& code, const std::string& message) {
  std::string flat = message;
  for (char& c : flat) {
    if (c == '\n') c = ' ';
  }
  std::cerr << "error: code=" << code << " message=" << flat << std::endl;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy-rate corrected DG solver for the 2D Euler equations"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output;
  long max_steps = -1;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "run one simulation");
  run->add_option("config", config_path, "configuration file")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--output", output, "output directory (overrides the config)");
  run->add_option("--max-steps", max_steps, "stop after this many steps");
  run->add_flag("-q,--quiet", quiet, "no progress output");

  std::vector<std::string> meshes;
  auto* conv = app.add_subcommand("convergence", "L2 errors and EOC over a mesh sequence");
  conv->add_option("config", config_path, "configuration file")->required()->check(CLI::ExistingFile);
  conv->add_option("meshes", meshes, "Triangle mesh base names, coarse to fine")->required();
  conv->add_option("-o,--output", output, "output directory (overrides the config)");
  conv->add_flag("-q,--quiet", quiet, "no progress output");

  std::string mesh_base;
  auto* inspect = app.add_subcommand("inspect-mesh", "load a mesh and print diagnostics");
  inspect->add_option("mesh", mesh_base, "Triangle base name (without extension)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return fail("usage", e.what());
  }

  try {
    erdg::RunOptions opt;
    if (!quiet) opt.log = &std::cout;
    if (*run) {
      erdg::RunConfig cfg = erdg::load_config(config_path);
      if (!output.empty()) cfg.output = output;
      if (max_steps >= 0) cfg.max_steps = max_steps;
      const auto r = erdg::run_simulation(cfg, opt);
      std::cout << "finished: steps=" << r.steps << " t=" << r.final_state.t << " min_rho=" << r.min_rho
                << " min_p=" << r.min_p << " max_rate_bound_excess=" << r.max_rate_bound_excess;
      if (r.l2_error >= 0.0) std::cout << " l2_error=" << r.l2_error;
      if (r.symmetry_defect >= 0.0) std::cout << " symmetry_defect=" << r.symmetry_defect;
      std::cout << '\n';
      for (const auto& f : r.files) std::cout << "wrote " << f << '\n';
    } else if (*conv) {
      erdg::RunConfig cfg = erdg::load_config(config_path);
      if (!output.empty()) cfg.output = output;
      opt.log_every = 0;
      const auto rows = erdg::convergence_study(cfg, meshes, opt);
      std::cout << erdg::format_eoc_table(rows);
    } else if (*inspect) {
      const erdg::Mesh mesh = erdg::read_triangle_mesh(mesh_base);
      std::cout << erdg::format_report(erdg::validate_mesh(mesh));
    }
  } catch (const erdg::Error& e) {
    return fail(e.code(), e.what());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }
  return 0;
}
