#pragma once

#include <functional>
#include <string>
#include <vector>

#include "erdg/config.hpp"
#include "erdg/output.hpp"

namespace erdg {

struct RunOptions {
  bool write_files = true;
  std::ostream* log = nullptr;      // progress lines, if set
  long log_every = 100;             // steps between progress lines
  /// Called after each accepted step with the new diagnostics row.
  std::function<void(const DiagnosticsRow&)> on_step;
};

struct RunResult {
  std::vector<DiagnosticsRow> rows;  // row 0 is the initial state
  Field final_state;
  long steps = 0;
  int cells = 0;
  double mean_area = 0.0;
  double l2_error = -1.0;            // density L2 error, when an exact solution exists
  double max_rate_bound_excess = 0.0;
  double max_cell_inequality_excess = 0.0;
  double max_entropy_step_residual = 0.0;
  double max_conservation_residual = 0.0;
  double min_rho = 0.0;              // over all accepted steps
  double min_p = 0.0;
  double max_deviation = 0.0;        // max nodal |u - u0| (free-stream check)
  double symmetry_defect = -1.0;     // sedov only
  std::vector<std::string> files;
};

/// Startup (operators, cubature, filter), time loop and outputs.
RunResult run_simulation(const RunConfig& config, const RunOptions& options = {});

/// Runs `config` on every mesh and returns rows with L2 errors and EOCs.
std::vector<EocRow> convergence_study(const RunConfig& config, const std::vector<std::string>& meshes,
                                      const RunOptions& options = {});

}  // namespace erdg
