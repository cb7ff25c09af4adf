#pragma once

#include <functional>
#include <vector>

#include "erdg/dg_solver.hpp"

namespace erdg {

/// dt = cfl * min over cells of inradius / max over nodes of (|v| + c).
/// Throws TimeStepError if the result is below 1e-14 or not finite.
double compute_dt(const Field& u, const Mesh& mesh, const IdealGas& gas, double cfl);

/// Shorten dt so that the step ends exactly on t_end or the next snapshot
/// time after t. A remainder within 1e-12 relative of a target is absorbed.
double clip_dt(double dt, double t, double t_end, const std::vector<double>& snapshots = {});

/// (u, dudt, stage) -> fills dudt. Stage is 0, 1 or 2.
using RhsEvaluator = std::function<void(const Field&, Field&, int)>;

/// Shu-Osher SSPRK33:
///   u1 = u + dt L(u)
///   u2 = 3/4 u + 1/4 (u1 + dt L(u1))
///   u' = 1/3 u + 2/3 (u2 + dt L(u2))
/// The net update is dt (L(u) + L(u1) + 4 L(u2)) / 6. A PositivityError from
/// a stage is rethrown with the stage index.
Field ssprk33_step(const Field& u, double dt, const RhsEvaluator& rhs);

/// Weights of the three stage derivatives in the net SSPRK33 update.
inline constexpr double kStageWeights[3] = {1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0};

struct StepReport {
  double dt = 0.0;
  StageReport stages[3];

  /// Stage-weighted averages matching the net update.
  double sigma_sum() const;
  double entropy_rate() const;
  double boundary_entropy_flux() const;
  ConsState boundary_flux() const;
  double lambda_ed_sum() const;  // stage-weighted sum over cells
  double lambda_er_sum() const;
  /// Largest rate + boundary flux - sigma over the three stages.
  double max_rate_bound_excess() const;
  double max_cell_inequality_excess() const;
};

/// One SSPRK33 step of the corrected DG operator, filling `report`.
Field step(const DGOperator& op, const Field& u, double dt, StepReport& report);

}  // namespace erdg
