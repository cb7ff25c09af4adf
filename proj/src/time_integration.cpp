#include "erdg/time_integration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "erdg/error.hpp"

namespace erdg {

namespace {

// out = a u + b (v + dt w)
void combine(Field& out, double a, const Field& u, double b, const Field& v, double dt, const Field& w) {
  out = Field(u.num_cells, u.nodes_per_cell);
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    ConsState s = v.values[i];
    s += dt * w.values[i];
    out.values[i] = a * u.values[i] + b * s;
  }
}

template <class F>
double weighted(const StageReport (&s)[3], F&& f) {
  double acc = 0.0;
  for (int k = 0; k < 3; ++k) acc += kStageWeights[k] * f(s[k]);
  return acc;
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

double compute_dt(const Field& u, const Mesh& mesh, const IdealGas& gas, double cfl) {
  if (!(cfl > 0.0)) throw ConfigError("cfl must be positive");
  double dt = std::numeric_limits<double>::infinity();
  for (int c = 0; c < u.num_cells; ++c) {
    double smax = 0.0;
    for (int l = 0; l < u.nodes_per_cell; ++l) {
      const ConsState& s = u.at(c, l);
      const double v = std::hypot(s.mx, s.my) / s.rho;
      smax = std::max(smax, v + gas.sound_speed(s));
    }
    dt = std::min(dt, mesh.geometry(c).inradius / smax);
  }
  dt *= cfl;
  if (!(dt >= 1e-14) || !std::isfinite(dt)) {
    std::ostringstream msg;
    msg << "time step underflow (dt = " << dt << ")";
    throw TimeStepError(msg.str());
  }
  return dt;
}

double clip_dt(double dt, double t, double t_end, const std::vector<double>& snapshots) {
  double target = t_end;
  for (double s : snapshots) {
    if (s > t * (1.0 + 1e-14) + 1e-300 && s < target) target = s;
  }
  const double remaining = target - t;
  if (remaining <= dt * (1.0 + 1e-12)) return remaining;
  return dt;
}

Field ssprk33_step(const Field& u, double dt, const RhsEvaluator& rhs) {
  Field k, u1, u2, out;
  auto stage = [&](const Field& x, int s) {
    try {
      rhs(x, k, s);
    } catch (const PositivityError& e) {
      throw PositivityError(std::string(e.what()) + " (Runge-Kutta stage " + std::to_string(s + 1) + ")");
    }
  };
  stage(u, 0);
  combine(u1, 0.0, u, 1.0, u, dt, k);
  u1.t = u.t + dt;
  stage(u1, 1);
  combine(u2, 0.75, u, 0.25, u1, dt, k);
  u2.t = u.t + 0.5 * dt;
  stage(u2, 2);
  combine(out, 1.0 / 3.0, u, 2.0 / 3.0, u2, dt, k);
  out.t = u.t + dt;
  return out;
}

double StepReport::sigma_sum() const {
  return weighted(stages, [](const StageReport& s) { return s.sigma_sum; });
}
double StepReport::entropy_rate() const {
  return weighted(stages, [](const StageReport& s) { return s.entropy_rate; });
}
double StepReport::boundary_entropy_flux() const {
  return weighted(stages, [](const StageReport& s) { return s.boundary_entropy_flux; });
}
ConsState StepReport::boundary_flux() const {
  ConsState f{};
  for (int k = 0; k < 3; ++k) f += kStageWeights[k] * stages[k].boundary_flux;
  return f;
}
double StepReport::lambda_ed_sum() const {
  return weighted(stages, [](const StageReport& s) { return sum(s.lambda_ed); });
}
double StepReport::lambda_er_sum() const {
  return weighted(stages, [](const StageReport& s) { return sum(s.lambda_er); });
}
double StepReport::max_rate_bound_excess() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& s : stages) m = std::max(m, s.rate_bound_excess());
  return m;
}
double StepReport::max_cell_inequality_excess() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& s : stages) m = std::max(m, s.max_cell_inequality_excess);
  return m;
}

Field step(const DGOperator& op, const Field& u, double dt, StepReport& report) {
  report.dt = dt;
  Field next = ssprk33_step(u, dt, [&](const Field& x, Field& k, int s) {
    op.evaluate(x, k, &report.stages[s]);
  });
  op.check_physical(next, "state after step");
  return next;
}

}  // namespace erdg
