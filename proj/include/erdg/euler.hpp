#pragma once

// Ideal-gas Euler algebra: state conversions, directional fluxes, the
// entropy pair U = -rho S, S = log(p rho^-gamma), signal-speed bounds and the
// HLL flux / mean state / entropy flux built on them.
//
// Every routine here is pure and inline; they sit on the hot path of the
// edge and node loops.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "erdg/error.hpp"
#include "erdg/state.hpp"

namespace erdg {

struct WaveSpeeds {
  double left = 0.0;   // a_l
  double right = 0.0;  // a_r
};

struct EntropyPair {
  double entropy = 0.0;  // U(u)
  double flux = 0.0;     // F(u) . n
};

class IdealGas {
public:
  explicit IdealGas(double gamma = 1.4) : gamma_(gamma) {
    if (!(gamma > 1.0)) throw ConfigError("adiabatic exponent must exceed 1");
  }

  double gamma() const { return gamma_; }

  double pressure(const ConsState& u) const {
    return (gamma_ - 1.0) * (u.E - 0.5 * (u.mx * u.mx + u.my * u.my) / u.rho);
  }

  bool is_physical(const ConsState& u) const {
    return u.rho > 0.0 && std::isfinite(u.E) && pressure(u) > 0.0;
  }

  /// Throws PositivityError naming `where` if u is not admissible.
  void require_physical(const ConsState& u, const char* where = "state") const {
    if (!is_physical(u)) {
      std::ostringstream msg;
      msg << "non-physical " << where << ": rho=" << u.rho << " p=" << pressure(u);
      throw PositivityError(msg.str());
    }
  }

  PrimState to_prim(const ConsState& u) const {
    require_physical(u);
    return {u.rho, u.mx / u.rho, u.my / u.rho, pressure(u)};
  }

  ConsState to_cons(const PrimState& q) const {
    if (!(q.rho > 0.0 && q.p > 0.0)) {
      std::ostringstream msg;
      msg << "non-physical primitive state: rho=" << q.rho << " p=" << q.p;
      throw PositivityError(msg.str());
    }
    return {q.rho, q.rho * q.vx, q.rho * q.vy,
            q.p / (gamma_ - 1.0) + 0.5 * q.rho * (q.vx * q.vx + q.vy * q.vy)};
  }

  double sound_speed(const ConsState& u) const {
    return std::sqrt(gamma_ * pressure(u) / u.rho);
  }

  /// f(u) n_x + g(u) n_y
  ConsState flux(const ConsState& u, Vec2 n) const {
    const double p = pressure(u);
    const double vn = (u.mx * n.x + u.my * n.y) / u.rho;
    return {u.rho * vn, u.mx * vn + p * n.x, u.my * vn + p * n.y, vn * (u.E + p)};
  }

  /// Physical entropy S = log(p rho^-gamma).
  double specific_entropy(const ConsState& u) const {
    return std::log(pressure(u)) - gamma_ * std::log(u.rho);
  }

  double entropy(const ConsState& u) const { return -u.rho * specific_entropy(u); }

  EntropyPair entropy_pair(const ConsState& u, Vec2 n) const {
    const double U = entropy(u);
    const double vn = (u.mx * n.x + u.my * n.y) / u.rho;
    return {U, vn * U};
  }

  /// dU/du.
  ConsState entropy_variables(const ConsState& u) const {
    const double p = pressure(u);
    const double S = std::log(p) - gamma_ * std::log(u.rho);
    const double gm1 = gamma_ - 1.0;
    const double beta = gm1 / p;  // (gamma - 1) / p
    const double kinetic = 0.5 * (u.mx * u.mx + u.my * u.my) / u.rho;
    return {gamma_ - S - beta * kinetic, beta * u.mx, beta * u.my, -beta * u.rho};
  }

  /// Davis-type bounds on the fastest left and right moving signals.
  WaveSpeeds wave_speeds(const ConsState& ul, const ConsState& ur, Vec2 n) const {
    const double vl = (ul.mx * n.x + ul.my * n.y) / ul.rho;
    const double vr = (ur.mx * n.x + ur.my * n.y) / ur.rho;
    const double cl = sound_speed(ul);
    const double cr = sound_speed(ur);
    return {std::min(vl - cl, vr - cr), std::max(vl + cl, vr + cr)};
  }

  /// Mean state of the HLL approximate Riemann solution.
  ConsState hll_mean_state(const ConsState& ul, const ConsState& ur, Vec2 n,
                           WaveSpeeds a) const {
    const double span = a.right - a.left;
    if (!(span > 0.0)) throw PositivityError("degenerate HLL fan (a_l == a_r)");
    ConsState m = a.right * ur - a.left * ul + flux(ul, n) - flux(ur, n);
    m *= 1.0 / span;
    return m;
  }

  ConsState hll_mean_state(const ConsState& ul, const ConsState& ur, Vec2 n) const {
    return hll_mean_state(ul, ur, n, wave_speeds(ul, ur, n));
  }

  ConsState hll_flux(const ConsState& ul, const ConsState& ur, Vec2 n, WaveSpeeds a) const {
    if (a.left >= 0.0) return flux(ul, n);
    if (a.right <= 0.0) return flux(ur, n);
    const double span = a.right - a.left;
    ConsState f = a.right * flux(ul, n) - a.left * flux(ur, n) +
                  (a.left * a.right) * (ur - ul);
    f *= 1.0 / span;
    return f;
  }

  ConsState hll_flux(const ConsState& ul, const ConsState& ur, Vec2 n) const {
    return hll_flux(ul, ur, n, wave_speeds(ul, ur, n));
  }

  /// Entropy flux of the HLL fan with the same signal speeds as hll_flux.
  double hll_entropy_flux(const ConsState& ul, const ConsState& ur, Vec2 n,
                          WaveSpeeds a) const {
    const EntropyPair l = entropy_pair(ul, n);
    const EntropyPair r = entropy_pair(ur, n);
    if (a.left >= 0.0) return l.flux;
    if (a.right <= 0.0) return r.flux;
    return (a.right * l.flux - a.left * r.flux + a.left * a.right * (r.entropy - l.entropy)) /
           (a.right - a.left);
  }

  double hll_entropy_flux(const ConsState& ul, const ConsState& ur, Vec2 n) const {
    return hll_entropy_flux(ul, ur, n, wave_speeds(ul, ur, n));
  }

private:
  double gamma_;
};

}  // namespace erdg
