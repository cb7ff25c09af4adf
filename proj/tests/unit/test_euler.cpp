#include <cmath>
#include <random>

#include "doctest.h"

#include "erdg/error.hpp"
#include "erdg/euler.hpp"
#include "test_support.hpp"

using namespace erdg;
using erdg::testing::random_normal;
using erdg::testing::random_state;

namespace {

const IdealGas gas(1.4);

ConsState rotate(const ConsState& u, double c, double s) {
  return {u.rho, c * u.mx - s * u.my, s * u.mx + c * u.my, u.E};
}

double max_abs(const ConsState& a) {
  return std::max({std::abs(a.rho), std::abs(a.mx), std::abs(a.my), std::abs(a.E)});
}

}  // namespace

TEST_SUITE("euler_physics") {

TEST_CASE("state conversions") {
  const PrimState q = gas.to_prim({1.0, 0.0, 0.0, 2.5});
  CHECK(q.rho == 1.0);
  CHECK(q.p == doctest::Approx(1.0).epsilon(1e-15));
  const ConsState u = gas.to_cons({1.4, 3.0, 0.0, 1.0});
  CHECK(u.rho == doctest::Approx(1.4));
  CHECK(u.mx == doctest::Approx(4.2));
  CHECK(u.E == doctest::Approx(8.8));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const ConsState a = random_state(rng, gas);
    const ConsState b = gas.to_cons(gas.to_prim(a));
    CHECK(max_abs(a - b) <= 1e-14 * max_abs(a));
  }
}

TEST_CASE("non-physical states are rejected") {
  CHECK_THROWS_AS(gas.to_prim({-1.0, 0.0, 0.0, 1.0}), PositivityError);
  CHECK_THROWS_AS(gas.to_prim({1.0, 3.0, 0.0, 1.0}), PositivityError);
  CHECK_THROWS_AS(gas.to_cons({1.0, 0.0, 0.0, 0.0}), PositivityError);
  CHECK_THROWS_AS(IdealGas(1.0), ConfigError);
}

TEST_CASE("directional flux") {
  const ConsState rest = gas.to_cons({1.0, 0.0, 0.0, 1.0});
  const ConsState fx = gas.flux(rest, {1, 0});
  CHECK(fx == ConsState{0.0, 1.0, 0.0, 0.0});
  const ConsState fy = gas.flux(rest, {0, 1});
  CHECK(fy == ConsState{0.0, 0.0, 1.0, 0.0});
  const ConsState f = gas.flux(gas.to_cons({1.4, 3.0, 0.0, 1.0}), {1, 0});
  CHECK(f.rho == doctest::Approx(4.2));
  CHECK(f.mx == doctest::Approx(13.6));
  CHECK(f.my == 0.0);
  CHECK(f.E == doctest::Approx(29.4));
}

TEST_CASE("y flux has the correct components") {
  const ConsState u = gas.to_cons({2.0, 0.5, -1.5, 3.0});
  const ConsState g = gas.flux(u, {0, 1});
  CHECK(g.rho == doctest::Approx(2.0 * -1.5));
  CHECK(g.mx == doctest::Approx(2.0 * 0.5 * -1.5));
  CHECK(g.my == doctest::Approx(2.0 * 2.25 + 3.0));
  CHECK(g.E == doctest::Approx(-1.5 * (u.E + 3.0)));
}

TEST_CASE("rotational invariance") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const ConsState ul = random_state(rng, gas), ur = random_state(rng, gas);
    const Vec2 n = random_normal(rng);
    // Rotate the normal onto e_x, evaluate there and rotate back.
    const ConsState rl = rotate(ul, n.x, -n.y), rr = rotate(ur, n.x, -n.y);
    const ConsState f = gas.flux(ul, n);
    const ConsState fr = rotate(gas.flux(rl, {1, 0}), n.x, n.y);
    CHECK(max_abs(f - fr) <= 1e-12 * (1.0 + max_abs(f)));
    const ConsState h = gas.hll_flux(ul, ur, n);
    const ConsState hr = rotate(gas.hll_flux(rl, rr, {1, 0}), n.x, n.y);
    CHECK(max_abs(h - hr) <= 1e-12 * (1.0 + max_abs(h)));
    CHECK(gas.hll_entropy_flux(ul, ur, n) ==
          doctest::Approx(gas.hll_entropy_flux(rl, rr, {1, 0})).epsilon(1e-11).scale(1.0));
  }
}

TEST_CASE("entropy pair") {
  const EntropyPair unit = gas.entropy_pair(gas.to_cons({1.0, 0.7, -0.2, 1.0}), {0.6, 0.8});
  CHECK(unit.entropy == 0.0);
  CHECK(unit.flux == 0.0);
  const ConsState sod_r = gas.to_cons({0.125, 0.0, 0.0, 0.1});
  CHECK(gas.specific_entropy(sod_r) == doctest::Approx(std::log(0.1 * std::pow(0.125, -1.4))).epsilon(1e-14));
  // Frozen from an independent double-precision evaluation.
  CHECK(gas.specific_entropy(sod_r) == doctest::Approx(0.6086330653577243).epsilon(1e-13));
  CHECK(gas.entropy(sod_r) == doctest::Approx(-0.07607913316971554).epsilon(1e-13));
}

TEST_CASE("entropy variables match finite differences") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const ConsState u = random_state(rng, gas);
    const ConsState v = gas.entropy_variables(u);
    for (int k = 0; k < 4; ++k) {
      const double h = 1e-6 * std::max(1.0, std::abs(u[k]));
      ConsState up = u, um = u;
      up[k] += h;
      um[k] -= h;
      const double fd = (gas.entropy(up) - gas.entropy(um)) / (2 * h);
      CHECK(v[k] == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("entropy is midpoint convex") {
  std::mt19937_64 rng(6);
  int violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const ConsState a = random_state(rng, gas), b = random_state(rng, gas);
    if (gas.entropy(0.5 * (a + b)) > 0.5 * (gas.entropy(a) + gas.entropy(b)) + 1e-13) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("Davis wave speeds") {
  const ConsState rest = gas.to_cons({1.0, 0.0, 0.0, 1.0});
  const WaveSpeeds a = gas.wave_speeds(rest, rest, {1, 0});
  CHECK(a.left == doctest::Approx(-std::sqrt(1.4)));
  CHECK(a.right == doctest::Approx(std::sqrt(1.4)));
  const ConsState ffs = gas.to_cons({1.4, 3.0, 0.0, 1.0});
  const WaveSpeeds b = gas.wave_speeds(ffs, ffs, {1, 0});
  CHECK(b.left == doctest::Approx(2.0));
  CHECK(b.right == doctest::Approx(4.0));
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const ConsState ul = random_state(rng, gas), ur = random_state(rng, gas);
    const Vec2 n = random_normal(rng);
    const WaveSpeeds s = gas.wave_speeds(ul, ur, n);
    const WaveSpeeds m = gas.wave_speeds(ur, ul, {-n.x, -n.y});
    CHECK(s.left <= s.right);
    CHECK(m.left == doctest::Approx(-s.right));
    CHECK(m.right == doctest::Approx(-s.left));
  }
}

TEST_CASE("HLL flux") {
  const ConsState rest = gas.to_cons({1.0, 0.0, 0.0, 1.0});
  const ConsState f = gas.hll_flux(rest, rest, {0.6, 0.8});
  CHECK(max_abs(f - ConsState{0.0, 0.6, 0.8, 0.0}) < 1e-15);
  const ConsState fast = gas.to_cons({1.0, 5.0, 0.0, 1.0});
  const ConsState other = gas.to_cons({2.0, 4.0, 1.0, 3.0});
  CHECK(gas.hll_flux(fast, other, {1, 0}) == gas.flux(fast, {1, 0}));
  // Sod-like pair against a scalar evaluation of the HLL formula.
  const ConsState l = gas.to_cons({1.0, 0.0, 0.0, 1.0});
  const ConsState r = gas.to_cons({0.125, 0.0, 0.0, 0.1});
  const double cl = std::sqrt(1.4), cr = std::sqrt(1.4 * 0.1 / 0.125);
  const double al = std::min(-cl, -cr), ar = std::max(cl, cr);
  const double rho_flux = (ar * 0.0 - al * 0.0 + al * ar * (0.125 - 1.0)) / (ar - al);
  const double mom_flux = (ar * 1.0 - al * 0.1 + al * ar * 0.0) / (ar - al);
  const double e_flux = (al * ar * (0.1 / 0.4 - 1.0 / 0.4)) / (ar - al);
  const ConsState h = gas.hll_flux(l, r, {1, 0});
  CHECK(h.rho == doctest::Approx(rho_flux).epsilon(1e-14));
  CHECK(h.mx == doctest::Approx(mom_flux).epsilon(1e-14));
  CHECK(h.E == doctest::Approx(e_flux).epsilon(1e-14));
}

TEST_CASE("HLL flux is conservative across an edge") {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 1000; ++i) {
    const ConsState ul = random_state(rng, gas), ur = random_state(rng, gas);
    const Vec2 n = random_normal(rng);
    const ConsState a = gas.hll_flux(ul, ur, n);
    const ConsState b = gas.hll_flux(ur, ul, {-n.x, -n.y});
    CHECK(max_abs(a + b) <= 1e-13 * (1.0 + max_abs(a)));
  }
}

TEST_CASE("HLL mean state") {
  std::mt19937_64 rng(12);
  const ConsState u = random_state(rng, gas);
  CHECK(max_abs(gas.hll_mean_state(u, u, {1, 0}) - u) < 1e-13 * max_abs(u));
  const ConsState l = gas.to_cons({1.0, 0.0, 0.0, 1.0});
  const ConsState r = gas.to_cons({0.125, 0.0, 0.0, 0.1});
  CHECK(gas.is_physical(gas.hll_mean_state(l, r, {1, 0})));
  for (int i = 0; i < 1000; ++i) {
    const ConsState ul = random_state(rng, gas), ur = random_state(rng, gas);
    const Vec2 n = random_normal(rng);
    const WaveSpeeds a = gas.wave_speeds(ul, ur, n);
    const ConsState m = gas.hll_mean_state(ul, ur, n, a);
    const ConsState lhs = (a.right - a.left) * m;
    const ConsState rhs = a.right * ur - a.left * ul + gas.flux(ul, n) - gas.flux(ur, n);
    CHECK(max_abs(lhs - rhs) <= 1e-13 * (1.0 + max_abs(rhs)));
  }
  CHECK_THROWS_AS(gas.hll_mean_state(l, r, {1, 0}, {1.0, 1.0}), PositivityError);
}

TEST_CASE("HLL entropy flux") {
  std::mt19937_64 rng(14);
  const ConsState rest = gas.to_cons({1.3, 0.0, 0.0, 0.7});
  CHECK(gas.hll_entropy_flux(rest, rest, {1, 0}) == 0.0);
  for (int i = 0; i < 1000; ++i) {
    const ConsState ul = random_state(rng, gas), ur = random_state(rng, gas);
    const Vec2 n = random_normal(rng);
    CHECK(gas.hll_entropy_flux(ul, ul, n) == doctest::Approx(gas.entropy_pair(ul, n).flux).epsilon(1e-13).scale(1.0));
    CHECK(gas.hll_entropy_flux(ul, ur, n) ==
          doctest::Approx(-gas.hll_entropy_flux(ur, ul, {-n.x, -n.y})).epsilon(1e-12).scale(1.0));
  }
}

}  // TEST_SUITE
