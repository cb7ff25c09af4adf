#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"

#include "erdg/cubature_filter.hpp"
#include "erdg/error.hpp"
#include "erdg/euler.hpp"
#include "../oracles/reference_oracle_values.hpp"
#include "test_support.hpp"

using namespace erdg;
using erdg::testing::discretization;
using erdg::testing::max_abs_diff;

namespace {

double min_entry_pade(const Matrix& L, double t) {
  const Matrix e = (t * L).exp();
  return e.minCoeff();
}

}  // namespace

TEST_SUITE("cubature_filter") {

TEST_CASE("p=1 exact start is a fixed point") {
  const ReferenceElement el(1);
  const PositiveCubature c = pocs_cubature(el, Vector::Constant(3, 1.0 / 6.0));
  CHECK(c.iterations == 0);
}

TEST_CASE("p=1 from a vertex start converges to 1/6") {
  const ReferenceElement el(1);
  const PositiveCubature c = pocs_cubature(el, Vector::Unit(3, 0));
  for (int k = 0; k < 3; ++k) CHECK(std::abs(c.weights(k) - 1.0 / 6.0) < 1e-13);
}

TEST_CASE("p=3 weights are positive and exact") {
  const ReferenceElement el(3);
  const PositiveCubature c = pocs_cubature(el, Vector::Constant(10, 1.0 / 20.0));
  CHECK(c.weights.minCoeff() > 0.0);
  CHECK(c.weights.sum() == doctest::Approx(0.5).epsilon(1e-12));
  for (int k = 0; k < 10; ++k) {
    CHECK(std::abs(el.eval_basis(el.nodes()[k]).dot(Vector::Unit(10, k)) - 1.0) < 1e-12);
    CHECK(std::abs(c.weights(k) - oracle::basis_integrals_p3[k]) < 1e-11);
  }
  // Exact for every monomial of degree <= 3, not only the basis.
  for (auto [a, b] : monomial_exponents(3)) {
    double s = 0.0;
    for (int l = 0; l < 10; ++l) s += c.weights(l) * std::pow(el.nodes()[l].x, a) * std::pow(el.nodes()[l].y, b);
    CHECK(std::abs(s - monomial_integral(a, b)) < 1e-11);
  }
}

TEST_CASE("non-convergence aborts") {
  const ReferenceElement el(1);
  PocsOptions o;
  o.max_iter = 0;
  try {
    pocs_cubature(el, Vector::Constant(3, 5.0), o);
    FAIL("expected StartupError");
  } catch (const StartupError& e) {
    CHECK(std::string(e.what()).find("moment residual") != std::string::npos);
  }
}

TEST_CASE("Laplacian generator") {
  for (int p : {1, 3}) {
    const ReferenceElement el(p);
    const Matrix L = laplacian_generator(el);
    const int n = el.num_nodes();
    CHECK((el.gradient_gramian() * Vector::Ones(n)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((L * Vector::Ones(n)).cwiseAbs().maxCoeff() < 1e-11);
    // -L is similar to M^-1/2 Q M^-1/2: nonnegative spectrum, one zero.
    const Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(el.gradient_gramian(), el.mass());
    const Vector ev = es.eigenvalues();
    CHECK(std::abs(ev(0)) < 1e-10);
    CHECK(ev(1) > 1e-6);
  }
}

TEST_CASE("matrix exponential") {
  CHECK(max_abs_diff(matrix_exponential(Matrix::Zero(4, 4)), Matrix::Identity(4, 4)) == 0.0);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.5;
  d(1, 1) = -40.0;
  const Matrix e = matrix_exponential(d);
  CHECK(e(0, 0) == doctest::Approx(std::exp(1.5)).epsilon(1e-13));
  CHECK(e(1, 1) == doctest::Approx(std::exp(-40.0)).epsilon(1e-10));
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a(3, 3);
    for (int i = 0; i < 9; ++i) a(i / 3, i % 3) = 2.0 * g(rng);
    CHECK(max_abs_diff(matrix_exponential(a) * matrix_exponential(-a), Matrix::Identity(3, 3)) < 1e-9);
    const Matrix pade = a.exp();
    CHECK(max_abs_diff(matrix_exponential(a), pade) <= 1e-10 * pade.cwiseAbs().maxCoeff());
  }
  for (int p : {1, 3}) {
    const Matrix L = laplacian_generator(ReferenceElement(p));
    for (double t : {1e-3, 0.1, 1.0, 7.0}) {
      const Matrix pade = (t * L).exp();
      CHECK(max_abs_diff(matrix_exponential(t * L), pade) <= 1e-10 * pade.cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("phi1 is consistent with the exponential") {
  const Matrix L = laplacian_generator(ReferenceElement(3));
  const Matrix a = 0.3 * L;
  CHECK(max_abs_diff(Matrix::Identity(10, 10) + phi1(a) * a, matrix_exponential(a)) < 1e-12);
  CHECK(max_abs_diff(phi1(Matrix::Zero(3, 3)), Matrix::Identity(3, 3)) == 0.0);
}

TEST_CASE("positivity time of the zero generator is t_min") {
  CHECK(find_positivity_time(Matrix::Zero(3, 3)) == PositivityTimeOptions{}.t_min);
}

TEST_CASE("p=1 generator is Metzler, so every filter time is positive") {
  const Matrix L = laplacian_generator(ReferenceElement(1));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j) CHECK(L(i, j) >= -1e-14);
    }
  }
  const double t = find_positivity_time(L);
  CHECK(t == PositivityTimeOptions{}.t_min);
  // Independent oracle: dense sampling of exp(tL) with the Pade exponential.
  for (double s = 1e-8; s < 1e3; s *= 1.7) CHECK(min_entry_pade(L, s) >= -1e-12);
}

TEST_CASE("p=3 positivity time is the first nonnegative time") {
  const Matrix L = laplacian_generator(ReferenceElement(3));
  const double t = find_positivity_time(L);
  CHECK(min_entry_pade(L, t) >= -1e-12);
  CHECK(min_entry_pade(L, 0.999 * t) < -1e-12);
  CHECK(min_entry_pade(L, 0.5 * t) < -1e-12);
  // Dense sampling below t finds no earlier nonnegative time.
  for (double s = 1e-4; s < 0.999 * t; s *= 1.05) CHECK(min_entry_pade(L, s) < -1e-12);
  CHECK(t == doctest::Approx(0.127259).epsilon(1e-5));
}

TEST_CASE("filter conditions") {
  for (int p : {1, 3}) {
    CAPTURE(p);
    const auto& d = discretization(p);
    const FilterGenerator& f = d.filter;
    const int n = d.element.num_nodes();
    const Vector one = Vector::Ones(n);
    CHECK(f.filter.minCoeff() >= -1e-12);
    CHECK((f.filter * one - one).cwiseAbs().maxCoeff() < 1e-11);
    CHECK((f.filter.transpose() * f.weights - f.weights).cwiseAbs().maxCoeff() < 1e-11);
    CHECK((f.generator * one).cwiseAbs().maxCoeff() < 1e-11);
    CHECK((f.generator.transpose() * f.weights).cwiseAbs().maxCoeff() < 1e-11);
    const Matrix c_pade = (f.positivity_time * f.laplacian).exp();
    CHECK(max_abs_diff(f.generator, (c_pade - Matrix::Identity(n, n)) / f.positivity_time) <
          1e-6 * f.generator.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("filter dissipates convex functions") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  const IdealGas gas;
  for (int p : {1, 3}) {
    const auto& d = discretization(p);
    const Matrix& C = d.filter.filter;
    const Vector& w = d.filter.weights;
    const int n = d.element.num_nodes();
    int violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      Vector u(n);
      for (int k = 0; k < n; ++k) u(k) = g(rng);
      const Vector cu = C * u;
      if (w.dot(cu.cwiseAbs2()) > w.dot(u.cwiseAbs2()) + 1e-12) ++violations;

      std::vector<ConsState> s(n);
      for (auto& x : s) x = erdg::testing::random_state(rng, gas);
      double before = 0.0, after = 0.0;
      for (int k = 0; k < n; ++k) {
        ConsState cs{};
        for (int l = 0; l < n; ++l) cs += C(k, l) * s[l];
        before += w(k) * gas.entropy(s[k]);
        after += w(k) * gas.entropy(cs);
      }
      if (after > before + 1e-12 * (1.0 + std::abs(before))) ++violations;
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("subgradient bound on the dissipativity") {
  std::mt19937_64 rng(9);
  const IdealGas gas;
  const auto& d = discretization(3);
  const Matrix& G = d.filter.generator;
  const Vector& w = d.filter.weights;
  const double dt = d.filter.positivity_time;
  auto entropy = [&](const std::vector<ConsState>& s) {
    double e = 0.0;
    for (int k = 0; k < 10; ++k) e += w(k) * gas.entropy(s[k]);
    return e;
  };
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ConsState> s(10), gs(10);
    for (auto& x : s) x = erdg::testing::random_state(rng, gas);
    double dissip = 0.0;
    for (int k = 0; k < 10; ++k) {
      gs[k] = ConsState{};
      for (int l = 0; l < 10; ++l) gs[k] += G(k, l) * s[l];
      dissip += w(k) * dot(gas.entropy_variables(s[k]), gs[k]);
    }
    auto shifted = [&](double lam) {
      std::vector<ConsState> r(10);
      for (int k = 0; k < 10; ++k) r[k] = s[k] + (lam * dt) * gs[k];
      return r;
    };
    const double e0 = entropy(s);
    const double full = entropy(shifted(1.0)) - e0;
    CHECK(dissip <= full / dt + 1e-12);
    CHECK(full <= 1e-12);
    for (double lam : {0.1, 0.5, 0.9}) CHECK(entropy(shifted(lam)) - e0 <= lam * full + 1e-12);
  }
}

}  // TEST_SUITE
