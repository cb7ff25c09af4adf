#include <cmath>
#include <random>

#include "doctest.h"

#include "erdg/dg_solver.hpp"
#include "erdg/error.hpp"
#include "test_support.hpp"

using namespace erdg;
using erdg::testing::box_mesh;
using erdg::testing::discretization;
using erdg::testing::max_abs_diff;

namespace {

const IdealGas gas(1.4);

Vec2 node_position(const Mesh& mesh, int c, Vec2 rs) {
  const auto v = mesh.cell_vertices(c);
  return v[0] + rs.x * (v[1] - v[0]) + rs.y * (v[2] - v[0]);
}

template <class F>
Field sample(const Mesh& mesh, const ReferenceElement& el, F&& prim) {
  Field f(mesh.num_cells(), el.num_nodes());
  for (int c = 0; c < mesh.num_cells(); ++c) {
    for (int k = 0; k < el.num_nodes(); ++k) f.at(c, k) = gas.to_cons(prim(node_position(mesh, c, el.nodes()[k])));
  }
  return f;
}

double max_abs(const ConsState& a) {
  return std::max({std::abs(a.rho), std::abs(a.mx), std::abs(a.my), std::abs(a.E)});
}

/// Sod-like data split at x = 0.5 with small random nodal perturbations.
Field perturbed_sod(const Mesh& mesh, const ReferenceElement& el, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-0.02, 0.02);
  return sample(mesh, el, [&](Vec2 x) {
    const bool left = x.x < 0.5;
    return PrimState{(left ? 1.0 : 0.125) * (1 + d(rng)), d(rng), d(rng), (left ? 1.0 : 0.1) * (1 + d(rng))};
  });
}

const BoundaryMap kCopy{{1, {BoundaryKind::coupling_copy, {}}}};
const BoundaryMap kWall{{1, {BoundaryKind::reflective, {}}}};

}  // namespace

TEST_SUITE("dg_solver") {

TEST_CASE("reference cell operators are the reference operators") {
  for (int p : {1, 3}) {
    const auto& d = discretization(p);
    const PhysicalMatrices pm = physical_matrices(erdg::testing::single_triangle(), d.element, d.cubature.weights, 0);
    CHECK(max_abs_diff(pm.mass, d.element.mass()) < 1e-15);
    CHECK(max_abs_diff(pm.stiffness_x, d.element.stiffness_r()) < 1e-14);
    CHECK(max_abs_diff(pm.stiffness_y, d.element.stiffness_s()) < 1e-14);
    for (int m = 0; m < 3; ++m) CHECK(max_abs_diff(pm.boundary[m], d.element.boundary(m)) < 1e-14);
  }
}

TEST_CASE("scaled cell operators") {
  const auto& d = discretization(3);
  const Mesh big = erdg::testing::single_triangle({0, 0}, {2, 0}, {0, 2});
  const PhysicalMatrices pm = physical_matrices(big, d.element, d.cubature.weights, 0);
  CHECK(max_abs_diff(pm.mass, 4.0 * d.element.mass()) < 1e-14);
  CHECK(max_abs_diff(pm.stiffness_x, 2.0 * d.element.stiffness_r()) < 1e-13);
  CHECK(max_abs_diff(pm.stiffness_y, 2.0 * d.element.stiffness_s()) < 1e-13);
  for (int m = 0; m < 3; ++m) CHECK(max_abs_diff(pm.boundary[m], 2.0 * d.element.boundary(m)) < 1e-13);
  CHECK(pm.weights.sum() == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("physical operators satisfy integration by parts") {
  const Mesh mesh = erdg::testing::single_triangle({0.3, -0.2}, {1.7, 0.4}, {0.1, 0.9});
  for (int p : {1, 3}) {
    const auto& d = discretization(p);
    const PhysicalMatrices pm = physical_matrices(mesh, d.element, d.cubature.weights, 0);
    const CellGeometry& g = mesh.geometry(0);
    Matrix bx = Matrix::Zero(pm.mass.rows(), pm.mass.cols()), by = bx;
    for (int m = 0; m < 3; ++m) {
      bx += g.outward_normals[m].x * pm.boundary[m];
      by += g.outward_normals[m].y * pm.boundary[m];
    }
    CHECK(max_abs_diff(pm.stiffness_x + pm.stiffness_x.transpose(), bx) < 1e-14);
    CHECK(max_abs_diff(pm.stiffness_y + pm.stiffness_y.transpose(), by) < 1e-14);
    CHECK(pm.weights.sum() == doctest::Approx(mesh.area(0)).epsilon(1e-13));
  }
}

TEST_CASE("rest state in a reflective box is steady") {
  const Mesh mesh = box_mesh(5);
  for (int p : {1, 3}) {
    const auto& d = discretization(p);
    const DGOperator op(mesh, d.element, d.filter, kWall, gas);
    const Field u = sample(mesh, d.element, [](Vec2) { return PrimState{1.3, 0.0, 0.0, 0.8}; });
    Field dudt;
    op.evaluate(u, dudt);
    double worst = 0.0;
    for (const ConsState& s : dudt.values) worst = std::max(worst, max_abs(s));
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("moving free stream with matching coupling is steady") {
  const Mesh mesh = read_triangle_mesh(erdg::testing::data_dir() + "/meshes/accuracy_1");
  const PrimState q{1.0, 0.8, -0.3, 0.7};
  BoundaryMap bcs;
  for (int m : mesh.boundary_markers()) bcs[m] = {BoundaryKind::coupling_fixed, gas.to_cons(q)};
  for (int p : {1, 3}) {
    const auto& d = discretization(p);
    const DGOperator op(mesh, d.element, d.filter, bcs, gas);
    const Field u = sample(mesh, d.element, [&](Vec2) { return q; });
    Field dudt;
    StageReport r;
    op.evaluate(u, dudt, &r);
    double worst = 0.0;
    for (const ConsState& s : dudt.values) worst = std::max(worst, max_abs(s));
    CHECK(worst < 1e-11);
    for (double l : r.lambda_ed) CHECK(l == 0.0);
    for (double l : r.lambda_er) CHECK(l == 0.0);
  }
}

TEST_CASE("linear advection field is differentiated exactly") {
  // rho = 1 + 0.3 x - 0.2 y advected at v = (1, 0.5) with constant pressure:
  // every flux is linear, so the interior residual is exact.
  const Mesh mesh = box_mesh(4);
  const double vx = 1.0, vy = 0.5, p = 1.0;
  const double gx = 0.3, gy = -0.2;
  const double adv = vx * gx + vy * gy;
  for (int deg : {1, 3}) {
    const auto& d = discretization(deg);
    const DGOperator op(mesh, d.element, d.filter, kCopy, gas, {false, false});
    const Field u = sample(mesh, d.element, [&](Vec2 x) { return PrimState{1 + gx * x.x + gy * x.y, vx, vy, p}; });
    Field dudt;
    op.evaluate_uncorrected(u, dudt);
    double worst = 0.0;
    for (int c = 0; c < mesh.num_cells(); ++c) {
      bool touches = false;
      for (int m = 0; m < 3; ++m) touches |= mesh.edge(mesh.cell_edge(c, m)).is_boundary();
      if (touches) continue;
      for (int k = 0; k < d.element.num_nodes(); ++k) {
        const ConsState exact{-adv, -adv * vx, -adv * vy, -adv * 0.5 * (vx * vx + vy * vy)};
        worst = std::max(worst, max_abs(dudt.at(c, k) - exact));
      }
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("conservation up to boundary fluxes") {
  std::mt19937_64 rng(3);
  const Mesh mesh = box_mesh(6);
  const BoundaryMap bcs{{1, {BoundaryKind::coupling_fixed, gas.to_cons({0.5, 0.3, -0.1, 0.4})}}};
  for (int p : {1, 3}) {
    const auto& d = discretization(p);
    const DGOperator op(mesh, d.element, d.filter, bcs, gas);
    const Field u = perturbed_sod(mesh, d.element, rng);
    Field dudt, plain;
    StageReport r;
    op.evaluate(u, dudt, &r);
    op.evaluate_uncorrected(u, plain);
    const ConsState net = op.totals(dudt) + r.boundary_flux;
    CHECK(max_abs(net) < 1e-11 * (1.0 + max_abs(r.boundary_flux)));
    // The corrections never change cell averages.
    for (int c = 0; c < mesh.num_cells(); ++c) {
      ConsState diff{};
      const double det = mesh.geometry(c).det_jacobian;
      for (int k = 0; k < d.element.num_nodes(); ++k) diff += (det * d.filter.weights(k)) * (dudt.at(c, k) - plain.at(c, k));
      CHECK(max_abs(diff) < 1e-11);
    }
  }
}

TEST_CASE("lambda_ED") {
  CHECK(lambda_ed(0.5, -1.0, -2.0) == 0.0);
  CHECK(lambda_ed(0.5, 1.0, 0.0) == 0.0);
  CHECK(lambda_ed(0.5, 1.0, -1e-14) == 0.0);
  // Production exceeds the bound -phi by delta.
  const double phi = 0.3, delta = 0.25, d = -0.8;
  const double production = -phi + delta;
  const double l = lambda_ed(phi, production, d);
  CHECK(l == doctest::Approx(delta / std::abs(d)).epsilon(1e-15));
  CHECK(production + l * d == doctest::Approx(-phi).epsilon(1e-15));
}

TEST_CASE("lambda_ER edge terms") {
  CHECK(lambda_er_term(0.0, -1.0, -1.0) == 0.0);
  CHECK(lambda_er_term(-0.6, -0.4, -0.4) == doctest::Approx(0.6 / (2 * 0.4)));
  CHECK(lambda_er_term(-0.6, -0.4, 0.0) == doctest::Approx(0.6 / 0.4));
  CHECK(lambda_er_term(-0.6, -1e-14, 0.0) == 0.0);
  CHECK(lambda_er_term(1e-17, -0.4, -0.4) == 0.0);
}

TEST_CASE("lambda_ER of a single interior edge") {
  // Both cells see the same edge predictor over the sum of their
  // dissipativities; zero-gradient outer edges predict nothing.
  std::mt19937_64 rng(5);
  const Mesh mesh = erdg::testing::two_triangles();
  const auto& d = discretization(1);
  const DGOperator op(mesh, d.element, d.filter, kCopy, gas, {false, true});
  int e = 0;
  while (mesh.edge(e).is_boundary()) ++e;
  std::uniform_real_distribution<double> q(0.5, 1.5);
  Field u(2, 3);
  for (auto& s : u.values) s = gas.to_cons({q(rng), q(rng) - 1.0, q(rng) - 1.0, q(rng)});
  Field dudt;
  StageReport r;
  op.evaluate(u, dudt, &r);
  double diss[2];
  for (int c = 0; c < 2; ++c) {
    diss[c] = 0.0;
    for (int k = 0; k < 3; ++k) {
      ConsState gu{};
      for (int l = 0; l < 3; ++l) gu += d.filter.generator(k, l) * u.at(c, l);
      diss[c] += mesh.geometry(c).det_jacobian * d.filter.weights(k) * dot(gas.entropy_variables(u.at(c, k)), gu);
    }
  }
  REQUIRE(diss[0] < 0.0);
  REQUIRE(diss[1] < 0.0);
  const double s = -integrate_edge_sigma(u, mesh, d.element, e, kCopy, gas).value;
  REQUIRE(s > 0.0);
  for (int c = 0; c < 2; ++c) CHECK(r.lambda_er[c] == doctest::Approx(s / -(diss[0] + diss[1])).epsilon(1e-12));
}

TEST_CASE("corrected operator satisfies the per-cell and global entropy bounds") {
  std::mt19937_64 rng(7);
  for (int p : {1, 3}) {
    CAPTURE(p);
    const auto& d = discretization(p);
    for (const BoundaryMap& bcs : {kCopy, kWall}) {
      const Mesh mesh = box_mesh(4);
      const DGOperator op(mesh, d.element, d.filter, bcs, gas);
      const Field u = perturbed_sod(mesh, d.element, rng);
      Field dudt;
      StageReport r;
      op.evaluate(u, dudt, &r);
      CHECK(r.max_cell_inequality_excess <= 1e-9);
      CHECK(r.rate_bound_excess() <= 1e-8);
      CHECK(r.entropy_rate <= r.entropy_rate_uncorrected + 1e-12);
      // The reported rate is the w-weighted entropy derivative of dudt.
      double rate = 0.0;
      for (int c = 0; c < mesh.num_cells(); ++c) {
        for (int k = 0; k < d.element.num_nodes(); ++k) {
          rate += mesh.geometry(c).det_jacobian * d.filter.weights(k) *
                  dot(gas.entropy_variables(u.at(c, k)), dudt.at(c, k));
        }
      }
      CHECK(rate == doctest::Approx(r.entropy_rate).epsilon(1e-10).scale(1.0));
      // sigma_sum is the sum of the independently integrated edge predictors.
      double sigma = 0.0;
      for (int e = 0; e < mesh.num_edges(); ++e) sigma += integrate_edge_sigma(u, mesh, d.element, e, bcs, gas).value;
      CHECK(r.sigma_sum == doctest::Approx(sigma).epsilon(1e-12));
    }
  }
}

TEST_CASE("uncorrected route agrees with disabled corrections") {
  std::mt19937_64 rng(8);
  const Mesh mesh = box_mesh(3);
  const auto& d = discretization(3);
  const DGOperator op(mesh, d.element, d.filter, kCopy, gas, {false, false});
  const Field u = perturbed_sod(mesh, d.element, rng);
  Field a, b;
  op.evaluate(u, a);
  op.evaluate_uncorrected(u, b);
  for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
}

TEST_CASE("filter direction dissipates oscillatory data") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> d(0.5, 2.0);
  for (int p : {1, 3}) {
    const auto& disc = discretization(p);
    const int n = disc.element.num_nodes();
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<ConsState> u(n);
      for (auto& s : u) s = gas.to_cons({d(rng), d(rng) - 1.25, d(rng) - 1.25, d(rng)});
      double diss = 0.0;
      for (int k = 0; k < n; ++k) {
        ConsState gu{};
        for (int l = 0; l < n; ++l) gu += disc.filter.generator(k, l) * u[l];
        diss += disc.filter.weights(k) * dot(gas.entropy_variables(u[k]), gu);
      }
      CHECK(diss < 0.0);
    }
  }
}

TEST_CASE("non-physical states and unknown markers abort") {
  const Mesh mesh = box_mesh(2);
  const auto& d = discretization(1);
  const DGOperator op(mesh, d.element, d.filter, kCopy, gas);
  Field u = sample(mesh, d.element, [](Vec2) { return PrimState{1.0, 0.0, 0.0, 1.0}; });
  u.at(3, 1).E = -1.0;
  Field dudt;
  try {
    op.evaluate(u, dudt);
    FAIL("expected PositivityError");
  } catch (const PositivityError& e) {
    CHECK(std::string(e.what()).find("cell 3 node 1") != std::string::npos);
  }
  CHECK_THROWS_AS(DGOperator(mesh, d.element, d.filter, {{2, {}}}, gas), ConfigError);
}

}  // TEST_SUITE
