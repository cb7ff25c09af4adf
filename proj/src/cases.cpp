#include "erdg/cases.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "erdg/error.hpp"

namespace erdg {

double bump_psi(double r) {
  if (std::abs(r) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - r * r));
}

double accuracy_density(Vec2 x, double t) {
  const double r = 3.0 * std::hypot(x.x + 1.0 - t, x.y);
  return std::pow(bump_psi(r), 6) + 1.0;
}

CaseSetup make_case(const RunConfig& cfg) {
  CaseSetup s;
  switch (cfg.case_kind) {
    case CaseKind::accuracy:
      s.initial = [](Vec2 x) { return PrimState{accuracy_density(x, 0.0), 1.0, 0.0, 1.0}; };
      s.exact = [](Vec2 x, double t) { return PrimState{accuracy_density(x, t), 1.0, 0.0, 1.0}; };
      s.free_stream = {1.0, 1.0, 0.0, 1.0};
      break;
    case CaseKind::sedov:
      s.initial = [](Vec2 x) {
        return std::hypot(x.x, x.y) < 0.08 ? PrimState{1.0, 0.0, 0.0, 1.0} : PrimState{0.125, 0.0, 0.0, 0.1};
      };
      s.free_stream = {0.125, 0.0, 0.0, 0.1};
      break;
    case CaseKind::ffs:
      s.free_stream = {1.4, 3.0, 0.0, 1.0};
      s.initial = [q = s.free_stream](Vec2) { return q; };
      break;
    case CaseKind::naca: {
      const double c = std::sqrt(cfg.gamma);  // rho = p = 1
      const double a = cfg.naca_alpha_deg * std::numbers::pi / 180.0;
      const double v = cfg.naca_mach * c;
      s.free_stream = {1.0, v * std::cos(a), v * std::sin(a), 1.0};
      s.initial = [q = s.free_stream](Vec2) { return q; };
      break;
    }
    case CaseKind::constant:
      s.free_stream = cfg.constant_state;
      s.initial = [q = s.free_stream](Vec2) { return q; };
      s.exact = [q = s.free_stream](Vec2, double) { return q; };
      break;
  }
  return s;
}

BoundaryMap make_boundary_map(const RunConfig& cfg, const CaseSetup& setup, const IdealGas& gas) {
  BoundaryMap bcs;
  for (const auto& [marker, spec] : cfg.bcs) {
    BoundaryCondition bc;
    if (spec.kind == "reflective") {
      bc.kind = BoundaryKind::reflective;
    } else if (spec.kind == "coupling_copy") {
      bc.kind = BoundaryKind::coupling_copy;
    } else if (spec.kind == "coupling_fixed") {
      bc.kind = BoundaryKind::coupling_fixed;
      bc.exterior = gas.to_cons(spec.state.value_or(setup.free_stream));
    } else {
      throw ConfigError("unknown boundary kind '" + spec.kind + "'");
    }
    bcs[marker] = bc;
  }
  return bcs;
}

Vec2 map_to_physical(const Mesh& mesh, int cell, Vec2 rs) {
  const auto v = mesh.cell_vertices(cell);
  return v[0] + rs.x * (v[1] - v[0]) + rs.y * (v[2] - v[0]);
}

Field interpolate(const PrimFunction& f, const Mesh& mesh, const ReferenceElement& element,
                  const IdealGas& gas) {
  Field u(mesh.num_cells(), element.num_nodes());
  for (int c = 0; c < mesh.num_cells(); ++c) {
    for (int l = 0; l < element.num_nodes(); ++l) {
      u.at(c, l) = gas.to_cons(f(map_to_physical(mesh, c, element.nodes()[l])));
    }
  }
  return u;
}

double density_l2_error(const Field& u, const Mesh& mesh, const ReferenceElement& element,
                        const std::function<double(Vec2)>& exact_rho) {
  using Rule = boost::math::quadrature::gauss<double, 16>;
  const int n = element.num_nodes();
  Vector rho(n);
  double total = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    for (int l = 0; l < n; ++l) rho(l) = u.at(c, l).rho;
    // (a, b) in [0,1]^2 -> (r, s) = (a, b (1 - a)), Jacobian 1 - a
    const double cell = Rule::integrate(
        [&](double a) {
          return (1.0 - a) * Rule::integrate(
                                 [&](double b) {
                                   const Vec2 rs{a, b * (1.0 - a)};
                                   const double diff = element.eval_basis(rs).dot(rho) -
                                                       exact_rho(map_to_physical(mesh, c, rs));
                                   return diff * diff;
                                 },
                                 0.0, 1.0);
        },
        0.0, 1.0);
    total += mesh.geometry(c).det_jacobian * cell;
  }
  return std::sqrt(total);
}

}  // namespace erdg
