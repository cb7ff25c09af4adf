#include "erdg/entropy_predictor.hpp"

#include <string>

#include "erdg/dg_solver.hpp"
#include "erdg/error.hpp"
#include "erdg/mesh.hpp"
#include "erdg/reference_element.hpp"

namespace erdg {

const BoundaryCondition& boundary_condition(const BoundaryMap& bcs, int marker) {
  auto it = bcs.find(marker);
  if (it == bcs.end()) throw ConfigError("no boundary condition for marker " + std::to_string(marker));
  return it->second;
}

ConsState mirror_state(const ConsState& u, Vec2 n) {
  const double mn = u.mx * n.x + u.my * n.y;
  return {u.rho, u.mx - 2.0 * mn * n.x, u.my - 2.0 * mn * n.y, u.E};
}

ConsState ghost_state(const BoundaryCondition& bc, const ConsState& interior, Vec2 n) {
  switch (bc.kind) {
    case BoundaryKind::reflective: return mirror_state(interior, n);
    case BoundaryKind::coupling_fixed: return bc.exterior;
    case BoundaryKind::coupling_copy: return interior;
  }
  return interior;
}

double sigma_1d(const IdealGas& gas, const ConsState& ul, const ConsState& ur, Vec2 n,
                WaveSpeeds a) {
  if (ul == ur) return 0.0;
  const ConsState mean = gas.hll_mean_state(ul, ur, n, a);
  gas.require_physical(mean, "HLL mean state");
  const EntropyPair l = gas.entropy_pair(ul, n);
  const EntropyPair r = gas.entropy_pair(ur, n);
  // Entropy of the mean state minus the entropy the fan would carry if it
  // were entropy conservative; non-positive by Jensen's inequality.
  return (a.right - a.left) * gas.entropy(mean) + a.left * l.entropy - a.right * r.entropy -
         l.flux + r.flux;
}

double sigma_1d(const IdealGas& gas, const ConsState& ul, const ConsState& ur, Vec2 n) {
  gas.require_physical(ul, "left trace");
  gas.require_physical(ur, "right trace");
  return sigma_1d(gas, ul, ur, n, gas.wave_speeds(ul, ur, n));
}

double sigma_cbc(const IdealGas& gas, const ConsState& ul, const ConsState& ur, Vec2 n) {
  gas.require_physical(ul, "interior trace");
  gas.require_physical(ur, "exterior state");
  const WaveSpeeds a = gas.wave_speeds(ul, ur, n);
  if (a.left > 0.0) return 0.0;
  return sigma_1d(gas, ul, ur, n, a);
}

double sigma_rbc(const IdealGas& gas, const ConsState& u_in, Vec2 n) {
  return 0.5 * sigma_1d(gas, u_in, mirror_state(u_in, n), n);
}

EdgeSigma integrate_edge_sigma(const Field& field, const Mesh& mesh,
                               const ReferenceElement& element, int e,
                               const BoundaryMap& bcs, const IdealGas& gas) {
  const Edge& edge = mesh.edge(e);
  const int p = element.degree();
  const auto& w = element.edge_quad_weights();
  const auto& in_nodes = element.edge_nodes(edge.left_local);
  const Vec2 n = mesh.geometry(edge.left).outward_normals[edge.left_local];
  const double length = mesh.geometry(edge.left).edge_lengths[edge.left_local];

  EdgeSigma out;
  out.edge = e;
  double s = 0.0;
  if (!edge.is_boundary()) {
    const auto& out_nodes = element.edge_nodes(edge.right_local);
    for (int j = 0; j <= p; ++j) {
      const ConsState& ul = field.at(edge.left, in_nodes[j]);
      const ConsState& ur = field.at(edge.right, out_nodes[p - j]);
      s += w[j] * sigma_1d(gas, ul, ur, n);
    }
    out.value = length * s;
    return out;
  }
  const BoundaryCondition& bc = boundary_condition(bcs, edge.marker);
  for (int j = 0; j <= p; ++j) {
    const ConsState& ul = field.at(edge.left, in_nodes[j]);
    if (bc.kind == BoundaryKind::reflective) {
      s += w[j] * sigma_rbc(gas, ul, n);
    } else {
      s += w[j] * sigma_cbc(gas, ul, ghost_state(bc, ul, n), n);
    }
  }
  out.value = length * s;
  out.interior_share = out.value;
  return out;
}

}  // namespace erdg
