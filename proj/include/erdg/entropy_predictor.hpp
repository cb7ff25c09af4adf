#pragma once

#include <map>

#include "erdg/euler.hpp"
#include "erdg/state.hpp"

namespace erdg {

class Mesh;
class ReferenceElement;
struct Field;

enum class BoundaryKind {
  reflective,      // solid wall, mirrored normal velocity
  coupling_fixed,  // coupled to a prescribed exterior state
  coupling_copy,   // coupled to a copy of the interior trace
};

struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::reflective;
  ConsState exterior{};  // only used by coupling_fixed
};

/// Boundary marker -> physical boundary condition.
using BoundaryMap = std::map<int, BoundaryCondition>;

/// Condition for `marker`; throws ConfigError if the map has no entry.
const BoundaryCondition& boundary_condition(const BoundaryMap& bcs, int marker);

/// Reflect the normal velocity component; density, energy and tangential
/// velocity are kept.
ConsState mirror_state(const ConsState& u, Vec2 n);

/// Exterior state seen through a boundary edge with outward normal n.
ConsState ghost_state(const BoundaryCondition& bc, const ConsState& interior, Vec2 n);

/// Entropy defect of the HLL approximate Riemann solution: a lower bound on
/// the entropy dissipation rate of a jump (ul | ur) across a unit-length
/// interface with unit normal n pointing from l to r. Non-positive whenever
/// the speed estimates bound the true waves; zero for ul == ur.
double sigma_1d(const IdealGas& gas, const ConsState& ul, const ConsState& ur, Vec2 n);
double sigma_1d(const IdealGas& gas, const ConsState& ul, const ConsState& ur, Vec2 n,
                WaveSpeeds a);

/// Coupling boundary: ul is the interior trace, n the outward normal. All
/// dissipation is assigned inward unless the whole fan leaves the domain.
double sigma_cbc(const IdealGas& gas, const ConsState& ul, const ConsState& ur, Vec2 n);

/// Reflective boundary: half of the interior/mirror jump's dissipation.
double sigma_rbc(const IdealGas& gas, const ConsState& u_in, Vec2 n);

struct EdgeSigma {
  int edge = -1;
  double value = 0.0;           // sigma integrated over the edge
  double interior_share = 0.0;  // part assigned to the interior cell (boundary edges)
};

/// Edge-integrated predictor: edge length times the Gauss-Lobatto weighted
/// sum of the pointwise predictor at the edge nodes.
EdgeSigma integrate_edge_sigma(const Field& field, const Mesh& mesh,
                               const ReferenceElement& element, int edge,
                               const BoundaryMap& bcs, const IdealGas& gas);

}  // namespace erdg
