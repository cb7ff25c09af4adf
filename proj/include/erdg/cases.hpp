#pragma once

// Initial and boundary data of the test problems.

#include <functional>
#include <optional>

#include "erdg/config.hpp"
#include "erdg/dg_solver.hpp"

namespace erdg {

/// C-infinity bump exp(1 - 1/(1 - r^2)) for r < 1, 0 otherwise.
double bump_psi(double r);

/// Density of the accuracy test: psi(3 |x - c(t)|)^6 + 1, c(t) = (-1 + t, 0).
double accuracy_density(Vec2 x, double t);

using PrimFunction = std::function<PrimState(Vec2)>;

struct CaseSetup {
  PrimFunction initial;
  std::optional<std::function<PrimState(Vec2, double)>> exact;
  PrimState free_stream{1.0, 0.0, 0.0, 1.0};  // default exterior for coupling_fixed
};

CaseSetup make_case(const RunConfig& config);

/// Physical boundary conditions for every marker in the config.
BoundaryMap make_boundary_map(const RunConfig& config, const CaseSetup& setup, const IdealGas& gas);

/// Affine image of reference point rs in cell c.
Vec2 map_to_physical(const Mesh& mesh, int cell, Vec2 rs);

/// Nodal interpolation of `f` (pointwise evaluation at the element nodes).
Field interpolate(const PrimFunction& f, const Mesh& mesh, const ReferenceElement& element,
                  const IdealGas& gas);

/// L2 norm of rho_h - rho_exact over the mesh: 16 x 16 Gauss-Legendre points
/// on the collapsed square of every cell.
double density_l2_error(const Field& u, const Mesh& mesh, const ReferenceElement& element,
                        const std::function<double(Vec2)>& exact_rho);

}  // namespace erdg
