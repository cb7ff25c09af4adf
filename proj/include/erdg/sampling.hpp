#pragma once

#include <optional>
#include <vector>

#include "erdg/dg_solver.hpp"

namespace erdg {

/// Point location on a mesh through a uniform bucket grid of cell bounding
/// boxes, and evaluation of the DG polynomial there.
class FieldSampler {
public:
  FieldSampler(const Mesh& mesh, const ReferenceElement& element);

  /// Cell containing x (within a small barycentric tolerance) and the
  /// reference coordinates of x in it.
  std::optional<std::pair<int, Vec2>> locate(Vec2 x) const;

  /// DG state at x, or nullopt outside the mesh.
  std::optional<ConsState> sample(const Field& u, Vec2 x) const;

private:
  const Mesh& mesh_;
  const ReferenceElement& element_;
  Vec2 lo_, hi_;
  int nx_ = 1, ny_ = 1;
  double hx_ = 1.0, hy_ = 1.0;
  std::vector<std::vector<int>> buckets_;
};

/// Relative L2 difference between rho(x) and rho(-x), sampled at all nodes
/// with cubature weights: sqrt(sum w (rho(x) - rho(-x))^2 / sum w rho(x)^2).
/// Nodes whose mirror point lies outside the mesh are skipped.
double point_symmetry_defect(const Field& u, const Mesh& mesh, const ReferenceElement& element,
                             const Vector& weights);

}  // namespace erdg
