#include "erdg/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "erdg/cases.hpp"

namespace erdg {

FieldSampler::FieldSampler(const Mesh& mesh, const ReferenceElement& element)
    : mesh_(mesh), element_(element) {
  lo_ = hi_ = mesh.vertices().front();
  for (const Vec2& v : mesh.vertices()) {
    lo_ = {std::min(lo_.x, v.x), std::min(lo_.y, v.y)};
    hi_ = {std::max(hi_.x, v.x), std::max(hi_.y, v.y)};
  }
  const double w = hi_.x - lo_.x;
  const double h = hi_.y - lo_.y;
  const double cells = std::max(1, mesh.num_cells());
  // About one cell per bucket.
  const double side = std::sqrt(w * h / cells);
  nx_ = std::max(1, static_cast<int>(w / side));
  ny_ = std::max(1, static_cast<int>(h / side));
  hx_ = w / nx_;
  hy_ = h / ny_;
  buckets_.resize(std::size_t(nx_) * ny_);
  auto clampi = [](int i, int n) { return std::clamp(i, 0, n - 1); };
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto v = mesh.cell_vertices(c);
    const double x0 = std::min({v[0].x, v[1].x, v[2].x}), x1 = std::max({v[0].x, v[1].x, v[2].x});
    const double y0 = std::min({v[0].y, v[1].y, v[2].y}), y1 = std::max({v[0].y, v[1].y, v[2].y});
    const int i0 = clampi(static_cast<int>((x0 - lo_.x) / hx_), nx_);
    const int i1 = clampi(static_cast<int>((x1 - lo_.x) / hx_), nx_);
    const int j0 = clampi(static_cast<int>((y0 - lo_.y) / hy_), ny_);
    const int j1 = clampi(static_cast<int>((y1 - lo_.y) / hy_), ny_);
    for (int j = j0; j <= j1; ++j) {
      for (int i = i0; i <= i1; ++i) buckets_[std::size_t(j) * nx_ + i].push_back(c);
    }
  }
}

std::optional<std::pair<int, Vec2>> FieldSampler::locate(Vec2 x) const {
  const double tol = 1e-10;
  if (x.x < lo_.x - tol || x.x > hi_.x + tol || x.y < lo_.y - tol || x.y > hi_.y + tol) return std::nullopt;
  const int i = std::clamp(static_cast<int>((x.x - lo_.x) / hx_), 0, nx_ - 1);
  const int j = std::clamp(static_cast<int>((x.y - lo_.y) / hy_), 0, ny_ - 1);
  for (int c : buckets_[std::size_t(j) * nx_ + i]) {
    const CellGeometry& g = mesh_.geometry(c);
    const Vec2 d = x - mesh_.vertices()[mesh_.cells()[c][0]];
    const Vec2 rs{g.inv_jacobian[0][0] * d.x + g.inv_jacobian[0][1] * d.y,
                  g.inv_jacobian[1][0] * d.x + g.inv_jacobian[1][1] * d.y};
    if (rs.x >= -tol && rs.y >= -tol && rs.x + rs.y <= 1.0 + tol) return std::pair{c, rs};
  }
  return std::nullopt;
}

std::optional<ConsState> FieldSampler::sample(const Field& u, Vec2 x) const {
  const auto hit = locate(x);
  if (!hit) return std::nullopt;
  const Vector phi = element_.eval_basis(hit->second);
  ConsState s{};
  for (int l = 0; l < element_.num_nodes(); ++l) s += phi(l) * u.at(hit->first, l);
  return s;
}

double point_symmetry_defect(const Field& u, const Mesh& mesh, const ReferenceElement& element,
                             const Vector& weights) {
  const FieldSampler sampler(mesh, element);
  double num = 0.0;
  double den = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const double det = mesh.geometry(c).det_jacobian;
    for (int l = 0; l < element.num_nodes(); ++l) {
      const Vec2 x = map_to_physical(mesh, c, element.nodes()[l]);
      const auto mirror = sampler.sample(u, {-x.x, -x.y});
      if (!mirror) continue;
      const double rho = u.at(c, l).rho;
      num += det * weights(l) * (rho - mirror->rho) * (rho - mirror->rho);
      den += det * weights(l) * rho * rho;
    }
  }
  return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

}  // namespace erdg
