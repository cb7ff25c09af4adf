#include "erdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "erdg/error.hpp"

namespace erdg {

namespace {

std::pair<int, int> edge_key(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

double signed_det(const std::array<Vec2, 3>& v) { return cross(v[1] - v[0], v[2] - v[0]); }

double squared_diameter(const std::array<Vec2, 3>& v) {
  double d = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Vec2 e = v[(i + 1) % 3] - v[i];
    d = std::max(d, dot(e, e));
  }
  return d;
}

}  // namespace

CellGeometry cell_geometry(const std::array<Vec2, 3>& v) {
  CellGeometry g;
  const Vec2 a = v[1] - v[0];
  const Vec2 b = v[2] - v[0];
  g.jacobian = {{{a.x, b.x}, {a.y, b.y}}};
  g.det_jacobian = cross(a, b);
  if (!(g.det_jacobian > 1e-14 * squared_diameter(v))) {
    std::ostringstream msg;
    msg << "degenerate or clockwise triangle (det = " << g.det_jacobian << ")";
    throw MeshError(msg.str());
  }
  const double inv = 1.0 / g.det_jacobian;
  g.inv_jacobian = {{{b.y * inv, -b.x * inv}, {-a.y * inv, a.x * inv}}};
  double perimeter = 0.0;
  for (int m = 0; m < 3; ++m) {
    const Vec2 t = v[(m + 1) % 3] - v[m];
    const double len = norm(t);
    g.edge_lengths[m] = len;
    g.outward_normals[m] = {t.y / len, -t.x / len};
    perimeter += len;
  }
  g.inradius = g.det_jacobian / perimeter;
  return g;
}

CellGeometry cell_geometry(const Mesh& mesh, int cell) {
  if (cell < 0 || cell >= mesh.num_cells()) {
    throw MeshError("cell index " + std::to_string(cell) + " out of range");
  }
  return cell_geometry(mesh.cell_vertices(cell));
}

Mesh::Mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> cells,
           const SegmentMarkers& segment_markers)
    : vertices_(std::move(vertices)), cells_(std::move(cells)) {
  const int nv = num_vertices();
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    auto& cell = cells_[c];
    for (int v : cell) {
      if (v < 0 || v >= nv) {
        throw MeshError("cell " + std::to_string(c) + " references vertex " +
                        std::to_string(v) + " out of range");
      }
    }
    const std::array<Vec2, 3> p{vertices_[cell[0]], vertices_[cell[1]], vertices_[cell[2]]};
    const double det = signed_det(p);
    if (std::abs(det) <= 1e-14 * squared_diameter(p)) {
      throw MeshError("cell " + std::to_string(c) + " is degenerate (zero area)");
    }
    if (det < 0.0) std::swap(cell[1], cell[2]);
  }
  connect(segment_markers);
}

void Mesh::connect(const SegmentMarkers& segment_markers) {
  struct Side {
    int cell;
    int local;
  };
  std::map<std::pair<int, int>, std::vector<Side>> sides;
  for (int c = 0; c < num_cells(); ++c) {
    for (int m = 0; m < 3; ++m) {
      sides[edge_key(cells_[c][m], cells_[c][(m + 1) % 3])].push_back({c, m});
    }
  }
  edges_.clear();
  edges_.reserve(sides.size());
  cell_edges_.assign(cells_.size(), {-1, -1, -1});
  for (const auto& [key, list] : sides) {
    if (list.size() > 2) {
      throw MeshError("non-manifold edge (" + std::to_string(key.first) + ", " +
                      std::to_string(key.second) + ") shared by " +
                      std::to_string(list.size()) + " cells");
    }
    Edge e;
    e.vertices = {key.first, key.second};
    e.left = list[0].cell;
    e.left_local = list[0].local;
    if (list.size() == 2) {
      e.right = list[1].cell;
      e.right_local = list[1].local;
    } else {
      auto it = segment_markers.find(key);
      e.marker = (it == segment_markers.end() || it->second == 0) ? 1 : it->second;
    }
    const int id = static_cast<int>(edges_.size());
    cell_edges_[e.left][e.left_local] = id;
    if (e.right >= 0) cell_edges_[e.right][e.right_local] = id;
    edges_.push_back(e);
  }
  geometry_.resize(cells_.size());
  for (int c = 0; c < num_cells(); ++c) {
    try {
      geometry_[c] = cell_geometry(cell_vertices(c));
    } catch (const MeshError& err) {
      throw MeshError("cell " + std::to_string(c) + ": " + err.what());
    }
  }
}

Mesh build_connectivity(Mesh mesh) {
  Mesh::SegmentMarkers markers;
  for (const Edge& e : mesh.edges_) {
    if (e.is_boundary()) markers[{e.vertices[0], e.vertices[1]}] = e.marker;
  }
  mesh.connect(markers);
  return mesh;
}

std::array<Vec2, 3> Mesh::cell_vertices(int c) const {
  const auto& cell = cells_[c];
  return {vertices_[cell[0]], vertices_[cell[1]], vertices_[cell[2]]};
}

Vec2 Mesh::centroid(int c) const {
  const auto v = cell_vertices(c);
  return (1.0 / 3.0) * (v[0] + v[1] + v[2]);
}

Vec2 Mesh::edge_normal_from(int e, int c) const {
  const Edge& edge = edges_[e];
  if (edge.left == c) return geometry_[c].outward_normals[edge.left_local];
  if (edge.right == c) return geometry_[c].outward_normals[edge.right_local];
  throw MeshError("cell " + std::to_string(c) + " does not touch edge " + std::to_string(e));
}

std::vector<int> Mesh::boundary_markers() const {
  std::vector<int> out;
  for (const Edge& e : edges_) {
    if (e.is_boundary()) out.push_back(e.marker);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MeshReport validate_mesh(const Mesh& mesh) {
  MeshReport r;
  r.num_vertices = mesh.num_vertices();
  r.num_cells = mesh.num_cells();
  r.num_edges = mesh.num_edges();
  r.euler_characteristic = r.num_vertices - r.num_edges + r.num_cells;
  r.min_angle_deg = 180.0;
  r.max_angle_deg = 0.0;
  r.min_inradius = mesh.num_cells() > 0 ? mesh.geometry(0).inradius : 0.0;
  r.orientation_ok = true;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto v = mesh.cell_vertices(c);
    const double det = signed_det(v);
    if (!(det > 0.0)) r.orientation_ok = false;
    r.total_area += 0.5 * det;
    r.min_inradius = std::min(r.min_inradius, mesh.geometry(c).inradius);
    for (int i = 0; i < 3; ++i) {
      const Vec2 a = v[(i + 1) % 3] - v[i];
      const Vec2 b = v[(i + 2) % 3] - v[i];
      const double ang = std::atan2(std::abs(cross(a, b)), dot(a, b)) * 180.0 / std::numbers::pi;
      r.min_angle_deg = std::min(r.min_angle_deg, ang);
      r.max_angle_deg = std::max(r.max_angle_deg, ang);
    }
  }

  // Every cell references three distinct edges that reference it back.
  r.connectivity_ok = true;
  std::vector<int> uses(mesh.num_edges(), 0);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    for (int m = 0; m < 3; ++m) {
      const int e = mesh.cell_edge(c, m);
      if (e < 0) {
        r.connectivity_ok = false;
        continue;
      }
      ++uses[e];
      const Edge& edge = mesh.edge(e);
      if (!((edge.left == c && edge.left_local == m) || (edge.right == c && edge.right_local == m))) {
        r.connectivity_ok = false;
      }
    }
  }
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    if (uses[e] != (edge.is_boundary() ? 1 : 2)) r.connectivity_ok = false;
    if (!edge.is_boundary()) continue;
    ++r.num_boundary_edges;
    ++r.boundary_marker_counts[edge.marker];
    // Shoelace over boundary edges traversed in the owning cell's direction.
    const auto& cell = mesh.cells()[edge.left];
    const Vec2 a = mesh.vertices()[cell[edge.left_local]];
    const Vec2 b = mesh.vertices()[cell[(edge.left_local + 1) % 3]];
    r.boundary_shoelace_area += 0.5 * cross(a, b);
  }

  if (!r.orientation_ok) throw MeshError("mesh contains non-CCW or degenerate cells");
  if (!r.connectivity_ok) throw MeshError("inconsistent edge connectivity");
  return r;
}

std::string format_report(const MeshReport& r) {
  std::ostringstream os;
  os << std::setprecision(6);
  os << "vertices            " << r.num_vertices << "\n"
     << "triangles           " << r.num_cells << "\n"
     << "edges               " << r.num_edges << " (" << r.num_boundary_edges << " boundary)\n"
     << "V - E + Z           " << r.euler_characteristic << "\n"
     << "min angle [deg]     " << r.min_angle_deg << "\n"
     << "max angle [deg]     " << r.max_angle_deg << "\n"
     << "min inradius        " << r.min_inradius << "\n"
     << "area (cells)        " << r.total_area << "\n"
     << "area (boundary)     " << r.boundary_shoelace_area << "\n"
     << "orientation         " << (r.orientation_ok ? "ok" : "FAILED") << "\n"
     << "connectivity        " << (r.connectivity_ok ? "ok" : "FAILED") << "\n";
  for (const auto& [marker, count] : r.boundary_marker_counts) {
    os << "marker " << std::setw(3) << marker << "          " << count << " edges\n";
  }
  return os.str();
}

}  // namespace erdg
