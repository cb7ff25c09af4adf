#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "erdg/state.hpp"

namespace erdg {

/// One mesh edge. Vertex pair is stored sorted; `left` is the adjacent cell
/// with the smaller index, `right` is -1 on the boundary.
struct Edge {
  std::array<int, 2> vertices{};
  int left = -1;
  int left_local = -1;   // local edge index within `left`
  int right = -1;
  int right_local = -1;
  int marker = 0;        // boundary marker (0 for interior edges)

  bool is_boundary() const { return right < 0; }
};

/// Affine map data of one triangle. Local edge m joins local vertices m and
/// (m + 1) % 3.
struct CellGeometry {
  std::array<std::array<double, 2>, 2> jacobian{};      // d(x, y) / d(r, s)
  double det_jacobian = 0.0;                            // 2 * area
  std::array<std::array<double, 2>, 2> inv_jacobian{};  // d(r, s) / d(x, y)
  std::array<double, 3> edge_lengths{};
  std::array<Vec2, 3> outward_normals{};
  double inradius = 0.0;
};

/// Immutable triangulation with edge connectivity. Cells are stored
/// counter-clockwise; the constructor reorients clockwise input.
class Mesh {
public:
  using SegmentMarkers = std::map<std::pair<int, int>, int>;

  /// `segment_markers` maps unordered vertex pairs to boundary markers.
  /// Boundary edges missing from it, or tagged 0, get marker 1.
  Mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> cells,
       const SegmentMarkers& segment_markers = {});

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_cells() const { return static_cast<int>(cells_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& cells() const { return cells_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }

  /// Edge index of local edge m of cell c.
  int cell_edge(int c, int m) const { return cell_edges_[c][m]; }
  const std::array<int, 3>& cell_edges(int c) const { return cell_edges_[c]; }

  const CellGeometry& geometry(int c) const { return geometry_[c]; }
  std::array<Vec2, 3> cell_vertices(int c) const;
  Vec2 centroid(int c) const;
  double area(int c) const { return 0.5 * geometry_[c].det_jacobian; }

  /// Outward unit normal of edge e seen from cell c (which must touch e).
  Vec2 edge_normal_from(int e, int c) const;

  /// Sorted list of boundary markers present.
  std::vector<int> boundary_markers() const;

private:
  friend Mesh build_connectivity(Mesh mesh);
  void connect(const SegmentMarkers& segment_markers);

  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> cells_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> cell_edges_;
  std::vector<CellGeometry> geometry_;
};

/// Rebuild edges and per-cell geometry (deterministic edge order by sorted
/// vertex pair). Boundary markers of existing boundary edges are preserved.
Mesh build_connectivity(Mesh mesh);

/// Affine geometry of triangle `cell`; throws MeshError for degenerate input.
CellGeometry cell_geometry(const Mesh& mesh, int cell);
CellGeometry cell_geometry(const std::array<Vec2, 3>& v);

struct MeshReport {
  int num_vertices = 0;
  int num_cells = 0;
  int num_edges = 0;
  int num_boundary_edges = 0;
  int euler_characteristic = 0;  // V - E + Z
  double min_angle_deg = 0.0;
  double max_angle_deg = 0.0;
  double min_inradius = 0.0;
  double total_area = 0.0;
  double boundary_shoelace_area = 0.0;
  bool orientation_ok = false;
  bool connectivity_ok = false;
  std::map<int, int> boundary_marker_counts;
};

/// Geometry and connectivity diagnostics; throws MeshError if an invariant
/// is violated.
MeshReport validate_mesh(const Mesh& mesh);

std::string format_report(const MeshReport& report);

// Triangle (.node/.ele/.poly/.edge) ASCII files.

/// Parse Triangle-format texts. `poly_or_edge_text` may be a .poly or .edge
/// file; `source` names the files in error messages.
Mesh load_triangle_mesh(std::string_view node_text, std::string_view ele_text,
                        std::optional<std::string_view> poly_or_edge_text = std::nullopt,
                        const std::string& source = "mesh");

/// Read `<base>.node`, `<base>.ele` and, if present, `<base>.poly` or `<base>.edge`.
Mesh read_triangle_mesh(const std::string& base);

/// Write `<base>.node`, `<base>.ele`, `<base>.poly` (1-based indices).
void write_triangle_mesh(const Mesh& mesh, const std::string& base);

}  // namespace erdg
