// Reader and writer for Triangle's ASCII mesh files.
//
//   .node   <#vertices> <dim=2> <#attributes> <#markers 0|1>
//           <index> <x> <y> [attributes...] [marker]
//   .ele    <#triangles> <nodes per triangle 3|6> <#attributes>
//           <index> <v1> <v2> <v3> [...]
//   .poly   node section (usually with 0 vertices), then
//           <#segments> <#markers 0|1>
//           <index> <v1> <v2> [marker]
//           followed by holes, which are ignored here
//   .edge   <#edges> <#markers 0|1>
//           <index> <v1> <v2> [marker]
//
// '#' starts a comment. Vertex numbers may start at 0 or 1; references in
// the other files are resolved through the numbers declared in .node.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_map>

#include "erdg/error.hpp"
#include "erdg/mesh.hpp"

namespace erdg {

namespace {

class LineReader {
public:
  LineReader(std::string_view text, std::string name) : text_(text), name_(std::move(name)) {}

  /// Next non-empty, comment-stripped line split into tokens; false at EOF.
  bool next(std::vector<std::string_view>& tokens) {
    while (pos_ < text_.size()) {
      std::size_t end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++line_no_;
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      tokens.clear();
      std::size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
      }
      if (!tokens.empty()) return true;
    }
    return false;
  }

  void require(std::vector<std::string_view>& tokens, std::size_t min_tokens, const char* what) {
    if (!next(tokens)) fail(std::string("unexpected end of file, expected ") + what);
    if (tokens.size() < min_tokens) fail(std::string("malformed ") + what);
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw MeshError(name_ + ":" + std::to_string(line_no_) + ": " + msg);
  }

  long to_int(std::string_view tok) const {
    long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      fail("expected integer, got '" + std::string(tok) + "'");
    }
    return v;
  }

  double to_double(std::string_view tok) const {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      fail("expected number, got '" + std::string(tok) + "'");
    }
    return v;
  }

private:
  std::string_view text_;
  std::string name_;
  std::size_t pos_ = 0;
  int line_no_ = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MeshError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

}  // namespace

Mesh load_triangle_mesh(std::string_view node_text, std::string_view ele_text,
                        std::optional<std::string_view> poly_or_edge_text,
                        const std::string& source) {
  std::vector<std::string_view> tok;

  LineReader node(node_text, source + ".node");
  node.require(tok, 4, "node header");
  const long nv = node.to_int(tok[0]);
  const long dim = node.to_int(tok[1]);
  const long nattr = node.to_int(tok[2]);
  const long nmark = node.to_int(tok[3]);
  if (nv < 3 || dim != 2 || nattr < 0 || (nmark != 0 && nmark != 1)) {
    node.fail("malformed header (need <#vertices >= 3> 2 <#attr> <0|1>)");
  }
  std::vector<Vec2> vertices;
  vertices.reserve(nv);
  std::unordered_map<long, int> position;
  for (long i = 0; i < nv; ++i) {
    node.require(tok, static_cast<std::size_t>(3 + nattr + nmark), "vertex line");
    const long id = node.to_int(tok[0]);
    if (!position.emplace(id, static_cast<int>(i)).second) {
      node.fail("duplicate vertex number " + std::to_string(id));
    }
    vertices.push_back({node.to_double(tok[1]), node.to_double(tok[2])});
  }

  LineReader ele(ele_text, source + ".ele");
  ele.require(tok, 3, "element header");
  const long nt = ele.to_int(tok[0]);
  const long per = ele.to_int(tok[1]);
  if (nt < 1 || (per != 3 && per != 6)) ele.fail("malformed header (need <#triangles> <3|6> <#attr>)");
  auto vertex_ref = [&](LineReader& r, std::string_view t) {
    const long id = r.to_int(t);
    auto it = position.find(id);
    if (it == position.end()) r.fail("vertex index " + std::to_string(id) + " out of range");
    return it->second;
  };
  std::vector<std::array<int, 3>> cells;
  cells.reserve(nt);
  for (long i = 0; i < nt; ++i) {
    ele.require(tok, static_cast<std::size_t>(1 + per), "triangle line");
    std::array<int, 3> c{vertex_ref(ele, tok[1]), vertex_ref(ele, tok[2]), vertex_ref(ele, tok[3])};
    const Vec2 a = vertices[c[1]] - vertices[c[0]];
    const Vec2 b = vertices[c[2]] - vertices[c[0]];
    const double d2 = std::max({dot(a, a), dot(b, b), dot(b - a, b - a)});
    if (std::abs(cross(a, b)) <= 1e-14 * d2) ele.fail("degenerate (zero-area) triangle");
    cells.push_back(c);
  }

  Mesh::SegmentMarkers markers;
  if (poly_or_edge_text) {
    const bool is_poly = [&] {
      LineReader probe(*poly_or_edge_text, source);
      return probe.next(tok) && tok.size() >= 4;
    }();
    LineReader seg(*poly_or_edge_text, source + (is_poly ? ".poly" : ".edge"));
    if (is_poly) {
      seg.require(tok, 4, "poly node header");
      const long pnv = seg.to_int(tok[0]);
      const long pattr = seg.to_int(tok[2]);
      const long pmark = seg.to_int(tok[3]);
      for (long i = 0; i < pnv; ++i) seg.require(tok, static_cast<std::size_t>(3 + pattr + pmark), "poly vertex line");
    }
    seg.require(tok, 2, "segment header");
    const long ns = seg.to_int(tok[0]);
    const long smark = seg.to_int(tok[1]);
    if (ns < 0 || (smark != 0 && smark != 1)) seg.fail("malformed segment header");
    for (long i = 0; i < ns; ++i) {
      seg.require(tok, static_cast<std::size_t>(3 + smark), "segment line");
      int a = vertex_ref(seg, tok[1]);
      int b = vertex_ref(seg, tok[2]);
      if (a > b) std::swap(a, b);
      markers[{a, b}] = smark ? static_cast<int>(seg.to_int(tok[3])) : 0;
    }
  }
  return Mesh(std::move(vertices), std::move(cells), markers);
}

Mesh read_triangle_mesh(const std::string& base) {
  const std::string node = read_file(base + ".node");
  const std::string ele = read_file(base + ".ele");
  std::optional<std::string> seg;
  if (file_exists(base + ".poly")) {
    seg = read_file(base + ".poly");
  } else if (file_exists(base + ".edge")) {
    seg = read_file(base + ".edge");
  }
  std::optional<std::string_view> view;
  if (seg) view = *seg;
  return load_triangle_mesh(node, ele, view, base);
}

void write_triangle_mesh(const Mesh& mesh, const std::string& base) {
  auto open = [](const std::string& path) {
    std::ofstream out(path);
    if (!out) throw MeshError("cannot write " + path);
    out << std::setprecision(17);
    return out;
  };
  {
    auto out = open(base + ".node");
    out << mesh.num_vertices() << " 2 0 0\n";
    for (int i = 0; i < mesh.num_vertices(); ++i) {
      out << i + 1 << ' ' << mesh.vertices()[i].x << ' ' << mesh.vertices()[i].y << '\n';
    }
  }
  {
    auto out = open(base + ".ele");
    out << mesh.num_cells() << " 3 0\n";
    for (int c = 0; c < mesh.num_cells(); ++c) {
      const auto& v = mesh.cells()[c];
      out << c + 1 << ' ' << v[0] + 1 << ' ' << v[1] + 1 << ' ' << v[2] + 1 << '\n';
    }
  }
  {
    auto out = open(base + ".poly");
    int nb = 0;
    for (const Edge& e : mesh.edges()) nb += e.is_boundary();
    out << "0 2 0 0\n" << nb << " 1\n";
    int k = 0;
    for (const Edge& e : mesh.edges()) {
      if (!e.is_boundary()) continue;
      out << ++k << ' ' << e.vertices[0] + 1 << ' ' << e.vertices[1] + 1 << ' ' << e.marker << '\n';
    }
    out << "0\n";
  }
}

}  // namespace erdg
