#include "erdg/config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "erdg/error.hpp"

namespace erdg {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

class Context {
public:
  Context(std::string source, int line) : source_(std::move(source)), line_(line) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(source_ + ":" + std::to_string(line_) + ": " + msg);
  }

  double number(const std::string& tok) const {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) fail("expected number, got '" + tok + "'");
    return v;
  }

  long integer(const std::string& tok) const {
    long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) fail("expected integer, got '" + tok + "'");
    return v;
  }

  PrimState prim(const std::vector<std::string>& t, std::size_t first) const {
    if (t.size() != first + 4) fail("expected four values: rho vx vy p");
    PrimState q{number(t[first]), number(t[first + 1]), number(t[first + 2]), number(t[first + 3])};
    if (!(q.rho > 0.0 && q.p > 0.0)) fail("state needs positive density and pressure");
    return q;
  }

private:
  std::string source_;
  int line_;
};

}  // namespace

CaseKind parse_case(const std::string& name) {
  if (name == "accuracy") return CaseKind::accuracy;
  if (name == "sedov") return CaseKind::sedov;
  if (name == "ffs") return CaseKind::ffs;
  if (name == "naca") return CaseKind::naca;
  if (name == "constant") return CaseKind::constant;
  throw ConfigError("unknown case '" + name + "'");
}

RunConfig parse_config(std::string_view text, const std::string& base_dir, const std::string& source) {
  RunConfig cfg;
  std::optional<double> cfl;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const Context ctx(source, line_no);
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) ctx.fail("expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty() || value.empty()) ctx.fail("empty key or value");
    if (!seen.insert(key).second) ctx.fail("duplicate key '" + key + "'");
    const auto tok = split(value);

    if (key == "case") {
      try {
        cfg.case_kind = parse_case(value);
      } catch (const ConfigError& e) {
        ctx.fail(e.what());
      }
      cfg.case_name = value;
    } else if (key == "mesh") {
      std::filesystem::path p(value);
      cfg.mesh = p.is_absolute() ? p.string() : (std::filesystem::path(base_dir) / p).lexically_normal().string();
    } else if (key == "degree") {
      cfg.degree = static_cast<int>(ctx.integer(value));
      if (cfg.degree != 1 && cfg.degree != 3) ctx.fail("degree must be 1 or 3");
    } else if (key == "cfl") {
      cfl = ctx.number(value);
      if (!(*cfl > 0.0)) ctx.fail("cfl must be positive");
    } else if (key == "t_end") {
      cfg.t_end = ctx.number(value);
      if (!(cfg.t_end > 0.0)) ctx.fail("t_end must be positive");
    } else if (key == "snapshots") {
      for (const auto& t : tok) cfg.snapshots.push_back(ctx.number(t));
    } else if (key == "gamma") {
      cfg.gamma = ctx.number(value);
      if (!(cfg.gamma > 1.0)) ctx.fail("gamma must exceed 1");
    } else if (key.rfind("bc.", 0) == 0) {
      const int marker = static_cast<int>(ctx.integer(key.substr(3)));
      BoundarySpec spec;
      spec.kind = tok[0];
      if (spec.kind == "coupling_fixed") {
        if (tok.size() > 1) spec.state = ctx.prim(tok, 1);
      } else if (spec.kind == "reflective" || spec.kind == "coupling_copy") {
        if (tok.size() != 1) ctx.fail(spec.kind + " takes no values");
      } else {
        ctx.fail("unknown boundary kind '" + spec.kind + "'");
      }
      cfg.bcs[marker] = spec;
    } else if (key == "output") {
      cfg.output = value;
    } else if (key == "max_steps") {
      cfg.max_steps = ctx.integer(value);
    } else if (key == "naca.mach") {
      cfg.naca_mach = ctx.number(value);
    } else if (key == "naca.alpha_deg") {
      cfg.naca_alpha_deg = ctx.number(value);
    } else if (key == "constant.state") {
      cfg.constant_state = ctx.prim(tok, 0);
    } else if (key == "vtk") {
      if (value != "true" && value != "false") ctx.fail("vtk must be true or false");
      cfg.write_vtk = value == "true";
    } else {
      ctx.fail("unknown key '" + key + "'");
    }
  }
  if (cfg.mesh.empty()) throw ConfigError(source + ": missing 'mesh'");
  cfg.cfl = cfl ? *cfl : (cfg.degree == 1 ? 0.5 : 0.1);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_config(ss.str(), dir.empty() ? "." : dir.string(), path);
}

}  // namespace erdg
