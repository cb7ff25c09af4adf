#pragma once

// Run configuration: a flat text file of `key = value` lines, '#' comments.
//
//   case      = accuracy | sedov | ffs | naca | constant
//   mesh      = meshes/accuracy_1        # Triangle base name, relative to the file
//   degree    = 1 | 3
//   cfl       = 0.5                      # default 0.5 for p = 1, 0.1 for p = 3
//   t_end     = 1.0
//   snapshots = 0.5 1.0                  # extra VTK output times
//   gamma     = 1.4
//   bc.1      = reflective
//   bc.2      = coupling_fixed 1.4 3 0 1 # rho vx vy p; omitted values: case free stream
//   bc.3      = coupling_copy
//   output    = out/ffs
//   max_steps = 100                      # optional step limit
//   naca.mach = 0.8
//   naca.alpha_deg = 1.25
//   constant.state = 1 0.5 0.25 1        # rho vx vy p
//   vtk       = true

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "erdg/state.hpp"

namespace erdg {

enum class CaseKind { accuracy, sedov, ffs, naca, constant };

struct BoundarySpec {
  std::string kind;                 // reflective | coupling_fixed | coupling_copy
  std::optional<PrimState> state;   // coupling_fixed exterior; empty = case free stream
};

struct RunConfig {
  CaseKind case_kind = CaseKind::constant;
  std::string case_name = "constant";
  std::string mesh;                 // resolved Triangle base path
  int degree = 1;
  double cfl = 0.5;
  double t_end = 1.0;
  std::vector<double> snapshots;
  double gamma = 1.4;
  std::map<int, BoundarySpec> bcs;
  std::string output = "output";
  long max_steps = -1;
  double naca_mach = 0.8;
  double naca_alpha_deg = 1.25;
  PrimState constant_state{1.0, 0.0, 0.0, 1.0};
  bool write_vtk = true;
};

/// Parse configuration text. Relative mesh paths are resolved against
/// `base_dir`; `source` names the text in error messages.
RunConfig parse_config(std::string_view text, const std::string& base_dir = ".",
                       const std::string& source = "config");

RunConfig load_config(const std::string& path);

CaseKind parse_case(const std::string& name);

}  // namespace erdg
