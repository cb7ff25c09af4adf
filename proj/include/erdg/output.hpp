#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "erdg/dg_solver.hpp"

namespace erdg {

/// Legacy ASCII VTK unstructured grid, discontinuous: every cell writes its
/// own nodes. p = 1 cells become one triangle, p = 3 cells the 9 triangles of
/// the node lattice. Point data: rho, pressure, Mach, entropy.
void write_vtk(std::ostream& out, const Field& u, const Mesh& mesh, const ReferenceElement& element,
               const IdealGas& gas, const std::string& title = "erdg");
void write_vtk(const std::string& path, const Field& u, const Mesh& mesh,
               const ReferenceElement& element, const IdealGas& gas);

/// Local node triples of the sub-triangulation used for output.
std::vector<std::array<int, 3>> output_subtriangles(int degree);

struct DiagnosticsRow {
  long step = 0;
  double t = 0.0;
  double dt = 0.0;
  ConsState totals{};
  double entropy = 0.0;
  double lambda_ed_sum = 0.0;
  double lambda_er_sum = 0.0;
  double min_rho = 0.0;
  double min_p = 0.0;
  double sigma_sum = 0.0;
  double entropy_rate = 0.0;
  double boundary_entropy_flux = 0.0;
  double rate_bound_excess = 0.0;      // max over stages of rate + boundary flux - sigma
  double cell_inequality_excess = 0.0;  // max over cells and stages
  double entropy_step_residual = 0.0;   // E_new - E_old + dt * boundary entropy flux
  double conservation_residual = 0.0;   // max relative over components
};

void write_diagnostics(std::ostream& out, const std::vector<DiagnosticsRow>& rows);
void write_diagnostics(const std::string& path, const std::vector<DiagnosticsRow>& rows);

struct EocRow {
  int cells = 0;
  double mean_area = 0.0;
  double h = 0.0;  // sqrt(mean_area)
  double error = 0.0;
  double eoc = 0.0;  // NaN on the first row
};

/// log(e1 / e2) / log(h1 / h2) between consecutive rows.
void fill_eoc(std::vector<EocRow>& rows);
void write_eoc_csv(std::ostream& out, const std::vector<EocRow>& rows);
std::string format_eoc_table(const std::vector<EocRow>& rows);

}  // namespace erdg
