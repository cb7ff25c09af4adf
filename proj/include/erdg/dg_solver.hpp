#pragma once

// Semidiscrete nodal DG operator with the entropy corrections
//
//   du/dt = M^-1 (S^x f + S^y g - sum_m B^m f*_m) + (lambda_ED + lambda_ER) G u
//
// evaluated cell by cell. Interior fluxes are computed once per edge in the
// normal direction of the edge's left cell.

#include <array>
#include <vector>

#include "erdg/cubature_filter.hpp"
#include "erdg/entropy_predictor.hpp"
#include "erdg/euler.hpp"
#include "erdg/mesh.hpp"
#include "erdg/reference_element.hpp"

namespace erdg {

/// Nodal values of every cell, cell-major.
struct Field {
  int num_cells = 0;
  int nodes_per_cell = 0;
  double t = 0.0;
  std::vector<ConsState> values;

  Field() = default;
  Field(int cells, int nodes) : num_cells(cells), nodes_per_cell(nodes), values(std::size_t(cells) * nodes) {}

  ConsState& at(int c, int l) { return values[std::size_t(c) * nodes_per_cell + l]; }
  const ConsState& at(int c, int l) const { return values[std::size_t(c) * nodes_per_cell + l]; }
  ConsState* cell(int c) { return values.data() + std::size_t(c) * nodes_per_cell; }
  const ConsState* cell(int c) const { return values.data() + std::size_t(c) * nodes_per_cell; }
};

/// Explicit physical operators of one cell, built from the affine mapping
/// rules. The solver itself applies the reference operators with geometric
/// factors and never stores these.
struct PhysicalMatrices {
  Matrix mass;
  Matrix stiffness_x;
  Matrix stiffness_y;
  std::array<Matrix, 3> boundary;
  Vector weights;  // |det J| w
};

PhysicalMatrices physical_matrices(const Mesh& mesh, const ReferenceElement& element,
                                   const Vector& cubature, int cell);

/// lambda_ED = max(0, (-boundary_flux - production) / dissipativity) where
/// boundary_flux is the outward edge-integrated numerical entropy flux,
/// production the w-weighted entropy rate of the uncorrected derivative and
/// dissipativity <U'(u), G u>_w <= 0. Returns 0 when dissipativity >= -guard.
double lambda_ed(double boundary_flux, double production, double dissipativity,
                 double guard = 1e-13);

/// One edge's share sigma / (d_in + d_out) of lambda_ER, clamped at 0; 0 when
/// the denominator is >= -guard. Boundary edges pass d_out = 0.
double lambda_er_term(double sigma, double d_in, double d_out, double guard = 1e-13);

struct StageReport {
  std::vector<double> lambda_ed;   // per cell
  std::vector<double> lambda_er;   // per cell
  std::vector<double> cell_entropy_rate;  // w-weighted, corrected derivative
  std::vector<double> cell_entropy_bound; // minus the outward entropy flux
  double sigma_sum = 0.0;               // all edges, boundary predictors included
  double entropy_rate = 0.0;            // sum over cells of dE/dt (corrected)
  double entropy_rate_uncorrected = 0.0;
  double boundary_entropy_flux = 0.0;   // outward, over boundary edges
  ConsState boundary_flux{};            // outward conserved flux over boundary edges
  double max_cell_inequality_excess = 0.0;  // max_Z rate_Z - bound_Z

  /// rate + boundary flux - sigma; <= 0 when the entropy rate bound holds.
  double rate_bound_excess() const { return entropy_rate + boundary_entropy_flux - sigma_sum; }
};

struct SolverOptions {
  bool entropy_dissipation = true;  // lambda_ED
  bool entropy_rate = true;         // lambda_ER
  double guard = 1e-13;
};

class DGOperator {
public:
  DGOperator(const Mesh& mesh, const ReferenceElement& element, const FilterGenerator& filter,
             BoundaryMap bcs, IdealGas gas, SolverOptions options = {});

  /// Corrected time derivative of u. Throws PositivityError on a non-physical
  /// nodal state.
  void evaluate(const Field& u, Field& dudt, StageReport* report = nullptr) const;

  /// Uncorrected DG derivative only.
  void evaluate_uncorrected(const Field& u, Field& dudt) const;

  /// w-weighted integrals of each conserved component, summed over cells.
  ConsState totals(const Field& u) const;
  /// sum_Z sum_k w_k U(u_k).
  double total_entropy(const Field& u) const;
  double cell_entropy(const Field& u, int c) const;

  /// Every nodal state is physical; otherwise PositivityError naming cell and node.
  void check_physical(const Field& u, const char* stage = "state") const;

  const Mesh& mesh() const { return mesh_; }
  const ReferenceElement& element() const { return element_; }
  const FilterGenerator& filter() const { return filter_; }
  const BoundaryMap& boundary_conditions() const { return bcs_; }
  const IdealGas& gas() const { return gas_; }
  const SolverOptions& options() const { return options_; }

private:
  struct EdgeData;
  void edge_pass(const Field& u, EdgeData& ed, bool need_entropy) const;
  void cell_rhs(const Field& u, const EdgeData& ed, int c, ConsState* out) const;

  const Mesh& mesh_;
  const ReferenceElement& element_;
  const FilterGenerator& filter_;
  BoundaryMap bcs_;
  IdealGas gas_;
  SolverOptions options_;
  int n_;
  int ne_;  // nodes per edge
  std::vector<double> diff_r_, diff_s_, gen_;  // row-major N x N
  std::array<std::vector<double>, 3> lift_;    // row-major N x (p + 1)
  std::vector<double> w_;
};

}  // namespace erdg
