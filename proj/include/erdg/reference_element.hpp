#pragma once

// Nodal Lagrange element on the reference triangle (0,0), (1,0), (0,1) for
// degrees 1 and 3, with Gramians computed by exact monomial integration in
// extended precision, so that identities such as integration by parts hold
// to double round-off despite the cancellation in the monomial expansion.
//
// Node order: the three vertices, then (p = 3) two Gauss-Lobatto points per
// edge in edge direction, then the barycenter. Local edge m runs from vertex m
// to vertex (m + 1) % 3.

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "erdg/state.hpp"

namespace erdg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using MatrixExt = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

/// Exponent pairs (a, b) of the monomials x^a y^b with a + b <= p.
std::vector<std::pair<int, int>> monomial_exponents(int p);

std::vector<Vec2> build_nodes(int p);

struct NodalBasis {
  std::vector<std::pair<int, int>> exponents;
  Matrix coefficients;     // column l holds the monomial coefficients of phi_l
  MatrixExt coefficients_ext;  // the same in extended precision
  double condition_number = 0.0;
};

/// Invert the generalized Vandermonde matrix; throws StartupError when the
/// nodes are not unisolvent.
NodalBasis build_basis(int p, const std::vector<Vec2>& nodes);

/// Integral of x^a y^b over the reference triangle, a! b! / (a + b + 2)!.
double monomial_integral(int a, int b);

/// Integral of x^a y^b along the straight segment from `from` to `to`.
double monomial_edge_integral(int a, int b, Vec2 from, Vec2 to);

/// Gauss-Lobatto points and weights on [0, 1] with p + 1 points.
std::pair<std::vector<double>, std::vector<double>> edge_quadrature(int p);

struct Gramians {
  Matrix mass;         // int phi_k phi_l
  Matrix stiffness_r;  // int d_r phi_k phi_l
  Matrix stiffness_s;  // int d_s phi_k phi_l
  Matrix gradient;     // int grad phi_k . grad phi_l
  std::array<Matrix, 3> boundary;  // int_{edge m} phi_k phi_l
  Vector basis_integrals;          // int phi_k
};

Gramians build_gramians(const NodalBasis& basis);

class ReferenceElement {
public:
  explicit ReferenceElement(int p);

  int degree() const { return p_; }
  int num_nodes() const { return n_; }
  int nodes_per_edge() const { return p_ + 1; }
  const std::vector<Vec2>& nodes() const { return nodes_; }
  const NodalBasis& basis() const { return basis_; }

  const Matrix& mass() const { return g_.mass; }
  const Matrix& stiffness_r() const { return g_.stiffness_r; }
  const Matrix& stiffness_s() const { return g_.stiffness_s; }
  const Matrix& gradient_gramian() const { return g_.gradient; }
  const Matrix& boundary(int m) const { return g_.boundary[m]; }
  const Vector& basis_integrals() const { return g_.basis_integrals; }
  const Matrix& inverse_mass() const { return inv_mass_; }

  /// Local node indices along edge m, ordered from vertex m to vertex m + 1.
  const std::vector<int>& edge_nodes(int m) const { return edge_nodes_[m]; }
  const std::vector<double>& edge_quad_points() const { return gl_points_; }
  const std::vector<double>& edge_quad_weights() const { return gl_weights_; }
  static double reference_edge_length(int m);

  /// Values phi_l(r, s) of all basis functions.
  Vector eval_basis(Vec2 rs) const;
  /// Gradients: column 0 is d/dr, column 1 is d/ds.
  Matrix eval_basis_gradient(Vec2 rs) const;

  /// Mass-inverse times stiffness, the weak-form derivative operators of the
  /// volume term: (M^-1 S^r f)_k = M^-1 int d_r(phi_k) f.
  const Matrix& diff_r() const { return diff_r_; }
  const Matrix& diff_s() const { return diff_s_; }
  /// M^-1 B^m restricted to the columns of edge m's nodes, divided by the
  /// reference edge length (N x (p + 1)).
  const Matrix& lift(int m) const { return lift_[m]; }

private:
  int p_;
  int n_;
  std::vector<Vec2> nodes_;
  NodalBasis basis_;
  Gramians g_;
  Matrix inv_mass_;
  Matrix diff_r_, diff_s_;
  std::array<Matrix, 3> lift_;
  std::array<std::vector<int>, 3> edge_nodes_;
  std::vector<double> gl_points_, gl_weights_;
};

}  // namespace erdg
