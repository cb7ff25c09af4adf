#pragma once

// Positive cubature on the element nodes and the conservative filter
// generator G = (exp(t* L) - I) / t*, L = -M^-1 Q.

#include "erdg/reference_element.hpp"

namespace erdg {

struct PositiveCubature {
  Vector weights;
  int iterations = 0;
  double moment_residual = 0.0;  // max_k |sum_l w_l phi_k(x_l) - int phi_k|
};

struct PocsOptions {
  int max_iter = 1000000;
  double tol = 1e-12;
  double negative_slack = 1e-13;
};

/// Alternating projections: clip to w >= 0, then project onto every exactness
/// hyperplane in turn. Throws StartupError if no positive exact cubature is
/// reached within max_iter sweeps.
PositiveCubature pocs_cubature(const ReferenceElement& element, const Vector& w0,
                               const PocsOptions& options = {});
PositiveCubature pocs_cubature(const ReferenceElement& element);

/// L = -M^-1 Q with Q the exact gradient Gramian.
Matrix laplacian_generator(const ReferenceElement& element);

/// exp(A) by scaling and squaring of a degree-18 Taylor polynomial.
Matrix matrix_exponential(const Matrix& A);

/// phi1(A) = sum_k A^k / (k + 1)!, so that exp(A) = I + phi1(A) A.
Matrix phi1(const Matrix& A);

struct PositivityTimeOptions {
  double t_min = 1e-8;
  double t_max = 1e12;
  double entry_tol = -1e-12;  // smallest entry still counted as nonnegative
  double rel_tol = 1e-6;      // bisection bracket width relative to t
};

/// Smallest t >= t_min (to rel_tol) with min entry of exp(t L) >= entry_tol.
/// Throws StartupError if none exists below t_max.
double find_positivity_time(const Matrix& L, const PositivityTimeOptions& options = {});

struct FilterGenerator {
  Matrix laplacian;      // L
  double positivity_time = 0.0;
  Matrix filter;         // C(t*)
  Matrix generator;      // G
  Vector weights;        // cubature used for conservativity
};

/// Builds L, t*, C and G and verifies positivity, unit row sums and w^T C = w^T.
/// Throws StartupError naming the offending row or column on failure.
FilterGenerator build_filter_generator(const ReferenceElement& element,
                                       const PositiveCubature& cubature);

}  // namespace erdg
