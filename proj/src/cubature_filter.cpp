#include "erdg/cubature_filter.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "erdg/error.hpp"

namespace erdg {

PositiveCubature pocs_cubature(const ReferenceElement& element, const Vector& w0,
                               const PocsOptions& options) {
  const int n = element.num_nodes();
  if (w0.size() != n) throw StartupError("initial cubature has wrong length");
  // Row k of A holds phi_k at all nodes; for a nodal basis this is e_k, but
  // the projection is written for a general basis evaluation.
  Matrix A(n, n);
  for (int l = 0; l < n; ++l) A.col(l) = element.eval_basis(element.nodes()[l]);
  const Vector& b = element.basis_integrals();

  PositiveCubature out;
  Vector w = w0;
  auto residual = [&] { return (A * w - b).cwiseAbs().maxCoeff(); };
  for (int it = 0; it <= options.max_iter; ++it) {
    out.moment_residual = residual();
    if (out.moment_residual < options.tol && w.minCoeff() > -options.negative_slack) {
      out.weights = w;
      out.iterations = it;
      return out;
    }
    w = w.cwiseMax(0.0);
    for (int k = 0; k < n; ++k) {
      const auto a = A.row(k);
      w -= ((a.dot(w) - b(k)) / a.squaredNorm()) * a.transpose();
    }
  }
  std::ostringstream msg;
  msg << "no positive cubature after " << options.max_iter << " iterations (moment residual "
      << out.moment_residual << ", min weight " << w.minCoeff() << ")";
  throw StartupError(msg.str());
}

PositiveCubature pocs_cubature(const ReferenceElement& element) {
  const int n = element.num_nodes();
  return pocs_cubature(element, Vector::Constant(n, 0.5 / n));
}

Matrix laplacian_generator(const ReferenceElement& element) {
  return -element.mass().ldlt().solve(element.gradient_gramian());
}

Matrix matrix_exponential(const Matrix& A) {
  const int n = static_cast<int>(A.rows());
  const double norm1 = A.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const Matrix B = A / std::ldexp(1.0, squarings);
  // Horner form of sum_{k <= 18} B^k / k!; with ||B|| <= 1/2 the truncation
  // error is below 0.5^19 / 19! relative.
  Matrix E = Matrix::Identity(n, n);
  for (int k = 18; k >= 1; --k) E = Matrix::Identity(n, n) + (B * E) / k;
  for (int s = 0; s < squarings; ++s) E = E * E;
  return E;
}

namespace {

double min_entry(const Matrix& L, double t) { return matrix_exponential(t * L).minCoeff(); }

}  // namespace

double find_positivity_time(const Matrix& L, const PositivityTimeOptions& o) {
  auto ok = [&](double t) { return min_entry(L, t) >= o.entry_tol; };
  if (L.cwiseAbs().maxCoeff() == 0.0 || ok(o.t_min)) return o.t_min;
  double hi = 1.0;
  while (!ok(hi)) {
    hi *= 2.0;
    if (hi > o.t_max) throw StartupError("exp(tL) has a negative entry for all t up to t_max");
  }
  double lo = o.t_min;
  // lo is never positive; shrink toward the first positive time from above.
  if (hi > 1.0) lo = hi / 2.0;
  while (hi - lo > o.rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

Matrix phi1(const Matrix& A) {
  const Eigen::Index n = A.rows();
  Matrix aug = Matrix::Zero(2 * n, 2 * n);
  aug.topLeftCorner(n, n) = A;
  aug.topRightCorner(n, n) = Matrix::Identity(n, n);
  return matrix_exponential(aug).topRightCorner(n, n);
}

FilterGenerator build_filter_generator(const ReferenceElement& element,
                                       const PositiveCubature& cubature) {
  const int n = element.num_nodes();
  FilterGenerator f;
  f.weights = cubature.weights;
  f.laplacian = laplacian_generator(element);
  f.positivity_time = find_positivity_time(f.laplacian);
  f.filter = matrix_exponential(f.positivity_time * f.laplacian);
  // (C - I) / t* cancels badly for small t*; phi1(t* L) L is the same matrix
  // and keeps L's exact null spaces.
  f.generator = phi1(f.positivity_time * f.laplacian) * f.laplacian;

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (f.filter(i, j) < -1e-12) {
        throw StartupError("filter entry (" + std::to_string(i) + ", " + std::to_string(j) +
                           ") is negative");
      }
    }
    if (std::abs(f.filter.row(i).sum() - 1.0) > 1e-9) {
      throw StartupError("filter row " + std::to_string(i) + " does not sum to one");
    }
  }
  const Vector wc = f.filter.transpose() * f.weights;
  for (int j = 0; j < n; ++j) {
    if (std::abs(wc(j) - f.weights(j)) > 1e-9) {
      throw StartupError("filter is not conservative in column " + std::to_string(j));
    }
  }
  return f;
}

}  // namespace erdg
