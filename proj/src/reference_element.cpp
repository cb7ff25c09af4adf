#include "erdg/reference_element.hpp"

#include <cmath>
#include <string>

#include "erdg/error.hpp"

namespace erdg {

namespace {

void require_degree(int p) {
  if (p != 1 && p != 3) throw StartupError("unsupported polynomial degree " + std::to_string(p));
}

using Real = long double;

Real factorial(int n) {
  Real f = 1.0L;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Real binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

const std::array<Vec2, 3> kVertices{{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}};

// One term c * x^a y^b of a derivative.
struct Term {
  Real c;
  int a;
  int b;
};

// Expand basis function l (optionally differentiated) into monomial terms.
std::vector<Term> terms(const NodalBasis& basis, int l, int dx, int dy) {
  std::vector<Term> out;
  for (std::size_t k = 0; k < basis.exponents.size(); ++k) {
    auto [a, b] = basis.exponents[k];
    Real c = basis.coefficients_ext(k, l);
    if (dx) {
      c *= a;
      --a;
    }
    if (dy) {
      c *= b;
      --b;
    }
    if (c != 0.0L) out.push_back({c, a, b});
  }
  return out;
}

Real monomial_integral_ext(int a, int b) { return factorial(a) * factorial(b) / factorial(a + b + 2); }

Real monomial_edge_integral_ext(int a, int b, Vec2 from, Vec2 to) {
  const Real fx = from.x, fy = from.y, dx = Real(to.x) - fx, dy = Real(to.y) - fy;
  Real s = 0.0L;
  for (int i = 0; i <= a; ++i) {
    for (int j = 0; j <= b; ++j) {
      s += binomial(a, i) * std::pow(fx, a - i) * std::pow(dx, i) * binomial(b, j) * std::pow(fy, b - j) *
           std::pow(dy, j) / (i + j + 1);
    }
  }
  return s * std::sqrt(dx * dx + dy * dy);
}

template <class Integral>
double product_integral(const std::vector<Term>& u, const std::vector<Term>& v, Integral&& integral) {
  Real s = 0.0L;
  for (const Term& x : u) {
    for (const Term& y : v) s += x.c * y.c * integral(x.a + y.a, x.b + y.b);
  }
  return static_cast<double>(s);
}

}  // namespace

std::vector<std::pair<int, int>> monomial_exponents(int p) {
  std::vector<std::pair<int, int>> e;
  for (int d = 0; d <= p; ++d) {
    for (int b = 0; b <= d; ++b) e.emplace_back(d - b, b);
  }
  return e;
}

std::vector<Vec2> build_nodes(int p) {
  require_degree(p);
  std::vector<Vec2> nodes(kVertices.begin(), kVertices.end());
  if (p == 1) return nodes;
  const double g = 1.0 / std::sqrt(5.0);
  for (int m = 0; m < 3; ++m) {
    const Vec2 a = kVertices[m];
    const Vec2 b = kVertices[(m + 1) % 3];
    for (double t : {0.5 * (1.0 - g), 0.5 * (1.0 + g)}) nodes.push_back(a + t * (b - a));
  }
  nodes.push_back({1.0 / 3.0, 1.0 / 3.0});
  return nodes;
}

NodalBasis build_basis(int p, const std::vector<Vec2>& nodes) {
  require_degree(p);
  NodalBasis basis;
  basis.exponents = monomial_exponents(p);
  const int n = static_cast<int>(basis.exponents.size());
  if (static_cast<int>(nodes.size()) != n) {
    throw StartupError("expected " + std::to_string(n) + " nodes, got " + std::to_string(nodes.size()));
  }
  MatrixExt Vx(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const auto [a, b] = basis.exponents[k];
      Vx(i, k) = std::pow(Real(nodes[i].x), a) * std::pow(Real(nodes[i].y), b);
    }
  }
  const Matrix V = Vx.cast<double>();
  Eigen::JacobiSVD<Matrix> svd(V);
  const auto& sv = svd.singularValues();
  if (!(sv(n - 1) > 1e-12 * sv(0))) throw StartupError("nodes are not unisolvent (singular Vandermonde)");
  basis.condition_number = sv(0) / sv(n - 1);
  // V c_l = e_l for every l
  basis.coefficients_ext = Vx.fullPivLu().inverse();
  basis.coefficients = basis.coefficients_ext.cast<double>();
  return basis;
}

double monomial_integral(int a, int b) { return static_cast<double>(monomial_integral_ext(a, b)); }

double monomial_edge_integral(int a, int b, Vec2 from, Vec2 to) {
  return static_cast<double>(monomial_edge_integral_ext(a, b, from, to));
}

std::pair<std::vector<double>, std::vector<double>> edge_quadrature(int p) {
  require_degree(p);
  if (p == 1) return {{0.0, 1.0}, {0.5, 0.5}};
  const double g = 1.0 / std::sqrt(5.0);
  return {{0.0, 0.5 * (1.0 - g), 0.5 * (1.0 + g), 1.0}, {1.0 / 12, 5.0 / 12, 5.0 / 12, 1.0 / 12}};
}

Gramians build_gramians(const NodalBasis& basis) {
  const int n = static_cast<int>(basis.coefficients.cols());
  Gramians g;
  g.mass.resize(n, n);
  g.stiffness_r.resize(n, n);
  g.stiffness_s.resize(n, n);
  g.gradient.resize(n, n);
  for (auto& b : g.boundary) b.resize(n, n);
  g.basis_integrals.resize(n);

  std::vector<std::vector<Term>> phi, dr, ds;
  for (int l = 0; l < n; ++l) {
    phi.push_back(terms(basis, l, 0, 0));
    dr.push_back(terms(basis, l, 1, 0));
    ds.push_back(terms(basis, l, 0, 1));
  }
  const std::vector<Term> one{{1.0, 0, 0}};
  for (int k = 0; k < n; ++k) {
    g.basis_integrals(k) = product_integral(phi[k], one, monomial_integral_ext);
    for (int l = 0; l < n; ++l) {
      g.mass(k, l) = product_integral(phi[k], phi[l], monomial_integral_ext);
      g.stiffness_r(k, l) = product_integral(dr[k], phi[l], monomial_integral_ext);
      g.stiffness_s(k, l) = product_integral(ds[k], phi[l], monomial_integral_ext);
      g.gradient(k, l) = product_integral(dr[k], dr[l], monomial_integral_ext) +
                         product_integral(ds[k], ds[l], monomial_integral_ext);
      for (int m = 0; m < 3; ++m) {
        const Vec2 a = kVertices[m];
        const Vec2 b = kVertices[(m + 1) % 3];
        g.boundary[m](k, l) = product_integral(
            phi[k], phi[l], [&](int i, int j) { return monomial_edge_integral_ext(i, j, a, b); });
      }
    }
  }
  return g;
}

double ReferenceElement::reference_edge_length(int m) { return m == 1 ? std::sqrt(2.0) : 1.0; }

ReferenceElement::ReferenceElement(int p) : p_(p) {
  require_degree(p);
  nodes_ = build_nodes(p);
  n_ = static_cast<int>(nodes_.size());
  basis_ = build_basis(p, nodes_);
  g_ = build_gramians(basis_);
  inv_mass_ = g_.mass.inverse();
  diff_r_ = inv_mass_ * g_.stiffness_r;
  diff_s_ = inv_mass_ * g_.stiffness_s;
  std::tie(gl_points_, gl_weights_) = edge_quadrature(p);
  for (int m = 0; m < 3; ++m) {
    auto& en = edge_nodes_[m];
    en.push_back(m);
    if (p == 3) {
      en.push_back(3 + 2 * m);
      en.push_back(4 + 2 * m);
    }
    en.push_back((m + 1) % 3);
    lift_[m].resize(n_, p + 1);
    const Matrix mb = inv_mass_ * g_.boundary[m];
    for (int j = 0; j <= p; ++j) lift_[m].col(j) = mb.col(en[j]) / reference_edge_length(m);
  }
}

Vector ReferenceElement::eval_basis(Vec2 rs) const {
  const int n = num_nodes();
  Vector mono(n);
  for (int k = 0; k < n; ++k) {
    const auto [a, b] = basis_.exponents[k];
    mono(k) = std::pow(rs.x, a) * std::pow(rs.y, b);
  }
  return basis_.coefficients.transpose() * mono;
}

Matrix ReferenceElement::eval_basis_gradient(Vec2 rs) const {
  const int n = num_nodes();
  Matrix mono(n, 2);
  for (int k = 0; k < n; ++k) {
    const auto [a, b] = basis_.exponents[k];
    mono(k, 0) = a > 0 ? a * std::pow(rs.x, a - 1) * std::pow(rs.y, b) : 0.0;
    mono(k, 1) = b > 0 ? b * std::pow(rs.x, a) * std::pow(rs.y, b - 1) : 0.0;
  }
  return basis_.coefficients.transpose() * mono;
}

}  // namespace erdg
