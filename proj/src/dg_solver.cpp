#include "erdg/dg_solver.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "erdg/error.hpp"

namespace erdg {

namespace {

std::vector<double> row_major(const Matrix& A) {
  std::vector<double> out(A.size());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) out[i * A.cols() + j] = A(i, j);
  }
  return out;
}

}  // namespace

PhysicalMatrices physical_matrices(const Mesh& mesh, const ReferenceElement& element,
                                   const Vector& cubature, int cell) {
  const CellGeometry& g = mesh.geometry(cell);
  const double det = g.det_jacobian;
  const auto& inv = g.inv_jacobian;
  PhysicalMatrices pm;
  pm.mass = det * element.mass();
  pm.stiffness_x = det * (element.stiffness_r() * inv[0][0] + element.stiffness_s() * inv[1][0]);
  pm.stiffness_y = det * (element.stiffness_r() * inv[0][1] + element.stiffness_s() * inv[1][1]);
  for (int m = 0; m < 3; ++m) {
    pm.boundary[m] = element.boundary(m) * (g.edge_lengths[m] / ReferenceElement::reference_edge_length(m));
  }
  pm.weights = det * cubature;
  return pm;
}

double lambda_ed(double boundary_flux, double production, double dissipativity, double guard) {
  if (dissipativity >= -guard) return 0.0;
  return std::max(0.0, (-boundary_flux - production) / dissipativity);
}

double lambda_er_term(double sigma, double d_in, double d_out, double guard) {
  const double d = d_in + d_out;
  if (d >= -guard) return 0.0;
  return std::max(0.0, sigma / d);
}

struct DGOperator::EdgeData {
  std::vector<ConsState> flux;          // (p + 1) per edge, left cell's normal
  std::vector<double> entropy_flux;     // edge-integrated, out of the left cell
  std::vector<double> sigma;            // edge-integrated predictor
};

DGOperator::DGOperator(const Mesh& mesh, const ReferenceElement& element,
                       const FilterGenerator& filter, BoundaryMap bcs, IdealGas gas,
                       SolverOptions options)
    : mesh_(mesh), element_(element), filter_(filter), bcs_(std::move(bcs)), gas_(gas),
      options_(options), n_(element.num_nodes()), ne_(element.nodes_per_edge()) {
  for (const Edge& e : mesh.edges()) {
    if (e.is_boundary()) boundary_condition(bcs_, e.marker);
  }
  diff_r_ = row_major(element.diff_r());
  diff_s_ = row_major(element.diff_s());
  gen_ = row_major(filter.generator);
  for (int m = 0; m < 3; ++m) lift_[m] = row_major(element.lift(m));
  w_.assign(filter.weights.data(), filter.weights.data() + n_);
}

void DGOperator::check_physical(const Field& u, const char* stage) const {
  for (int c = 0; c < u.num_cells; ++c) {
    for (int l = 0; l < n_; ++l) {
      const ConsState& s = u.at(c, l);
      if (!gas_.is_physical(s)) {
        std::ostringstream msg;
        const Vec2 x = mesh_.centroid(c);
        msg << "non-physical " << stage << " in cell " << c << " node " << l << " (centroid " << x.x
            << ", " << x.y << "): rho=" << s.rho << " p=" << gas_.pressure(s);
        throw PositivityError(msg.str());
      }
    }
  }
}

void DGOperator::edge_pass(const Field& u, EdgeData& ed, bool need_entropy) const {
  const int ne = mesh_.num_edges();
  const int p = ne_ - 1;
  const auto& gw = element_.edge_quad_weights();
  ed.flux.resize(std::size_t(ne) * ne_);
  ed.entropy_flux.assign(ne, 0.0);
  ed.sigma.assign(ne, 0.0);
#pragma omp parallel for schedule(static)
  for (int e = 0; e < ne; ++e) {
    const Edge& edge = mesh_.edge(e);
    const CellGeometry& g = mesh_.geometry(edge.left);
    const Vec2 n = g.outward_normals[edge.left_local];
    const double len = g.edge_lengths[edge.left_local];
    const auto& in_nodes = element_.edge_nodes(edge.left_local);
    const BoundaryCondition* bc = edge.is_boundary() ? &bcs_.at(edge.marker) : nullptr;
    const bool wall = bc && bc->kind == BoundaryKind::reflective;
    double phi = 0.0;
    double sig = 0.0;
    for (int j = 0; j <= p; ++j) {
      const ConsState& ul = u.at(edge.left, in_nodes[j]);
      const ConsState ur = bc ? ghost_state(*bc, ul, n)
                              : u.at(edge.right, element_.edge_nodes(edge.right_local)[p - j]);
      const WaveSpeeds a = gas_.wave_speeds(ul, ur, n);
      ed.flux[std::size_t(e) * ne_ + j] = gas_.hll_flux(ul, ur, n, a);
      if (!need_entropy) continue;
      if (!wall) phi += gw[j] * gas_.hll_entropy_flux(ul, ur, n, a);
      double s = 0.0;
      if (!bc) {
        s = sigma_1d(gas_, ul, ur, n, a);
      } else if (wall) {
        s = 0.5 * sigma_1d(gas_, ul, ur, n, a);
      } else if (!(a.left > 0.0)) {
        s = sigma_1d(gas_, ul, ur, n, a);
      }
      sig += gw[j] * s;
    }
    ed.entropy_flux[e] = len * phi;
    ed.sigma[e] = len * sig;
  }
}

void DGOperator::cell_rhs(const Field& u, const EdgeData& ed, int c, ConsState* out) const {
  const int n = n_;
  const int p = ne_ - 1;
  const CellGeometry& g = mesh_.geometry(c);
  const Vec2 grad_r{g.inv_jacobian[0][0], g.inv_jacobian[0][1]};
  const Vec2 grad_s{g.inv_jacobian[1][0], g.inv_jacobian[1][1]};
  const ConsState* uc = u.cell(c);
  ConsState fr[10], fs[10];
  for (int l = 0; l < n; ++l) {
    // flux(u, v) is linear in v: f v_x + g v_y
    fr[l] = gas_.flux(uc[l], grad_r);
    fs[l] = gas_.flux(uc[l], grad_s);
  }
  for (int k = 0; k < n; ++k) {
    ConsState acc{};
    const double* dr = &diff_r_[k * n];
    const double* ds = &diff_s_[k * n];
    for (int l = 0; l < n; ++l) {
      acc += dr[l] * fr[l];
      acc += ds[l] * fs[l];
    }
    out[k] = acc;
  }
  for (int m = 0; m < 3; ++m) {
    const int e = mesh_.cell_edge(c, m);
    const bool left = mesh_.edge(e).left == c;
    const ConsState* fe = &ed.flux[std::size_t(e) * ne_];
    const double scale = g.edge_lengths[m] / g.det_jacobian;
    const double* lift = lift_[m].data();
    for (int j = 0; j <= p; ++j) {
      const ConsState fstar = left ? fe[j] : -1.0 * fe[p - j];
      for (int k = 0; k < n; ++k) out[k] -= (scale * lift[k * ne_ + j]) * fstar;
    }
  }
}

void DGOperator::evaluate_uncorrected(const Field& u, Field& dudt) const {
  check_physical(u);
  EdgeData ed;
  edge_pass(u, ed, false);
  dudt = Field(u.num_cells, n_);
  dudt.t = u.t;
#pragma omp parallel for schedule(static)
  for (int c = 0; c < u.num_cells; ++c) cell_rhs(u, ed, c, dudt.cell(c));
}

void DGOperator::evaluate(const Field& u, Field& dudt, StageReport* report) const {
  check_physical(u);
  const int nc = u.num_cells;
  const int n = n_;
  EdgeData ed;
  edge_pass(u, ed, true);
  dudt = Field(nc, n);
  dudt.t = u.t;
  Field gu(nc, n);
  std::vector<double> prod(nc), diss(nc), phi(nc);

#pragma omp parallel for schedule(static)
  for (int c = 0; c < nc; ++c) {
    ConsState* du = dudt.cell(c);
    cell_rhs(u, ed, c, du);
    const ConsState* uc = u.cell(c);
    ConsState* gc = gu.cell(c);
    const double det = mesh_.geometry(c).det_jacobian;
    double r = 0.0;
    double d = 0.0;
    for (int k = 0; k < n; ++k) {
      ConsState acc{};
      const double* gr = &gen_[k * n];
      for (int l = 0; l < n; ++l) acc += gr[l] * uc[l];
      gc[k] = acc;
      const ConsState v = gas_.entropy_variables(uc[k]);
      r += det * w_[k] * dot(v, du[k]);
      d += det * w_[k] * dot(v, acc);
    }
    double f = 0.0;
    for (int m = 0; m < 3; ++m) {
      const int e = mesh_.cell_edge(c, m);
      f += mesh_.edge(e).left == c ? ed.entropy_flux[e] : -ed.entropy_flux[e];
    }
    prod[c] = r;
    diss[c] = d;
    phi[c] = f;
  }

  std::vector<double> led(nc, 0.0), ler(nc, 0.0);
  const double guard = options_.guard;
#pragma omp parallel for schedule(static)
  for (int c = 0; c < nc; ++c) {
    if (options_.entropy_dissipation) led[c] = lambda_ed(phi[c], prod[c], diss[c], guard);
    if (options_.entropy_rate) {
      double s = 0.0;
      for (int m = 0; m < 3; ++m) {
        const int e = mesh_.cell_edge(c, m);
        const Edge& edge = mesh_.edge(e);
        const double d_out = edge.is_boundary() ? 0.0 : diss[edge.left == c ? edge.right : edge.left];
        s += lambda_er_term(ed.sigma[e], diss[c], d_out, guard);
      }
      ler[c] = s;
    }
    const double lambda = led[c] + ler[c];
    if (lambda != 0.0) {
      ConsState* du = dudt.cell(c);
      const ConsState* gc = gu.cell(c);
      for (int k = 0; k < n; ++k) du[k] += lambda * gc[k];
    }
  }

  if (!report) return;
  StageReport& r = *report;
  r = StageReport{};
  r.lambda_ed = std::move(led);
  r.lambda_er = std::move(ler);
  r.cell_entropy_rate.resize(nc);
  r.cell_entropy_bound.resize(nc);
  r.max_cell_inequality_excess = -std::numeric_limits<double>::infinity();
  for (int c = 0; c < nc; ++c) {
    const double rate = prod[c] + (r.lambda_ed[c] + r.lambda_er[c]) * diss[c];
    r.cell_entropy_rate[c] = rate;
    r.cell_entropy_bound[c] = -phi[c];
    r.entropy_rate += rate;
    r.entropy_rate_uncorrected += prod[c];
    r.max_cell_inequality_excess = std::max(r.max_cell_inequality_excess, rate + phi[c]);
  }
  const auto& gw = element_.edge_quad_weights();
  for (int e = 0; e < mesh_.num_edges(); ++e) {
    r.sigma_sum += ed.sigma[e];
    const Edge& edge = mesh_.edge(e);
    if (!edge.is_boundary()) continue;
    r.boundary_entropy_flux += ed.entropy_flux[e];
    const double len = mesh_.geometry(edge.left).edge_lengths[edge.left_local];
    for (int j = 0; j < ne_; ++j) r.boundary_flux += (len * gw[j]) * ed.flux[std::size_t(e) * ne_ + j];
  }
}

ConsState DGOperator::totals(const Field& u) const {
  ConsState s{};
  for (int c = 0; c < u.num_cells; ++c) {
    const double det = mesh_.geometry(c).det_jacobian;
    for (int k = 0; k < n_; ++k) s += (det * w_[k]) * u.at(c, k);
  }
  return s;
}

double DGOperator::cell_entropy(const Field& u, int c) const {
  const double det = mesh_.geometry(c).det_jacobian;
  double s = 0.0;
  for (int k = 0; k < n_; ++k) s += det * w_[k] * gas_.entropy(u.at(c, k));
  return s;
}

double DGOperator::total_entropy(const Field& u) const {
  double s = 0.0;
  for (int c = 0; c < u.num_cells; ++c) s += cell_entropy(u, c);
  return s;
}

}  // namespace erdg
