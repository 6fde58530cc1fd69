#include "cdlab/stability.hpp"

#include <cmath>
#include <limits>

#include "cdlab/kernels.hpp"

namespace cdlab {

namespace {

// lambda_min of the symmetrized operator together with its eigenvector,
// via Cholesky-shifted inverse power iteration (dense, desk scale)
double min_sym_eig_with_vector(const StencilMatrix& m, Vector* witness) {
  const int n = m.rows();
  DenseMatrix sym = DenseMatrix::from_sparse(m).symmetric_part();
  double lo = 0.0;
  for (int r = 0; r < n; ++r) {
    double off = 0.0;
    for (int c = 0; c < n; ++c) {
      if (c != r) off += std::fabs(sym.at(r, c));
    }
    lo = std::min(lo, sym.at(r, r) - off);
  }
  const double scale = std::fabs(lo) + 1.0;
  const double shift = lo - 1e-3 * scale;
  DenseMatrix shifted = sym;
  for (int i = 0; i < n; ++i) shifted.at(i, i) -= shift;
  const DenseMatrix l = cholesky(shifted);
  Rng rng(0x7a11ab5ULL);
  Vector x = rng.vector(n);
  double mu = 0.0;
  for (int it = 0; it < 50000; ++it) {
    Vector y = cholesky_solve(l, x);
    const double nrm = std::sqrt(kern::dot(y.data(), y.data(), n));
    if (nrm == 0.0) break;
    const double mu_new =
        kern::dot(x.data(), y.data(), n) / kern::dot(x.data(), x.data(), n);
    kern::scale(1.0 / nrm, y.data(), n);
    x = y;
    if (it > 4 && std::fabs(mu_new - mu) <= 1e-12 * (std::fabs(mu_new) + 1e-30)) {
      mu = mu_new;
      break;
    }
    mu = mu_new;
  }
  if (witness != nullptr) *witness = x;
  if (mu == 0.0) throw SolverError("min_sym_eig: inverse iteration stalled");
  return shift + 1.0 / mu;
}

}  // namespace

namespace {

OperatorInequalityReport check_inequality(const StencilMatrix& b, const StencilMatrix& a,
                                          double coeff, const StencilMatrix* g,
                                          const std::string& id) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("operator inequality: shape mismatch");
  }
  const double a_scale = a.max_abs_entry();
  if (!a.is_symmetric(1e-10 * (a_scale + 1.0))) {
    throw ParameterError("operator inequality: A must be self-adjoint");
  }
  if (min_symmetric_eigenvalue(a) <= 0.0) {
    throw ParameterError("operator inequality: A must be positive definite");
  }
  OperatorInequalityReport report;
  report.inequality = id;
  StencilMatrix residual = b.add_scaled(a, -coeff);
  if (g != nullptr) residual = residual.add_scaled(*g, -1.0);
  Vector witness;
  report.min_eigenvalue = min_sym_eig_with_vector(residual, &witness);
  const double scale = b.max_abs_entry() + coeff * a_scale + 1.0;
  report.ok = report.min_eigenvalue >= -1e-10 * scale;
  if (!report.ok) report.witness = witness;
  return report;
}

}  // namespace

OperatorInequalityReport check_samarskii(const StencilMatrix& b, const StencilMatrix& a,
                                         double tau) {
  return check_inequality(b, a, 0.5 * tau, nullptr, "B >= (tau/2) A");
}

OperatorInequalityReport check_rho_samarskii(const StencilMatrix& b, const StencilMatrix& a,
                                             double tau, double rho) {
  if (rho <= -1.0) throw ParameterError("check_rho_samarskii: rho must exceed -1");
  return check_inequality(b, a, tau / (1.0 + rho), nullptr, "B >= tau/(1+rho) A");
}

OperatorInequalityReport check_eps_samarskii(const StencilMatrix& b, const StencilMatrix& a,
                                             double tau, double eps) {
  if (eps <= 0.0) throw ParameterError("check_eps_samarskii: eps must be positive");
  return check_inequality(b, a, 0.5 * (1.0 + eps) * tau, nullptr,
                          "B >= (1+eps)/2 tau A");
}

OperatorInequalityReport check_shifted_samarskii(const StencilMatrix& b,
                                                 const StencilMatrix& a,
                                                 const StencilMatrix& g, double tau) {
  const double g_scale = g.max_abs_entry();
  if (!g.is_symmetric(1e-10 * (g_scale + 1.0)) || min_symmetric_eigenvalue(g) <= 0.0) {
    throw ParameterError("check_shifted_samarskii: G must be symmetric positive definite");
  }
  return check_inequality(b, a, 0.5 * tau, &g, "B >= G + (tau/2) A");
}

DenseMatrix transition_operator(const StencilMatrix& b, const StencilMatrix& a, double tau) {
  const int n = a.rows();
  const DenseMatrix bd = DenseMatrix::from_sparse(b);
  const DenseMatrix ad = DenseMatrix::from_sparse(a);
  DenseMatrix s(n, n);
  // columns of B^{-1} A
  for (int c = 0; c < n; ++c) {
    Vector col(n, 0.0);
    for (int r = 0; r < n; ++r) col[r] = ad.at(r, c);
    Vector x = dense_solve(bd, col);
    for (int r = 0; r < n; ++r) s.at(r, c) = (r == c ? 1.0 : 0.0) - tau * x[r];
  }
  return s;
}

RhoStabilityReport check_rho_stability(const DenseMatrix& s, const DenseMatrix& d,
                                       double rho) {
  const int n = s.rows();
  const DenseMatrix l = cholesky(d);  // throws when D is not SPD
  // G = L^T S L^{-T}; need the largest singular value of G
  DenseMatrix lt_s(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      double v = 0.0;
      for (int k = r; k < n; ++k) v += l.at(k, r) * s.at(k, c);
      lt_s.at(r, c) = v;
    }
  }
  DenseMatrix g(n, n);
  for (int r = 0; r < n; ++r) {
    Vector row(n);
    for (int c = 0; c < n; ++c) row[c] = lt_s.at(r, c);
    // row of G solves L G_row^T = row^T, i.e. G = lt_s L^{-T}
    Vector sol = cholesky_solve_transposed(l, row);
    for (int c = 0; c < n; ++c) g.at(r, c) = sol[c];
  }
  // power iteration on G^T G
  Rng rng(0xd15ea5eULL);
  Vector z = rng.vector(n);
  double lambda = 0.0;
  for (int it = 0; it < 20000; ++it) {
    Vector gz = g.apply(z);
    Vector gtgz(n, 0.0);
    for (int r = 0; r < n; ++r) {
      const double w = gz[r];
      for (int c = 0; c < n; ++c) gtgz[c] += g.at(r, c) * w;
    }
    const double nrm = std::sqrt(kern::dot(gtgz.data(), gtgz.data(), n));
    if (nrm == 0.0) {
      lambda = 0.0;
      break;
    }
    const double lambda_new =
        kern::dot(z.data(), gtgz.data(), n) / kern::dot(z.data(), z.data(), n);
    kern::scale(1.0 / nrm, gtgz.data(), n);
    z = gtgz;
    if (it > 4 && std::fabs(lambda_new - lambda) <= 1e-12 * (lambda_new + 1e-30)) {
      lambda = lambda_new;
      break;
    }
    lambda = lambda_new;
  }
  RhoStabilityReport report;
  report.attained_rho = std::sqrt(std::max(0.0, lambda));
  report.ok = report.attained_rho <= rho + 1e-9 * (rho + 1.0);
  if (!report.ok) report.witness = cholesky_solve_transposed(l, z);
  return report;
}

double log_norm(const StencilMatrix& a, NormSpace space) {
  const StencilMatrix m = (space == NormSpace::Linf) ? a : a.transpose();
  double mu = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < m.rows(); ++r) {
    double s = m.diagonal_entry(r);
    const auto* cols = m.row_cols(r);
    const auto* vals = m.row_vals(r);
    for (int p = 0; p < m.row_size(r); ++p) {
      if (cols[p] != r) s += std::fabs(vals[p]);
    }
    mu = std::max(mu, s);
  }
  return mu;
}

LogNormReport log_norm_report(const StencilMatrix& a) {
  const StencilMatrix neg = a.scaled(-1.0);
  return LogNormReport{log_norm(a, NormSpace::Linf), log_norm(a, NormSpace::L1),
                       log_norm(neg, NormSpace::Linf), log_norm(neg, NormSpace::L1)};
}

double matrix_norm(const StencilMatrix& a, NormSpace space) {
  const StencilMatrix m = (space == NormSpace::Linf) ? a : a.transpose();
  double nrm = 0.0;
  for (int r = 0; r < m.rows(); ++r) {
    double s = 0.0;
    const auto* vals = m.row_vals(r);
    for (int p = 0; p < m.row_size(r); ++p) s += std::fabs(vals[p]);
    nrm = std::max(nrm, s);
  }
  return nrm;
}

DominanceReport check_diag_dominance(const StencilMatrix& a, Orientation orientation) {
  const StencilMatrix m = (orientation == Orientation::Rows) ? a : a.transpose();
  DominanceReport report;
  report.dominant = true;
  report.offdiag_nonpositive = true;
  for (int r = 0; r < m.rows(); ++r) {
    double off = 0.0;
    const auto* cols = m.row_cols(r);
    const auto* vals = m.row_vals(r);
    for (int p = 0; p < m.row_size(r); ++p) {
      if (cols[p] == r) continue;
      off += std::fabs(vals[p]);
      if (vals[p] > 0.0 && report.offdiag_nonpositive) {
        report.offdiag_nonpositive = false;
        report.offdiag_witness = r;
      }
    }
    const double defect = m.diagonal_entry(r) - off;
    if (defect < 0.0 && report.dominant) {
      report.dominant = false;
      report.witness_index = r;
      report.defect = defect;
    }
  }
  return report;
}

double banach_step_bound(const StencilMatrix& a, double sigma) {
  double max_diag = 0.0;
  for (int r = 0; r < a.rows(); ++r) max_diag = std::max(max_diag, a.diagonal_entry(r));
  return banach_step_bound_gamma(max_diag, sigma);
}

double banach_step_bound_gamma(double gamma, double sigma) {
  if (sigma >= 1.0) return std::numeric_limits<double>::infinity();
  if (gamma <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / ((1.0 - sigma) * gamma);
}

MMatrixReport check_m_matrix(const StencilMatrix& a) {
  MMatrixReport report;
  for (int r = 0; r < a.rows(); ++r) {
    if (a.diagonal_entry(r) <= 0.0) {
      report.reason = "nonpositive diagonal at row " + std::to_string(r);
      return report;
    }
    const auto* cols = a.row_cols(r);
    const auto* vals = a.row_vals(r);
    for (int p = 0; p < a.row_size(r); ++p) {
      if (cols[p] != r && vals[p] > 0.0) {
        report.reason = "positive off-diagonal at (" + std::to_string(r) + "," +
                        std::to_string(cols[p]) + ")";
        return report;
      }
    }
  }
  const DominanceReport rows = check_diag_dominance(a, Orientation::Rows);
  const DominanceReport cols = check_diag_dominance(a, Orientation::Columns);
  if (!rows.dominant && !cols.dominant) {
    report.reason = "no diagonal dominance (row defect " + std::to_string(rows.defect) +
                    " at " + std::to_string(rows.witness_index) + ")";
    return report;
  }
  report.ok = true;
  return report;
}

}  // namespace cdlab
