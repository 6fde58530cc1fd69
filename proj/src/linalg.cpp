#include "cdlab/linalg.hpp"

#include <cmath>
#include <string>
#include <sstream>

#include "cdlab/kernels.hpp"

namespace cdlab {

namespace {

double wdot(const Vector& x, const Vector& y, const Vector* w) {
  if (w == nullptr) return kern::dot(x.data(), y.data(), x.size());
  return kern::dot3(x.data(), y.data(), w->data(), x.size());
}

double wnorm(const Vector& x, const Vector* w) { return std::sqrt(wdot(x, x, w)); }

void check_symmetry_claim(const StencilMatrix& a, bool symmetric, const Vector* weight) {
  if (!symmetric) return;
  // sample (Ay, w) vs (y, Aw) for a couple of fixed vectors
  Rng rng(0x5ca1ab1eULL);
  const int n = a.rows();
  const double scale = a.max_abs_entry() + 1.0;
  for (int trial = 0; trial < 2; ++trial) {
    Vector y = rng.vector(n), w = rng.vector(n);
    Vector ay = a.apply(y), aw = a.apply(w);
    const double lhs = wdot(ay, w, weight);
    const double rhs = wdot(y, aw, weight);
    if (std::fabs(lhs - rhs) > 1e-8 * scale * n) {
      throw SolverError("solve_sparse: matrix declared symmetric is not");
    }
  }
}

Vector cg(const StencilMatrix& a, const Vector& b, const SolverOptions& opts,
          const Vector* w, SolveReport* report) {
  const std::size_t n = b.size();
  const int max_iters = opts.max_iters > 0 ? opts.max_iters : 10 * static_cast<int>(n);
  Vector x(n, 0.0);
  Vector r = b;
  Vector p = r;
  Vector ap(n);
  const double bnorm = wnorm(b, w);
  if (bnorm == 0.0) return x;
  double rr = wdot(r, r, w);
  int it = 0;
  for (; it < max_iters; ++it) {
    if (std::sqrt(rr) <= opts.rel_tol * bnorm + opts.abs_tol) break;
    a.apply(p, ap);
    const double pap = wdot(p, ap, w);
    if (pap <= 0.0) throw SolverError("cg: operator is not positive definite");
    const double alpha = rr / pap;
    kern::axpy(alpha, p.data(), x.data(), n);
    kern::axpy(-alpha, ap.data(), r.data(), n);
    const double rr_new = wdot(r, r, w);
    kern::axpby(1.0, r.data(), rr_new / rr, p.data(), n);
    rr = rr_new;
  }
  if (report != nullptr) report->iterations = it;
  return x;
}

Vector bicgstab(const StencilMatrix& a, const Vector& b, const SolverOptions& opts,
                const Vector* w, SolveReport* report) {
  const std::size_t n = b.size();
  const int max_iters = opts.max_iters > 0 ? opts.max_iters : 10 * static_cast<int>(n);
  Vector x(n, 0.0);
  Vector r = b;
  Vector r0 = r;
  Vector p(n, 0.0), v(n, 0.0), s(n), t(n);
  const double bnorm = wnorm(b, w);
  if (bnorm == 0.0) return x;
  double rho = 1.0, alpha = 1.0, omega = 1.0;
  int it = 0;
  for (; it < max_iters; ++it) {
    if (wnorm(r, w) <= opts.rel_tol * bnorm + opts.abs_tol) break;
    const double rho_new = wdot(r0, r, w);
    if (rho_new == 0.0) throw SolverError("bicgstab: breakdown (rho = 0)");
    if (it == 0) {
      p = r;
    } else {
      const double beta = (rho_new / rho) * (alpha / omega);
      // p = r + beta * (p - omega * v)
      kern::axpy(-omega, v.data(), p.data(), n);
      kern::axpby(1.0, r.data(), beta, p.data(), n);
    }
    rho = rho_new;
    a.apply(p, v);
    const double r0v = wdot(r0, v, w);
    if (r0v == 0.0) throw SolverError("bicgstab: breakdown (r0.v = 0)");
    alpha = rho / r0v;
    s = r;
    kern::axpy(-alpha, v.data(), s.data(), n);
    if (wnorm(s, w) <= opts.rel_tol * bnorm + opts.abs_tol) {
      kern::axpy(alpha, p.data(), x.data(), n);
      r = s;
      ++it;
      break;
    }
    a.apply(s, t);
    const double tt = wdot(t, t, w);
    if (tt == 0.0) throw SolverError("bicgstab: breakdown (t = 0)");
    omega = wdot(t, s, w) / tt;
    kern::axpy(alpha, p.data(), x.data(), n);
    kern::axpy(omega, s.data(), x.data(), n);
    r = s;
    kern::axpy(-omega, t.data(), r.data(), n);
    if (omega == 0.0) throw SolverError("bicgstab: breakdown (omega = 0)");
  }
  if (report != nullptr) report->iterations = it;
  return x;
}

}  // namespace

void TridiagonalSystem::validate() const {
  const std::size_t n = diag.size();
  if (sub.size() != n || super.size() != n || rhs.size() != n) {
    throw DimensionError("TridiagonalSystem: inconsistent sizes");
  }
}

Vector solve_tridiagonal(const TridiagonalSystem& sys) {
  sys.validate();
  const int n = sys.size();
  Vector c(n), d(n);
  double pivot = sys.diag[0];
  if (pivot == 0.0) throw SolverError("solve_tridiagonal: zero pivot at row 0");
  c[0] = (n > 1) ? sys.super[0] / pivot : 0.0;
  d[0] = sys.rhs[0] / pivot;
  for (int i = 1; i < n; ++i) {
    pivot = sys.diag[i] - sys.sub[i] * c[i - 1];
    if (pivot == 0.0) {
      throw SolverError("solve_tridiagonal: zero pivot at row " + std::to_string(i));
    }
    c[i] = (i < n - 1) ? sys.super[i] / pivot : 0.0;
    d[i] = (sys.rhs[i] - sys.sub[i] * d[i - 1]) / pivot;
  }
  Vector x(n);
  x[n - 1] = d[n - 1];
  for (int i = n - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

Vector solve_sparse(const StencilMatrix& a, const Vector& b, bool symmetric,
                    const SolverOptions& opts, const Vector* weight,
                    SolveReport* report) {
  if (a.rows() != a.cols() || a.rows() != static_cast<int>(b.size())) {
    throw DimensionError("solve_sparse: shape mismatch");
  }
  check_symmetry_claim(a, symmetric, weight);
  Vector x = symmetric ? cg(a, b, opts, weight, report)
                       : bicgstab(a, b, opts, weight, report);
  // never trust the iteration's own residual
  const double bnorm = wnorm(b, weight);
  double rel = 0.0;
  for (int attempt = 0; attempt < 3; ++attempt) {
    Vector r = a.apply(x);
    kern::axpby(1.0, b.data(), -1.0, r.data(), r.size());
    rel = bnorm > 0.0 ? wnorm(r, weight) / bnorm : wnorm(r, weight);
    if (bnorm == 0.0 || rel <= opts.rel_tol + opts.abs_tol || attempt == 2) break;
    // restart on the residual equation to polish a stagnated iterate
    Vector dx = symmetric ? cg(a, r, opts, weight, nullptr)
                          : bicgstab(a, r, opts, weight, nullptr);
    kern::axpy(1.0, dx.data(), x.data(), x.size());
  }
  if (report != nullptr) report->residual = rel;
  if (bnorm > 0.0 && rel > 10.0 * opts.rel_tol + opts.abs_tol) {
    std::ostringstream os;
    os << "solve_sparse: not converged, relative residual " << rel;
    throw SolverError(os.str());
  }
  return x;
}

double max_symmetric_eigenvalue(const StencilMatrix& m) {
  const int n = m.rows();
  const StencilMatrix mt = m.transpose();
  // Gershgorin bound of the symmetric part gives a positive shift
  double bound = 0.0;
  for (int r = 0; r < n; ++r) {
    double s = 0.0;
    for (int p = 0; p < m.row_size(r); ++p) s += std::fabs(m.row_vals(r)[p]);
    for (int p = 0; p < mt.row_size(r); ++p) s += std::fabs(mt.row_vals(r)[p]);
    bound = std::max(bound, 0.5 * s);
  }
  const double shift = bound + 1.0;
  Rng rng(0xfeedULL);
  Vector x = rng.vector(n);
  Vector mx(n), mtx(n), y(n);
  double lambda = 0.0;
  for (int it = 0; it < 200000; ++it) {
    m.apply(x, mx);
    mt.apply(x, mtx);
    // y = shift * x + 0.5 (M + M^T) x
    for (int i = 0; i < n; ++i) y[i] = shift * x[i] + 0.5 * (mx[i] + mtx[i]);
    const double nrm = std::sqrt(kern::dot(y.data(), y.data(), n));
    if (nrm == 0.0) return -shift;
    const double lambda_new = kern::dot(x.data(), y.data(), n) /
                              kern::dot(x.data(), x.data(), n);
    kern::scale(1.0 / nrm, y.data(), n);
    std::swap(x, y);
    if (it > 4 && std::fabs(lambda_new - lambda) <=
                      1e-11 * (std::fabs(lambda_new) + 1e-30)) {
      lambda = lambda_new;
      break;
    }
    lambda = lambda_new;
  }
  return lambda - shift;
}

double min_symmetric_eigenvalue(const StencilMatrix& m) {
  const int n = m.rows();
  if (n > 2000) throw SolverError("min_symmetric_eigenvalue: dense path capped at n = 2000");
  DenseMatrix sym = DenseMatrix::from_sparse(m).symmetric_part();
  // shift below the spectrum (Gershgorin), factor once, then inverse iteration
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
  Rng rng(0xace0fba5eULL);
  Vector x = rng.vector(n);
  double mu = 0.0;
  for (int it = 0; it < 100000; ++it) {
    Vector y = cholesky_solve(l, x);
    const double nrm = std::sqrt(kern::dot(y.data(), y.data(), n));
    if (nrm == 0.0) break;
    const double mu_new = kern::dot(x.data(), y.data(), n) /
                          kern::dot(x.data(), x.data(), n);
    kern::scale(1.0 / nrm, y.data(), n);
    x = y;
    if (it > 4 && std::fabs(mu_new - mu) <= 1e-12 * (std::fabs(mu_new) + 1e-30)) {
      mu = mu_new;
      break;
    }
    mu = mu_new;
  }
  if (mu == 0.0) throw SolverError("min_symmetric_eigenvalue: inverse iteration stalled");
  return shift + 1.0 / mu;
}

}  // namespace cdlab
