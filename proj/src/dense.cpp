#include "cdlab/dense.hpp"

#include <algorithm>
#include <cmath>

namespace cdlab {

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from_sparse(const StencilMatrix& s) {
  DenseMatrix m(s.rows(), s.cols());
  for (int r = 0; r < s.rows(); ++r) {
    const auto* cols = s.row_cols(r);
    const auto* vals = s.row_vals(r);
    for (int p = 0; p < s.row_size(r); ++p) m.at(r, cols[p]) = vals[p];
  }
  return m;
}

Vector DenseMatrix::apply(const Vector& x) const {
  if (static_cast<int>(x.size()) != ncols_) {
    throw DimensionError("DenseMatrix::apply: size mismatch");
  }
  Vector y(nrows_, 0.0);
  for (int r = 0; r < nrows_; ++r) {
    double s = 0.0;
    for (int c = 0; c < ncols_; ++c) s += at(r, c) * x[c];
    y[r] = s;
  }
  return y;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(ncols_, nrows_);
  for (int r = 0; r < nrows_; ++r) {
    for (int c = 0; c < ncols_; ++c) t.at(c, r) = at(r, c);
  }
  return t;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix& other) const {
  if (ncols_ != other.nrows_) throw DimensionError("DenseMatrix::multiply: shape mismatch");
  DenseMatrix out(nrows_, other.ncols_);
  for (int r = 0; r < nrows_; ++r) {
    for (int k = 0; k < ncols_; ++k) {
      const double a = at(r, k);
      if (a == 0.0) continue;
      for (int c = 0; c < other.ncols_; ++c) out.at(r, c) += a * other.at(k, c);
    }
  }
  return out;
}

DenseMatrix DenseMatrix::symmetric_part() const {
  if (nrows_ != ncols_) throw DimensionError("symmetric_part: matrix not square");
  DenseMatrix s(nrows_, ncols_);
  for (int r = 0; r < nrows_; ++r) {
    for (int c = 0; c < ncols_; ++c) s.at(r, c) = 0.5 * (at(r, c) + at(c, r));
  }
  return s;
}

Vector dense_solve(DenseMatrix a, Vector b) {
  const int n = a.rows();
  if (a.cols() != n || static_cast<int>(b.size()) != n) {
    throw DimensionError("dense_solve: shape mismatch");
  }
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    double best = std::fabs(a.at(k, k));
    for (int r = k + 1; r < n; ++r) {
      if (std::fabs(a.at(r, k)) > best) {
        best = std::fabs(a.at(r, k));
        pivot = r;
      }
    }
    if (best == 0.0) throw SolverError("dense_solve: singular matrix");
    if (pivot != k) {
      for (int c = 0; c < n; ++c) std::swap(a.at(k, c), a.at(pivot, c));
      std::swap(b[k], b[pivot]);
    }
    for (int r = k + 1; r < n; ++r) {
      const double m = a.at(r, k) / a.at(k, k);
      a.at(r, k) = 0.0;
      if (m == 0.0) continue;
      for (int c = k + 1; c < n; ++c) a.at(r, c) -= m * a.at(k, c);
      b[r] -= m * b[k];
    }
  }
  Vector x(n);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= a.at(r, c) * x[c];
    x[r] = s / a.at(r, r);
  }
  return x;
}

DenseMatrix cholesky(const DenseMatrix& a) {
  const int n = a.rows();
  if (a.cols() != n) throw DimensionError("cholesky: matrix not square");
  DenseMatrix l(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c <= r; ++c) {
      double s = a.at(r, c);
      for (int k = 0; k < c; ++k) s -= l.at(r, k) * l.at(c, k);
      if (r == c) {
        if (s <= 0.0) throw SolverError("cholesky: matrix is not positive definite");
        l.at(r, r) = std::sqrt(s);
      } else {
        l.at(r, c) = s / l.at(c, c);
      }
    }
  }
  return l;
}

Vector cholesky_solve(const DenseMatrix& l, Vector b) {
  const int n = l.rows();
  for (int r = 0; r < n; ++r) {
    double s = b[r];
    for (int c = 0; c < r; ++c) s -= l.at(r, c) * b[c];
    b[r] = s / l.at(r, r);
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= l.at(c, r) * b[c];
    b[r] = s / l.at(r, r);
  }
  return b;
}

Vector cholesky_solve_transposed(const DenseMatrix& l, Vector b) {
  const int n = l.rows();
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= l.at(c, r) * b[c];
    b[r] = s / l.at(r, r);
  }
  return b;
}

Vector jacobi_eigenvalues(DenseMatrix a, int max_sweeps) {
  const int n = a.rows();
  a = a.symmetric_part();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off += a.at(p, q) * a.at(p, q);
    }
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a.at(p, q);
        if (std::fabs(apq) < 1e-300) continue;
        const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a.at(k, p);
          const double akq = a.at(k, q);
          a.at(k, p) = c * akp - s * akq;
          a.at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a.at(p, k);
          const double aqk = a.at(q, k);
          a.at(p, k) = c * apk - s * aqk;
          a.at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  Vector eig(n);
  for (int i = 0; i < n; ++i) eig[i] = a.at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace cdlab
