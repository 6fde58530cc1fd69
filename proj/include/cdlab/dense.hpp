#pragma once
// Small dense matrices: LU / Cholesky solves and Jacobi eigenvalues. These
// back the certification paths and test oracles, not the inner solver loops.

#include "cdlab/common.hpp"
#include "cdlab/sparse.hpp"

namespace cdlab {

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : nrows_(rows), ncols_(cols), data_(rows * cols, 0.0) {}

  static DenseMatrix identity(int n);
  static DenseMatrix from_sparse(const StencilMatrix& m);

  int rows() const { return nrows_; }
  int cols() const { return ncols_; }
  double& at(int r, int c) { return data_[r * ncols_ + c]; }
  double at(int r, int c) const { return data_[r * ncols_ + c]; }

  Vector apply(const Vector& x) const;
  DenseMatrix transpose() const;
  DenseMatrix multiply(const DenseMatrix& other) const;
  DenseMatrix symmetric_part() const;  // (A + A^T)/2

 private:
  int nrows_ = 0, ncols_ = 0;
  Vector data_;
};

// LU with partial pivoting; throws SolverError on singular matrices.
Vector dense_solve(DenseMatrix a, Vector b);

// Cholesky factor L (lower) of an SPD matrix; throws on non-SPD input.
DenseMatrix cholesky(const DenseMatrix& a);
Vector cholesky_solve(const DenseMatrix& l, Vector b);
// Solve L^T x = b.
Vector cholesky_solve_transposed(const DenseMatrix& l, Vector b);

// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations
// (symmetrized internally). Ascending order.
Vector jacobi_eigenvalues(DenseMatrix a, int max_sweeps = 64);

}  // namespace cdlab
