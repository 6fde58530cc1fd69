#pragma once
// Sparse linear-algebra substrate: tridiagonal direct solves, conjugate
// gradients for self-adjoint systems, BiCGStab for the rest, and eigenvalue
// estimation for operator-inequality certification.

#include "cdlab/common.hpp"
#include "cdlab/dense.hpp"
#include "cdlab/sparse.hpp"

namespace cdlab {

struct SolverOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_iters = 0;  // 0 -> 10 * n
};

struct TridiagonalSystem {
  Vector sub, diag, super, rhs;  // sub[0] and super[n-1] are unused

  int size() const { return static_cast<int>(diag.size()); }
  void validate() const;
};

// Thomas algorithm; throws SolverError on a zero pivot.
Vector solve_tridiagonal(const TridiagonalSystem& sys);

struct SolveReport {
  int iterations = 0;
  double residual = 0.0;  // relative, recomputed explicitly after the iteration
};

// Iterative solve of A x = b with an explicit a-posteriori residual check.
// `symmetric` selects conjugate gradients; the flag is spot-checked by
// sampling (A y, w) against (y, A w). `weight` (optional) makes the inner
// product weighted, for operators self-adjoint in a weighted space.
Vector solve_sparse(const StencilMatrix& a, const Vector& b, bool symmetric,
                    const SolverOptions& opts = {}, const Vector* weight = nullptr,
                    SolveReport* report = nullptr);

// lambda_min of (M + M^T)/2. Dense path (Cholesky-shifted inverse power
// iteration) for n <= 2000; relative accuracy ~1e-8 at desk scale.
double min_symmetric_eigenvalue(const StencilMatrix& m);
// lambda_max of (M + M^T)/2 via shifted power iteration on the sparse matrix.
double max_symmetric_eigenvalue(const StencilMatrix& m);

}  // namespace cdlab
