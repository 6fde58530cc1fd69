#pragma once
// Matrix-level certification of the stability theory: operator
// inequalities, rho-stability, logarithmic norms, diagonal dominance,
// M-matrix structure, and the step bounds in the uniform/integral norms.

#include <string>

#include "cdlab/linalg.hpp"

namespace cdlab {

struct OperatorInequalityReport {
  std::string inequality;
  bool ok = false;
  double min_eigenvalue = 0.0;  // of the symmetrized residual operator
  Vector witness;               // eigenvector on failure
};

// B >= (tau/2) A, the exact two-level stability criterion in H_A; A must be
// symmetric positive definite.
OperatorInequalityReport check_samarskii(const StencilMatrix& b, const StencilMatrix& a,
                                         double tau);
// B >= tau/(1+rho) A, the rho-stability sufficient condition in H_A.
OperatorInequalityReport check_rho_samarskii(const StencilMatrix& b, const StencilMatrix& a,
                                             double tau, double rho);
// B >= (1+eps)/2 tau A, the strengthened condition that buys the
// right-hand-side estimate in the B^{-1} norm.
OperatorInequalityReport check_eps_samarskii(const StencilMatrix& b, const StencilMatrix& a,
                                             double tau, double eps);
// B >= G + (tau/2) A with G symmetric positive definite.
OperatorInequalityReport check_shifted_samarskii(const StencilMatrix& b,
                                                 const StencilMatrix& a,
                                                 const StencilMatrix& g, double tau);

struct RhoStabilityReport {
  bool ok = false;
  double attained_rho = 0.0;  // sqrt of the largest generalized eigenvalue
  Vector witness;
};

// S^* D S <= rho^2 D with D symmetric positive definite (dense reduction
// through the Cholesky factor of D; desk scale).
RhoStabilityReport check_rho_stability(const DenseMatrix& s, const DenseMatrix& d,
                                       double rho);
// transition operator S = E - tau B^{-1} A formed densely
DenseMatrix transition_operator(const StencilMatrix& b, const StencilMatrix& a, double tau);

enum class NormSpace { Linf, L1 };

// logarithmic norm mu[A] in the chosen space
double log_norm(const StencilMatrix& a, NormSpace space);
// matrix norm ||A|| consistent with the chosen space
double matrix_norm(const StencilMatrix& a, NormSpace space);

struct LogNormReport {
  double mu_inf_a = 0.0, mu_1_a = 0.0;
  double mu_inf_neg_a = 0.0, mu_1_neg_a = 0.0;
};
LogNormReport log_norm_report(const StencilMatrix& a);

enum class Orientation { Rows, Columns };

struct DominanceReport {
  bool dominant = false;
  int witness_index = -1;  // first violating row/column
  double defect = 0.0;     // diagonal minus off-diagonal sum at the witness
  bool offdiag_nonpositive = false;
  int offdiag_witness = -1;
};

DominanceReport check_diag_dominance(const StencilMatrix& a, Orientation orientation);

// Uniform/integral-norm step bound tau <= 1/((1-sigma) max_i a_ii);
// infinity at sigma = 1.
double banach_step_bound(const StencilMatrix& a, double sigma);
// the same bound from a precomputed gamma constant
double banach_step_bound_gamma(double gamma, double sigma);

struct MMatrixReport {
  bool ok = false;
  std::string reason;  // first violated requirement
};

// positive diagonal, nonpositive off-diagonal entries, weak diagonal
// dominance by rows or by columns
MMatrixReport check_m_matrix(const StencilMatrix& a);

}  // namespace cdlab
