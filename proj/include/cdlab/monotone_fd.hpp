#pragma once
// Steady 2D convection-diffusion schemes on the five-point cross stencil,
// maximum-principle certification, and the regularized monotone family
// (exponential / quadratic / rational / upwind diffusion disturbance).

#include <optional>
#include <string>

#include "cdlab/fd_operators.hpp"
#include "cdlab/linalg.hpp"

namespace cdlab {

struct Regularizer {
  enum class Kind { Exponential, Quadratic, Rational, Upwind };
  Kind kind = Kind::Exponential;
  double eta = 1.0;  // Quadratic needs eta > 0.25; Upwind uses eta = 1

  // 1 + rho(theta); for the exponential kind this is theta*coth(theta)
  double factor(double theta) const;
  // (1 + rho(theta)) - theta evaluated without cancellation; strictly
  // positive in floating point for every monotone regularizer
  double factor_minus_theta(double theta) const;
  // (1 + rho(theta)) + theta; rho is even in theta
  double factor_plus_theta(double theta) const { return factor_minus_theta(-theta); }
};

// gamma(x) y(x) - a1 y(x1-h1) - b1 y(x1+h1) - a2 y(.,x2-h2) - b2 y(.,x2+h2) = phi.
// Coefficients are stored on the full node set so the column-dominance and
// boundary-positivity conditions can reference neighbor and boundary values.
struct FivePointScheme {
  RectGrid2D grid;
  Vector gamma, alpha1, beta1, alpha2, beta2;  // per node (num_nodes)
  Vector rhs;                                  // per interior node

  StencilMatrix matrix() const;
  // residual of the five-point equation at every interior node for y given
  // on all nodes (boundary values honored)
  Vector residual(const GridFunction& y) const;
};

struct PecletField {
  Vector theta1, theta2;  // per node
  double max_abs() const;
};

PecletField peclet_field(const RectGrid2D& grid, const CoefficientField& field, double t = 0.0);

// Nondivergent scheme: k-weighted central convection differences;
// optional diffusion regularization.
FivePointScheme build_nondivergent_scheme(const RectGrid2D& grid,
                                          const CoefficientField& field,
                                          const std::optional<Regularizer>& reg = {},
                                          double t = 0.0);

// Divergent scheme: staggered face velocities; optional regularization
// applied to the half-integer diffusion coefficients.
FivePointScheme build_divergent_scheme(const RectGrid2D& grid,
                                       const CoefficientField& field,
                                       const std::optional<Regularizer>& reg = {},
                                       double t = 0.0);

struct MonotoneCertificate {
  bool positive = false;  // strict coefficient positivity
  bool row = false;       // row diagonal dominance
  bool column = false;    // neighbor-shifted (column) dominance
  bool ok() const { return positive && (row || column); }
  std::string witness;  // first violated coefficient, empty when certified
};

MonotoneCertificate check_maximum_principle(const FivePointScheme& s);

struct SteadySolveOptions {
  SolverOptions solver;
  bool allow_uncertified = false;
};

GridFunction solve_steady(const FivePointScheme& s, const SteadySolveOptions& opts = {});

}  // namespace cdlab
