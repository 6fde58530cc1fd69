#pragma once
// Exponential (fitted) convection-diffusion operators obtained from the
// transformed equation: 1D stencils and the 2D directional split A1 + A2
// whose line structure supports locally one-dimensional stepping.

#include "cdlab/fd_operators.hpp"

namespace cdlab {

// 1D operator on the interior of `grid`; coefficients evaluated at x2 = 0.
// Nondivergent carries exp(-theta h) on the forward face and exp(+theta h)
// on the backward face with theta = v/(2k) at the row node; the divergent
// variant evaluates theta at the neighbor nodes.
StencilMatrix exp_operator_1d(const Grid1D& grid, const CoefficientField& field,
                              ConvectionForm form, double t);

struct DirectionalOperators {
  StencilMatrix a1, a2;
  StencilMatrix sum() const { return a1.add_scaled(a2, 1.0); }
};

DirectionalOperators exp_operator_2d(const RectGrid2D& grid, const CoefficientField& field,
                                     ConvectionForm form, double t);

enum class GammaVariant { Full2D, PerDirection, Additive };

// The step-bound constant gamma: the max diagonal of A1 + A2 (Full2D), the
// per-direction max (PerDirection, for LOD substeps), or twice that
// (Additive, for the additively averaged scheme with 2*tau substeps).
double gamma_constant(const DirectionalOperators& ops, GammaVariant variant);

}  // namespace cdlab
