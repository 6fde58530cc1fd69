#pragma once
// Rectangular-grid difference operators for convection-diffusion: the
// self-adjoint diffusion operator D, the convection operators C1 / C2 / C0
// in node-centered and staggered-coefficient variants, and the bounding
// constants M0..M3 used by the stability estimates.

#include "cdlab/fields.hpp"
#include "cdlab/grid.hpp"
#include "cdlab/sparse.hpp"

namespace cdlab {

// D y = -(a1 y_xbar1)_x1 - (a2 y_xbar2)_x2 with a1(x) = k(x1 - h1/2, x2),
// a2(x) = k(x1, x2 - h2/2), zero Dirichlet closure on the boundary nodes.
StencilMatrix assemble_diffusion(const RectGrid2D& grid, const CoefficientField& field);

StencilMatrix assemble_convection(const RectGrid2D& grid, const CoefficientField& field,
                                  ConvectionForm form, CoefficientPlacement placement,
                                  double t);

struct OperatorConstants {
  double m0 = 0.0;  // Friedrichs: D >= (kappa1/M0) E
  double m1 = 0.0;  // |(C y, y)| <= M1 ||y||^2
  double m2 = 0.0;  // ||C y||^2 <= M2 (D y, y)
  double m3 = 0.0;  // D <= M3 E
};

OperatorConstants operator_constants(const RectGrid2D& grid, const CoefficientField& field,
                                     ConvectionForm form, CoefficientPlacement placement,
                                     double t);

// Forcing sampled at interior nodes at time t.
Vector semi_discrete_rhs(const RectGrid2D& grid, const SpaceTimeFn& f, double t);

// Interior-node measure vector (h1*h2 everywhere), for the weighted norms.
Vector fd_measure(const RectGrid2D& grid);

}  // namespace cdlab
