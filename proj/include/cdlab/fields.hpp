#pragma once
// Evaluable coefficient fields for the convection-diffusion problem
//   du/dt + C u - div(k grad u) + r u = f.

#include <functional>

#include "cdlab/common.hpp"

namespace cdlab {

using SpaceFn = std::function<double(double, double)>;        // (x1, x2)
using SpaceTimeFn = std::function<double(double, double, double)>;  // (x1, x2, t)

enum class ConvectionForm { Nondivergent, Divergent, SkewSymmetric };
enum class CoefficientPlacement { NodeCentered, Staggered };

struct CoefficientField {
  SpaceFn k;           // diffusivity, k >= kappa1 > 0
  SpaceTimeFn v1, v2;  // velocity components
  SpaceTimeFn r;       // reaction coefficient (may be empty)
  SpaceTimeFn f;       // forcing (may be empty)
  double kappa1 = 0.0, kappa2 = 0.0;  // declared bounds for k

  static CoefficientField constant(double k_value, double v1_value, double v2_value);

  double eval_k(double x1, double x2) const;
  double velocity(int component, double x1, double x2, double t) const;
};

// Smooth random field a0 + a1 sin(pi x1) cos(pi x2) + a2 cos(pi x1) sin(pi x2)
// + a3 x1 + a4 x2 with coefficients in [-amp, amp]; used by randomized tests.
SpaceTimeFn random_smooth_field(Rng& rng, double amp);

}  // namespace cdlab
