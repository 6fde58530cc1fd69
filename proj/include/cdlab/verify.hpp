#pragma once
// Manufactured-solution machinery, convergence-order estimation, and the
// per-step a priori estimate monitors.

#include <string>

#include "cdlab/fields.hpp"
#include "cdlab/time_schemes.hpp"

namespace cdlab {

// An exact solution with the closed-form derivatives needed to derive the
// forcing for any convection form; no symbolic differentiation.
struct ManufacturedCase {
  std::string name;
  SpaceTimeFn u, u_t, u_x1, u_x2, u_x1x1, u_x2x2;
  SpaceFn k, k_x1, k_x2;
  SpaceTimeFn v1, v2, div_v;
  double kappa1 = 0.0, kappa2 = 0.0;

  CoefficientField field() const;
};

// built-in case library
ManufacturedCase case_sine1d(double eps = 0.05, double velocity = 1.0);
ManufacturedCase case_sine2d_rotating(double omega = 1.0, double diffusivity = 1.0);
ManufacturedCase case_compressible2d(double diffusivity = 1.0);

// f = du/dt + C[u] - div(k grad u) for the chosen convection form
SpaceTimeFn derive_forcing(const ManufacturedCase& mc, ConvectionForm form);

struct OrderEstimate {
  std::vector<double> h;       // refinement parameter per level
  std::vector<double> error;
  std::vector<double> slopes;  // log2(e_k / e_{k+1}) per pair
  double fitted_slope = 0.0;   // least-squares fit of log e against log h
  double final_slope = 0.0;    // slope at the finest pair
  bool exact = false;          // errors at rounding level, slope meaningless
};

// error_at_level(level) runs the solver at refinement `level` and returns
// the error; h_at_level gives the corresponding mesh/time parameter.
OrderEstimate convergence_study(const std::function<double(int)>& error_at_level,
                                const std::function<double(int)>& h_at_level, int levels);

enum class EstimateId {
  MaxPrincipleLinf,  // ||y^n||_inf <= ||u0||_inf + sum tau ||phi||_inf
  MaxPrincipleL1,
  SkewFormEnergy,  // ||y^n||^2 <= ||u0||^2 + 1/2 sum tau ||phi||^2_{D^-1}
  DNormGrowth,  // ||y^{n+1}||_D <= (1 + M2 tau/4) ||y^n||_D
  ThreeLevelEnergy,  // E^{n+1} <= rho E^n + tau ||phi^n||^2
  ReactionSplitGrowth,  // ||y^{n+1}|| <= (1 - m tau) ||y^n||
  ExpTransformGrowth,  // ||y^{n+1}|| <= exp(-m tau) ||y^n||
  GronwallAccumulation,     // ||y^n|| <= rho^n ||y0|| + sum tau rho^{n-1-k} ||phi^k||
};

struct MonitorParams {
  double tau = 0.0;
  double m2 = 0.0;     // subordination constant for the growth bounds
  double sigma = 0.0;  // three-level weight
  double m = 0.0;      // reaction / spectral lower bound
  double rho = 1.0;    // per-step growth factor
};

struct MonitorReport {
  bool ok = true;
  int first_violation = -1;
  double lhs = 0.0, rhs = 0.0;  // at the violation
};

MonitorReport monitor_apriori(const TimeSeries& series, EstimateId id,
                              const MonitorParams& params);

}  // namespace cdlab
