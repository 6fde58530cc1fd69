#include "cdlab/fields.hpp"

#include <cmath>

namespace cdlab {

CoefficientField CoefficientField::constant(double k_value, double v1_value,
                                            double v2_value) {
  CoefficientField f;
  f.k = [k_value](double, double) { return k_value; };
  f.v1 = [v1_value](double, double, double) { return v1_value; };
  f.v2 = [v2_value](double, double, double) { return v2_value; };
  f.kappa1 = k_value;
  f.kappa2 = k_value;
  return f;
}

double CoefficientField::eval_k(double x1, double x2) const {
  if (!k) throw ParameterError("CoefficientField: diffusivity not set");
  return k(x1, x2);
}

double CoefficientField::velocity(int component, double x1, double x2, double t) const {
  const SpaceTimeFn& v = (component == 1) ? v1 : v2;
  if (!v) return 0.0;
  return v(x1, x2, t);
}

SpaceTimeFn random_smooth_field(Rng& rng, double amp) {
  const double a0 = amp * rng.pm1();
  const double a1 = amp * rng.pm1();
  const double a2 = amp * rng.pm1();
  const double a3 = amp * rng.pm1();
  const double a4 = amp * rng.pm1();
  const double pi = 3.14159265358979323846;
  return [=](double x1, double x2, double) {
    return a0 + a1 * std::sin(pi * x1) * std::cos(pi * x2) +
           a2 * std::cos(pi * x1) * std::sin(pi * x2) + a3 * x1 + a4 * x2;
  };
}

}  // namespace cdlab
