#include "cdlab/exponential.hpp"

#include <cmath>

namespace cdlab {

namespace {

double checked_exp(double arg) {
  if (std::fabs(arg) > 700.0) {
    throw ParameterError("exp_operator: |theta*h| > 700, exponent out of range");
  }
  return std::exp(arg);
}

double theta_at(const CoefficientField& field, int comp, double x1, double x2, double t) {
  const double k = field.eval_k(x1, x2);
  if (k <= 0.0) throw AssemblyError("exp_operator: k <= 0");
  return field.velocity(comp, x1, x2, t) / (2.0 * k);
}

}  // namespace

StencilMatrix exp_operator_1d(const Grid1D& g, const CoefficientField& field,
                              ConvectionForm form, double t) {
  const int n = g.num_interior();
  StencilBuilder b(n);
  for (int i = 1; i < g.n; ++i) {
    const int row = i - 1;
    const double x = g.x(i);
    const double kp = field.eval_k(x + 0.5 * g.h, 0.0);
    const double km = field.eval_k(x - 0.5 * g.h, 0.0);
    if (kp <= 0.0 || km <= 0.0) throw AssemblyError("exp_operator_1d: k <= 0");
    const double h2 = g.h * g.h;
    if (form == ConvectionForm::Nondivergent) {
      const double th = theta_at(field, 1, x, 0.0, t);
      const double east = kp * checked_exp(-th * g.h) / h2;
      const double west = km * checked_exp(th * g.h) / h2;
      b.add(row, row, east + west);
      if (i + 1 < g.n) b.add(row, row + 1, -east);
      if (i - 1 > 0) b.add(row, row - 1, -west);
    } else if (form == ConvectionForm::Divergent) {
      const double th0 = theta_at(field, 1, x, 0.0, t);
      const double thp = theta_at(field, 1, x + g.h, 0.0, t);
      const double thm = theta_at(field, 1, x - g.h, 0.0, t);
      b.add(row, row, (kp * checked_exp(th0 * g.h) + km * checked_exp(-th0 * g.h)) / h2);
      if (i + 1 < g.n) b.add(row, row + 1, -kp * checked_exp(-thp * g.h) / h2);
      if (i - 1 > 0) b.add(row, row - 1, -km * checked_exp(thm * g.h) / h2);
    } else {
      throw ParameterError("exp_operator_1d: skew-symmetric variant not defined");
    }
  }
  return b.build();
}

DirectionalOperators exp_operator_2d(const RectGrid2D& g, const CoefficientField& field,
                                     ConvectionForm form, double t) {
  if (form == ConvectionForm::SkewSymmetric) {
    throw ParameterError("exp_operator_2d: skew-symmetric variant not defined");
  }
  const int n = g.num_interior();
  StencilBuilder b1(n), b2(n);
  for (int i2 = 1; i2 < g.n2; ++i2) {
    for (int i1 = 1; i1 < g.n1; ++i1) {
      const int row = g.interior_index(i1, i2);
      const double x1 = g.x1(i1), x2 = g.x2(i2);
      // direction 1
      {
        const double kp = field.eval_k(x1 + 0.5 * g.h1, x2);
        const double km = field.eval_k(x1 - 0.5 * g.h1, x2);
        const double h2 = g.h1 * g.h1;
        if (form == ConvectionForm::Nondivergent) {
          const double th = theta_at(field, 1, x1, x2, t);
          const double east = kp * checked_exp(-th * g.h1) / h2;
          const double west = km * checked_exp(th * g.h1) / h2;
          b1.add(row, row, east + west);
          if (i1 + 1 < g.n1) b1.add(row, g.interior_index(i1 + 1, i2), -east);
          if (i1 - 1 > 0) b1.add(row, g.interior_index(i1 - 1, i2), -west);
        } else {
          const double th0 = theta_at(field, 1, x1, x2, t);
          const double thp = theta_at(field, 1, x1 + g.h1, x2, t);
          const double thm = theta_at(field, 1, x1 - g.h1, x2, t);
          b1.add(row, row,
                 (kp * checked_exp(th0 * g.h1) + km * checked_exp(-th0 * g.h1)) / h2);
          if (i1 + 1 < g.n1) {
            b1.add(row, g.interior_index(i1 + 1, i2), -kp * checked_exp(-thp * g.h1) / h2);
          }
          if (i1 - 1 > 0) {
            b1.add(row, g.interior_index(i1 - 1, i2), -km * checked_exp(thm * g.h1) / h2);
          }
        }
      }
      // direction 2
      {
        const double kp = field.eval_k(x1, x2 + 0.5 * g.h2);
        const double km = field.eval_k(x1, x2 - 0.5 * g.h2);
        const double h2s = g.h2 * g.h2;
        if (form == ConvectionForm::Nondivergent) {
          const double th = theta_at(field, 2, x1, x2, t);
          const double north = kp * checked_exp(-th * g.h2) / h2s;
          const double south = km * checked_exp(th * g.h2) / h2s;
          b2.add(row, row, north + south);
          if (i2 + 1 < g.n2) b2.add(row, g.interior_index(i1, i2 + 1), -north);
          if (i2 - 1 > 0) b2.add(row, g.interior_index(i1, i2 - 1), -south);
        } else {
          const double th0 = theta_at(field, 2, x1, x2, t);
          const double thp = theta_at(field, 2, x1, x2 + g.h2, t);
          const double thm = theta_at(field, 2, x1, x2 - g.h2, t);
          b2.add(row, row,
                 (kp * checked_exp(th0 * g.h2) + km * checked_exp(-th0 * g.h2)) / h2s);
          if (i2 + 1 < g.n2) {
            b2.add(row, g.interior_index(i1, i2 + 1), -kp * checked_exp(-thp * g.h2) / h2s);
          }
          if (i2 - 1 > 0) {
            b2.add(row, g.interior_index(i1, i2 - 1), -km * checked_exp(thm * g.h2) / h2s);
          }
        }
      }
    }
  }
  return DirectionalOperators{b1.build(), b2.build()};
}

double gamma_constant(const DirectionalOperators& ops, GammaVariant variant) {
  const int n = ops.a1.rows();
  double full = 0.0, per_dir = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d1 = ops.a1.diagonal_entry(i);
    const double d2 = ops.a2.diagonal_entry(i);
    full = std::max(full, d1 + d2);
    per_dir = std::max(per_dir, std::max(d1, d2));
  }
  switch (variant) {
    case GammaVariant::Full2D:
      return full;
    case GammaVariant::PerDirection:
      return per_dir;
    case GammaVariant::Additive:
      return 2.0 * per_dir;
  }
  throw ParameterError("gamma_constant: unknown variant");
}

}  // namespace cdlab
