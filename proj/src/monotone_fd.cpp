#include "cdlab/monotone_fd.hpp"

#include <cmath>

namespace cdlab {

double Regularizer::factor(double theta) const {
  switch (kind) {
    case Kind::Exponential: {
      // theta*coth(theta) = theta + 2*theta/expm1(2*theta); removable
      // singularity at 0 handled by the Taylor branch
      const double a = std::fabs(theta);
      if (a < 1e-4) return 1.0 + theta * theta / 3.0;
      return theta + 2.0 * theta / std::expm1(2.0 * theta);
    }
    case Kind::Quadratic:
      if (eta <= 0.25) throw ParameterError("Regularizer: quadratic needs eta > 0.25");
      return 1.0 + eta * theta * theta;
    case Kind::Rational:
      return 1.0 + theta * theta / (1.0 + std::fabs(theta));
    case Kind::Upwind:
      return 1.0 + std::fabs(theta);
  }
  throw ParameterError("Regularizer: unknown kind");
}

double Regularizer::factor_minus_theta(double theta) const {
  switch (kind) {
    case Kind::Exponential:
      // theta*coth(theta) - theta = 2 theta / (e^{2 theta} - 1)
      if (theta == 0.0) return 1.0;
      return 2.0 * theta / std::expm1(2.0 * theta);
    case Kind::Quadratic:
      if (eta <= 0.25) throw ParameterError("Regularizer: quadratic needs eta > 0.25");
      return 1.0 - theta + eta * theta * theta;
    case Kind::Rational:
      // 1 + theta^2/(1+|theta|) - theta, combined over the common denominator
      if (theta >= 0.0) return 1.0 / (1.0 + theta);
      return (1.0 - 2.0 * theta + 2.0 * theta * theta) / (1.0 - theta);
    case Kind::Upwind:
      return theta >= 0.0 ? 1.0 : 1.0 - 2.0 * theta;
  }
  throw ParameterError("Regularizer: unknown kind");
}

PecletField peclet_field(const RectGrid2D& g, const CoefficientField& field, double t) {
  PecletField p;
  p.theta1.assign(g.num_nodes(), 0.0);
  p.theta2.assign(g.num_nodes(), 0.0);
  for (int i2 = 0; i2 <= g.n2; ++i2) {
    for (int i1 = 0; i1 <= g.n1; ++i1) {
      const double x1 = g.x1(i1), x2 = g.x2(i2);
      const double k = field.eval_k(x1, x2);
      const int id = g.node_index(i1, i2);
      p.theta1[id] = field.velocity(1, x1, x2, t) * g.h1 / (2.0 * k);
      p.theta2[id] = field.velocity(2, x1, x2, t) * g.h2 / (2.0 * k);
    }
  }
  return p;
}

double PecletField::max_abs() const {
  double m = 0.0;
  for (double v : theta1) m = std::max(m, std::fabs(v));
  for (double v : theta2) m = std::max(m, std::fabs(v));
  return m;
}

StencilMatrix FivePointScheme::matrix() const {
  const RectGrid2D& g = grid;
  StencilBuilder b(g.num_interior());
  for (int i2 = 1; i2 < g.n2; ++i2) {
    for (int i1 = 1; i1 < g.n1; ++i1) {
      const int row = g.interior_index(i1, i2);
      const int id = g.node_index(i1, i2);
      b.add(row, row, gamma[id]);
      if (i1 > 1) b.add(row, g.interior_index(i1 - 1, i2), -alpha1[id]);
      if (i1 < g.n1 - 1) b.add(row, g.interior_index(i1 + 1, i2), -beta1[id]);
      if (i2 > 1) b.add(row, g.interior_index(i1, i2 - 1), -alpha2[id]);
      if (i2 < g.n2 - 1) b.add(row, g.interior_index(i1, i2 + 1), -beta2[id]);
    }
  }
  return b.build();
}

Vector FivePointScheme::residual(const GridFunction& y) const {
  const RectGrid2D& g = grid;
  Vector res(g.num_interior());
  for (int i2 = 1; i2 < g.n2; ++i2) {
    for (int i1 = 1; i1 < g.n1; ++i1) {
      const int id = g.node_index(i1, i2);
      const double lhs = gamma[id] * y.values[id] -
                         alpha1[id] * y.values[g.node_index(i1 - 1, i2)] -
                         beta1[id] * y.values[g.node_index(i1 + 1, i2)] -
                         alpha2[id] * y.values[g.node_index(i1, i2 - 1)] -
                         beta2[id] * y.values[g.node_index(i1, i2 + 1)];
      res[g.interior_index(i1, i2)] = lhs - rhs[g.interior_index(i1, i2)];
    }
  }
  return res;
}

FivePointScheme build_nondivergent_scheme(const RectGrid2D& g,
                                          const CoefficientField& field,
                                          const std::optional<Regularizer>& reg,
                                          double t) {
  FivePointScheme s{g, Vector(g.num_nodes(), 0.0), Vector(g.num_nodes(), 0.0),
                    Vector(g.num_nodes(), 0.0), Vector(g.num_nodes(), 0.0),
                    Vector(g.num_nodes(), 0.0), Vector(g.num_interior(), 0.0)};
  for (int i2 = 0; i2 <= g.n2; ++i2) {
    for (int i1 = 0; i1 <= g.n1; ++i1) {
      const int id = g.node_index(i1, i2);
      const double x1 = g.x1(i1), x2 = g.x2(i2);
      const double k = field.eval_k(x1, x2);
      if (k <= 0.0) throw AssemblyError("build_nondivergent_scheme: k <= 0");
      const double v1 = field.velocity(1, x1, x2, t);
      const double v2 = field.velocity(2, x1, x2, t);
      const double th1 = v1 * g.h1 / (2.0 * k);
      const double th2 = v2 * g.h2 / (2.0 * k);
      const double kw = field.eval_k(x1 - 0.5 * g.h1, x2);
      const double ke = field.eval_k(x1 + 0.5 * g.h1, x2);
      const double ks = field.eval_k(x1, x2 - 0.5 * g.h2);
      const double kn = field.eval_k(x1, x2 + 0.5 * g.h2);
      // alpha = ((1+rho) + theta) k_-/h^2, beta = ((1+rho) - theta) k_+/h^2;
      // the combinations are evaluated cancellation-free so certified
      // schemes keep strictly positive coefficients at any Peclet number
      const double q1p = reg ? reg->factor_plus_theta(th1) : 1.0 + th1;
      const double q1m = reg ? reg->factor_minus_theta(th1) : 1.0 - th1;
      const double q2p = reg ? reg->factor_plus_theta(th2) : 1.0 + th2;
      const double q2m = reg ? reg->factor_minus_theta(th2) : 1.0 - th2;
      s.alpha1[id] = q1p * kw / (g.h1 * g.h1);
      s.beta1[id] = q1m * ke / (g.h1 * g.h1);
      s.alpha2[id] = q2p * ks / (g.h2 * g.h2);
      s.beta2[id] = q2m * kn / (g.h2 * g.h2);
      s.gamma[id] = s.alpha1[id] + s.beta1[id] + s.alpha2[id] + s.beta2[id];
    }
  }
  if (field.f) s.rhs = semi_discrete_rhs(g, field.f, t);
  return s;
}

FivePointScheme build_divergent_scheme(const RectGrid2D& g, const CoefficientField& field,
                                       const std::optional<Regularizer>& reg, double t) {
  FivePointScheme s{g, Vector(g.num_nodes(), 0.0), Vector(g.num_nodes(), 0.0),
                    Vector(g.num_nodes(), 0.0), Vector(g.num_nodes(), 0.0),
                    Vector(g.num_nodes(), 0.0), Vector(g.num_interior(), 0.0)};
  // half-integer samples; theta is the Peclet number at the same face and
  // the +/- combinations are evaluated cancellation-free
  auto face_coeff = [&](double x1, double x2, double h, int comp, bool plus) {
    const double k = field.eval_k(x1, x2);
    if (k <= 0.0) throw AssemblyError("build_divergent_scheme: k <= 0");
    const double th = field.velocity(comp, x1, x2, t) * h / (2.0 * k);
    double q;
    if (reg) {
      q = plus ? reg->factor_plus_theta(th) : reg->factor_minus_theta(th);
    } else {
      q = plus ? 1.0 + th : 1.0 - th;
    }
    return q * k / (h * h);
  };
  for (int i2 = 0; i2 <= g.n2; ++i2) {
    for (int i1 = 0; i1 <= g.n1; ++i1) {
      const int id = g.node_index(i1, i2);
      const double x1 = g.x1(i1), x2 = g.x2(i2);
      s.alpha1[id] = face_coeff(x1 - 0.5 * g.h1, x2, g.h1, 1, /*plus=*/true);
      s.beta1[id] = face_coeff(x1 + 0.5 * g.h1, x2, g.h1, 1, /*plus=*/false);
      s.alpha2[id] = face_coeff(x1, x2 - 0.5 * g.h2, g.h2, 2, /*plus=*/true);
      s.beta2[id] = face_coeff(x1, x2 + 0.5 * g.h2, g.h2, 2, /*plus=*/false);
    }
  }
  // gamma references the neighbor-shifted coefficients (column structure)
  for (int i2 = 0; i2 <= g.n2; ++i2) {
    for (int i1 = 0; i1 <= g.n1; ++i1) {
      const int id = g.node_index(i1, i2);
      if (i1 == 0 || i1 == g.n1 || i2 == 0 || i2 == g.n2) {
        s.gamma[id] = s.alpha1[id] + s.beta1[id] + s.alpha2[id] + s.beta2[id];
        continue;
      }
      s.gamma[id] = s.alpha1[g.node_index(i1 + 1, i2)] +
                    s.beta1[g.node_index(i1 - 1, i2)] +
                    s.alpha2[g.node_index(i1, i2 + 1)] +
                    s.beta2[g.node_index(i1, i2 - 1)];
    }
  }
  if (field.f) s.rhs = semi_discrete_rhs(g, field.f, t);
  return s;
}

MonotoneCertificate check_maximum_principle(const FivePointScheme& s) {
  const RectGrid2D& g = s.grid;
  MonotoneCertificate cert;
  cert.positive = true;
  cert.row = true;
  cert.column = true;
  auto witness = [&](const char* what, int i1, int i2, double value) {
    if (cert.witness.empty()) {
      cert.witness = std::string(what) + " at node (" + std::to_string(i1) + "," +
                     std::to_string(i2) + ") = " + std::to_string(value);
    }
  };
  // strict positivity: alpha/beta on all nodes, gamma on interior
  for (int i2 = 0; i2 <= g.n2; ++i2) {
    for (int i1 = 0; i1 <= g.n1; ++i1) {
      const int id = g.node_index(i1, i2);
      if (s.alpha1[id] <= 0.0) { cert.positive = false; witness("alpha1", i1, i2, s.alpha1[id]); }
      if (s.beta1[id] <= 0.0) { cert.positive = false; witness("beta1", i1, i2, s.beta1[id]); }
      if (s.alpha2[id] <= 0.0) { cert.positive = false; witness("alpha2", i1, i2, s.alpha2[id]); }
      if (s.beta2[id] <= 0.0) { cert.positive = false; witness("beta2", i1, i2, s.beta2[id]); }
    }
  }
  for (int i2 = 1; i2 < g.n2; ++i2) {
    for (int i1 = 1; i1 < g.n1; ++i1) {
      const int id = g.node_index(i1, i2);
      if (s.gamma[id] <= 0.0) { cert.positive = false; witness("gamma", i1, i2, s.gamma[id]); }
      const double row_sum = s.alpha1[id] + s.beta1[id] + s.alpha2[id] + s.beta2[id];
      if (s.gamma[id] < row_sum) {
        cert.row = false;
      }
      const double col_sum = s.alpha1[g.node_index(i1 + 1, i2)] +
                             s.beta1[g.node_index(i1 - 1, i2)] +
                             s.alpha2[g.node_index(i1, i2 + 1)] +
                             s.beta2[g.node_index(i1, i2 - 1)];
      if (s.gamma[id] < col_sum) {
        cert.column = false;
      }
    }
  }
  if (!cert.ok() && cert.witness.empty()) cert.witness = "dominance defect";
  return cert;
}

GridFunction solve_steady(const FivePointScheme& s, const SteadySolveOptions& opts) {
  if (!opts.allow_uncertified) {
    const MonotoneCertificate cert = check_maximum_principle(s);
    if (!cert.ok()) {
      throw SolverError("solve_steady: scheme not certified monotone (" + cert.witness +
                        "); set allow_uncertified to override");
    }
  }
  const StencilMatrix m = s.matrix();
  SolverOptions solver = opts.solver;
  Vector y = solve_sparse(m, s.rhs, /*symmetric=*/false, solver);
  return extend_zero(s.grid, y);
}

}  // namespace cdlab
