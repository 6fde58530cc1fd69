#include "cdlab/fd_operators.hpp"

#include <cmath>

namespace cdlab {

namespace {

void check_sample(const CoefficientField& field, double value) {
  if (value <= 0.0) throw AssemblyError("assemble_diffusion: nonpositive diffusivity sample");
  if (field.kappa1 > 0.0 && (value < field.kappa1 - 1e-12 || value > field.kappa2 + 1e-12)) {
    throw AssemblyError("assemble_diffusion: sampled k outside declared [kappa1, kappa2]");
  }
}

// adds the entry only when the neighbor is interior; boundary values are zero
void add_if_interior(StencilBuilder& b, const RectGrid2D& g, int row, int j1, int j2,
                     double value) {
  if (!g.is_boundary(j1, j2)) b.add(row, g.interior_index(j1, j2), value);
}

StencilMatrix convection_node_centered(const RectGrid2D& g, const CoefficientField& field,
                                       ConvectionForm form, double t) {
  StencilBuilder b(g.num_interior());
  for (int i2 = 1; i2 < g.n2; ++i2) {
    for (int i1 = 1; i1 < g.n1; ++i1) {
      const int row = g.interior_index(i1, i2);
      const double x1 = g.x1(i1), x2 = g.x2(i2);
      // C1: b(x) y_centered; C2: (b y)_centered
      const double b1 = field.velocity(1, x1, x2, t);
      const double b2 = field.velocity(2, x1, x2, t);
      const double b1e = field.velocity(1, x1 + g.h1, x2, t);
      const double b1w = field.velocity(1, x1 - g.h1, x2, t);
      const double b2n = field.velocity(2, x1, x2 + g.h2, t);
      const double b2s = field.velocity(2, x1, x2 - g.h2, t);
      double ce = 0.0, cw = 0.0, cn = 0.0, cs = 0.0;
      switch (form) {
        case ConvectionForm::Nondivergent:
          ce = b1 / (2.0 * g.h1);
          cw = -b1 / (2.0 * g.h1);
          cn = b2 / (2.0 * g.h2);
          cs = -b2 / (2.0 * g.h2);
          break;
        case ConvectionForm::Divergent:
          ce = b1e / (2.0 * g.h1);
          cw = -b1w / (2.0 * g.h1);
          cn = b2n / (2.0 * g.h2);
          cs = -b2s / (2.0 * g.h2);
          break;
        case ConvectionForm::SkewSymmetric:
          ce = 0.5 * (b1 + b1e) / (2.0 * g.h1);
          cw = -0.5 * (b1 + b1w) / (2.0 * g.h1);
          cn = 0.5 * (b2 + b2n) / (2.0 * g.h2);
          cs = -0.5 * (b2 + b2s) / (2.0 * g.h2);
          break;
      }
      add_if_interior(b, g, row, i1 + 1, i2, ce);
      add_if_interior(b, g, row, i1 - 1, i2, cw);
      add_if_interior(b, g, row, i1, i2 + 1, cn);
      add_if_interior(b, g, row, i1, i2 - 1, cs);
    }
  }
  return b.build();
}

StencilMatrix convection_staggered(const RectGrid2D& g, const CoefficientField& field,
                                   ConvectionForm form, double t) {
  StencilBuilder b(g.num_interior());
  for (int i2 = 1; i2 < g.n2; ++i2) {
    for (int i1 = 1; i1 < g.n1; ++i1) {
      const int row = g.interior_index(i1, i2);
      const double x1 = g.x1(i1), x2 = g.x2(i2);
      const double b1p = field.velocity(1, x1 + 0.5 * g.h1, x2, t);
      const double b1m = field.velocity(1, x1 - 0.5 * g.h1, x2, t);
      const double b2p = field.velocity(2, x1, x2 + 0.5 * g.h2, t);
      const double b2m = field.velocity(2, x1, x2 - 0.5 * g.h2, t);
      double ce, cw, cn, cs, cc;
      if (form == ConvectionForm::SkewSymmetric) {
        // no center term
        ce = b1p / (2.0 * g.h1);
        cw = -b1m / (2.0 * g.h1);
        cn = b2p / (2.0 * g.h2);
        cs = -b2m / (2.0 * g.h2);
        cc = 0.0;
      } else {
        // C1 = half-sum of one-sided derivatives with face velocities
        ce = b1p / (2.0 * g.h1);
        cw = -b1m / (2.0 * g.h1);
        cn = b2p / (2.0 * g.h2);
        cs = -b2m / (2.0 * g.h2);
        cc = (b1m - b1p) / (2.0 * g.h1) + (b2m - b2p) / (2.0 * g.h2);
        if (form == ConvectionForm::Divergent) {
          // C2 = C1 + (discrete divergence) y
          cc += (b1p - b1m) / g.h1 + (b2p - b2m) / g.h2;
        }
      }
      if (cc != 0.0) b.add(row, row, cc);
      add_if_interior(b, g, row, i1 + 1, i2, ce);
      add_if_interior(b, g, row, i1 - 1, i2, cw);
      add_if_interior(b, g, row, i1, i2 + 1, cn);
      add_if_interior(b, g, row, i1, i2 - 1, cs);
    }
  }
  return b.build();
}

}  // namespace

StencilMatrix assemble_diffusion(const RectGrid2D& g, const CoefficientField& field) {
  StencilBuilder b(g.num_interior());
  for (int i2 = 1; i2 < g.n2; ++i2) {
    for (int i1 = 1; i1 < g.n1; ++i1) {
      const int row = g.interior_index(i1, i2);
      const double x1 = g.x1(i1), x2 = g.x2(i2);
      const double a1w = field.eval_k(x1 - 0.5 * g.h1, x2);
      const double a1e = field.eval_k(x1 + 0.5 * g.h1, x2);
      const double a2s = field.eval_k(x1, x2 - 0.5 * g.h2);
      const double a2n = field.eval_k(x1, x2 + 0.5 * g.h2);
      check_sample(field, a1w);
      check_sample(field, a1e);
      check_sample(field, a2s);
      check_sample(field, a2n);
      b.add(row, row, (a1w + a1e) / (g.h1 * g.h1) + (a2s + a2n) / (g.h2 * g.h2));
      add_if_interior(b, g, row, i1 - 1, i2, -a1w / (g.h1 * g.h1));
      add_if_interior(b, g, row, i1 + 1, i2, -a1e / (g.h1 * g.h1));
      add_if_interior(b, g, row, i1, i2 - 1, -a2s / (g.h2 * g.h2));
      add_if_interior(b, g, row, i1, i2 + 1, -a2n / (g.h2 * g.h2));
    }
  }
  return b.build();
}

StencilMatrix assemble_convection(const RectGrid2D& grid, const CoefficientField& field,
                                  ConvectionForm form, CoefficientPlacement placement,
                                  double t) {
  return placement == CoefficientPlacement::NodeCentered
             ? convection_node_centered(grid, field, form, t)
             : convection_staggered(grid, field, form, t);
}

OperatorConstants operator_constants(const RectGrid2D& g, const CoefficientField& field,
                                     ConvectionForm form, CoefficientPlacement placement,
                                     double t) {
  OperatorConstants out;
  out.m0 = 8.0 / (g.l1 * g.l1) + 8.0 / (g.l2 * g.l2);

  double m3_1 = 0.0, m3_2 = 0.0;
  for (int i2 = 1; i2 < g.n2; ++i2) {
    for (int i1 = 1; i1 < g.n1; ++i1) {
      const double x1 = g.x1(i1), x2 = g.x2(i2);
      const double a1 = field.eval_k(x1 - 0.5 * g.h1, x2);
      const double a1e = field.eval_k(x1 + 0.5 * g.h1, x2);
      const double a2 = field.eval_k(x1, x2 - 0.5 * g.h2);
      const double a2n = field.eval_k(x1, x2 + 0.5 * g.h2);
      m3_1 = std::max(m3_1, 0.5 * (a1 + a1e));
      m3_2 = std::max(m3_2, 0.5 * (a2 + a2n));
    }
  }
  out.m3 = 4.0 / (g.h1 * g.h1) * m3_1 + 4.0 / (g.h2 * g.h2) * m3_2;

  const double kappa1 = field.kappa1 > 0.0 ? field.kappa1 : 1.0;

  if (placement == CoefficientPlacement::NodeCentered) {
    // M1: backward difference derivatives of b over omega_alpha^+ x omega
    double d1 = 0.0, d2 = 0.0;
    for (int i2 = 1; i2 < g.n2; ++i2) {
      for (int i1 = 1; i1 <= g.n1; ++i1) {
        const double bx = (field.velocity(1, g.x1(i1), g.x2(i2), t) -
                           field.velocity(1, g.x1(i1 - 1), g.x2(i2), t)) / g.h1;
        d1 = std::max(d1, std::fabs(bx));
      }
    }
    for (int i2 = 1; i2 <= g.n2; ++i2) {
      for (int i1 = 1; i1 < g.n1; ++i1) {
        const double by = (field.velocity(2, g.x1(i1), g.x2(i2), t) -
                           field.velocity(2, g.x1(i1), g.x2(i2 - 1), t)) / g.h2;
        d2 = std::max(d2, std::fabs(by));
      }
    }
    out.m1 = 0.5 * d1 + 0.5 * d2;

    double max_b_sq_interior = 0.0;   // over omega
    double max_b_sq_closure = 0.0;    // over closed grid
    double max_central_div_sq = 0.0;  // over omega
    for (int i2 = 0; i2 <= g.n2; ++i2) {
      for (int i1 = 0; i1 <= g.n1; ++i1) {
        const double b1 = field.velocity(1, g.x1(i1), g.x2(i2), t);
        const double b2 = field.velocity(2, g.x1(i1), g.x2(i2), t);
        const double sq = std::max(b1 * b1, b2 * b2);
        max_b_sq_closure = std::max(max_b_sq_closure, sq);
        if (!g.is_boundary(i1, i2)) {
          max_b_sq_interior = std::max(max_b_sq_interior, sq);
          const double div =
              (field.velocity(1, g.x1(i1 + 1), g.x2(i2), t) -
               field.velocity(1, g.x1(i1 - 1), g.x2(i2), t)) / (2.0 * g.h1) +
              (field.velocity(2, g.x1(i1), g.x2(i2 + 1), t) -
               field.velocity(2, g.x1(i1), g.x2(i2 - 1), t)) / (2.0 * g.h2);
          max_central_div_sq = std::max(max_central_div_sq, div * div);
        }
      }
    }
    switch (form) {
      case ConvectionForm::Nondivergent:
        out.m2 = 2.0 / kappa1 * max_b_sq_interior;
        break;
      case ConvectionForm::Divergent:
        out.m2 = 2.0 / kappa1 *
                 (2.0 * max_b_sq_closure + out.m0 * max_central_div_sq);
        break;
      case ConvectionForm::SkewSymmetric:
        out.m2 = 1.0 / kappa1 *
                 (3.0 * max_b_sq_closure + out.m0 * max_central_div_sq);
        break;
    }
  } else {
    // staggered: half-integer samples
    double max_face_sq = 0.0;
    for (int i2 = 1; i2 < g.n2; ++i2) {
      for (int i1 = 1; i1 <= g.n1; ++i1) {
        const double b = field.velocity(1, g.x1(i1) - 0.5 * g.h1, g.x2(i2), t);
        max_face_sq = std::max(max_face_sq, b * b);
      }
    }
    for (int i2 = 1; i2 <= g.n2; ++i2) {
      for (int i1 = 1; i1 < g.n1; ++i1) {
        const double b = field.velocity(2, g.x1(i1), g.x2(i2) - 0.5 * g.h2, t);
        max_face_sq = std::max(max_face_sq, b * b);
      }
    }
    double max_div = 0.0;
    for (int i2 = 1; i2 < g.n2; ++i2) {
      for (int i1 = 1; i1 < g.n1; ++i1) {
        const double x1 = g.x1(i1), x2 = g.x2(i2);
        const double div =
            (field.velocity(1, x1 + 0.5 * g.h1, x2, t) -
             field.velocity(1, x1 - 0.5 * g.h1, x2, t)) / g.h1 +
            (field.velocity(2, x1, x2 + 0.5 * g.h2, t) -
             field.velocity(2, x1, x2 - 0.5 * g.h2, t)) / g.h2;
        max_div = std::max(max_div, std::fabs(div));
      }
    }
    out.m1 = 0.5 * max_div;
    switch (form) {
      case ConvectionForm::Nondivergent:
        out.m2 = 2.0 / kappa1 * max_face_sq;
        break;
      case ConvectionForm::Divergent:
        out.m2 = 2.0 / kappa1 * (2.0 * max_face_sq + out.m0 * max_div * max_div);
        break;
      case ConvectionForm::SkewSymmetric:
        out.m2 = 1.0 / kappa1 * (3.0 * max_face_sq + out.m0 * max_div * max_div);
        break;
    }
  }
  return out;
}

Vector semi_discrete_rhs(const RectGrid2D& g, const SpaceTimeFn& f, double t) {
  Vector phi(g.num_interior(), 0.0);
  if (!f) return phi;
  for (int i2 = 1; i2 < g.n2; ++i2) {
    for (int i1 = 1; i1 < g.n1; ++i1) {
      phi[g.interior_index(i1, i2)] = f(g.x1(i1), g.x2(i2), t);
    }
  }
  return phi;
}

Vector fd_measure(const RectGrid2D& g) {
  return Vector(g.num_interior(), g.cell_measure());
}

}  // namespace cdlab
