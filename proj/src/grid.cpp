#include "cdlab/grid.hpp"

#include <cmath>

#include "cdlab/kernels.hpp"

namespace cdlab {

Grid1D::Grid1D(double length, int cells) : l(length), n(cells), h(length / cells) {
  if (length <= 0.0) throw ParameterError("Grid1D: length must be positive");
  if (cells < 2) throw ParameterError("Grid1D: need at least 2 cells");
}

RectGrid2D::RectGrid2D(double length1, double length2, int cells1, int cells2)
    : l1(length1), l2(length2), n1(cells1), n2(cells2),
      h1(length1 / cells1), h2(length2 / cells2) {
  if (length1 <= 0.0 || length2 <= 0.0) {
    throw ParameterError("RectGrid2D: lengths must be positive");
  }
  if (cells1 < 2 || cells2 < 2) throw ParameterError("RectGrid2D: need at least 2 cells");
}

GridFunction GridFunction::sample(const RectGrid2D& g,
                                  const std::function<double(double, double)>& fn) {
  GridFunction f = zeros(g);
  for (int i2 = 0; i2 <= g.n2; ++i2) {
    for (int i1 = 0; i1 <= g.n1; ++i1) {
      f.values[g.node_index(i1, i2)] = fn(g.x1(i1), g.x2(i2));
    }
  }
  return f;
}

Vector restrict_interior(const RectGrid2D& g, const GridFunction& f) {
  if (static_cast<int>(f.values.size()) != g.num_nodes()) {
    throw DimensionError("restrict_interior: grid function size mismatch");
  }
  Vector v(g.num_interior());
  for (int i2 = 1; i2 < g.n2; ++i2) {
    for (int i1 = 1; i1 < g.n1; ++i1) {
      v[g.interior_index(i1, i2)] = f.values[g.node_index(i1, i2)];
    }
  }
  return v;
}

GridFunction extend_zero(const RectGrid2D& g, const Vector& interior) {
  if (static_cast<int>(interior.size()) != g.num_interior()) {
    throw DimensionError("extend_zero: interior vector size mismatch");
  }
  GridFunction f = GridFunction::zeros(g);
  for (int i2 = 1; i2 < g.n2; ++i2) {
    for (int i1 = 1; i1 < g.n1; ++i1) {
      f.values[g.node_index(i1, i2)] = interior[g.interior_index(i1, i2)];
    }
  }
  return f;
}

double inner_product(const RectGrid2D& g, const GridFunction& y, const GridFunction& w) {
  if (y.values.size() != w.values.size() ||
      static_cast<int>(y.values.size()) != g.num_nodes()) {
    throw DimensionError("inner_product: grid mismatch");
  }
  Vector yi = restrict_interior(g, y);
  Vector wi = restrict_interior(g, w);
  return inner_product_interior(g, yi, wi);
}

double inner_product_interior(const RectGrid2D& g, const Vector& y, const Vector& w) {
  if (y.size() != w.size() || static_cast<int>(y.size()) != g.num_interior()) {
    throw DimensionError("inner_product_interior: size mismatch");
  }
  return g.cell_measure() * kern::dot(y.data(), w.data(), y.size());
}

double weighted_inner(const Vector& y, const Vector& w, const Vector& measure) {
  if (y.size() != w.size() || y.size() != measure.size()) {
    throw DimensionError("weighted_inner: size mismatch");
  }
  return kern::dot3(y.data(), w.data(), measure.data(), y.size());
}

double weighted_l2(const Vector& y, const Vector& measure) {
  return std::sqrt(weighted_inner(y, y, measure));
}

double weighted_l1(const Vector& y, const Vector& measure) {
  if (y.size() != measure.size()) throw DimensionError("weighted_l1: size mismatch");
  return kern::wasum(y.data(), measure.data(), y.size());
}

double linf(const Vector& y) { return kern::amax(y.data(), y.size()); }

double energy_norm(const StencilMatrix& m, const Vector& y, const Vector& measure) {
  const StencilMatrix weighted = m.row_scaled(measure);
  if (!weighted.is_symmetric(1e-10 * (1.0 + m.max_abs_entry()))) {
    throw ParameterError("energy_norm: operator is not self-adjoint in the weighted space");
  }
  Vector my = m.apply(y);
  double q = weighted_inner(my, y, measure);
  if (q < -1e-12 * (1.0 + kern::dot(y.data(), y.data(), y.size()))) {
    throw ParameterError("energy_norm: operator is not positive");
  }
  return std::sqrt(std::max(0.0, q));
}

double norm_interior(const RectGrid2D& g, const Vector& y, NormKind kind,
                     const StencilMatrix* energy_op) {
  switch (kind) {
    case NormKind::L2:
      return std::sqrt(inner_product_interior(g, y, y));
    case NormKind::Linf:
      return linf(y);
    case NormKind::L1:
      return g.cell_measure() * kern::asum(y.data(), y.size());
    case NormKind::EnergyD:
    case NormKind::EnergyA: {
      if (energy_op == nullptr) throw ParameterError("norm: energy norm needs an operator");
      Vector measure(y.size(), g.cell_measure());
      return energy_norm(*energy_op, y, measure);
    }
  }
  throw ParameterError("norm: unknown kind");
}

double norm(const RectGrid2D& g, const GridFunction& y, NormKind kind,
            const StencilMatrix* energy_op) {
  Vector yi = restrict_interior(g, y);
  return norm_interior(g, yi, kind, energy_op);
}

}  // namespace cdlab
