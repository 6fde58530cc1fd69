#pragma once
// Uniform tensor grids, grid functions with explicit boundary storage, and
// the discrete inner products / norms used throughout.

#include <functional>

#include "cdlab/common.hpp"
#include "cdlab/sparse.hpp"

namespace cdlab {

struct Grid1D {
  double l;  // domain length
  int n;     // cell count
  double h;  // spacing, n*h == l

  Grid1D(double length, int cells);

  int num_nodes() const { return n + 1; }
  int num_interior() const { return n - 1; }
  double x(int i) const { return i * h; }
  bool is_boundary(int i) const { return i == 0 || i == n; }
  // interior node i = 1..n-1 maps to equation index i-1
  int interior_index(int i) const { return i - 1; }
};

struct RectGrid2D {
  double l1, l2;
  int n1, n2;
  double h1, h2;

  RectGrid2D(double length1, double length2, int cells1, int cells2);

  int num_nodes() const { return (n1 + 1) * (n2 + 1); }
  int num_interior() const { return (n1 - 1) * (n2 - 1); }
  double x1(int i1) const { return i1 * h1; }
  double x2(int i2) const { return i2 * h2; }
  // row-major over (i1, i2), i1 fastest
  int node_index(int i1, int i2) const { return i2 * (n1 + 1) + i1; }
  bool is_boundary(int i1, int i2) const {
    return i1 == 0 || i1 == n1 || i2 == 0 || i2 == n2;
  }
  int interior_index(int i1, int i2) const { return (i2 - 1) * (n1 - 1) + (i1 - 1); }
  double cell_measure() const { return h1 * h2; }
};

// Values on all nodes (interior + boundary) of a 2D grid.
struct GridFunction {
  Vector values;

  static GridFunction zeros(const RectGrid2D& g) {
    GridFunction f;
    f.values.assign(g.num_nodes(), 0.0);
    return f;
  }
  static GridFunction sample(const RectGrid2D& g,
                             const std::function<double(double, double)>& fn);
};

enum class NormKind { L2, Linf, L1, EnergyD, EnergyA };

// Restriction to interior equation ordering and zero-extension back.
Vector restrict_interior(const RectGrid2D& g, const GridFunction& f);
GridFunction extend_zero(const RectGrid2D& g, const Vector& interior);

// (y,w) = sum over interior nodes of y*w*h1*h2; both functions must vanish
// on the boundary nodes.
double inner_product(const RectGrid2D& g, const GridFunction& y, const GridFunction& w);
double inner_product_interior(const RectGrid2D& g, const Vector& y, const Vector& w);

double norm(const RectGrid2D& g, const GridFunction& y, NormKind kind,
            const StencilMatrix* energy_op = nullptr);
double norm_interior(const RectGrid2D& g, const Vector& y, NormKind kind,
                     const StencilMatrix* energy_op = nullptr);

// Generic weighted-space norms on interior vectors: measure[i] is the cell
// measure (h1*h2 on rectangles, V_i on meshes).
double weighted_l2(const Vector& y, const Vector& measure);
double weighted_l1(const Vector& y, const Vector& measure);
double linf(const Vector& y);
double weighted_inner(const Vector& y, const Vector& w, const Vector& measure);
// sqrt((My, y)) in the weighted space; M must be self-adjoint there.
double energy_norm(const StencilMatrix& m, const Vector& y, const Vector& measure);

}  // namespace cdlab
