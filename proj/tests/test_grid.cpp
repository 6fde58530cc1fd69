#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cdlab/fd_operators.hpp"
#include "cdlab/grid.hpp"

using namespace cdlab;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("grid invariants") {
  Grid1D g1(2.0, 8);
  CHECK(g1.h == doctest::Approx(0.25));
  CHECK(g1.n * g1.h == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(g1.num_interior() == 7);

  RectGrid2D g2(1.0, 2.0, 4, 8);
  CHECK(g2.h1 == doctest::Approx(0.25));
  CHECK(g2.h2 == doctest::Approx(0.25));
  CHECK(g2.num_interior() == 3 * 7);
  CHECK(g2.is_boundary(0, 3));
  CHECK(g2.is_boundary(4, 3));
  CHECK(!g2.is_boundary(2, 3));

  CHECK_THROWS_AS(RectGrid2D(1.0, 1.0, 1, 4), ParameterError);
  CHECK_THROWS_AS(Grid1D(-1.0, 4), ParameterError);
}

TEST_CASE("inner product: constants and zero") {
  RectGrid2D g(1.0, 1.0, 4, 4);
  GridFunction ones = GridFunction::zeros(g);
  for (int i2 = 1; i2 < 4; ++i2) {
    for (int i1 = 1; i1 < 4; ++i1) ones.values[g.node_index(i1, i2)] = 1.0;
  }
  // 9 interior nodes, each weighted by 1/16
  CHECK(inner_product(g, ones, ones) == doctest::Approx(0.5625).epsilon(1e-15));
  GridFunction zero = GridFunction::zeros(g);
  CHECK(inner_product(g, zero, ones) == 0.0);
}

TEST_CASE("inner product matches a direct double-loop oracle") {
  RectGrid2D g(1.0, 1.0, 8, 8);
  GridFunction y = GridFunction::sample(
      g, [](double x1, double x2) { return std::sin(kPi * x1) * std::sin(kPi * x2); });
  // boundary values of this sample are ~1e-16, zero them to satisfy Dirichlet
  for (int i2 = 0; i2 <= g.n2; ++i2) {
    for (int i1 = 0; i1 <= g.n1; ++i1) {
      if (g.is_boundary(i1, i2)) y.values[g.node_index(i1, i2)] = 0.0;
    }
  }
  double oracle = 0.0;
  for (int i2 = 1; i2 < g.n2; ++i2) {
    for (int i1 = 1; i1 < g.n1; ++i1) {
      const double v = std::sin(kPi * g.x1(i1)) * std::sin(kPi * g.x2(i2));
      oracle += v * v * g.h1 * g.h2;
    }
  }
  CHECK(inner_product(g, y, y) == doctest::Approx(oracle).epsilon(1e-14));
}

TEST_CASE("norms: trivial values") {
  RectGrid2D g(1.0, 1.0, 4, 4);
  GridFunction y = GridFunction::zeros(g);
  y.values[g.node_index(2, 2)] = 3.0;
  CHECK(norm(g, y, NormKind::Linf) == doctest::Approx(3.0));

  // L1 of y == 1 on the unit-interval grid with N = 10: 9 * 0.1
  Grid1D interval(1.0, 10);
  Vector ones1d(interval.num_interior(), 1.0);
  Vector measure1d(interval.num_interior(), interval.h);
  CHECK(weighted_l1(ones1d, measure1d) == doctest::Approx(0.9).epsilon(1e-14));

  // 2D row analogue with cell measure 0.1 * 0.5
  RectGrid2D line(1.0, 1.0, 10, 2);
  GridFunction ones = GridFunction::zeros(line);
  for (int i1 = 1; i1 < 10; ++i1) ones.values[line.node_index(i1, 1)] = 1.0;
  CHECK(norm(line, ones, NormKind::L1) == doctest::Approx(9 * 0.1 * 0.5).epsilon(1e-14));
}

TEST_CASE("energy norm cross-checked against the dense quadratic form") {
  RectGrid2D g(1.0, 1.0, 6, 6);
  CoefficientField field = CoefficientField::constant(1.0, 0.0, 0.0);
  const StencilMatrix d = assemble_diffusion(g, field);
  Rng rng(3);
  Vector y = rng.vector(g.num_interior());
  Vector measure = fd_measure(g);
  const double nrm = energy_norm(d, y, measure);
  const auto dense = d.to_dense();
  double q = 0.0;
  for (std::size_t r = 0; r < dense.size(); ++r) {
    for (std::size_t c = 0; c < dense.size(); ++c) {
      q += y[r] * dense[r][c] * y[c] * g.cell_measure();
    }
  }
  CHECK(nrm * nrm == doctest::Approx(q).epsilon(1e-12));

  // non-self-adjoint operator is rejected
  StencilBuilder bad(g.num_interior());
  bad.add(0, 0, 1.0);
  bad.add(0, 1, 2.0);
  for (int i = 1; i < g.num_interior(); ++i) bad.add(i, i, 1.0);
  CHECK_THROWS_AS(energy_norm(bad.build(), y, measure), ParameterError);
}

TEST_CASE("inner product is symmetric and bilinear; norms behave like norms") {
  RectGrid2D g(1.0, 1.0, 6, 6);
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Vector y = rng.vector(g.num_interior());
    Vector w = rng.vector(g.num_interior());
    Vector z = rng.vector(g.num_interior());
    const double a = rng.pm1(), b = rng.pm1();
    CHECK(inner_product_interior(g, y, w) ==
          doctest::Approx(inner_product_interior(g, w, y)).epsilon(1e-13));
    Vector combo(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) combo[i] = a * y[i] + b * w[i];
    CHECK(inner_product_interior(g, combo, z) ==
          doctest::Approx(a * inner_product_interior(g, y, z) +
                          b * inner_product_interior(g, w, z))
              .epsilon(1e-12));
    // homogeneity and triangle inequality in all three norms
    for (NormKind kind : {NormKind::L2, NormKind::Linf, NormKind::L1}) {
      const double ny = norm_interior(g, y, kind);
      Vector sy = y;
      for (double& v : sy) v *= -2.5;
      CHECK(norm_interior(g, sy, kind) == doctest::Approx(2.5 * ny).epsilon(1e-13));
      Vector sum(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) sum[i] = y[i] + w[i];
      CHECK(norm_interior(g, sum, kind) <=
            ny + norm_interior(g, w, kind) + 1e-12);
    }
    // positivity of the L2 norm for nonzero functions
    CHECK(norm_interior(g, y, NormKind::L2) > 0.0);
  }
}
