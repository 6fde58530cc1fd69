#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cdlab/exponential.hpp"
#include "cdlab/fd_operators.hpp"
#include "cdlab/stability.hpp"
#include "cdlab/time_schemes.hpp"

using namespace cdlab;

namespace {

StencilMatrix weighted_b(const StencilMatrix& a, double sigma, double tau) {
  return StencilMatrix::identity(a.rows()).add_scaled(a, sigma * tau);
}

StencilMatrix fd_laplacian(int n) {
  RectGrid2D g(1.0, 1.0, n, n);
  return assemble_diffusion(g, CoefficientField::constant(1.0, 0.0, 0.0));
}

}  // namespace

TEST_CASE("Samarskii criterion: equality at sigma = 1/2, unconditional at sigma = 1") {
  const StencilMatrix a = fd_laplacian(8);
  for (double tau : {1e-3, 1e-2, 0.1, 1.0}) {
    const OperatorInequalityReport eq = check_samarskii(weighted_b(a, 0.5, tau), a, tau);
    CHECK(eq.ok);
    CHECK(std::fabs(eq.min_eigenvalue - 1.0) <= 1e-6);  // residual is exactly E
    const OperatorInequalityReport full = check_samarskii(weighted_b(a, 1.0, tau), a, tau);
    CHECK(full.ok);
  }

  // sigma = 0.49 with A = diag(100): residual 1 - 0.01 tau 100, fails for tau > 1
  StencilBuilder diag(3);
  for (int i = 0; i < 3; ++i) diag.add(i, i, 100.0);
  const StencilMatrix a100 = diag.build();
  const OperatorInequalityReport ok_small =
      check_samarskii(weighted_b(a100, 0.49, 0.5), a100, 0.5);
  CHECK(ok_small.ok);
  CHECK(ok_small.min_eigenvalue == doctest::Approx(1.0 - 0.01 * 0.5 * 100.0).epsilon(1e-6));
  const OperatorInequalityReport fail_large =
      check_samarskii(weighted_b(a100, 0.49, 2.0), a100, 2.0);
  CHECK(!fail_large.ok);
  CHECK(fail_large.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(!fail_large.witness.empty());

  // non-SPD A is a precondition error
  StencilBuilder skew(2);
  skew.add(0, 1, 1.0);
  skew.add(1, 0, -1.0);
  CHECK_THROWS_AS(check_samarskii(StencilMatrix::identity(2), skew.build(), 0.1),
                  ParameterError);
}

TEST_CASE("inequality variants: rho, eps, and shifted forms") {
  const StencilMatrix a = fd_laplacian(6);
  const double tau = 0.05;
  // sigma = 0.4 fails the exact criterion but passes with rho slack:
  // B - tau/(1+rho) A = E + (0.4 - 1/(1+rho)) tau A
  const StencilMatrix b = weighted_b(a, 0.4, tau);
  CHECK(check_rho_samarskii(b, a, tau, 1.5).ok);
  CHECK_THROWS_AS(check_rho_samarskii(b, a, tau, -1.0), ParameterError);

  // eps-strengthened form: sigma = 0.5 fails for eps > 0 at large tau,
  // sigma = 1 passes for eps below 1 whenever tau lambda_min is large enough
  const StencilMatrix half = weighted_b(a, 0.5, tau);
  CHECK(!check_eps_samarskii(half, a, tau, 0.5).ok);
  const StencilMatrix full = weighted_b(a, 1.0, 1.0);
  CHECK(check_eps_samarskii(full, a, 1.0, 0.9).ok);
  CHECK_THROWS_AS(check_eps_samarskii(full, a, 1.0, 0.0), ParameterError);

  // shifted form: B = E + (tau/2) A satisfies B >= G + (tau/2) A for G = 0.5 E
  const StencilMatrix g_ok = StencilMatrix::identity(a.rows()).scaled(0.5);
  CHECK(check_shifted_samarskii(weighted_b(a, 0.5, tau), a, g_ok, tau).ok);
  const StencilMatrix g_big = StencilMatrix::identity(a.rows()).scaled(2.0);
  CHECK(!check_shifted_samarskii(weighted_b(a, 0.5, tau), a, g_big, tau).ok);
}

TEST_CASE("rho-stability: scalar transition operator") {
  // S = cE passes iff rho >= |c|
  const int n = 4;
  DenseMatrix s(n, n);
  for (int i = 0; i < n; ++i) s.at(i, i) = -0.8;
  const DenseMatrix d = DenseMatrix::identity(n);
  CHECK(check_rho_stability(s, d, 0.8).ok);
  CHECK(!check_rho_stability(s, d, 0.79).ok);
  CHECK(check_rho_stability(s, d, 0.79).attained_rho == doctest::Approx(0.8).epsilon(1e-9));
}

TEST_CASE("rho-stability: weighted scheme across the bilateral bound") {
  const StencilMatrix a = fd_laplacian(6);
  const double lmax = max_symmetric_eigenvalue(a);
  const DenseMatrix d = DenseMatrix::identity(a.rows());
  // explicit scheme: stable iff tau <= 2 / lambda_max
  const double tau_ok = 1.9 / lmax;
  const double tau_bad = 2.1 / lmax;
  CHECK(check_rho_stability(transition_operator(StencilMatrix::identity(a.rows()), a, tau_ok),
                            d, 1.0)
            .ok);
  const RhoStabilityReport bad = check_rho_stability(
      transition_operator(StencilMatrix::identity(a.rows()), a, tau_bad), d, 1.0);
  CHECK(!bad.ok);
  CHECK(!bad.witness.empty());
  // implicit scheme passes with rho = 1 at any tested tau
  for (double tau : {0.01, 0.1, 1.0}) {
    CHECK(check_rho_stability(transition_operator(weighted_b(a, 1.0, tau), a, tau), d, 1.0)
              .ok);
  }
}

TEST_CASE("logarithmic norms") {
  StencilBuilder b(2);
  b.add(0, 0, 2.0);
  b.add(0, 1, -1.0);
  b.add(1, 0, -1.0);
  b.add(1, 1, 2.0);
  const StencilMatrix a = b.build();
  CHECK(log_norm(a, NormSpace::Linf) == doctest::Approx(3.0));
  CHECK(log_norm(a.scaled(-1.0), NormSpace::Linf) == doctest::Approx(-1.0));
  CHECK(log_norm(a, NormSpace::L1) == doctest::Approx(3.0));

  // mu[cE + A] = c + mu[A]
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    StencilBuilder rb(5);
    for (int r = 0; r < 5; ++r) {
      for (int c = 0; c < 5; ++c) rb.add(r, c, rng.pm1());
    }
    const StencilMatrix m = rb.build();
    const double c = rng.uniform(0.0, 3.0);
    const StencilMatrix shifted = m.add_scaled(StencilMatrix::identity(5), c);
    for (NormSpace space : {NormSpace::Linf, NormSpace::L1}) {
      CHECK(log_norm(shifted, space) ==
            doctest::Approx(c + log_norm(m, space)).epsilon(1e-13));
      // homogeneity for nonnegative scalars
      CHECK(log_norm(m.scaled(c), space) ==
            doctest::Approx(c * log_norm(m, space)).epsilon(1e-12));
    }
    // lower bound ||A w|| >= max(-mu[-A], -mu[A]) ||w||
    for (int k = 0; k < 5; ++k) {
      Vector w = rng.vector(5);
      const Vector aw = m.apply(w);
      for (NormSpace space : {NormSpace::Linf, NormSpace::L1}) {
        double wn = 0.0, awn = 0.0;
        if (space == NormSpace::Linf) {
          for (double v : w) wn = std::max(wn, std::fabs(v));
          for (double v : aw) awn = std::max(awn, std::fabs(v));
        } else {
          for (double v : w) wn += std::fabs(v);
          for (double v : aw) awn += std::fabs(v);
        }
        const double lower =
            std::max(-log_norm(m.scaled(-1.0), space), -log_norm(m, space));
        CHECK(awn >= lower * wn - 1e-12);
      }
    }
  }
}

TEST_CASE("log norm report gathers all four values") {
  StencilBuilder b(2);
  b.add(0, 0, 2.0);
  b.add(0, 1, -1.0);
  b.add(1, 0, -1.0);
  b.add(1, 1, 2.0);
  const LogNormReport rep = log_norm_report(b.build());
  CHECK(rep.mu_inf_a == doctest::Approx(3.0));
  CHECK(rep.mu_1_a == doctest::Approx(3.0));
  CHECK(rep.mu_inf_neg_a == doctest::Approx(-1.0));
  CHECK(rep.mu_1_neg_a == doctest::Approx(-1.0));
}

TEST_CASE("diagonal dominance checks") {
  const StencilMatrix lap = fd_laplacian(5);
  const DominanceReport rows = check_diag_dominance(lap, Orientation::Rows);
  CHECK(rows.dominant);
  CHECK(rows.offdiag_nonpositive);
  CHECK(check_diag_dominance(lap, Orientation::Columns).dominant);

  StencilBuilder bad(2);
  bad.add(0, 0, 1.0);
  bad.add(0, 1, 2.0);  // a_12 = a_11 + 1
  bad.add(1, 1, 5.0);
  const DominanceReport r = check_diag_dominance(bad.build(), Orientation::Rows);
  CHECK(!r.dominant);
  CHECK(r.witness_index == 0);
  CHECK(r.defect == doctest::Approx(-1.0));
}

TEST_CASE("banach step bound") {
  CHECK(std::isinf(banach_step_bound(fd_laplacian(4), 1.0)));
  StencilBuilder b(3);
  for (int i = 0; i < 3; ++i) b.add(i, i, 64.0);
  CHECK(banach_step_bound(b.build(), 0.0) == doctest::Approx(1.0 / 64.0));
  CHECK(banach_step_bound_gamma(64.0, 0.0) == doctest::Approx(0.015625));
  CHECK(banach_step_bound_gamma(64.0, 0.5) == doctest::Approx(0.03125));
}

TEST_CASE("empirical stability boundary matches the formula (bisection)") {
  // explicit heat equation in L2: boundary = 2 / lambda_max; the
  // uniform-norm bound 1/max(a_ii) is within a factor ~1/cos^2 of it
  const StencilMatrix a = fd_laplacian(16);
  const int n = a.rows();
  Rng rng(1234);
  const Vector u0 = rng.vector(n);
  auto grows = [&](double tau) {
    Vector y = u0;
    Vector ay(n);
    double norm0 = 0.0;
    for (double v : y) norm0 = std::max(norm0, std::fabs(v));
    for (int step = 0; step < 200; ++step) {
      a.apply(y, ay);
      for (int i = 0; i < n; ++i) y[i] -= tau * ay[i];
    }
    double norm1 = 0.0;
    for (double v : y) norm1 = std::max(norm1, std::fabs(v));
    return norm1 > norm0;
  };
  const double lmax = max_symmetric_eigenvalue(a);
  const double formula = 2.0 / lmax;
  // geometric bisection, 8 refinement steps
  double lo = 0.5 * formula, hi = 2.0 * formula;
  REQUIRE(!grows(lo));
  REQUIRE(grows(hi));
  for (int it = 0; it < 8; ++it) {
    const double mid = std::sqrt(lo * hi);
    (grows(mid) ? hi : lo) = mid;
  }
  CHECK(hi / formula <= 1.05);
  CHECK(formula / lo <= 1.05);
}

TEST_CASE("M-matrix checks") {
  const StencilMatrix lap = fd_laplacian(6);
  for (double tau : {0.01, 1.0}) {
    const StencilMatrix b = weighted_b(lap, 0.7, tau);
    CHECK(check_m_matrix(b).ok);
  }

  // central convection at Pe = 3 breaks the sign pattern
  RectGrid2D g(1.0, 1.0, 12, 12);
  CoefficientField fast = CoefficientField::constant(1.0 / 72.0, 1.0, 0.0);  // theta = 3
  const StencilMatrix a = assemble_diffusion(g, fast).add_scaled(
      assemble_convection(g, fast, ConvectionForm::Nondivergent,
                          CoefficientPlacement::NodeCentered, 0.0),
      1.0);
  const MMatrixReport rep = check_m_matrix(weighted_b(a, 1.0, 0.1));
  CHECK(!rep.ok);
  CHECK(rep.reason.find("positive off-diagonal") != std::string::npos);

  // exponential operator stays an M-matrix generator up to theta = 50
  for (double theta : {0.5, 5.0, 50.0}) {
    CoefficientField f = CoefficientField::constant(0.1, 2.0 * 0.1 * theta * 12.0, 0.0);
    const DirectionalOperators ops =
        exp_operator_2d(g, f, ConvectionForm::Nondivergent, 0.0);
    CHECK(check_m_matrix(weighted_b(ops.sum(), 1.0, 0.2)).ok);
  }
}

TEST_CASE("nonnegative data stays nonnegative under the step bound") {
  RectGrid2D g(1.0, 1.0, 10, 10);
  CoefficientField field = CoefficientField::constant(0.2, 1.0, -0.5);
  const DirectionalOperators ops =
      exp_operator_2d(g, field, ConvectionForm::Nondivergent, 0.0);
  const StencilMatrix a = ops.sum();
  REQUIRE(check_diag_dominance(a, Orientation::Rows).dominant);
  Rng rng(5150);
  const double sigma = 0.4;
  const double tau = 0.9 * banach_step_bound(a, sigma);
  for (int trial = 0; trial < 50; ++trial) {
    Vector y(a.rows());
    for (double& v : y) v = rng.uniform(0.0, 1.0);
    Vector phi(a.rows());
    for (double& v : phi) v = rng.uniform(0.0, 0.5);
    // one weighted step: (E + sigma tau A) y' = (E - (1-sigma) tau A) y + tau phi
    y = step_two_level(tau, sigma, sigma, a, StencilBuilder(a.rows()).build(), y, phi);
    for (double v : y) CHECK(v >= -1e-12);
  }
}
