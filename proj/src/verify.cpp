#include "cdlab/verify.hpp"

#include <cmath>

namespace cdlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

CoefficientField ManufacturedCase::field() const {
  CoefficientField f;
  f.k = k;
  f.v1 = v1;
  f.v2 = v2;
  f.kappa1 = kappa1;
  f.kappa2 = kappa2;
  return f;
}

ManufacturedCase case_sine1d(double eps, double velocity) {
  ManufacturedCase mc;
  mc.name = "sine1d";
  mc.u = [](double x1, double, double t) { return std::exp(-t) * std::sin(kPi * x1); };
  mc.u_t = [](double x1, double, double t) { return -std::exp(-t) * std::sin(kPi * x1); };
  mc.u_x1 = [](double x1, double, double t) {
    return kPi * std::exp(-t) * std::cos(kPi * x1);
  };
  mc.u_x2 = [](double, double, double) { return 0.0; };
  mc.u_x1x1 = [](double x1, double, double t) {
    return -kPi * kPi * std::exp(-t) * std::sin(kPi * x1);
  };
  mc.u_x2x2 = [](double, double, double) { return 0.0; };
  mc.k = [eps](double, double) { return eps; };
  mc.k_x1 = [](double, double) { return 0.0; };
  mc.k_x2 = [](double, double) { return 0.0; };
  mc.v1 = [velocity](double, double, double) { return velocity; };
  mc.v2 = [](double, double, double) { return 0.0; };
  mc.div_v = [](double, double, double) { return 0.0; };
  mc.kappa1 = eps;
  mc.kappa2 = eps;
  return mc;
}

ManufacturedCase case_sine2d_rotating(double omega, double diffusivity) {
  ManufacturedCase mc;
  mc.name = "sine2d";
  auto s = [](double x) { return std::sin(kPi * x); };
  auto c = [](double x) { return std::cos(kPi * x); };
  mc.u = [s](double x1, double x2, double t) { return std::exp(-t) * s(x1) * s(x2); };
  mc.u_t = [s](double x1, double x2, double t) { return -std::exp(-t) * s(x1) * s(x2); };
  mc.u_x1 = [s, c](double x1, double x2, double t) {
    return kPi * std::exp(-t) * c(x1) * s(x2);
  };
  mc.u_x2 = [s, c](double x1, double x2, double t) {
    return kPi * std::exp(-t) * s(x1) * c(x2);
  };
  mc.u_x1x1 = [s](double x1, double x2, double t) {
    return -kPi * kPi * std::exp(-t) * s(x1) * s(x2);
  };
  mc.u_x2x2 = mc.u_x1x1;
  mc.k = [diffusivity](double, double) { return diffusivity; };
  mc.k_x1 = [](double, double) { return 0.0; };
  mc.k_x2 = [](double, double) { return 0.0; };
  // rigid rotation about the square center: divergence-free
  mc.v1 = [omega](double, double x2, double) { return omega * (0.5 - x2); };
  mc.v2 = [omega](double x1, double, double) { return omega * (x1 - 0.5); };
  mc.div_v = [](double, double, double) { return 0.0; };
  mc.kappa1 = diffusivity;
  mc.kappa2 = diffusivity;
  return mc;
}

ManufacturedCase case_compressible2d(double diffusivity) {
  ManufacturedCase mc = case_sine2d_rotating(0.0, diffusivity);
  mc.name = "compressible2d";
  mc.v1 = [](double x1, double, double) { return x1; };
  mc.v2 = [](double, double x2, double) { return x2; };
  mc.div_v = [](double, double, double) { return 2.0; };
  return mc;
}

SpaceTimeFn derive_forcing(const ManufacturedCase& mc, ConvectionForm form) {
  return [mc, form](double x1, double x2, double t) {
    const double conv_nondiv = mc.v1(x1, x2, t) * mc.u_x1(x1, x2, t) +
                               mc.v2(x1, x2, t) * mc.u_x2(x1, x2, t);
    double conv = conv_nondiv;
    if (form == ConvectionForm::Divergent) {
      conv += mc.div_v(x1, x2, t) * mc.u(x1, x2, t);
    } else if (form == ConvectionForm::SkewSymmetric) {
      conv += 0.5 * mc.div_v(x1, x2, t) * mc.u(x1, x2, t);
    }
    const double diff = mc.k_x1(x1, x2) * mc.u_x1(x1, x2, t) +
                        mc.k(x1, x2) * mc.u_x1x1(x1, x2, t) +
                        mc.k_x2(x1, x2) * mc.u_x2(x1, x2, t) +
                        mc.k(x1, x2) * mc.u_x2x2(x1, x2, t);
    return mc.u_t(x1, x2, t) + conv - diff;
  };
}

OrderEstimate convergence_study(const std::function<double(int)>& error_at_level,
                                const std::function<double(int)>& h_at_level, int levels) {
  if (levels < 1) throw ParameterError("convergence_study: need at least one level");
  OrderEstimate est;
  for (int l = 0; l < levels; ++l) {
    est.h.push_back(h_at_level(l));
    est.error.push_back(error_at_level(l));
  }
  double emax = 0.0;
  for (double e : est.error) emax = std::max(emax, e);
  if (emax < 1e-12) {
    est.exact = true;
    return est;
  }
  for (int l = 0; l + 1 < levels; ++l) {
    const double ratio_h = est.h[l] / est.h[l + 1];
    est.slopes.push_back(std::log(est.error[l] / est.error[l + 1]) / std::log(ratio_h));
  }
  if (!est.slopes.empty()) est.final_slope = est.slopes.back();
  // least-squares slope of log e vs log h
  if (levels >= 2) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int l = 0; l < levels; ++l) {
      const double x = std::log(est.h[l]);
      const double y = std::log(est.error[l]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    est.fitted_slope = (levels * sxy - sx * sy) / (levels * sxx - sx * sx);
  }
  return est;
}

MonitorReport monitor_apriori(const TimeSeries& series, EstimateId id,
                              const MonitorParams& p) {
  MonitorReport report;
  const auto& steps = series.steps;
  if (steps.empty()) return report;
  auto violate = [&](int n, double lhs, double rhs) {
    const double tol = 1e-10 * (std::fabs(rhs) + 1.0);
    if (lhs > rhs + tol && report.ok) {
      report.ok = false;
      report.first_violation = n;
      report.lhs = lhs;
      report.rhs = rhs;
    }
  };
  switch (id) {
    case EstimateId::MaxPrincipleLinf: {
      double bound = steps[0].linf;
      for (std::size_t n = 1; n < steps.size(); ++n) {
        bound += p.tau * steps[n].phi_linf;
        violate(static_cast<int>(n), steps[n].linf, bound);
      }
      break;
    }
    case EstimateId::MaxPrincipleL1: {
      double bound = steps[0].l1;
      for (std::size_t n = 1; n < steps.size(); ++n) {
        bound += p.tau * steps[n].phi_l1;
        violate(static_cast<int>(n), steps[n].l1, bound);
      }
      break;
    }
    case EstimateId::SkewFormEnergy: {
      double bound = steps[0].l2 * steps[0].l2;
      for (std::size_t n = 1; n < steps.size(); ++n) {
        bound += 0.5 * p.tau * steps[n].phi_dinv * steps[n].phi_dinv;
        violate(static_cast<int>(n), steps[n].l2 * steps[n].l2, bound);
      }
      break;
    }
    case EstimateId::DNormGrowth: {
      const double rho = 1.0 + 0.25 * p.m2 * p.tau;
      for (std::size_t n = 1; n < steps.size(); ++n) {
        violate(static_cast<int>(n), steps[n].d_energy, rho * steps[n - 1].d_energy);
      }
      break;
    }
    case EstimateId::ThreeLevelEnergy: {
      const double rho = 1.0 + p.m2 * 4.0 * p.sigma / (4.0 * p.sigma - 1.0) * p.tau;
      for (std::size_t n = 2; n < steps.size(); ++n) {
        violate(static_cast<int>(n), steps[n].energy3,
                rho * steps[n - 1].energy3 + p.tau * steps[n].phi_l2 * steps[n].phi_l2);
      }
      break;
    }
    case EstimateId::ReactionSplitGrowth: {
      const double rho = p.m < 0.0 ? 1.0 - p.m * p.tau : 1.0;
      for (std::size_t n = 1; n < steps.size(); ++n) {
        violate(static_cast<int>(n), steps[n].l2, rho * steps[n - 1].l2);
      }
      break;
    }
    case EstimateId::ExpTransformGrowth: {
      const double rho = std::exp(-p.m * p.tau);
      for (std::size_t n = 1; n < steps.size(); ++n) {
        violate(static_cast<int>(n), steps[n].l2, rho * steps[n - 1].l2);
      }
      break;
    }
    case EstimateId::GronwallAccumulation: {
      double bound = steps[0].l2;
      for (std::size_t n = 1; n < steps.size(); ++n) {
        bound = p.rho * bound + p.tau * steps[n].phi_l2;
        violate(static_cast<int>(n), steps[n].l2, bound);
      }
      break;
    }
  }
  return report;
}

}  // namespace cdlab
