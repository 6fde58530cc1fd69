#include "cdlab/time_schemes.hpp"

#include <cmath>

#include "cdlab/grid.hpp"
#include "cdlab/kernels.hpp"

namespace cdlab {

namespace {

Vector solve_step(const StencilMatrix& b, const Vector& rhs, bool symmetric,
                  const Vector* weight, int step_index) {
  SolveReport report;
  try {
    return solve_sparse(b, rhs, symmetric, SolverOptions{}, weight, &report);
  } catch (const SolverError& e) {
    throw StepError(std::string("time step failed: ") + e.what(), step_index,
                    report.residual);
  }
}

// rhs = (E - a*C - b*D) y + tau*phi
Vector explicit_combination(const StencilMatrix* c, double a, const StencilMatrix* d,
                            double b, const Vector& y, const Vector* phi, double tau) {
  Vector rhs = y;
  Vector tmp;
  if (c != nullptr && a != 0.0) {
    c->apply(y, tmp);
    kern::axpy(-a, tmp.data(), rhs.data(), rhs.size());
  }
  if (d != nullptr && b != 0.0) {
    d->apply(y, tmp);
    kern::axpy(-b, tmp.data(), rhs.data(), rhs.size());
  }
  if (phi != nullptr) kern::axpy(tau, phi->data(), rhs.data(), rhs.size());
  return rhs;
}

TridiagonalSystem extract_line(const StencilMatrix& b, int offset, int stride, int len,
                               const Vector& rhs) {
  TridiagonalSystem sys;
  sys.sub.assign(len, 0.0);
  sys.diag.assign(len, 0.0);
  sys.super.assign(len, 0.0);
  sys.rhs.assign(len, 0.0);
  for (int k = 0; k < len; ++k) {
    const int row = offset + k * stride;
    sys.rhs[k] = rhs[row];
    const auto* cols = b.row_cols(row);
    const auto* vals = b.row_vals(row);
    for (int p = 0; p < b.row_size(row); ++p) {
      const int col = cols[p];
      if (col == row) {
        sys.diag[k] = vals[p];
      } else if (col == row - stride && k > 0) {
        sys.sub[k] = vals[p];
      } else if (col == row + stride && k < len - 1) {
        sys.super[k] = vals[p];
      } else if (vals[p] != 0.0) {
        throw SolverError("line solve: operator is not tridiagonal along the line");
      }
    }
  }
  return sys;
}

// solve (E + sigma*tau*A) y' = (E - (1-sigma)*tau*A) y + tau*phi where A has
// 1D line structure in the given direction
Vector line_weighted_step(double tau, double sigma, const StencilMatrix& a,
                          const Vector& y, const Vector* phi, double phi_tau,
                          const LineDims& dims, int direction) {
  const StencilMatrix b = StencilMatrix::identity(a.rows()).add_scaled(a, sigma * tau);
  Vector rhs = explicit_combination(nullptr, 0.0, &a, (1.0 - sigma) * tau, y, phi, phi_tau);
  Vector out(y.size());
  if (direction == 1) {
    for (int j = 0; j < dims.m2; ++j) {
      TridiagonalSystem sys = extract_line(b, j * dims.m1, 1, dims.m1, rhs);
      Vector sol = solve_tridiagonal(sys);
      for (int k = 0; k < dims.m1; ++k) out[j * dims.m1 + k] = sol[k];
    }
  } else {
    for (int i = 0; i < dims.m1; ++i) {
      TridiagonalSystem sys = extract_line(b, i, dims.m1, dims.m2, rhs);
      Vector sol = solve_tridiagonal(sys);
      for (int k = 0; k < dims.m2; ++k) out[i + k * dims.m1] = sol[k];
    }
  }
  return out;
}

}  // namespace

int SchemeSpec::num_steps() const {
  const double ratio = t_end / tau;
  const int n0 = static_cast<int>(std::lround(ratio));
  if (n0 < 1 || std::fabs(ratio - n0) > 1e-8) {
    throw ParameterError("SchemeSpec: tau must divide T into a whole number of steps");
  }
  return n0;
}

void SchemeSpec::validate() const {
  if (tau <= 0.0 || t_end <= 0.0) throw ParameterError("SchemeSpec: tau and T must be > 0");
  auto check_weight = [](double s) {
    if (s < 0.0 || s > 1.0) throw ParameterError("SchemeSpec: weights must lie in [0, 1]");
  };
  check_weight(sigma);
  if (family == SchemeFamily::TwoLevelSplitWeights) {
    check_weight(sigma1);
    check_weight(sigma2);
  }
  num_steps();
}

Vector step_two_level(double tau, double sigma1, double sigma2, const StencilMatrix& c,
                      const StencilMatrix& d, const Vector& y, const Vector& phi,
                      const Vector* weight) {
  StencilMatrix b = StencilMatrix::identity(static_cast<int>(y.size()));
  if (sigma1 != 0.0) b = b.add_scaled(c, sigma1 * tau);
  if (sigma2 != 0.0) b = b.add_scaled(d, sigma2 * tau);
  const Vector rhs =
      explicit_combination(&c, (1.0 - sigma1) * tau, &d, (1.0 - sigma2) * tau, y, &phi, tau);
  return solve_step(b, rhs, /*symmetric=*/false, weight, -1);
}

Vector step_explicit_implicit(double tau, double sigma, const StencilMatrix& c,
                              const StencilMatrix& d, const Vector& y, const Vector& phi,
                              const Vector* weight) {
  const StencilMatrix b =
      StencilMatrix::identity(static_cast<int>(y.size())).add_scaled(d, sigma * tau);
  const Vector rhs = explicit_combination(&c, tau, &d, (1.0 - sigma) * tau, y, &phi, tau);
  // the solved operator must be self-adjoint; the CG path asserts it
  return solve_step(b, rhs, /*symmetric=*/true, weight, -1);
}

Vector step_three_level(double tau, double sigma, const StencilMatrix& c,
                        const StencilMatrix& d, const Vector& y_n, const Vector& y_nm1,
                        const Vector& phi, const Vector* weight) {
  const std::size_t n = y_n.size();
  const StencilMatrix b =
      StencilMatrix::identity(static_cast<int>(n)).add_scaled(d, 2.0 * tau * sigma);
  // rhs = y^{n-1} - 2 tau D((1-2s) y^n + s y^{n-1}) - 2 tau C y^n + 2 tau phi
  Vector rhs = y_nm1;
  Vector tmp(n), mix(n);
  for (std::size_t i = 0; i < n; ++i) {
    mix[i] = (1.0 - 2.0 * sigma) * y_n[i] + sigma * y_nm1[i];
  }
  d.apply(mix, tmp);
  kern::axpy(-2.0 * tau, tmp.data(), rhs.data(), n);
  c.apply(y_n, tmp);
  kern::axpy(-2.0 * tau, tmp.data(), rhs.data(), n);
  kern::axpy(2.0 * tau, phi.data(), rhs.data(), n);
  return solve_step(b, rhs, /*symmetric=*/true, weight, -1);
}

double three_level_energy(double tau, double sigma, const StencilMatrix& d,
                          const Vector& y_np1, const Vector& y_n, const Vector& measure) {
  (void)tau;
  const std::size_t n = y_n.size();
  Vector sum(n), diff(n);
  for (std::size_t i = 0; i < n; ++i) {
    sum[i] = y_np1[i] + y_n[i];
    diff[i] = y_np1[i] - y_n[i];
  }
  const Vector dsum = d.apply(sum);
  const Vector ddiff = d.apply(diff);
  return 0.25 * weighted_inner(dsum, sum, measure) +
         (sigma - 0.25) * weighted_inner(ddiff, diff, measure);
}

Vector step_reaction_split(double tau, const StencilMatrix& c, const StencilMatrix& d,
                           const Vector& reaction, const Vector& y, const Vector* weight) {
  const int n = static_cast<int>(y.size());
  Vector r_plus(n), r_minus(n);
  for (int i = 0; i < n; ++i) {
    r_plus[i] = std::max(0.0, reaction[i]);
    r_minus[i] = reaction[i] - r_plus[i];
  }
  StencilMatrix b = StencilMatrix::identity(n)
                        .add_scaled(c, tau)
                        .add_scaled(d, tau)
                        .add_scaled(StencilMatrix::from_diagonal(r_plus), tau);
  Vector rhs = y;
  for (int i = 0; i < n; ++i) rhs[i] -= tau * r_minus[i] * y[i];
  return solve_step(b, rhs, /*symmetric=*/false, weight, -1);
}

Vector step_exp_transform(double tau, double sigma, double m, const StencilMatrix& a,
                          const Vector& y, const Vector* weight) {
  const int n = static_cast<int>(y.size());
  const StencilMatrix shifted = a.add_scaled(StencilMatrix::identity(n), -m);
  const StencilMatrix b = StencilMatrix::identity(n).add_scaled(shifted, sigma * tau);
  const Vector rhs =
      explicit_combination(nullptr, 0.0, &shifted, (1.0 - sigma) * tau, y, nullptr, 0.0);
  Vector z = solve_step(b, rhs, /*symmetric=*/false, weight, -1);
  kern::scale(std::exp(-m * tau), z.data(), z.size());
  return z;
}

Vector step_lod(double tau, double sigma, const StencilMatrix& a1, const StencilMatrix& a2,
                const Vector& y, const Vector& phi, const LineDims& dims) {
  // phi_1 = 0, phi_2 = phi
  Vector half = line_weighted_step(tau, sigma, a1, y, nullptr, 0.0, dims, 1);
  return line_weighted_step(tau, sigma, a2, half, &phi, tau, dims, 2);
}

Vector step_additive_avg(double tau, double sigma, const StencilMatrix& a1,
                         const StencilMatrix& a2, const Vector& y, const Vector& phi,
                         const LineDims& dims, bool reverse_order) {
  Vector y1, y2;
  if (!reverse_order) {
    y1 = line_weighted_step(2.0 * tau, sigma, a1, y, nullptr, 0.0, dims, 1);
    y2 = line_weighted_step(2.0 * tau, sigma, a2, y, nullptr, 0.0, dims, 2);
  } else {
    y2 = line_weighted_step(2.0 * tau, sigma, a2, y, nullptr, 0.0, dims, 2);
    y1 = line_weighted_step(2.0 * tau, sigma, a1, y, nullptr, 0.0, dims, 1);
  }
  Vector out(y.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = 0.5 * (y1[i] + y2[i]) + tau * phi[i];
  }
  return out;
}

namespace {

StepRecord make_record(double t, const Vector& y, const Vector& phi,
                       const SemiDiscreteProblem& p, const MonitorOptions& mon) {
  StepRecord r;
  r.t = t;
  r.l2 = weighted_l2(y, p.measure);
  r.linf = linf(y);
  r.l1 = weighted_l1(y, p.measure);
  if (!phi.empty()) {
    r.phi_l2 = weighted_l2(phi, p.measure);
    r.phi_linf = linf(phi);
    r.phi_l1 = weighted_l1(phi, p.measure);
    if (mon.phi_dinv && p.diffusion.rows() > 0) {
      const Vector z = solve_sparse(p.diffusion, phi, /*symmetric=*/true, SolverOptions{},
                                    &p.measure);
      r.phi_dinv = std::sqrt(std::max(0.0, weighted_inner(z, phi, p.measure)));
    }
  }
  if (mon.d_energy && p.diffusion.rows() > 0) {
    const Vector dy = p.diffusion.apply(y);
    r.d_energy = std::sqrt(std::max(0.0, weighted_inner(dy, y, p.measure)));
  }
  return r;
}

}  // namespace

TimeSeries integrate(const SchemeSpec& spec, const SemiDiscreteProblem& problem,
                     const MonitorOptions& monitors) {
  spec.validate();
  const int n0 = spec.num_steps();
  const int n = problem.size;
  if (static_cast<int>(problem.u0.size()) != n) {
    throw DimensionError("integrate: u0 size mismatch");
  }
  auto conv_at = [&](double t) -> StencilMatrix {
    if (problem.convection) return problem.convection(t);
    return StencilBuilder(n).build();
  };
  auto phi_at = [&](double t) -> Vector {
    if (problem.forcing) return problem.forcing(t);
    return Vector(n, 0.0);
  };

  TimeSeries series;
  Vector y = problem.u0;
  Vector y_prev;  // three-level history
  series.steps.push_back(make_record(0.0, y, Vector(), problem, monitors));
  if (monitors.snapshots == SnapshotMode::All) series.snapshots.push_back(y);

  for (int step = 0; step < n0; ++step) {
    const double t_n = step * spec.tau;
    const double t_mid = t_n + 0.5 * spec.tau;
    Vector phi_used;
    try {
      switch (spec.family) {
        case SchemeFamily::TwoLevelWeighted:
        case SchemeFamily::TwoLevelSplitWeights: {
          const double s1 =
              spec.family == SchemeFamily::TwoLevelWeighted ? spec.sigma : spec.sigma1;
          const double s2 =
              spec.family == SchemeFamily::TwoLevelWeighted ? spec.sigma : spec.sigma2;
          phi_used = phi_at(t_mid);
          y = step_two_level(spec.tau, s1, s2, conv_at(t_mid), problem.diffusion, y,
                             phi_used, &problem.measure);
          break;
        }
        case SchemeFamily::ExplicitImplicit: {
          phi_used = phi_at(t_mid);
          y = step_explicit_implicit(spec.tau, spec.sigma, conv_at(t_mid),
                                     problem.diffusion, y, phi_used, &problem.measure);
          break;
        }
        case SchemeFamily::ThreeLevelEI: {
          if (step == 0) {
            // Crank-Nicolson startup preserves second order
            phi_used = phi_at(0.0);
            y_prev = y;
            y = step_two_level(spec.tau, 0.5, 0.5, conv_at(0.0), problem.diffusion, y,
                               phi_used, &problem.measure);
          } else {
            phi_used = phi_at(t_n);
            Vector next = step_three_level(spec.tau, spec.sigma, conv_at(t_n),
                                           problem.diffusion, y, y_prev, phi_used,
                                           &problem.measure);
            y_prev = y;
            y = next;
          }
          break;
        }
        case SchemeFamily::ReactionSplitImplicit: {
          const Vector r = problem.reaction ? problem.reaction(t_n) : Vector(n, 0.0);
          y = step_reaction_split(spec.tau, conv_at(t_n), problem.diffusion, r, y,
                                  &problem.measure);
          break;
        }
        case SchemeFamily::SymmetricReactionSplit: {
          const Vector r = problem.reaction ? problem.reaction(t_n) : Vector(n, 0.0);
          if (step == 0) {
            // trapezoidal startup over the full operator
            Vector r_diag = r;
            StencilMatrix a = conv_at(0.0)
                                  .add_scaled(problem.diffusion, 1.0)
                                  .add_scaled(StencilMatrix::from_diagonal(r_diag), 1.0);
            y_prev = y;
            y = step_two_level(spec.tau, 0.5, 0.5, a, StencilBuilder(n).build(), y,
                               Vector(n, 0.0), &problem.measure);
          } else {
            Vector r_plus(n), r_minus(n);
            for (int i = 0; i < n; ++i) {
              r_plus[i] = std::max(0.0, r[i]);
              r_minus[i] = r[i] - r_plus[i];
            }
            // (y^{n+1}-y^{n-1})/(2 tau) + (C + D + R+)(y^{n+1}+2 y^n+y^{n-1})/4
            //   + R- y^n = 0
            StencilMatrix main = conv_at(t_n)
                                     .add_scaled(problem.diffusion, 1.0)
                                     .add_scaled(StencilMatrix::from_diagonal(r_plus), 1.0);
            StencilMatrix b = StencilMatrix::identity(n).add_scaled(main, 0.5 * spec.tau);
            // rhs: y^{n-1} - 2 tau main (2 y^n + y^{n-1})/4 - 2 tau R- y^n
            Vector mix(n);
            for (int i = 0; i < n; ++i) mix[i] = 0.5 * y[i] + 0.25 * y_prev[i];
            Vector rhs = y_prev;
            Vector tmp = main.apply(mix);
            kern::axpy(-2.0 * spec.tau, tmp.data(), rhs.data(), n);
            for (int i = 0; i < n; ++i) rhs[i] -= 2.0 * spec.tau * r_minus[i] * y[i];
            Vector next = solve_step(b, rhs, /*symmetric=*/false, &problem.measure, step);
            y_prev = y;
            y = next;
          }
          break;
        }
        case SchemeFamily::ExpTransform: {
          if (!problem.full_op) throw ParameterError("integrate: ExpTransform needs full_op");
          y = step_exp_transform(spec.tau, spec.sigma, spec.m, problem.full_op(t_n), y,
                                 &problem.measure);
          break;
        }
        case SchemeFamily::LOD: {
          if (!problem.split1 || !problem.split2) {
            throw ParameterError("integrate: LOD needs the directional split");
          }
          phi_used = phi_at(t_n);
          y = step_lod(spec.tau, spec.sigma, problem.split1(t_n), problem.split2(t_n), y,
                       phi_used, problem.line_dims);
          break;
        }
        case SchemeFamily::AdditiveAvg: {
          if (!problem.split1 || !problem.split2) {
            throw ParameterError("integrate: AdditiveAvg needs the directional split");
          }
          phi_used = phi_at(t_n);
          y = step_additive_avg(spec.tau, spec.sigma, problem.split1(t_n),
                                problem.split2(t_n), y, phi_used, problem.line_dims);
          break;
        }
      }
    } catch (const StepError& e) {
      throw StepError(std::string(e.what()) + " at step " + std::to_string(step + 1),
                      step + 1, e.residual);
    }
    StepRecord rec = make_record(t_n + spec.tau, y, phi_used, problem, monitors);
    if (spec.family == SchemeFamily::ThreeLevelEI) {
      rec.energy3 =
          three_level_energy(spec.tau, spec.sigma, problem.diffusion, y, y_prev,
                             problem.measure);
    }
    series.steps.push_back(rec);
    if (monitors.snapshots == SnapshotMode::All) series.snapshots.push_back(y);
  }
  series.final_state = y;
  if (monitors.snapshots == SnapshotMode::Final) series.snapshots.push_back(y);
  return series;
}

}  // namespace cdlab
