#include "cdlab/cli_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "cdlab/exponential.hpp"
#include "cdlab/fvm.hpp"
#include "cdlab/stability.hpp"
#include "cdlab/verify.hpp"

namespace cdlab {

namespace {

namespace fs = std::filesystem;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

struct AssembledProblem {
  SemiDiscreteProblem problem;
  // node coordinates per unknown, for snapshot output
  std::vector<std::pair<double, double>> coords;
  StencilMatrix full_a0;  // A(0) for gates/analysis
  double gamma = 0.0;     // banach gamma when spatial operators define one
  bool has_gamma = false;
};

AssembledProblem assemble_rect(const ProblemConfig& cfg) {
  const DomainConfig& dom = cfg.domain;
  RectGrid2D grid(dom.l1, dom.l2, dom.n1, dom.n2);
  CoefficientField field = cfg.field();
  if (field.kappa1 <= 0.0) {
    // sample a conservative lower bound when the config does not declare one
    double kmin = std::numeric_limits<double>::infinity();
    double kmax = 0.0;
    for (int i2 = 0; i2 <= 2 * grid.n2; ++i2) {
      for (int i1 = 0; i1 <= 2 * grid.n1; ++i1) {
        const double k = field.eval_k(0.5 * i1 * grid.h1, 0.5 * i2 * grid.h2);
        kmin = std::min(kmin, k);
        kmax = std::max(kmax, k);
      }
    }
    field.kappa1 = kmin;
    field.kappa2 = kmax;
  }

  AssembledProblem out;
  out.problem.size = grid.num_interior();
  out.problem.measure = fd_measure(grid);
  out.problem.line_dims = {grid.n1 - 1, grid.n2 - 1};
  for (int i2 = 1; i2 < grid.n2; ++i2) {
    for (int i1 = 1; i1 < grid.n1; ++i1) {
      out.coords.emplace_back(grid.x1(i1), grid.x2(i2));
    }
  }

  if (!cfg.coefficients.u0.empty()) {
    const SpaceTimeFn u0 = Expr::parse(cfg.coefficients.u0).fn();
    out.problem.u0 = semi_discrete_rhs(grid, u0, 0.0);
  } else {
    out.problem.u0.assign(grid.num_interior(), 0.0);
  }
  if (field.f) {
    const SpaceTimeFn f = field.f;
    out.problem.forcing = [grid, f](double t) { return semi_discrete_rhs(grid, f, t); };
  }
  if (field.r) {
    const SpaceTimeFn r = field.r;
    out.problem.reaction = [grid, r](double t) { return semi_discrete_rhs(grid, r, t); };
  }

  const SchemeConfig& sc = cfg.scheme;
  switch (sc.spatial) {
    case SpatialKind::Central: {
      out.problem.diffusion = assemble_diffusion(grid, field);
      const ConvectionForm form = sc.form;
      const CoefficientPlacement placement = sc.placement;
      out.problem.convection = [grid, field, form, placement](double t) {
        return assemble_convection(grid, field, form, placement, t);
      };
      out.full_a0 =
          out.problem.diffusion.add_scaled(out.problem.convection(0.0), 1.0);
      out.problem.full_op = [grid, field, form, placement,
                             d = out.problem.diffusion](double t) {
        return d.add_scaled(assemble_convection(grid, field, form, placement, t), 1.0);
      };
      // directional split of pure diffusion for LOD on central operators is
      // not provided; exponential operators carry the split
      break;
    }
    case SpatialKind::Exponential: {
      const ConvectionForm form = sc.form == ConvectionForm::SkewSymmetric
                                      ? ConvectionForm::Nondivergent
                                      : sc.form;
      DirectionalOperators ops = exp_operator_2d(grid, field, form, 0.0);
      out.gamma = gamma_constant(ops, GammaVariant::Full2D);
      out.has_gamma = true;
      out.full_a0 = ops.sum();
      out.problem.split1 = [grid, field, form](double t) {
        return exp_operator_2d(grid, field, form, t).a1;
      };
      out.problem.split2 = [grid, field, form](double t) {
        return exp_operator_2d(grid, field, form, t).a2;
      };
      out.problem.full_op = [grid, field, form](double t) {
        return exp_operator_2d(grid, field, form, t).sum();
      };
      // for the generic families treat the whole operator as "convection"
      // with zero diffusion part: not meaningful for explicit_implicit,
      // which is rejected below
      out.problem.diffusion = StencilBuilder(grid.num_interior()).build();
      out.problem.convection = out.problem.full_op;
      break;
    }
    case SpatialKind::Upwind: {
      const Regularizer reg{Regularizer::Kind::Upwind, 1.0};
      const bool divergent = sc.form == ConvectionForm::Divergent;
      auto scheme_at = [grid, field, reg, divergent](double t) {
        return divergent ? build_divergent_scheme(grid, field, reg, t)
                         : build_nondivergent_scheme(grid, field, reg, t);
      };
      out.full_a0 = scheme_at(0.0).matrix();
      out.problem.diffusion = assemble_diffusion(grid, field);
      out.problem.convection = [scheme_at, d = out.problem.diffusion](double t) {
        return scheme_at(t).matrix().add_scaled(d, -1.0);
      };
      out.problem.full_op = [scheme_at](double t) { return scheme_at(t).matrix(); };
      break;
    }
  }
  return out;
}

AssembledProblem assemble_mesh(const ProblemConfig& cfg) {
  TriMesh mesh = load_mesh(cfg.domain.mesh_file);
  CoefficientField field = cfg.field();
  if (field.kappa1 <= 0.0) {
    double kmin = std::numeric_limits<double>::infinity(), kmax = 0.0;
    for (const MeshFace& f : mesh.faces) {
      const double k = field.eval_k(f.mid.x, f.mid.y);
      kmin = std::min(kmin, k);
      kmax = std::max(kmax, k);
    }
    field.kappa1 = kmin;
    field.kappa2 = kmax;
  }
  AssembledProblem out;
  out.problem.size = mesh.num_interior();
  out.problem.measure = mesh.measure();
  for (int idx = 0; idx < mesh.num_interior(); ++idx) {
    const Point& p = mesh.nodes[mesh.interior_nodes()[idx]];
    out.coords.emplace_back(p.x, p.y);
  }
  out.problem.u0.assign(mesh.num_interior(), 0.0);
  if (!cfg.coefficients.u0.empty()) {
    const SpaceTimeFn u0 = Expr::parse(cfg.coefficients.u0).fn();
    for (int idx = 0; idx < mesh.num_interior(); ++idx) {
      out.problem.u0[idx] = u0(out.coords[idx].first, out.coords[idx].second, 0.0);
    }
  }
  if (field.f) {
    const SpaceTimeFn f = field.f;
    auto coords = out.coords;
    out.problem.forcing = [coords, f](double t) {
      Vector phi(coords.size());
      for (std::size_t i = 0; i < coords.size(); ++i) {
        phi[i] = f(coords[i].first, coords[i].second, t);
      }
      return phi;
    };
  }
  out.problem.diffusion = fvm_diffusion(mesh, field);
  const ConvectionForm form = cfg.scheme.form;
  const bool upwind = cfg.scheme.spatial == SpatialKind::Upwind;
  const SpaceTimeFn v1 = field.v1, v2 = field.v2;
  out.problem.convection = [mesh, v1, v2, form, upwind](double t) {
    const FvmVelocity vel = FvmVelocity::from_field(mesh, v1, v2, t);
    return upwind ? fvm_upwind_convection(mesh, vel, form)
                  : fvm_convection(mesh, vel, form);
  };
  out.full_a0 = out.problem.diffusion.add_scaled(out.problem.convection(0.0), 1.0);
  out.problem.full_op = [d = out.problem.diffusion,
                         c = out.problem.convection](double t) {
    return d.add_scaled(c(t), 1.0);
  };
  return out;
}

AssembledProblem assemble(const ProblemConfig& cfg) {
  if (cfg.domain.kind == DomainConfig::Kind::Mesh) return assemble_mesh(cfg);
  return assemble_rect(cfg);
}

std::string monitors_csv(const TimeSeries& series) {
  std::ostringstream out;
  out << "step,t,l2,linf,l1,denergy,energy3,phi_l2,phi_linf,phi_l1,phi_dinv\n";
  for (std::size_t n = 0; n < series.steps.size(); ++n) {
    const StepRecord& r = series.steps[n];
    out << n << "," << num(r.t) << "," << num(r.l2) << "," << num(r.linf) << ","
        << num(r.l1) << "," << num(r.d_energy) << "," << num(r.energy3) << ","
        << num(r.phi_l2) << "," << num(r.phi_linf) << "," << num(r.phi_l1) << ","
        << num(r.phi_dinv) << "\n";
  }
  return out.str();
}

std::string snapshot_csv(const std::vector<std::pair<double, double>>& coords,
                         const Vector& values) {
  std::ostringstream out;
  out << "x1,x2,value\n";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    out << num(coords[i].first) << "," << num(coords[i].second) << "," << num(values[i])
        << "\n";
  }
  return out.str();
}

int run_guarded(const CliOptions& opts, const std::function<int(const ProblemConfig&)>& body) {
  try {
    const ProblemConfig cfg = load_config(opts.config_path);
    fs::create_directories(opts.out_dir);
    return body(cfg);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int cmd_solve(const CliOptions& opts) {
  return run_guarded(opts, [&](const ProblemConfig& cfg) {
    AssembledProblem ap = assemble(cfg);
    SchemeSpec spec = cfg.scheme_spec();
    std::ostringstream cert;

    if (cfg.monitors.stability_gate != "none") {
      bool gate_ok = true;
      if (cfg.monitors.stability_gate == "samarskii") {
        const StencilMatrix b = StencilMatrix::identity(ap.problem.size)
                                    .add_scaled(ap.full_a0, spec.sigma * spec.tau);
        try {
          const OperatorInequalityReport rep = check_samarskii(b, ap.full_a0, spec.tau);
          gate_ok = rep.ok;
          cert << "samarskii gate: " << (rep.ok ? "PASS" : "FAIL")
               << " min_eig=" << num(rep.min_eigenvalue) << "\n";
        } catch (const ParameterError& e) {
          gate_ok = false;
          cert << "samarskii gate: FAIL (" << e.what() << ")\n";
        }
      } else {  // banach
        const double tau_max = ap.has_gamma
                                   ? banach_step_bound_gamma(ap.gamma, spec.sigma)
                                   : banach_step_bound(ap.full_a0, spec.sigma);
        gate_ok = spec.tau <= tau_max;
        cert << "banach gate: tau_max=" << num(tau_max) << " tau=" << num(spec.tau) << " "
             << (gate_ok ? "PASS" : "FAIL") << "\n";
      }
      if (!gate_ok) {
        cert << "violated bound: " << cfg.monitors.stability_gate << "\n";
        write_file(fs::path(opts.out_dir) / "certificates.txt", cert.str());
        if (!opts.quiet) std::cerr << "stability gate violated; aborting\n";
        return 2;
      }
    }

    if (spec.family == SchemeFamily::ExpTransform && !cfg.scheme.has_m) {
      spec.m = min_symmetric_eigenvalue(ap.full_a0);
      cert << "estimated m = " << num(spec.m) << "\n";
    }
    if ((spec.family == SchemeFamily::LOD || spec.family == SchemeFamily::AdditiveAvg) &&
        !ap.problem.split1) {
      std::cerr << "error: lod/additive_avg need spatial = exponential\n";
      return 1;
    }
    if (spec.family == SchemeFamily::ExplicitImplicit &&
        cfg.scheme.spatial == SpatialKind::Exponential) {
      std::cerr << "error: explicit_implicit needs a separate diffusion operator\n";
      return 1;
    }

    MonitorOptions mon;
    mon.d_energy = cfg.monitors.d_energy;
    mon.phi_dinv = cfg.monitors.estimate == "skew_energy";
    mon.snapshots = cfg.output.snapshots;

    int exit_code = 0;
    TimeSeries series;
    try {
      series = integrate(spec, ap.problem, mon);
    } catch (const StepError& e) {
      cert << "step failure: " << e.what() << " residual=" << num(e.residual) << "\n";
      exit_code = 2;
    }
    write_file(fs::path(opts.out_dir) / "monitors.csv", monitors_csv(series));
    if (!series.snapshots.empty()) {
      write_file(fs::path(opts.out_dir) / "solution.csv",
                 snapshot_csv(ap.coords, series.snapshots.back()));
      if (mon.snapshots == SnapshotMode::All) {
        for (std::size_t s = 0; s < series.snapshots.size(); ++s) {
          write_file(fs::path(opts.out_dir) / ("solution_" + std::to_string(s) + ".csv"),
                     snapshot_csv(ap.coords, series.snapshots[s]));
        }
      }
    }
    if (cfg.monitors.estimate != "none" && exit_code == 0) {
      MonitorParams mp;
      mp.tau = spec.tau;
      mp.m = spec.m;
      mp.sigma = spec.sigma;
      EstimateId id = EstimateId::MaxPrincipleLinf;
      bool known = true;
      if (cfg.monitors.estimate == "linf_sum") {
        id = EstimateId::MaxPrincipleLinf;
      } else if (cfg.monitors.estimate == "l1_sum") {
        id = EstimateId::MaxPrincipleL1;
      } else if (cfg.monitors.estimate == "skew_energy") {
        id = EstimateId::SkewFormEnergy;
      } else if (cfg.monitors.estimate == "reaction_growth") {
        id = EstimateId::ReactionSplitGrowth;
      } else if (cfg.monitors.estimate == "exp_transform_growth") {
        id = EstimateId::ExpTransformGrowth;
      } else {
        known = false;
      }
      if (known) {
        const MonitorReport rep = monitor_apriori(series, id, mp);
        cert << "estimate " << cfg.monitors.estimate << ": "
             << (rep.ok ? "HOLDS" : "VIOLATED");
        if (!rep.ok) {
          cert << " first at step " << rep.first_violation << " lhs=" << num(rep.lhs)
               << " rhs=" << num(rep.rhs);
        }
        cert << "\n";
      }
    }
    write_file(fs::path(opts.out_dir) / "certificates.txt", cert.str());
    if (!opts.quiet) {
      std::cout << "steps: " << series.steps.size() - 1 << "\n";
      if (!series.steps.empty()) {
        std::cout << "final l2 = " << num(series.steps.back().l2) << "\n";
      }
    }
    return exit_code;
  });
}

int cmd_analyze(const CliOptions& opts) {
  return run_guarded(opts, [&](const ProblemConfig& cfg) {
    std::ostringstream rep;
    Rng rng(opts.seed);
    if (cfg.domain.kind == DomainConfig::Kind::Rect) {
      RectGrid2D grid(cfg.domain.l1, cfg.domain.l2, cfg.domain.n1, cfg.domain.n2);
      CoefficientField field = cfg.field();
      if (field.kappa1 <= 0.0) {
        double kmin = std::numeric_limits<double>::infinity(), kmax = 0.0;
        for (int i2 = 0; i2 <= 2 * grid.n2; ++i2) {
          for (int i1 = 0; i1 <= 2 * grid.n1; ++i1) {
            const double k = field.eval_k(0.5 * i1 * grid.h1, 0.5 * i2 * grid.h2);
            kmin = std::min(kmin, k);
            kmax = std::max(kmax, k);
          }
        }
        field.kappa1 = kmin;
        field.kappa2 = kmax;
      }
      const OperatorConstants oc =
          operator_constants(grid, field, cfg.scheme.form, cfg.scheme.placement, 0.0);
      rep << "M0 = " << num(oc.m0) << "\nM1 = " << num(oc.m1) << "\nM2 = " << num(oc.m2)
          << "\nM3 = " << num(oc.m3) << "\n";
      const PecletField pf = peclet_field(grid, field);
      rep << "max |theta| = " << num(pf.max_abs()) << "\n";

      const StencilMatrix d = assemble_diffusion(grid, field);
      const StencilMatrix c1 = assemble_convection(grid, field, ConvectionForm::Nondivergent,
                                                   cfg.scheme.placement, 0.0);
      const StencilMatrix c2 = assemble_convection(grid, field, ConvectionForm::Divergent,
                                                   cfg.scheme.placement, 0.0);
      const StencilMatrix c0 = assemble_convection(grid, field,
                                                   ConvectionForm::SkewSymmetric,
                                                   cfg.scheme.placement, 0.0);
      rep << "adjointness |C1^T + C2|_max = " << num(c1.adjointness_residual(c2)) << "\n";
      Vector y = rng.vector(grid.num_interior());
      const Vector c0y = c0.apply(y);
      const double skew = inner_product_interior(grid, c0y, y);
      rep << "skew residual (C0 y, y) = " << num(skew) << "\n";
      const Vector dy = d.apply(y);
      const double rayleigh =
          inner_product_interior(grid, dy, y) / inner_product_interior(grid, y, y);
      rep << "D Rayleigh sample = " << num(rayleigh)
          << " (lower bound kappa1/M0 = " << num(field.kappa1 / oc.m0) << ")\n";

      const FivePointScheme scheme =
          cfg.scheme.form == ConvectionForm::Divergent
              ? build_divergent_scheme(grid, field)
              : build_nondivergent_scheme(grid, field);
      const MonotoneCertificate cert = check_maximum_principle(scheme);
      rep << "maximum principle (central): "
          << (cert.ok() ? (cert.row && cert.column ? "PASS (rows+columns)"
                                                   : cert.row ? "PASS (rows)" : "PASS (columns)")
                        : "FAIL " + cert.witness)
          << "\n";
      if (cfg.scheme.spatial == SpatialKind::Exponential) {
        const ConvectionForm form = cfg.scheme.form == ConvectionForm::SkewSymmetric
                                        ? ConvectionForm::Nondivergent
                                        : cfg.scheme.form;
        const DirectionalOperators ops = exp_operator_2d(grid, field, form, 0.0);
        const double gamma = gamma_constant(ops, GammaVariant::Full2D);
        rep << "gamma (full 2D) = " << num(gamma) << "\n";
        rep << "tau_max (sigma=" << num(cfg.scheme.sigma)
            << ") = " << num(banach_step_bound_gamma(gamma, cfg.scheme.sigma)) << "\n";
      } else {
        const StencilMatrix a = d.add_scaled(
            assemble_convection(grid, field, cfg.scheme.form, cfg.scheme.placement, 0.0),
            1.0);
        rep << "tau_max (sigma=" << num(cfg.scheme.sigma)
            << ") = " << num(banach_step_bound(a, cfg.scheme.sigma)) << "\n";
      }
    } else {
      TriMesh mesh = load_mesh(cfg.domain.mesh_file);
      CoefficientField field = cfg.field();
      if (field.kappa1 <= 0.0) {
        double kmin = std::numeric_limits<double>::infinity(), kmax = 0.0;
        for (const MeshFace& f : mesh.faces) {
          const double k = field.eval_k(f.mid.x, f.mid.y);
          kmin = std::min(kmin, k);
          kmax = std::max(kmax, k);
        }
        field.kappa1 = kmin;
        field.kappa2 = kmax;
      }
      const FvmVelocity vel = FvmVelocity::from_field(mesh, field.v1, field.v2, 0.0);
      rep << "interior nodes = " << mesh.num_interior() << "\n";
      rep << "friedrichs M0 = " << num(friedrichs_constant(mesh)) << "\n";
      // closed-cell geometric audit: sum l*d = 4V
      double worst = 0.0;
      int audited = 0;
      for (int i = 0; i < mesh.num_nodes(); ++i) {
        if (!mesh.closed_cell(i)) continue;
        ++audited;
        double s = 0.0;
        for (const NodeNeighbor& nb : mesh.adjacency[i]) {
          const MeshFace& f = mesh.faces[nb.face];
          s += f.length * f.dist;
        }
        worst = std::max(worst, std::fabs(s - 4.0 * mesh.cell_area[i]));
      }
      rep << "closed cells audited = " << audited
          << ", max |sum(l d) - 4V| = " << num(worst) << "\n";
      rep << "max face Peclet = " << num(max_peclet(mesh, vel, field)) << "\n";
      const FvmSchemeKind kind = cfg.scheme.spatial == SpatialKind::Upwind
                                     ? (cfg.scheme.form == ConvectionForm::Divergent
                                            ? FvmSchemeKind::UpwindDivergent
                                            : FvmSchemeKind::UpwindNondivergent)
                                     : (cfg.scheme.form == ConvectionForm::Divergent
                                            ? FvmSchemeKind::CentralDivergent
                                            : FvmSchemeKind::CentralNondivergent);
      const FvmCertificate cert = check_fvm_monotone(mesh, vel, field, kind);
      rep << "fvm monotone certificate: " << (cert.ok ? "PASS" : "FAIL " + cert.witness)
          << "\n";
      const StencilMatrix c1 = fvm_convection(mesh, vel, ConvectionForm::Nondivergent);
      const StencilMatrix c2 = fvm_convection(mesh, vel, ConvectionForm::Divergent);
      const Vector vmeas = mesh.measure();
      rep << "adjointness |(V C1)^T + V C2|_max = "
          << num(c1.row_scaled(vmeas).adjointness_residual(c2.row_scaled(vmeas))) << "\n";
    }
    write_file(std::filesystem::path(opts.out_dir) / "certificates.txt", rep.str());
    if (!opts.quiet) std::cout << rep.str();
    return 0;
  });
}

int cmd_converge(const CliOptions& opts) {
  return run_guarded(opts, [&](const ProblemConfig& cfg) {
    const ConvergeConfig& cc = cfg.converge;
    ManufacturedCase mc;
    bool one_dimensional = false;
    if (cc.case_name == "sine1d") {
      mc = case_sine1d();
      one_dimensional = true;
    } else if (cc.case_name == "sine2d") {
      mc = case_sine2d_rotating();
    } else if (cc.case_name == "compressible2d") {
      mc = case_compressible2d();
    } else {
      throw ParseError("unknown manufactured case '" + cc.case_name + "'");
    }
    const ConvectionForm form = cfg.scheme.form;
    const SpaceTimeFn forcing = derive_forcing(mc, form);
    const SchemeSpec base = cfg.scheme_spec();

    auto error_at = [&](int level) {
      const int refine_space = cc.refine != ConvergeConfig::Refine::Time ? level : 0;
      const int refine_time = cc.refine != ConvergeConfig::Refine::Space ? level : 0;
      const int n = cc.n0 << refine_space;
      SchemeSpec spec = base;
      spec.tau = cc.tau0 / (1 << refine_time);
      CoefficientField field = mc.field();
      field.f = forcing;
      if (one_dimensional) {
        Grid1D grid(1.0, n);
        StencilMatrix a = exp_operator_1d(grid, field, form, 0.0);
        SemiDiscreteProblem p;
        p.size = grid.num_interior();
        p.measure.assign(p.size, grid.h);
        p.u0.resize(p.size);
        for (int i = 1; i < grid.n; ++i) p.u0[i - 1] = mc.u(grid.x(i), 0.0, 0.0);
        p.full_op = [a](double) { return a; };
        p.convection = [a](double) { return a; };
        p.diffusion = StencilBuilder(p.size).build();
        p.forcing = [&, grid](double t) {
          Vector phi(grid.num_interior());
          for (int i = 1; i < grid.n; ++i) phi[i - 1] = forcing(grid.x(i), 0.0, t);
          return phi;
        };
        TimeSeries series = integrate(spec, p, MonitorOptions{});
        double err = 0.0;
        for (int i = 1; i < grid.n; ++i) {
          err = std::max(err,
                         std::fabs(series.final_state[i - 1] - mc.u(grid.x(i), 0.0, spec.t_end)));
        }
        return err;
      }
      RectGrid2D grid(1.0, 1.0, n, n);
      CoefficientField f2 = field;
      AssembledProblem ap;
      {
        ProblemConfig sub = cfg;
        sub.domain.kind = DomainConfig::Kind::Rect;
        sub.domain.l1 = sub.domain.l2 = 1.0;
        sub.domain.n1 = sub.domain.n2 = n;
        ap = assemble_rect(sub);
      }
      // override coefficients with the manufactured case
      ap.problem.forcing = [grid, forcing](double t) {
        return semi_discrete_rhs(grid, forcing, t);
      };
      ap.problem.u0.resize(grid.num_interior());
      for (int i2 = 1; i2 < grid.n2; ++i2) {
        for (int i1 = 1; i1 < grid.n1; ++i1) {
          ap.problem.u0[grid.interior_index(i1, i2)] = mc.u(grid.x1(i1), grid.x2(i2), 0.0);
        }
      }
      if (cfg.scheme.spatial == SpatialKind::Central) {
        ap.problem.diffusion = assemble_diffusion(grid, f2);
        const CoefficientPlacement placement = cfg.scheme.placement;
        ap.problem.convection = [grid, f2, form, placement](double t) {
          return assemble_convection(grid, f2, form, placement, t);
        };
      } else if (cfg.scheme.spatial == SpatialKind::Exponential) {
        ap.problem.split1 = [grid, f2, form](double t) {
          return exp_operator_2d(grid, f2, form, t).a1;
        };
        ap.problem.split2 = [grid, f2, form](double t) {
          return exp_operator_2d(grid, f2, form, t).a2;
        };
        ap.problem.full_op = [grid, f2, form](double t) {
          return exp_operator_2d(grid, f2, form, t).sum();
        };
        ap.problem.convection = ap.problem.full_op;
        ap.problem.diffusion = StencilBuilder(grid.num_interior()).build();
      } else {
        const Regularizer reg{Regularizer::Kind::Upwind, 1.0};
        const bool divergent = form == ConvectionForm::Divergent;
        auto scheme_at = [grid, f2, reg, divergent](double t) {
          return divergent ? build_divergent_scheme(grid, f2, reg, t)
                           : build_nondivergent_scheme(grid, f2, reg, t);
        };
        ap.problem.diffusion = assemble_diffusion(grid, f2);
        ap.problem.convection = [scheme_at, d = ap.problem.diffusion](double t) {
          return scheme_at(t).matrix().add_scaled(d, -1.0);
        };
        ap.problem.full_op = [scheme_at](double t) { return scheme_at(t).matrix(); };
      }
      TimeSeries series = integrate(spec, ap.problem, MonitorOptions{});
      // error in the requested norm at final time
      Vector diff = series.final_state;
      for (int i2 = 1; i2 < grid.n2; ++i2) {
        for (int i1 = 1; i1 < grid.n1; ++i1) {
          diff[grid.interior_index(i1, i2)] -= mc.u(grid.x1(i1), grid.x2(i2), spec.t_end);
        }
      }
      if (cc.norm == "linf") return linf(diff);
      if (cc.norm == "l1") return weighted_l1(diff, ap.problem.measure);
      return weighted_l2(diff, ap.problem.measure);
    };
    auto h_at = [&](int level) {
      if (cc.refine == ConvergeConfig::Refine::Time) return cc.tau0 / (1 << level);
      return 1.0 / (cc.n0 << level);
    };
    const OrderEstimate est = convergence_study(error_at, h_at, cc.levels);

    std::ostringstream csv;
    csv << "level,h,tau,error,slope\n";
    for (std::size_t l = 0; l < est.h.size(); ++l) {
      const double tau_l = cc.refine != ConvergeConfig::Refine::Space
                               ? cc.tau0 / (1 << l)
                               : cc.tau0;
      csv << l << "," << num(est.h[l]) << "," << num(tau_l) << "," << num(est.error[l])
          << ",";
      if (l > 0 && l - 1 < est.slopes.size()) csv << num(est.slopes[l - 1]);
      csv << "\n";
    }
    write_file(std::filesystem::path(opts.out_dir) / "convergence.csv", csv.str());
    if (cc.levels < 2 && !opts.quiet) {
      std::cerr << "warning: single-level ladder, no slopes computed\n";
    }
    if (!opts.quiet) {
      std::cout << (est.exact ? std::string("errors at rounding level (exact)")
                              : "final slope = " + num(est.final_slope))
                << "\n";
    }
    return 0;
  });
}

}  // namespace cdlab
