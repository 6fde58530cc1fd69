#pragma once
// Time integrators for the semi-discrete system dy/dt + A(t) y = phi(t):
// weighted two-level schemes, the explicit-implicit and three-level
// variants, reaction splitting, the exponential-transform scheme, and the
// locally one-dimensional / additively averaged splittings.

#include <functional>

#include "cdlab/fields.hpp"
#include "cdlab/linalg.hpp"

namespace cdlab {

enum class SchemeFamily {
  TwoLevelWeighted,
  TwoLevelSplitWeights,
  ExplicitImplicit,
  ThreeLevelEI,
  ReactionSplitImplicit,
  SymmetricReactionSplit,
  ExpTransform,
  LOD,
  AdditiveAvg,
};

struct SchemeSpec {
  SchemeFamily family = SchemeFamily::TwoLevelWeighted;
  double sigma = 1.0;
  double sigma1 = 1.0, sigma2 = 1.0;  // TwoLevelSplitWeights
  double m = 0.0;                     // ExpTransform: lower spectral bound of A
  double tau = 0.0;
  double t_end = 0.0;
  ConvectionForm form = ConvectionForm::SkewSymmetric;
  CoefficientPlacement placement = CoefficientPlacement::Staggered;

  int num_steps() const;
  void validate() const;
};

struct StepError : Error {
  StepError(const std::string& what, int step_index, double residual)
      : Error(what), step(step_index), residual(residual) {}
  int step;
  double residual;
};

// -- individual steps ---------------------------------------------------

// (E + s1*tau*C + s2*tau*D) y' = (E - (1-s1)*tau*C - (1-s2)*tau*D) y + tau*phi
Vector step_two_level(double tau, double sigma1, double sigma2, const StencilMatrix& c,
                      const StencilMatrix& d, const Vector& y, const Vector& phi,
                      const Vector* weight = nullptr);

// convection explicit, diffusion weighted; only the self-adjoint operator
// E + sigma*tau*D is inverted
Vector step_explicit_implicit(double tau, double sigma, const StencilMatrix& c,
                              const StencilMatrix& d, const Vector& y, const Vector& phi,
                              const Vector* weight = nullptr);

// (y^{n+1} - y^{n-1})/(2 tau) + D(s y^{n+1} + (1-2s) y^n + s y^{n-1}) + C y^n = phi
Vector step_three_level(double tau, double sigma, const StencilMatrix& c,
                        const StencilMatrix& d, const Vector& y_n, const Vector& y_nm1,
                        const Vector& phi, const Vector* weight = nullptr);

// diffusion-norm energy of the three-level scheme
double three_level_energy(double tau, double sigma, const StencilMatrix& d,
                          const Vector& y_np1, const Vector& y_n, const Vector& measure);

// (E + tau (C + D + R+)) y' = (E - tau R-) y with R split from the reaction
// values r (r+ = max(0, r))
Vector step_reaction_split(double tau, const StencilMatrix& c, const StencilMatrix& d,
                           const Vector& reaction, const Vector& y,
                           const Vector* weight = nullptr);

// exp(m tau) y' solves the transformed weighted scheme with A - mE >= 0
Vector step_exp_transform(double tau, double sigma, double m, const StencilMatrix& a,
                          const Vector& y, const Vector* weight = nullptr);

// grid-line dimensions for the tridiagonal substeps of the splittings
struct LineDims {
  int m1 = 0, m2 = 0;  // interior counts per direction, row-major (m1 fast)
};

// two sequential half-steps (direction 1 then 2), each a line solve
Vector step_lod(double tau, double sigma, const StencilMatrix& a1, const StencilMatrix& a2,
                const Vector& y, const Vector& phi, const LineDims& dims);

// two independent substeps with step 2*tau, then averaged + tau*phi
Vector step_additive_avg(double tau, double sigma, const StencilMatrix& a1,
                         const StencilMatrix& a2, const Vector& y, const Vector& phi,
                         const LineDims& dims, bool reverse_order = false);

// -- driver ---------------------------------------------------------------

struct SemiDiscreteProblem {
  int size = 0;
  Vector measure;  // inner-product weights (cell measures)
  Vector u0;
  StencilMatrix diffusion;                       // D (empty allowed if unused)
  std::function<StencilMatrix(double)> convection;  // C(t); null -> zero
  std::function<Vector(double)> forcing;            // phi(t); null -> zero
  std::function<Vector(double)> reaction;           // r(x, t) diagonal; null -> zero
  std::function<StencilMatrix(double)> full_op;     // A(t) for ExpTransform
  std::function<StencilMatrix(double)> split1, split2;  // A1, A2 for LOD/additive
  LineDims line_dims;
};

struct StepRecord {
  double t = 0.0;
  double l2 = 0.0, linf = 0.0, l1 = 0.0;
  double d_energy = 0.0;       // ||y||_D when requested
  double energy3 = 0.0;        // three-level energy monitor
  double phi_l2 = 0.0, phi_linf = 0.0, phi_l1 = 0.0;
  double phi_dinv = 0.0;       // ||phi||_{D^{-1}} when requested
};

enum class SnapshotMode { None, Final, All };

struct MonitorOptions {
  bool d_energy = false;
  bool phi_dinv = false;
  SnapshotMode snapshots = SnapshotMode::None;
};

struct TimeSeries {
  std::vector<StepRecord> steps;      // N0 + 1 records
  std::vector<Vector> snapshots;
  Vector final_state;
};

TimeSeries integrate(const SchemeSpec& spec, const SemiDiscreteProblem& problem,
                     const MonitorOptions& monitors = {});

}  // namespace cdlab
