#pragma once
// Finite-volume operators on Delaunay/Voronoi meshes: diffusion, the three
// convection forms, upwind variants, the discrete Friedrichs constant, and
// maximum-principle certification including the adjoint-problem route.

#include <string>

#include "cdlab/fields.hpp"
#include "cdlab/linalg.hpp"
#include "cdlab/trimesh.hpp"

namespace cdlab {

// Face-normal velocities b_ij = (v . n)(x_ij); stored once per face with
// the i -> j orientation of face.i < face.j, so b_ij = -b_ji exactly.
class FvmVelocity {
 public:
  static FvmVelocity from_field(const TriMesh& mesh, const SpaceTimeFn& v1,
                                const SpaceTimeFn& v2, double t);
  // raw per-face values oriented i -> j; entries may list either or both
  // orientations, inconsistent pairs are an input error
  static FvmVelocity from_values(const TriMesh& mesh,
                                 const std::vector<std::tuple<int, int, double>>& values);

  // b for the oriented pair (i, j); antisymmetric by construction
  double b(const TriMesh& mesh, int i, int j, int face_id) const;
  double b_face(int face_id) const { return face_values_[face_id]; }

 private:
  Vector face_values_;  // per face, oriented face.i -> face.j
};

// (D y)_i = -(1/V_i) sum_j l_ij k(x_ij) (y_j - y_i)/d_ij over interior rows.
StencilMatrix fvm_diffusion(const TriMesh& mesh, const CoefficientField& field);

StencilMatrix fvm_convection(const TriMesh& mesh, const FvmVelocity& vel,
                             ConvectionForm form);

// discrete divergence (1/V_i) sum_j l_ij b_ij per interior node
Vector fvm_divergence(const TriMesh& mesh, const FvmVelocity& vel);

// upwind C2 (b+ on the center, b- on the neighbor) / C1 (b- differences);
// the skew form has no upwind variant.
StencilMatrix fvm_upwind_convection(const TriMesh& mesh, const FvmVelocity& vel,
                                    ConvectionForm form);
// adjoint of the upwind divergent operator in the V-weighted space
StencilMatrix fvm_upwind_c2_adjoint(const TriMesh& mesh, const FvmVelocity& vel);

// Friedrichs constant (l1^2 + l2^2)/16 from the domain bounding box.
double friedrichs_constant(const TriMesh& mesh);

// sum over ordered adjacent pairs of l_ij d_ij ((y_j - y_i)/d_ij)^2 for a
// grid function given on all nodes (the Friedrichs right-hand side).
double gradient_form(const TriMesh& mesh, const Vector& node_values);

struct FvmBounds {
  double m0, m1, m2_c1, m2_c2, m2_c0;
};
FvmBounds fvm_operator_bounds(const TriMesh& mesh, const FvmVelocity& vel,
                              const CoefficientField& field);

double max_peclet(const TriMesh& mesh, const FvmVelocity& vel,
                  const CoefficientField& field);

enum class FvmSchemeKind { UpwindNondivergent, UpwindDivergent, CentralNondivergent,
                           CentralDivergent };

struct FvmCertificate {
  bool ok = false;
  enum class Route { DirectRows, AdjointGreen, PecletBound } route = Route::DirectRows;
  std::string witness;  // failing face / node, empty when certified
};

// Maximum-principle certificate for C y + D y = phi in canonical form:
// upwind variants certify unconditionally (directly when the divergence
// defect is nonnegative, through Green-function nonnegativity of the
// adjoint problem otherwise); central variants need Pe_ij < 2 on every face.
FvmCertificate check_fvm_monotone(const TriMesh& mesh, const FvmVelocity& vel,
                                  const CoefficientField& field, FvmSchemeKind kind);

}  // namespace cdlab
