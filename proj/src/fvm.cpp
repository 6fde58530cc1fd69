#include "cdlab/fvm.hpp"

#include <cmath>
#include <tuple>

namespace cdlab {

namespace {

double face_k(const CoefficientField& field, const MeshFace& f) {
  const double k = field.eval_k(f.mid.x, f.mid.y);
  if (k <= 0.0) throw AssemblyError("fvm: diffusivity <= 0 at a face midpoint");
  return k;
}

}  // namespace

FvmVelocity FvmVelocity::from_field(const TriMesh& mesh, const SpaceTimeFn& v1,
                                    const SpaceTimeFn& v2, double t) {
  FvmVelocity out;
  out.face_values_.resize(mesh.faces.size());
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const MeshFace& face = mesh.faces[f];
    const Point& xi = mesh.nodes[face.i];
    const Point& xj = mesh.nodes[face.j];
    const double nx = (xj.x - xi.x) / face.dist;
    const double ny = (xj.y - xi.y) / face.dist;
    const double w1 = v1 ? v1(face.mid.x, face.mid.y, t) : 0.0;
    const double w2 = v2 ? v2(face.mid.x, face.mid.y, t) : 0.0;
    out.face_values_[f] = w1 * nx + w2 * ny;
  }
  return out;
}

FvmVelocity FvmVelocity::from_values(
    const TriMesh& mesh, const std::vector<std::tuple<int, int, double>>& values) {
  FvmVelocity out;
  out.face_values_.assign(mesh.faces.size(), 0.0);
  std::vector<bool> seen(mesh.faces.size(), false);
  for (const auto& [i, j, b] : values) {
    int face_id = -1;
    for (const NodeNeighbor& nb : mesh.adjacency[i]) {
      if (nb.node == j) {
        face_id = nb.face;
        break;
      }
    }
    if (face_id < 0) throw GeometryError("FvmVelocity: (i, j) is not a mesh face");
    const MeshFace& f = mesh.faces[face_id];
    const double oriented = (f.i == i) ? b : -b;
    if (seen[face_id] && std::fabs(out.face_values_[face_id] - oriented) > 0.0) {
      throw ParameterError("FvmVelocity: face values violate b_ij = -b_ji");
    }
    out.face_values_[face_id] = oriented;
    seen[face_id] = true;
  }
  return out;
}

double FvmVelocity::b(const TriMesh& mesh, int i, int j, int face_id) const {
  const MeshFace& f = mesh.faces[face_id];
  (void)j;
  return (f.i == i) ? face_values_[face_id] : -face_values_[face_id];
}

StencilMatrix fvm_diffusion(const TriMesh& mesh, const CoefficientField& field) {
  const int n = mesh.num_interior();
  StencilBuilder b(n);
  for (int idx = 0; idx < n; ++idx) {
    const int i = mesh.interior_nodes()[idx];
    const double vi = mesh.cell_area[i];
    double diag = 0.0;
    for (const NodeNeighbor& nb : mesh.adjacency[i]) {
      const MeshFace& f = mesh.faces[nb.face];
      const double w = f.length * face_k(field, f) / f.dist / vi;
      diag += w;
      const int jdx = mesh.interior_index(nb.node);
      if (jdx >= 0) b.add(idx, jdx, -w);
    }
    b.add(idx, idx, diag);
  }
  return b.build();
}

StencilMatrix fvm_convection(const TriMesh& mesh, const FvmVelocity& vel,
                             ConvectionForm form) {
  const int n = mesh.num_interior();
  StencilBuilder bld(n);
  for (int idx = 0; idx < n; ++idx) {
    const int i = mesh.interior_nodes()[idx];
    const double vi = mesh.cell_area[i];
    double diag = 0.0;
    for (const NodeNeighbor& nb : mesh.adjacency[i]) {
      const MeshFace& f = mesh.faces[nb.face];
      const double lb = f.length * vel.b(mesh, i, nb.node, nb.face);
      const double off = lb / (2.0 * vi);
      switch (form) {
        case ConvectionForm::Divergent:
          diag += off;
          break;
        case ConvectionForm::Nondivergent:
          diag -= off;
          break;
        case ConvectionForm::SkewSymmetric:
          break;  // zero diagonal
      }
      const int jdx = mesh.interior_index(nb.node);
      if (jdx >= 0) bld.add(idx, jdx, off);
    }
    if (diag != 0.0) bld.add(idx, idx, diag);
  }
  return bld.build();
}

Vector fvm_divergence(const TriMesh& mesh, const FvmVelocity& vel) {
  const int n = mesh.num_interior();
  Vector div(n, 0.0);
  for (int idx = 0; idx < n; ++idx) {
    const int i = mesh.interior_nodes()[idx];
    double s = 0.0;
    for (const NodeNeighbor& nb : mesh.adjacency[i]) {
      const MeshFace& f = mesh.faces[nb.face];
      s += f.length * vel.b(mesh, i, nb.node, nb.face);
    }
    div[idx] = s / mesh.cell_area[i];
  }
  return div;
}

StencilMatrix fvm_upwind_convection(const TriMesh& mesh, const FvmVelocity& vel,
                                    ConvectionForm form) {
  if (form == ConvectionForm::SkewSymmetric) {
    throw ParameterError("fvm_upwind_convection: no skew-symmetric upwind variant");
  }
  const int n = mesh.num_interior();
  StencilBuilder bld(n);
  for (int idx = 0; idx < n; ++idx) {
    const int i = mesh.interior_nodes()[idx];
    const double vi = mesh.cell_area[i];
    double diag = 0.0;
    for (const NodeNeighbor& nb : mesh.adjacency[i]) {
      const MeshFace& f = mesh.faces[nb.face];
      const double bij = vel.b(mesh, i, nb.node, nb.face);
      const double bp = 0.5 * (bij + std::fabs(bij));
      const double bm = 0.5 * (bij - std::fabs(bij));
      const int jdx = mesh.interior_index(nb.node);
      if (form == ConvectionForm::Divergent) {
        diag += f.length * bp / vi;
        if (jdx >= 0) bld.add(idx, jdx, f.length * bm / vi);
      } else {
        diag -= f.length * bm / vi;
        if (jdx >= 0) bld.add(idx, jdx, f.length * bm / vi);
      }
    }
    if (diag != 0.0) bld.add(idx, idx, diag);
  }
  return bld.build();
}

StencilMatrix fvm_upwind_c2_adjoint(const TriMesh& mesh, const FvmVelocity& vel) {
  const int n = mesh.num_interior();
  StencilBuilder bld(n);
  for (int idx = 0; idx < n; ++idx) {
    const int i = mesh.interior_nodes()[idx];
    const double vi = mesh.cell_area[i];
    double diag = 0.0;
    for (const NodeNeighbor& nb : mesh.adjacency[i]) {
      const MeshFace& f = mesh.faces[nb.face];
      const double bij = vel.b(mesh, i, nb.node, nb.face);
      const double bp = 0.5 * (bij + std::fabs(bij));
      diag += f.length * bp / vi;
      const int jdx = mesh.interior_index(nb.node);
      if (jdx >= 0) bld.add(idx, jdx, -f.length * bp / vi);
    }
    if (diag != 0.0) bld.add(idx, idx, diag);
  }
  return bld.build();
}

double friedrichs_constant(const TriMesh& mesh) {
  double w = 0.0, h = 0.0;
  mesh.bounding_box(w, h);
  return (w * w + h * h) / 16.0;
}

double gradient_form(const TriMesh& mesh, const Vector& node_values) {
  if (static_cast<int>(node_values.size()) != mesh.num_nodes()) {
    throw DimensionError("gradient_form: values must be given on all nodes");
  }
  double s = 0.0;
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    for (const NodeNeighbor& nb : mesh.adjacency[i]) {
      const MeshFace& f = mesh.faces[nb.face];
      const double slope = (node_values[nb.node] - node_values[i]) / f.dist;
      s += f.length * f.dist * slope * slope;
    }
  }
  return s;
}

FvmBounds fvm_operator_bounds(const TriMesh& mesh, const FvmVelocity& vel,
                              const CoefficientField& field) {
  FvmBounds out{};
  out.m0 = friedrichs_constant(mesh);
  double max_b = 0.0;
  for (int i = 0; i < mesh.num_interior(); ++i) {
    const int node = mesh.interior_nodes()[i];
    for (const NodeNeighbor& nb : mesh.adjacency[node]) {
      max_b = std::max(max_b, std::fabs(vel.b_face(nb.face)));
    }
  }
  const Vector div = fvm_divergence(mesh, vel);
  double div_inf = 0.0;
  for (double d : div) div_inf = std::max(div_inf, std::fabs(d));
  out.m1 = 0.5 * div_inf;
  const double kappa1 = field.kappa1 > 0.0 ? field.kappa1 : 1.0;
  out.m2_c1 = 2.0 / kappa1 * max_b * max_b;
  out.m2_c2 = 2.0 / kappa1 * (2.0 * max_b * max_b + out.m0 * div_inf * div_inf);
  out.m2_c0 = 1.0 / kappa1 * (3.0 * max_b * max_b + out.m0 * div_inf * div_inf);
  return out;
}

double max_peclet(const TriMesh& mesh, const FvmVelocity& vel,
                  const CoefficientField& field) {
  double pe = 0.0;
  for (int idx = 0; idx < mesh.num_interior(); ++idx) {
    const int i = mesh.interior_nodes()[idx];
    for (const NodeNeighbor& nb : mesh.adjacency[i]) {
      const MeshFace& f = mesh.faces[nb.face];
      pe = std::max(pe, std::fabs(vel.b_face(nb.face)) * f.dist / face_k(field, f));
    }
  }
  return pe;
}

FvmCertificate check_fvm_monotone(const TriMesh& mesh, const FvmVelocity& vel,
                                  const CoefficientField& field, FvmSchemeKind kind) {
  FvmCertificate cert;
  const int n = mesh.num_interior();

  if (kind == FvmSchemeKind::CentralNondivergent || kind == FvmSchemeKind::CentralDivergent) {
    cert.route = FvmCertificate::Route::PecletBound;
    cert.ok = true;
    for (int idx = 0; idx < n && cert.ok; ++idx) {
      const int i = mesh.interior_nodes()[idx];
      for (const NodeNeighbor& nb : mesh.adjacency[i]) {
        const MeshFace& f = mesh.faces[nb.face];
        const double pe = std::fabs(vel.b_face(nb.face)) * f.dist / face_k(field, f);
        if (pe >= 2.0) {
          cert.ok = false;
          cert.witness = "face (" + std::to_string(f.i) + "," + std::to_string(f.j) +
                         ") with Pe = " + std::to_string(pe);
          break;
        }
      }
    }
    return cert;
  }

  if (kind == FvmSchemeKind::UpwindNondivergent) {
    // delta_i = 0 identically: rows certify directly
    cert.route = FvmCertificate::Route::DirectRows;
    cert.ok = true;
    return cert;
  }

  // Upwind divergent: delta_i = div_h v; direct rows when it is nonnegative,
  // otherwise the Green-function argument on the adjoint problem.
  const Vector div = fvm_divergence(mesh, vel);
  bool nonnegative = true;
  for (double d : div) {
    if (d < 0.0) {
      nonnegative = false;
      break;
    }
  }
  if (nonnegative) {
    cert.route = FvmCertificate::Route::DirectRows;
    cert.ok = true;
    return cert;
  }
  cert.route = FvmCertificate::Route::AdjointGreen;
  if (n > 200) {
    throw ParameterError("check_fvm_monotone: Green-function route capped at 200 nodes");
  }
  const StencilMatrix op =
      fvm_upwind_c2_adjoint(mesh, vel).add_scaled(fvm_diffusion(mesh, field), 1.0);
  cert.ok = true;
  for (int m = 0; m < n && cert.ok; ++m) {
    Vector delta(n, 0.0);
    delta[m] = 1.0 / mesh.cell_area[mesh.interior_nodes()[m]];
    const Vector green = solve_sparse(op, delta, /*symmetric=*/false);
    for (int i = 0; i < n; ++i) {
      if (green[i] < -1e-12) {
        cert.ok = false;
        cert.witness = "Green function negative at interior node " + std::to_string(i) +
                       " for source " + std::to_string(m);
        break;
      }
    }
  }
  return cert;
}

}  // namespace cdlab
