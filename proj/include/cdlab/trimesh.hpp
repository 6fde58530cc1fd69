#pragma once
// Delaunay triangulation with its Voronoi dual, clipped to a convex
// polygonal domain. Cells are control volumes: V_i areas, l_ij face
// lengths, d_ij node distances, W(i) neighbor sets.

#include <array>
#include <string>

#include "cdlab/common.hpp"

namespace cdlab {

struct Point {
  double x = 0.0, y = 0.0;
};

struct Triangle {
  std::array<int, 3> v;
};

struct MeshFace {
  int i = -1, j = -1;    // i < j
  double length = 0.0;   // Voronoi face length (clipped to the domain)
  double dist = 0.0;     // d(x_i, x_j)
  Point mid;             // segment midpoint x_ij
};

struct NodeNeighbor {
  int node = -1;
  int face = -1;  // index into TriMesh::faces
};

class TriMesh {
 public:
  std::vector<Point> nodes;
  std::vector<bool> on_boundary;       // node lies on the domain boundary
  std::vector<Triangle> triangles;
  std::vector<Point> domain;           // convex polygon, CCW
  std::vector<double> cell_area;       // V_i (Voronoi cell clipped to domain)
  std::vector<bool> cell_clipped;      // cell touches the domain boundary
  std::vector<std::vector<NodeNeighbor>> adjacency;  // W(i)
  std::vector<MeshFace> faces;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_interior() const { return static_cast<int>(interior_nodes_.size()); }
  const std::vector<int>& interior_nodes() const { return interior_nodes_; }
  // -1 for boundary nodes
  int interior_index(int node) const { return interior_index_[node]; }
  bool closed_cell(int node) const { return !on_boundary[node] && !cell_clipped[node]; }

  const MeshFace& face(int face_id) const { return faces[face_id]; }
  double face_length(int i, int j) const;
  double node_distance(int i, int j) const;

  // V_i-weighted measure over interior nodes
  Vector measure() const;

  // axis-aligned bounding box of the domain polygon
  void bounding_box(double& width, double& height) const;

  void finalize();  // fills interior index maps; called by the builders

 private:
  std::vector<int> interior_nodes_;
  std::vector<int> interior_index_;
};

// Delaunay triangulation (incremental Bowyer-Watson, cocircular ties broken
// by insertion order) + Voronoi dual clipped to the convex domain polygon.
// The polygon vertices must be members of `points`.
TriMesh build_mesh(const std::vector<Point>& points, const std::vector<Point>& domain);

// Plain-text format: "nodes <N> triangles <T>", N lines "x y boundary_flag",
// T lines "i j k" (0-based). The domain polygon of a loaded mesh is the
// convex hull of its nodes.
void save_mesh(const TriMesh& mesh, const std::string& path);
TriMesh load_mesh(const std::string& path);

// max over triangles of the (normalized) in-circle determinant against the
// remaining nodes; Delaunay iff <= tol
double delaunay_defect(const TriMesh& mesh);

}  // namespace cdlab
