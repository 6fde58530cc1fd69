#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "cdlab/trimesh.hpp"

using namespace cdlab;

namespace {

std::vector<Point> unit_square() {
  return {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
}

// corners + centre: the canonical five-node mesh
TriMesh five_node_mesh() {
  std::vector<Point> pts = unit_square();
  pts.push_back({0.5, 0.5});
  return build_mesh(pts, unit_square());
}

TriMesh random_square_mesh(Rng& rng, int interior_points) {
  std::vector<Point> pts = unit_square();
  // a few boundary midpoints keep boundary cells reasonable
  for (double s : {0.25, 0.5, 0.75}) {
    pts.push_back({s, 0.0});
    pts.push_back({s, 1.0});
    pts.push_back({0.0, s});
    pts.push_back({1.0, s});
  }
  for (int i = 0; i < interior_points; ++i) {
    pts.push_back({rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)});
  }
  return build_mesh(pts, unit_square());
}

}  // namespace

TEST_CASE("five-node mesh geometry by hand") {
  const TriMesh mesh = five_node_mesh();
  const int centre = 4;
  CHECK(!mesh.on_boundary[centre]);
  CHECK(mesh.num_interior() == 1);
  // centre cell is the diamond with vertices (.5,0),(1,.5),(.5,1),(0,.5)
  CHECK(mesh.cell_area[centre] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(mesh.adjacency[centre].size() == 4);
  for (const NodeNeighbor& nb : mesh.adjacency[centre]) {
    CHECK(mesh.faces[nb.face].length == doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));
    CHECK(mesh.faces[nb.face].dist == doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));
  }
  // closed-cell identity: sum l*d = 4V = 2
  double s = 0.0;
  for (const NodeNeighbor& nb : mesh.adjacency[centre]) {
    s += mesh.faces[nb.face].length * mesh.faces[nb.face].dist;
  }
  CHECK(s == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(mesh.closed_cell(centre));
}

TEST_CASE("cocircular square without centre still triangulates") {
  const TriMesh mesh = build_mesh(unit_square(), unit_square());
  CHECK(mesh.triangles.size() == 2);
  CHECK(delaunay_defect(mesh) <= 1e-12);
  // deterministic: same input, same triangulation
  const TriMesh again = build_mesh(unit_square(), unit_square());
  REQUIRE(again.triangles.size() == mesh.triangles.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    CHECK(again.triangles[t].v == mesh.triangles[t].v);
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(build_mesh({{0, 0}, {1, 1}}, unit_square()), GeometryError);
  // collinear points
  CHECK_THROWS_AS(build_mesh({{0, 0}, {0.5, 0}, {1, 0}}, unit_square()), GeometryError);
  // duplicates
  std::vector<Point> dup = unit_square();
  dup.push_back({0.0, 0.0});
  CHECK_THROWS_AS(build_mesh(dup, unit_square()), GeometryError);
  // polygon vertex missing from the point set
  std::vector<Point> pts{{0.1, 0.1}, {0.9, 0.1}, {0.5, 0.9}};
  CHECK_THROWS_AS(build_mesh(pts, unit_square()), GeometryError);
  // nonconvex domain
  std::vector<Point> bad_domain{{0, 0}, {1, 0}, {0.4, 0.4}, {0, 1}};
  std::vector<Point> nodes = bad_domain;
  CHECK_THROWS_AS(build_mesh(nodes, bad_domain), GeometryError);
}

TEST_CASE("random meshes satisfy the structural invariants") {
  Rng rng(2024);
  for (int trial = 0; trial < 5; ++trial) {
    const TriMesh mesh = random_square_mesh(rng, 40);
    CHECK(delaunay_defect(mesh) <= 1e-12);
    // l_ij = l_ji and d_ij = d_ji by construction (stored per face);
    // cells tile the domain
    double total = 0.0;
    for (int i = 0; i < mesh.num_nodes(); ++i) total += mesh.cell_area[i];
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    // closed-cell identity at interior unclipped cells
    for (int i = 0; i < mesh.num_nodes(); ++i) {
      if (!mesh.closed_cell(i)) continue;
      double s = 0.0;
      for (const NodeNeighbor& nb : mesh.adjacency[i]) {
        s += mesh.faces[nb.face].length * mesh.faces[nb.face].dist;
      }
      CHECK(s == doctest::Approx(4.0 * mesh.cell_area[i]).epsilon(1e-10));
    }
  }
}

TEST_CASE("mesh file round trip") {
  Rng rng(99);
  const TriMesh mesh = random_square_mesh(rng, 20);
  const std::string path =
      (std::filesystem::temp_directory_path() / "cdlab_mesh_test.txt").string();
  save_mesh(mesh, path);
  const TriMesh loaded = load_mesh(path);
  REQUIRE(loaded.num_nodes() == mesh.num_nodes());
  REQUIRE(loaded.triangles.size() == mesh.triangles.size());
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    CHECK(loaded.nodes[i].x == mesh.nodes[i].x);  // 17 digits round-trip exactly
    CHECK(loaded.nodes[i].y == mesh.nodes[i].y);
    CHECK(loaded.on_boundary[i] == mesh.on_boundary[i]);
    CHECK(loaded.cell_area[i] == doctest::Approx(mesh.cell_area[i]).epsilon(1e-12));
  }
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_mesh("/nonexistent/mesh.txt"), Error);
}

TEST_CASE("near-degenerate triangles are rejected") {
  std::vector<Point> pts = unit_square();
  pts.push_back({0.5, 1e-9});  // sliver against the bottom edge
  CHECK_THROWS_AS(build_mesh(pts, unit_square()), GeometryError);
}
