#include "cdlab/trimesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace cdlab {

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double dist(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// > 0 when d lies strictly inside the circumcircle of CCW triangle (a,b,c);
// normalized so the tie tolerance is scale-free
double incircle(const Point& a, const Point& b, const Point& c, const Point& d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double ad = adx * adx + ady * ady;
  const double bd = bdx * bdx + bdy * bdy;
  const double cd = cdx * cdx + cdy * cdy;
  const double det = adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) +
                     ad * (bdx * cdy - bdy * cdx);
  const double scale = (ad + bd + cd);
  return det / (scale * scale + 1e-300);
}

struct TaggedPolygon {
  std::vector<Point> pts;
  std::vector<int> tags;  // tags[k] belongs to edge pts[k] -> pts[k+1 mod n]
};

// keep the side where g(x) <= 0; edges created on the cut line get `tag`
TaggedPolygon clip(const TaggedPolygon& poly, const Point& origin, const Point& normal,
                   int tag) {
  TaggedPolygon out;
  const std::size_t n = poly.pts.size();
  if (n == 0) return out;
  auto g = [&](const Point& p) {
    return (p.x - origin.x) * normal.x + (p.y - origin.y) * normal.y;
  };
  for (std::size_t k = 0; k < n; ++k) {
    const Point& p = poly.pts[k];
    const Point& q = poly.pts[(k + 1) % n];
    const double gp = g(p), gq = g(q);
    const bool pin = gp <= 0.0, qin = gq <= 0.0;
    if (pin) {
      out.pts.push_back(p);
      out.tags.push_back(poly.tags[k]);
    }
    if (pin != qin) {
      const double s = gp / (gp - gq);
      Point x{p.x + s * (q.x - p.x), p.y + s * (q.y - p.y)};
      out.pts.push_back(x);
      // leaving: the new edge runs along the cut line; entering: the rest
      // of the original edge survives
      out.tags.push_back(pin ? tag : poly.tags[k]);
    }
  }
  return out;
}

double polygon_area(const std::vector<Point>& pts) {
  double a = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point& p = pts[k];
    const Point& q = pts[(k + 1) % n];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * a;
}

struct EdgeKey {
  int a, b;
  bool operator<(const EdgeKey& o) const { return a < o.a || (a == o.a && b < o.b); }
};

EdgeKey make_edge(int i, int j) { return {std::min(i, j), std::max(i, j)}; }

std::vector<Triangle> bowyer_watson(const std::vector<Point>& pts) {
  const int n = static_cast<int>(pts.size());
  double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (const Point& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double span = std::max(xmax - xmin, ymax - ymin) + 1.0;
  const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  std::vector<Point> all = pts;
  all.push_back({cx - 20.0 * span, cy - 10.0 * span});
  all.push_back({cx + 20.0 * span, cy - 10.0 * span});
  all.push_back({cx, cy + 20.0 * span});

  std::vector<Triangle> tris{{{n, n + 1, n + 2}}};
  const double tie_tol = 1e-13;
  for (int p = 0; p < n; ++p) {
    std::vector<Triangle> keep;
    std::map<EdgeKey, int> boundary;  // cavity edges seen once
    for (const Triangle& t : tris) {
      const double det = incircle(all[t.v[0]], all[t.v[1]], all[t.v[2]], all[p]);
      if (det > tie_tol) {
        for (int e = 0; e < 3; ++e) {
          boundary[make_edge(t.v[e], t.v[(e + 1) % 3])]++;
        }
      } else {
        keep.push_back(t);
      }
    }
    tris = std::move(keep);
    for (const auto& [edge, count] : boundary) {
      if (count != 1) continue;
      Triangle t{{edge.a, edge.b, p}};
      if (cross(all[t.v[0]], all[t.v[1]], all[t.v[2]]) < 0.0) std::swap(t.v[1], t.v[2]);
      if (std::fabs(cross(all[t.v[0]], all[t.v[1]], all[t.v[2]])) > 0.0) tris.push_back(t);
    }
  }
  std::vector<Triangle> out;
  for (const Triangle& t : tris) {
    if (t.v[0] < n && t.v[1] < n && t.v[2] < n) out.push_back(t);
  }
  return out;
}

double min_angle(const Point& a, const Point& b, const Point& c) {
  const double la = dist(b, c), lb = dist(a, c), lc = dist(a, b);
  auto angle = [](double opp, double s1, double s2) {
    const double v = (s1 * s1 + s2 * s2 - opp * opp) / (2.0 * s1 * s2);
    return std::acos(std::clamp(v, -1.0, 1.0));
  };
  return std::min({angle(la, lb, lc), angle(lb, la, lc), angle(lc, la, lb)});
}

bool point_on_segment(const Point& p, const Point& a, const Point& b, double tol) {
  const double c = cross(a, b, p);
  const double len = dist(a, b);
  if (std::fabs(c) > tol * (len + 1.0)) return false;
  const double dotp = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
  return dotp >= -tol && dotp <= len * len + tol;
}

void build_dual(TriMesh& mesh) {
  const int n = mesh.num_nodes();
  // adjacency from triangle edges
  std::map<EdgeKey, int> face_of;
  mesh.adjacency.assign(n, {});
  for (const Triangle& t : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      const EdgeKey key = make_edge(t.v[e], t.v[(e + 1) % 3]);
      if (face_of.count(key)) continue;
      const int id = static_cast<int>(mesh.faces.size());
      face_of[key] = id;
      MeshFace f;
      f.i = key.a;
      f.j = key.b;
      f.dist = dist(mesh.nodes[key.a], mesh.nodes[key.b]);
      f.mid = {0.5 * (mesh.nodes[key.a].x + mesh.nodes[key.b].x),
               0.5 * (mesh.nodes[key.a].y + mesh.nodes[key.b].y)};
      mesh.faces.push_back(f);
      mesh.adjacency[key.a].push_back({key.b, id});
      mesh.adjacency[key.b].push_back({key.a, id});
    }
  }
  for (auto& nb : mesh.adjacency) {
    std::sort(nb.begin(), nb.end(),
              [](const NodeNeighbor& a, const NodeNeighbor& b) { return a.node < b.node; });
  }
  // Voronoi cell of each node: clip the domain polygon by the perpendicular
  // bisector half-planes of its Delaunay neighbors; face lengths are read
  // off the tagged edges. Each face is measured once, from its lower node.
  mesh.cell_area.assign(n, 0.0);
  mesh.cell_clipped.assign(n, false);
  for (int i = 0; i < n; ++i) {
    TaggedPolygon poly;
    poly.pts = mesh.domain;
    poly.tags.assign(mesh.domain.size(), -1);
    for (const NodeNeighbor& nb : mesh.adjacency[i]) {
      const Point& xi = mesh.nodes[i];
      const Point& xj = mesh.nodes[nb.node];
      const Point mid{0.5 * (xi.x + xj.x), 0.5 * (xi.y + xj.y)};
      const Point normal{xj.x - xi.x, xj.y - xi.y};
      poly = clip(poly, mid, normal, nb.node);
    }
    mesh.cell_area[i] = std::fabs(polygon_area(poly.pts));
    for (std::size_t k = 0; k < poly.pts.size(); ++k) {
      const double len = dist(poly.pts[k], poly.pts[(k + 1) % poly.pts.size()]);
      if (poly.tags[k] == -1) {
        // zero-length fragments arise when a cell vertex touches the
        // boundary; they do not clip the cell
        if (len > 1e-12) mesh.cell_clipped[i] = true;
        continue;
      }
      const int j = poly.tags[k];
      if (j < i) continue;  // measured from min(i, j)
      const EdgeKey key = make_edge(i, j);
      auto it = face_of.find(key);
      if (it != face_of.end()) mesh.faces[it->second].length += len;
    }
  }
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point& a, const Point& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  const int n = static_cast<int>(pts.size());
  if (n < 3) throw GeometryError("convex_hull: fewer than 3 distinct points");
  std::vector<Point> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  const int lower = k + 1;
  for (int i = n - 2; i >= 0; --i) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);  // already CCW
  return hull;
}

void validate_and_finish(TriMesh& mesh, double scale) {
  if (mesh.triangles.empty()) {
    throw GeometryError("build_mesh: degenerate (collinear) input, no triangles");
  }
  for (const Triangle& t : mesh.triangles) {
    if (min_angle(mesh.nodes[t.v[0]], mesh.nodes[t.v[1]], mesh.nodes[t.v[2]]) < 1e-6) {
      throw GeometryError("build_mesh: near-degenerate triangle (min angle < 1e-6 rad)");
    }
  }
  // triangles must tile the convex hull of the nodes; a shortfall means the
  // insertion lost a (necessarily near-degenerate) sliver along the hull
  {
    double covered = 0.0;
    for (const Triangle& t : mesh.triangles) {
      covered += 0.5 * std::fabs(cross(mesh.nodes[t.v[0]], mesh.nodes[t.v[1]],
                                       mesh.nodes[t.v[2]]));
    }
    const double hull_area = std::fabs(polygon_area(convex_hull(mesh.nodes)));
    if (std::fabs(covered - hull_area) > 1e-12 * scale * scale +
                                             1e-13 * mesh.triangles.size() * hull_area) {
      throw GeometryError("build_mesh: triangulation does not tile the hull");
    }
  }
  // boundary flags from the domain polygon
  const int n = mesh.num_nodes();
  mesh.on_boundary.assign(n, false);
  const std::size_t m = mesh.domain.size();
  for (int i = 0; i < n; ++i) {
    for (std::size_t e = 0; e < m; ++e) {
      if (point_on_segment(mesh.nodes[i], mesh.domain[e], mesh.domain[(e + 1) % m],
                           1e-12 * scale)) {
        mesh.on_boundary[i] = true;
        break;
      }
    }
  }
  build_dual(mesh);
  mesh.finalize();
  if (delaunay_defect(mesh) > 1e-12) {
    throw GeometryError("build_mesh: triangulation violates the empty-circumcircle property");
  }
}

}  // namespace

void TriMesh::finalize() {
  interior_index_.assign(nodes.size(), -1);
  interior_nodes_.clear();
  for (int i = 0; i < num_nodes(); ++i) {
    if (!on_boundary[i]) {
      interior_index_[i] = static_cast<int>(interior_nodes_.size());
      interior_nodes_.push_back(i);
    }
  }
}

double TriMesh::face_length(int i, int j) const {
  for (const NodeNeighbor& nb : adjacency[i]) {
    if (nb.node == j) return faces[nb.face].length;
  }
  throw GeometryError("face_length: nodes not adjacent");
}

double TriMesh::node_distance(int i, int j) const {
  return dist(nodes[i], nodes[j]);
}

Vector TriMesh::measure() const {
  Vector v(num_interior());
  for (int idx = 0; idx < num_interior(); ++idx) v[idx] = cell_area[interior_nodes_[idx]];
  return v;
}

void TriMesh::bounding_box(double& width, double& height) const {
  double xmin = domain[0].x, xmax = domain[0].x, ymin = domain[0].y, ymax = domain[0].y;
  for (const Point& p : domain) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  width = xmax - xmin;
  height = ymax - ymin;
}

TriMesh build_mesh(const std::vector<Point>& points, const std::vector<Point>& domain) {
  if (points.size() < 3) throw GeometryError("build_mesh: need at least 3 points");
  if (domain.size() < 3) throw GeometryError("build_mesh: domain polygon needs 3 vertices");
  double scale = 0.0;
  for (const Point& p : points) scale = std::max(scale, std::fabs(p.x) + std::fabs(p.y));
  scale += 1.0;
  // duplicates are an input error
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      if (dist(points[a], points[b]) < 1e-12 * scale) {
        throw GeometryError("build_mesh: duplicate points");
      }
    }
  }
  // domain must be convex (allow either orientation on input)
  std::vector<Point> dom = domain;
  {
    double a = polygon_area(dom);
    if (std::fabs(a) < 1e-14 * scale * scale) {
      throw GeometryError("build_mesh: degenerate domain polygon");
    }
    if (a < 0.0) std::reverse(dom.begin(), dom.end());
    const std::size_t m = dom.size();
    for (std::size_t e = 0; e < m; ++e) {
      if (cross(dom[e], dom[(e + 1) % m], dom[(e + 2) % m]) < -1e-12 * scale * scale) {
        throw GeometryError("build_mesh: domain polygon is not convex");
      }
    }
  }
  for (const Point& v : dom) {
    bool found = false;
    for (const Point& p : points) {
      if (dist(p, v) < 1e-12 * scale) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw GeometryError("build_mesh: domain polygon vertex is not in the point set");
    }
  }
  TriMesh mesh;
  mesh.nodes = points;
  mesh.domain = dom;
  mesh.triangles = bowyer_watson(points);
  validate_and_finish(mesh, scale);
  return mesh;
}

double delaunay_defect(const TriMesh& mesh) {
  double worst = 0.0;
  for (const Triangle& t : mesh.triangles) {
    for (int p = 0; p < mesh.num_nodes(); ++p) {
      if (p == t.v[0] || p == t.v[1] || p == t.v[2]) continue;
      worst = std::max(worst, incircle(mesh.nodes[t.v[0]], mesh.nodes[t.v[1]],
                                       mesh.nodes[t.v[2]], mesh.nodes[p]));
    }
  }
  return worst;
}

void save_mesh(const TriMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("save_mesh: cannot open " + path);
  out << "nodes " << mesh.num_nodes() << " triangles " << mesh.triangles.size() << "\n";
  out.precision(17);
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    out << mesh.nodes[i].x << " " << mesh.nodes[i].y << " "
        << (mesh.on_boundary[i] ? 1 : 0) << "\n";
  }
  for (const Triangle& t : mesh.triangles) {
    out << t.v[0] << " " << t.v[1] << " " << t.v[2] << "\n";
  }
}

TriMesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("load_mesh: cannot open " + path);
  std::string word;
  int n = 0, t = 0;
  in >> word >> n;
  if (word != "nodes") throw ParseError("load_mesh: expected 'nodes'");
  in >> word >> t;
  if (word != "triangles") throw ParseError("load_mesh: expected 'triangles'");
  TriMesh mesh;
  mesh.nodes.resize(n);
  mesh.on_boundary.assign(n, false);
  for (int i = 0; i < n; ++i) {
    int flag = 0;
    in >> mesh.nodes[i].x >> mesh.nodes[i].y >> flag;
    mesh.on_boundary[i] = (flag != 0);
  }
  mesh.triangles.resize(t);
  for (int k = 0; k < t; ++k) {
    in >> mesh.triangles[k].v[0] >> mesh.triangles[k].v[1] >> mesh.triangles[k].v[2];
  }
  if (!in) throw ParseError("load_mesh: malformed mesh file");
  mesh.domain = convex_hull(mesh.nodes);
  double scale = 0.0;
  for (const Point& p : mesh.nodes) scale = std::max(scale, std::fabs(p.x) + std::fabs(p.y));
  // trust boundary flags from the file but recompute the dual geometry
  std::vector<bool> flags = mesh.on_boundary;
  validate_and_finish(mesh, scale + 1.0);
  mesh.on_boundary = flags;
  mesh.finalize();
  return mesh;
}

}  // namespace cdlab
