#include "sda/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace sda {
namespace {

inline std::pair<int, int> ukey(int a, int b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

inline Real signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) -
                (b.y() - a.y()) * (c.x() - a.x()));
}

}  // namespace

TwoRegionMesh::TwoRegionMesh(std::vector<Vec2> vertices,
                             std::vector<std::array<int, 3>> triangles,
                             std::vector<Region> regions)
    : vertices_(std::move(vertices)),
      tris_(std::move(triangles)),
      regions_(std::move(regions)) {
  if (tris_.size() != regions_.size()) {
    throw Error("TwoRegionMesh: triangle/region count mismatch");
  }
  finalize();
}

void TwoRegionMesh::finalize() {
  const int nt = static_cast<int>(tris_.size());
  const int nv = static_cast<int>(vertices_.size());
  area_.resize(nt);
  h_tri_.resize(nt);
  inball_.resize(nt);
  tri_edges_.assign(nt, {-1, -1, -1});

  for (int t = 0; t < nt; ++t) {
    for (int i = 0; i < 3; ++i) {
      const int v = tris_[t][i];
      if (v < 0 || v >= nv) throw Error("TwoRegionMesh: vertex index out of range");
    }
    const Vec2 &a = vertices_[tris_[t][0]], &b = vertices_[tris_[t][1]],
               &c = vertices_[tris_[t][2]];
    const Real sa = signed_area(a, b, c);
    if (sa <= 0.0) {
      throw Error("TwoRegionMesh: triangle " + std::to_string(t) +
                  " is degenerate or not counter-clockwise");
    }
    area_[t] = sa;
    const Real la = (b - c).norm(), lb = (c - a).norm(), lc = (a - b).norm();
    h_tri_[t] = std::max({la, lb, lc});
    inball_[t] = 4.0 * sa / (la + lb + lc);
  }

  // Edge table keyed by sorted endpoints, in a deterministic order.
  std::map<std::pair<int, int>, int> edge_id;
  edges_.clear();
  edge_tris_.clear();
  for (int t = 0; t < nt; ++t) {
    for (int i = 0; i < 3; ++i) {
      const int a = tris_[t][(i + 1) % 3], b = tris_[t][(i + 2) % 3];
      const auto key = ukey(a, b);
      auto it = edge_id.find(key);
      int e;
      if (it == edge_id.end()) {
        e = static_cast<int>(edges_.size());
        edge_id.emplace(key, e);
        edges_.push_back({key.first, key.second});
        edge_tris_.push_back({t, -1});
      } else {
        e = it->second;
        if (edge_tris_[e][1] != -1) {
          throw Error("TwoRegionMesh: edge (" + std::to_string(key.first) +
                      "," + std::to_string(key.second) +
                      ") has more than two incident triangles");
        }
        edge_tris_[e][1] = t;
      }
      tri_edges_[t][i] = e;
    }
  }

  const int ne = static_cast<int>(edges_.size());
  edge_class_.resize(ne);
  edge_normal_.resize(ne);
  h_edge_.resize(ne);
  for (int e = 0; e < ne; ++e) {
    const Vec2 &a = vertices_[edges_[e][0]], &b = vertices_[edges_[e][1]];
    const Vec2 d = b - a;
    const Real len = d.norm();
    if (len <= 0.0) throw Error("TwoRegionMesh: zero-length edge");
    h_edge_[e] = len;
    Vec2 n(d.y() / len, -d.x() / len);

    const int t0 = edge_tris_[e][0], t1 = edge_tris_[e][1];
    if (t1 == -1) {
      edge_class_[e] = regions_[t0] == Region::Fluid ? EdgeClass::BoundaryFluid
                                                     : EdgeClass::BoundaryPorous;
    } else if (regions_[t0] == regions_[t1]) {
      edge_class_[e] = regions_[t0] == Region::Fluid ? EdgeClass::InteriorFluid
                                                     : EdgeClass::InteriorPorous;
    } else {
      edge_class_[e] = EdgeClass::Interface;
      // Normal points from the fluid side into the porous side.
      const int tf = regions_[t0] == Region::Fluid ? t0 : t1;
      const int tp = tf == t0 ? t1 : t0;
      const Vec2 to_porous = centroid(tp) - centroid(tf);
      if (n.dot(to_porous) < 0.0) n = -n;
    }
    edge_normal_[e] = n;

    // tris[0] is the triangle the normal points away from.
    if (t1 != -1) {
      const Vec2 mid = 0.5 * (a + b);
      if (n.dot(centroid(t0) - mid) > 0.0) std::swap(edge_tris_[e][0], edge_tris_[e][1]);
    }
  }

  h_ = 0.0;
  for (int t = 0; t < nt; ++t) h_ = std::max(h_, h_tri_[t]);

  fluid_vertices_.clear();
  porous_vertices_.clear();
  porous_edges_.clear();
  std::vector<char> fv(nv, 0), pv(nv, 0);
  for (int t = 0; t < nt; ++t) {
    auto& flag = regions_[t] == Region::Fluid ? fv : pv;
    for (int i = 0; i < 3; ++i) flag[tris_[t][i]] = 1;
  }
  for (int v = 0; v < nv; ++v) {
    if (fv[v]) fluid_vertices_.push_back(v);
    if (pv[v]) porous_vertices_.push_back(v);
  }
  for (int e = 0; e < ne; ++e) {
    const int t0 = edge_tris_[e][0], t1 = edge_tris_[e][1];
    if ((t0 >= 0 && regions_[t0] == Region::Porous) ||
        (t1 >= 0 && regions_[t1] == Region::Porous)) {
      porous_edges_.push_back(e);
    }
  }
}

Mat2 TwoRegionMesh::jacobian(int t) const {
  const Vec2 &a = vertices_[tris_[t][0]], &b = vertices_[tris_[t][1]],
             &c = vertices_[tris_[t][2]];
  Mat2 j;
  j.col(0) = b - a;
  j.col(1) = c - a;
  return j;
}

Vec2 TwoRegionMesh::centroid(int t) const {
  return (vertices_[tris_[t][0]] + vertices_[tris_[t][1]] +
          vertices_[tris_[t][2]]) / 3.0;
}

Vec2 TwoRegionMesh::point(int t, const Vec3& lambda) const {
  return lambda[0] * vertices_[tris_[t][0]] + lambda[1] * vertices_[tris_[t][1]] +
         lambda[2] * vertices_[tris_[t][2]];
}

Vec3 TwoRegionMesh::barycentric(int t, const Vec2& x) const {
  const Vec2 rel = x - vertices_[tris_[t][0]];
  const Vec2 ref = jacobian(t).inverse() * rel;
  return Vec3(1.0 - ref.x() - ref.y(), ref.x(), ref.y());
}

std::vector<int> TwoRegionMesh::edges_of_class(EdgeClass c) const {
  std::vector<int> out;
  for (int e = 0; e < n_edges(); ++e) {
    if (edge_class_[e] == c) out.push_back(e);
  }
  return out;
}

int TwoRegionMesh::count_triangles(Region r) const {
  return static_cast<int>(std::count(regions_.begin(), regions_.end(), r));
}

const std::vector<int>& TwoRegionMesh::region_vertices(Region r) const {
  return r == Region::Fluid ? fluid_vertices_ : porous_vertices_;
}

void TwoRegionMesh::validate() const {
  for (int t = 0; t < n_triangles(); ++t) {
    if (area_[t] <= 0.0) throw Error("TwoRegionMesh: nonpositive area");
  }
  for (int e = 0; e < n_edges(); ++e) {
    if (std::abs(edge_normal_[e].norm() - 1.0) > 1e-12) {
      throw Error("TwoRegionMesh: edge normal not unit");
    }
    if (edge_class_[e] == EdgeClass::Interface) {
      const int t0 = edge_tris_[e][0], t1 = edge_tris_[e][1];
      if (t0 < 0 || t1 < 0 || regions_[t0] != Region::Fluid ||
          regions_[t1] != Region::Porous) {
        throw Error("TwoRegionMesh: interface edge sides are inconsistent");
      }
    }
  }
}

TwoRegionMesh build_rectangle_benchmark(int nx, int ny) {
  if (nx < 1 || ny < 1) {
    throw Error("build_rectangle_benchmark: cell counts must be positive");
  }
  if (ny % 2 != 0) {
    throw Error("build_rectangle_benchmark: ny must be even so the interface "
                "y = 1/2 lies on a mesh line");
  }
  std::vector<Vec2> verts;
  verts.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      verts.push_back(Vec2(static_cast<Real>(i) / nx, static_cast<Real>(j) / ny));
    }
  }
  auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };

  std::vector<std::array<int, 3>> tris;
  std::vector<Region> regions;
  tris.reserve(static_cast<std::size_t>(2 * nx * ny));
  for (int j = 0; j < ny; ++j) {
    const Region r = (2 * j < ny) ? Region::Porous : Region::Fluid;
    for (int i = 0; i < nx; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j);
      const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      // Peak at the right-angle vertex; refinement edge is the diagonal.
      tris.push_back({v10, v11, v00});
      regions.push_back(r);
      tris.push_back({v01, v00, v11});
      regions.push_back(r);
    }
  }
  return TwoRegionMesh(std::move(verts), std::move(tris), std::move(regions));
}

EdgeClassification classify_edges(const TwoRegionMesh& mesh) {
  // Recomputed from the triangle list, independent of stored edge data.
  std::map<std::pair<int, int>, std::vector<int>> incident;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    for (int i = 0; i < 3; ++i) {
      incident[ukey(tri[(i + 1) % 3], tri[(i + 2) % 3])].push_back(t);
    }
  }
  for (const auto& [key, list] : incident) {
    if (list.size() > 2) {
      throw Error("classify_edges: edge (" + std::to_string(key.first) + "," +
                  std::to_string(key.second) + ") is non-conforming");
    }
  }
  EdgeClassification out;
  out.classes.resize(mesh.n_edges());
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const auto it = incident.find(ukey(mesh.edge(e)[0], mesh.edge(e)[1]));
    if (it == incident.end()) throw Error("classify_edges: unknown edge");
    const auto& list = it->second;
    EdgeClass c;
    if (list.size() == 1) {
      c = mesh.regions()[list[0]] == Region::Fluid ? EdgeClass::BoundaryFluid
                                                   : EdgeClass::BoundaryPorous;
    } else if (mesh.regions()[list[0]] == mesh.regions()[list[1]]) {
      c = mesh.regions()[list[0]] == Region::Fluid ? EdgeClass::InteriorFluid
                                                   : EdgeClass::InteriorPorous;
    } else {
      c = EdgeClass::Interface;
    }
    if (c != mesh.edge_class(e)) {
      throw Error("classify_edges: stored class disagrees for edge " +
                  std::to_string(e));
    }
    out.classes[e] = c;
    out.counts[static_cast<int>(c)]++;
  }
  return out;
}

namespace {

/// Mutable triangle soup used during newest-vertex bisection.
struct BisectWork {
  std::vector<Vec2> verts;
  std::vector<std::array<int, 3>> tris;  // peak-first
  std::vector<Region> regions;
  std::vector<char> alive;
  std::map<std::pair<int, int>, std::vector<int>> by_edge;  // alive tris
  std::map<std::pair<int, int>, int> midpoint;

  void attach(int t) {
    for (int i = 0; i < 3; ++i) {
      by_edge[ukey(tris[t][(i + 1) % 3], tris[t][(i + 2) % 3])].push_back(t);
    }
  }
  void detach(int t) {
    for (int i = 0; i < 3; ++i) {
      auto& list = by_edge[ukey(tris[t][(i + 1) % 3], tris[t][(i + 2) % 3])];
      list.erase(std::remove(list.begin(), list.end(), t), list.end());
    }
  }
  int neighbor_across(int t, int a, int b) const {
    const auto it = by_edge.find(ukey(a, b));
    if (it == by_edge.end()) return -1;
    for (const int s : it->second) {
      if (s != t) return s;
    }
    return -1;
  }
  int get_midpoint(int a, int b) {
    const auto key = ukey(a, b);
    const auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const int v = static_cast<int>(verts.size());
    verts.push_back(0.5 * (verts[a] + verts[b]));
    midpoint.emplace(key, v);
    return v;
  }
  // Splits t across its refinement edge at midpoint m; children keep the
  // parent region and get the new vertex as their peak.
  void split(int t, int m) {
    const int p = tris[t][0], a = tris[t][1], b = tris[t][2];
    detach(t);
    alive[t] = 0;
    const int c1 = static_cast<int>(tris.size());
    tris.push_back({m, p, a});
    regions.push_back(regions[t]);
    alive.push_back(1);
    attach(c1);
    const int c2 = static_cast<int>(tris.size());
    tris.push_back({m, b, p});
    regions.push_back(regions[t]);
    alive.push_back(1);
    attach(c2);
  }
  void bisect_tri(int t, int depth) {
    if (depth > 256) {
      throw Error("bisect: conforming-closure recursion did not terminate");
    }
    const int a = tris[t][1], b = tris[t][2];
    int s = neighbor_across(t, a, b);
    if (s != -1 && !(tris[s][1] == a || tris[s][1] == b ||
                     tris[s][2] == a || tris[s][2] == b)) {
      throw Error("bisect: inconsistent adjacency");
    }
    if (s != -1) {
      const bool compatible =
          ukey(tris[s][1], tris[s][2]) == ukey(a, b);
      if (!compatible) {
        bisect_tri(s, depth + 1);
        s = neighbor_across(t, a, b);
        if (s != -1 && ukey(tris[s][1], tris[s][2]) != ukey(a, b)) {
          throw Error("bisect: neighbor still incompatible after closure");
        }
      }
    }
    const int m = get_midpoint(a, b);
    split(t, m);
    if (s != -1) split(s, m);
  }
};

}  // namespace

TwoRegionMesh bisect(const TwoRegionMesh& mesh, const std::vector<int>& marked) {
  BisectWork w;
  w.verts = mesh.vertices();
  w.tris = mesh.triangles();
  w.regions = mesh.regions();
  w.alive.assign(w.tris.size(), 1);
  for (int t = 0; t < static_cast<int>(w.tris.size()); ++t) w.attach(t);

  std::vector<int> order(marked);
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  for (const int t : order) {
    if (t < 0 || t >= mesh.n_triangles()) {
      throw Error("bisect: marked triangle id out of range");
    }
    if (w.alive[t]) w.bisect_tri(t, 0);
  }

  std::vector<Vec2> verts = std::move(w.verts);
  std::vector<std::array<int, 3>> tris;
  std::vector<Region> regions;
  tris.reserve(w.tris.size());
  for (int t = 0; t < static_cast<int>(w.tris.size()); ++t) {
    if (w.alive[t]) {
      tris.push_back(w.tris[t]);
      regions.push_back(w.regions[t]);
    }
  }
  return TwoRegionMesh(std::move(verts), std::move(tris), std::move(regions));
}

}  // namespace sda
