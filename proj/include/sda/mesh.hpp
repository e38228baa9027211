#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sda/types.hpp"

namespace sda {

enum class Region : std::uint8_t { Fluid = 0, Porous = 1 };

enum class EdgeClass : std::uint8_t {
  InteriorFluid = 0,
  InteriorPorous = 1,
  Interface = 2,
  BoundaryFluid = 3,   // outer fluid boundary (Dirichlet for u_f)
  BoundaryPorous = 4,  // outer porous boundary (zero normal flux for u_p)
};

/// Conforming two-region triangulation, immutable after construction.
///
/// Triangles are stored counter-clockwise with the newest vertex first, so
/// the refinement edge of triangle (v0,v1,v2) is (v1,v2). Edge normals follow
/// the global rule lower vertex index -> higher vertex index (rotated by -90
/// degrees), overridden on interface edges to point from the fluid side into
/// the porous side.
class TwoRegionMesh {
 public:
  TwoRegionMesh(std::vector<Vec2> vertices,
                std::vector<std::array<int, 3>> triangles,
                std::vector<Region> regions);

  // geometry
  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return tris_; }
  const std::vector<Region>& regions() const { return regions_; }
  int n_vertices() const { return static_cast<int>(vertices_.size()); }
  int n_triangles() const { return static_cast<int>(tris_.size()); }

  Real area(int t) const { return area_[t]; }
  Real h_tri(int t) const { return h_tri_[t]; }
  /// Diameter of the inscribed circle, for shape-regularity checks.
  Real inball_diameter(int t) const { return inball_[t]; }
  /// Jacobian of the affine map from the reference triangle.
  Mat2 jacobian(int t) const;
  Vec2 centroid(int t) const;
  /// Physical point of a barycentric point in triangle t.
  Vec2 point(int t, const Vec3& lambda) const;
  /// Barycentric coordinates of a physical point relative to triangle t.
  Vec3 barycentric(int t, const Vec2& x) const;

  // edges
  int n_edges() const { return static_cast<int>(edges_.size()); }
  const std::array<int, 2>& edge(int e) const { return edges_[e]; }
  EdgeClass edge_class(int e) const { return edge_class_[e]; }
  const Vec2& edge_normal(int e) const { return edge_normal_[e]; }
  Real h_edge(int e) const { return h_edge_[e]; }
  /// Incident triangles; tris[0] is the side the normal points away from
  /// (the fluid side on interface edges), tris[1] is -1 on the boundary.
  const std::array<int, 2>& edge_tris(int e) const { return edge_tris_[e]; }
  /// Edge ids of triangle t; entry i is the edge opposite local vertex i.
  const std::array<int, 3>& tri_edges(int t) const { return tri_edges_[t]; }

  /// Global mesh size max_K h_K.
  Real h() const { return h_; }

  std::vector<int> edges_of_class(EdgeClass c) const;
  int count_triangles(Region r) const;

  /// Vertex ids incident to at least one triangle of the region, ascending.
  const std::vector<int>& region_vertices(Region r) const;
  /// Edge ids incident to at least one porous triangle, ascending.
  const std::vector<int>& porous_edges() const { return porous_edges_; }

  /// Cheap internal consistency checks; throws on violation.
  void validate() const;

 private:
  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> tris_;
  std::vector<Region> regions_;

  std::vector<Real> area_, h_tri_, inball_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<EdgeClass> edge_class_;
  std::vector<Vec2> edge_normal_;
  std::vector<Real> h_edge_;
  std::vector<std::array<int, 2>> edge_tris_;
  std::vector<std::array<int, 3>> tri_edges_;
  std::vector<int> fluid_vertices_, porous_vertices_, porous_edges_;
  Real h_ = 0.0;

  void finalize();
};

/// Structured benchmark mesh of [0,1]^2 with the interface at y = 1/2,
/// fluid above and porous below; nx-by-ny cells, each split along the
/// cell diagonal so every triangle's refinement edge is its hypotenuse.
/// Requires nx >= 1 and even ny >= 2 so the interface lies on a mesh line.
TwoRegionMesh build_rectangle_benchmark(int nx, int ny);

/// Edge classification summary, recomputed from scratch for validation.
struct EdgeClassification {
  std::vector<EdgeClass> classes;  // by edge id
  std::array<int, 5> counts{};     // by EdgeClass value
};
EdgeClassification classify_edges(const TwoRegionMesh& mesh);

/// Newest-vertex bisection of the marked triangles plus conforming closure.
/// Marked ids refer to triangles of `mesh`; an empty set returns a copy.
TwoRegionMesh bisect(const TwoRegionMesh& mesh, const std::vector<int>& marked);

}  // namespace sda
