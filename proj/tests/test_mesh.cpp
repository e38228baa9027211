#include <algorithm>
#include <cmath>
#include <set>

#include <doctest.h>

#include "sda/mesh.hpp"
#include "sda/types.hpp"

using namespace sda;

namespace {

Real min_angle(const TwoRegionMesh& mesh, int t) {
  const auto& tri = mesh.triangles()[t];
  Real best = 4.0;
  for (int i = 0; i < 3; ++i) {
    const Vec2& a = mesh.vertices()[tri[i]];
    const Vec2& b = mesh.vertices()[tri[(i + 1) % 3]];
    const Vec2& c = mesh.vertices()[tri[(i + 2) % 3]];
    const Vec2 u = (b - a).normalized(), v = (c - a).normalized();
    best = std::min(best, std::acos(std::clamp(u.dot(v), -1.0, 1.0)));
  }
  return best;
}

Real total_area(const TwoRegionMesh& mesh, Region r) {
  Real sum = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    if (mesh.regions()[t] == r) sum += mesh.area(t);
  }
  return sum;
}

int count_class(const TwoRegionMesh& mesh, EdgeClass c) {
  int n = 0;
  for (int e = 0; e < mesh.n_edges(); ++e) {
    if (mesh.edge_class(e) == c) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("1x2 benchmark matches the hand enumeration") {
  const TwoRegionMesh mesh = build_rectangle_benchmark(1, 2);
  CHECK(mesh.n_vertices() == 6);
  CHECK(mesh.n_triangles() == 4);
  CHECK(mesh.n_edges() == 9);
  CHECK(mesh.count_triangles(Region::Porous) == 2);
  CHECK(mesh.count_triangles(Region::Fluid) == 2);
  CHECK(count_class(mesh, EdgeClass::BoundaryPorous) == 3);
  CHECK(count_class(mesh, EdgeClass::BoundaryFluid) == 3);
  CHECK(count_class(mesh, EdgeClass::Interface) == 1);
  CHECK(count_class(mesh, EdgeClass::InteriorPorous) == 1);
  CHECK(count_class(mesh, EdgeClass::InteriorFluid) == 1);
  CHECK(total_area(mesh, Region::Porous) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(total_area(mesh, Region::Fluid) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mesh.porous_edges().size() == 5);
  mesh.validate();
}

TEST_CASE("4x4 benchmark geometry") {
  const TwoRegionMesh mesh = build_rectangle_benchmark(4, 4);
  CHECK(mesh.n_vertices() == 25);
  CHECK(mesh.n_triangles() == 32);
  CHECK(mesh.n_edges() == 56);
  CHECK(mesh.h() == doctest::Approx(std::sqrt(2.0) / 4.0).epsilon(1e-15));

  // 16 outer-hull edges, each one-sided and on the unit-square boundary
  int boundary = 0;
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const EdgeClass c = mesh.edge_class(e);
    if (c != EdgeClass::BoundaryFluid && c != EdgeClass::BoundaryPorous) continue;
    ++boundary;
    CHECK(mesh.edge_tris(e)[1] == -1);
    for (int k = 0; k < 2; ++k) {
      const Vec2& x = mesh.vertices()[mesh.edge(e)[k]];
      const bool on_hull = x.x() == 0.0 || x.x() == 1.0 || x.y() == 0.0 ||
                           x.y() == 1.0;
      CHECK(on_hull);
    }
  }
  CHECK(boundary == 16);

  CHECK(count_class(mesh, EdgeClass::Interface) == 4);
  for (int e : mesh.edges_of_class(EdgeClass::Interface)) {
    CHECK(mesh.vertices()[mesh.edge(e)[0]].y() == doctest::Approx(0.5));
    CHECK(mesh.vertices()[mesh.edge(e)[1]].y() == doctest::Approx(0.5));
    // normal points from the fluid side (above) into the porous side (below)
    CHECK(mesh.edge_normal(e).x() == doctest::Approx(0.0));
    CHECK(mesh.edge_normal(e).y() == doctest::Approx(-1.0));
    CHECK(mesh.regions()[mesh.edge_tris(e)[0]] == Region::Fluid);
    CHECK(mesh.regions()[mesh.edge_tris(e)[1]] == Region::Porous);
  }

  // regions follow the triangle centroid
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const bool porous = mesh.centroid(t).y() < 0.5;
    CHECK((mesh.regions()[t] == Region::Porous) == porous);
  }
  mesh.validate();
}

TEST_CASE("benchmark rejects sizes that miss the interface") {
  CHECK_THROWS_AS(build_rectangle_benchmark(3, 3), Error);
  CHECK_THROWS_AS(build_rectangle_benchmark(0, 2), Error);
  CHECK_NOTHROW(build_rectangle_benchmark(3, 2));
}

TEST_CASE("edge sides: stored normal points away from tris[0]") {
  const TwoRegionMesh mesh = build_rectangle_benchmark(4, 2);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const Vec2& a = mesh.vertices()[mesh.edge(e)[0]];
    const Vec2& b = mesh.vertices()[mesh.edge(e)[1]];
    const Vec2 mid = 0.5 * (a + b);
    const int t0 = mesh.edge_tris(e)[0];
    if (mesh.edge_tris(e)[1] != -1) {
      CHECK(mesh.edge_normal(e).dot(mesh.centroid(t0) - mid) < 0.0);
    }
    CHECK(std::abs(mesh.edge_normal(e).norm() - 1.0) <= 1e-14);
    CHECK(mesh.h_edge(e) == doctest::Approx((b - a).norm()).epsilon(1e-15));
  }
}

TEST_CASE("barycentric coordinates invert the point map") {
  const TwoRegionMesh mesh = build_rectangle_benchmark(2, 2);
  const Vec3 l(0.2, 0.5, 0.3);
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const Vec2 x = mesh.point(t, l);
    const Vec3 back = mesh.barycentric(t, x);
    CHECK((back - l).norm() <= 1e-14);
  }
}

TEST_CASE("classify_edges agrees with the stored classes") {
  const TwoRegionMesh mesh = build_rectangle_benchmark(4, 4);
  const EdgeClassification ec = classify_edges(mesh);
  CHECK(ec.classes.size() == static_cast<std::size_t>(mesh.n_edges()));
  CHECK(ec.counts[static_cast<int>(EdgeClass::Interface)] == 4);

  const TwoRegionMesh fine = bisect(mesh, {0, 3, 7, 12, 30});
  classify_edges(fine);  // throws on any disagreement
}

TEST_CASE("uniform bisection doubles the triangles and preserves structure") {
  TwoRegionMesh mesh = build_rectangle_benchmark(2, 2);
  Real h_prev = mesh.h();
  for (int round = 0; round < 3; ++round) {
    std::vector<int> all(mesh.n_triangles());
    for (int t = 0; t < mesh.n_triangles(); ++t) all[t] = t;
    const int before = mesh.n_triangles();
    mesh = bisect(mesh, all);
    CHECK(mesh.n_triangles() == 2 * before);
    CHECK(mesh.h() == doctest::Approx(h_prev / std::sqrt(2.0)).epsilon(1e-13));
    h_prev = mesh.h();
    mesh.validate();
    classify_edges(mesh);
    CHECK(total_area(mesh, Region::Porous) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(total_area(mesh, Region::Fluid) == doctest::Approx(0.5).epsilon(1e-13));
    for (int t = 0; t < mesh.n_triangles(); ++t) {
      CHECK(min_angle(mesh, t) >= M_PI / 4.0 - 1e-12);
    }
  }
}

TEST_CASE("local bisection stays conforming through closure") {
  TwoRegionMesh mesh = build_rectangle_benchmark(4, 4);
  mesh = bisect(mesh, {5});
  mesh.validate();
  classify_edges(mesh);
  mesh = bisect(mesh, {mesh.n_triangles() - 1, 0, 2});
  mesh.validate();
  classify_edges(mesh);
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    CHECK(min_angle(mesh, t) >= M_PI / 4.0 - 1e-12);
  }
  CHECK(total_area(mesh, Region::Porous) + total_area(mesh, Region::Fluid) ==
        doctest::Approx(1.0).epsilon(1e-13));

  CHECK_THROWS_AS(bisect(mesh, {-1}), Error);
  CHECK_THROWS_AS(bisect(mesh, {mesh.n_triangles()}), Error);
}

TEST_CASE("constructor rejects broken inputs") {
  const std::vector<Vec2> verts = {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};
  // clockwise orientation
  CHECK_THROWS_AS(TwoRegionMesh(verts, {{0, 2, 1}}, {Region::Fluid}), Error);
  // vertex index out of range
  CHECK_THROWS_AS(TwoRegionMesh(verts, {{0, 1, 3}}, {Region::Fluid}), Error);
  // region list size mismatch
  CHECK_THROWS_AS(TwoRegionMesh(verts, {{0, 1, 2}}, {}), Error);
}
