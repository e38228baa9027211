#include <cmath>

#include <doctest.h>

#include "sda/dof_layout.hpp"
#include "sda/mesh.hpp"
#include "sda/solution.hpp"

using namespace sda;

namespace {

struct Fixture {
  TwoRegionMesh mesh;
  DofLayout layout;
  explicit Fixture(int n) : mesh(build_rectangle_benchmark(n, n)), layout(mesh) {}
};

const Vec3 kCenter(1.0 / 3, 1.0 / 3, 1.0 / 3);

}  // namespace

TEST_CASE("interpolation reproduces fields the spaces contain") {
  Fixture f(2);
  auto u_f = [](const Vec2&) { return Vec2(3.0, -2.0); };
  auto p = [](const Vec2& x) { return 2.0 * x.x() - x.y() + 0.25; };
  auto u_p = [](const Vec2& x) {
    return Vec2(x.x() + 2.0 * x.y(), 3.0 * x.x() + 4.0 * x.y());
  };
  auto phi = [](const Vec2& x) { return 1.0 + x.x() - 2.0 * x.y(); };
  const VectorX coef = interpolate_fields(f.mesh, f.layout, u_f, p, u_p, phi);
  const DiscreteSolution sol(f.mesh, f.layout, coef);

  const Vec3 probes[] = {kCenter, Vec3(0.6, 0.1, 0.3), Vec3(0.2, 0.7, 0.1)};
  for (int t = 0; t < f.mesh.n_triangles(); ++t) {
    for (const Vec3& l : probes) {
      const Vec2 x = f.mesh.point(t, l);
      if (f.mesh.regions()[t] == Region::Fluid) {
        CHECK((sol.uf_value(t, l) - u_f(x)).norm() <= 1e-13);
        CHECK(sol.uf_gradient(t, l).norm() <= 1e-13);
        CHECK(sol.uf_divergence(t, l) == doctest::Approx(0.0).epsilon(1e-13));
        CHECK(sol.p_value(t, l) == doctest::Approx(p(x)).epsilon(1e-13));
        CHECK((sol.p_gradient(t) - Vec2(2.0, -1.0)).norm() <= 1e-13);
      } else {
        CHECK((sol.up_value(t, l) - u_p(x)).norm() <= 1e-12);
        Mat2 g;
        g << 1.0, 2.0, 3.0, 4.0;
        CHECK((sol.up_gradient(t) - g).norm() <= 1e-12);
        CHECK(sol.up_divergence(t) == doctest::Approx(5.0).epsilon(1e-12));
        CHECK(sol.phi_value(t, l) == doctest::Approx(phi(x)).epsilon(1e-13));
        CHECK((sol.phi_gradient(t) - Vec2(1.0, -2.0)).norm() <= 1e-13);
      }
    }
  }
}

TEST_CASE("BDM1 interpolant has a continuous normal trace") {
  Fixture f(4);
  auto u_p = [](const Vec2& x) {
    return Vec2(std::sin(3.0 * x.x()) + x.y() * x.y(),
                std::cos(2.0 * x.y()) - x.x() * x.x() * x.y());
  };
  auto zero_s = [](const Vec2&) { return 0.0; };
  auto zero_v = [](const Vec2&) { return Vec2::Zero(); };
  const VectorX coef = interpolate_fields(f.mesh, f.layout, zero_v, zero_s, u_p, zero_s);
  const DiscreteSolution sol(f.mesh, f.layout, coef);

  for (int e = 0; e < f.mesh.n_edges(); ++e) {
    if (f.mesh.edge_class(e) != EdgeClass::InteriorPorous) continue;
    const Vec2& a = f.mesh.vertices()[f.mesh.edge(e)[0]];
    const Vec2& b = f.mesh.vertices()[f.mesh.edge(e)[1]];
    const Vec2 n = f.mesh.edge_normal(e);
    for (Real s : {0.15, 0.5, 0.85}) {
      const Vec2 x = a + s * (b - a);
      const int t0 = f.mesh.edge_tris(e)[0], t1 = f.mesh.edge_tris(e)[1];
      const Real left = sol.up_value(t0, f.mesh.barycentric(t0, x)).dot(n);
      const Real right = sol.up_value(t1, f.mesh.barycentric(t1, x)).dot(n);
      CHECK(left == doctest::Approx(right).epsilon(1e-12));
    }
  }
}

TEST_CASE("single-moment coefficients reproduce the closed-form edge traces") {
  Fixture f(2);
  for (int e : f.mesh.porous_edges()) {
    const int t = f.mesh.regions()[f.mesh.edge_tris(e)[0]] == Region::Porous
                      ? f.mesh.edge_tris(e)[0]
                      : f.mesh.edge_tris(e)[1];
    REQUIRE(t >= 0);
    const Vec2& a = f.mesh.vertices()[f.mesh.edge(e)[0]];
    const Vec2& b = f.mesh.vertices()[f.mesh.edge(e)[1]];
    const Vec2 n = f.mesh.edge_normal(e);
    const Real len = f.mesh.h_edge(e);

    for (int m = 0; m < 2; ++m) {
      VectorX coef = VectorX::Zero(f.layout.n_total());
      coef[f.layout.up_dof(e, m)] = 1.0;
      const DiscreteSolution sol(f.mesh, f.layout, coef);
      for (Real s : {0.1, 0.4, 0.9}) {
        const Vec2 x = a + s * (b - a);
        const Real trace = sol.up_value(t, f.mesh.barycentric(t, x)).dot(n);
        const Real tpar = 2.0 * s - 1.0;  // ascending-id direction
        const Real expected = m == 0 ? 1.0 / len : 3.0 * tpar / len;
        CHECK(trace == doctest::Approx(expected).epsilon(1e-12));
      }
      // zero normal trace on the triangle's other edges
      for (int le = 0; le < 3; ++le) {
        const int other = f.mesh.tri_edges(t)[le];
        if (other == e) continue;
        const Vec2& oa = f.mesh.vertices()[f.mesh.edge(other)[0]];
        const Vec2& ob = f.mesh.vertices()[f.mesh.edge(other)[1]];
        const Vec2 on = f.mesh.edge_normal(other);
        const Vec2 x = oa + 0.37 * (ob - oa);
        CHECK(sol.up_value(t, f.mesh.barycentric(t, x)).dot(on) ==
              doctest::Approx(0.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("bubble enrichment carries the second derivatives") {
  Fixture f(2);
  // locate a fluid triangle and put a unit bubble on its x component
  int t = -1;
  for (int i = 0; i < f.mesh.n_triangles(); ++i) {
    if (f.mesh.regions()[i] == Region::Fluid) {
      t = i;
      break;
    }
  }
  REQUIRE(t >= 0);
  VectorX coef = VectorX::Zero(f.layout.n_total());
  coef[f.layout.uf_bubble_dof(t, 0)] = 1.0;
  const DiscreteSolution sol(f.mesh, f.layout, coef);

  auto bubble = [&](const Vec2& x) {
    const Vec3 l = f.mesh.barycentric(t, x);
    return 27.0 * l[0] * l[1] * l[2];
  };
  const Vec2 x0 = f.mesh.point(t, Vec3(0.3, 0.4, 0.3));
  CHECK(sol.uf_value(t, f.mesh.barycentric(t, x0)).x() ==
        doctest::Approx(bubble(x0)).epsilon(1e-13));

  // div D(u) for u = (b, 0) is (b_xx + b_yy/2, b_xy/2)
  const Real h = 1e-5;
  auto bxx = (bubble(x0 + Vec2(h, 0)) - 2 * bubble(x0) + bubble(x0 - Vec2(h, 0))) / (h * h);
  auto byy = (bubble(x0 + Vec2(0, h)) - 2 * bubble(x0) + bubble(x0 - Vec2(0, h))) / (h * h);
  auto bxy = (bubble(x0 + Vec2(h, h)) - bubble(x0 + Vec2(h, -h)) -
              bubble(x0 + Vec2(-h, h)) + bubble(x0 + Vec2(-h, -h))) /
             (4 * h * h);
  const Vec2 dd = sol.uf_div_sym_gradient(t, f.mesh.barycentric(t, x0));
  CHECK(dd.x() == doctest::Approx(bxx + 0.5 * byy).epsilon(1e-4));
  CHECK(dd.y() == doctest::Approx(0.5 * bxy).epsilon(1e-4));
}

TEST_CASE("cross-region evaluation is rejected") {
  Fixture f(2);
  int fluid = -1, porous = -1;
  for (int t = 0; t < f.mesh.n_triangles(); ++t) {
    (f.mesh.regions()[t] == Region::Fluid ? fluid : porous) = t;
  }
  const DiscreteSolution sol(f.mesh, f.layout, VectorX::Zero(f.layout.n_total()));
  CHECK_THROWS_AS(sol.uf_value(porous, kCenter), Error);
  CHECK_THROWS_AS(sol.p_value(porous, kCenter), Error);
  CHECK_THROWS_AS(sol.up_value(fluid, kCenter), Error);
  CHECK_THROWS_AS(sol.phi_value(fluid, kCenter), Error);
}

TEST_CASE("edge moments of an analytic field match direct integration") {
  Fixture f(2);
  auto v = [](const Vec2& x) { return Vec2(x.x() * x.y(), x.x() - x.y()); };
  // BDM1 moments of the interpolant equal the moments of the field
  auto zero_s = [](const Vec2&) { return 0.0; };
  auto zero_v = [](const Vec2&) { return Vec2::Zero(); };
  const VectorX coef = interpolate_fields(f.mesh, f.layout, zero_v, zero_s, v, zero_s);
  for (int e : f.mesh.porous_edges()) {
    const auto m = bdm1_edge_moments(f.mesh, e, v);
    CHECK(coef[f.layout.up_dof(e, 0)] == doctest::Approx(m[0]).epsilon(1e-14));
    CHECK(coef[f.layout.up_dof(e, 1)] == doctest::Approx(m[1]).epsilon(1e-14));
  }
}
