#include "sda/norms.hpp"

#include <array>
#include <cmath>

namespace sda {

namespace {

struct GaussRule {
  std::array<Real, 5> x;  // nodes on [0,1]
  std::array<Real, 5> w;  // weights summing to 1
};

GaussRule gauss5() {
  const Real a = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
  const Real b = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
  const Real wa = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
  const Real wb = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
  GaussRule r;
  const Real xs[5] = {-b, -a, 0.0, a, b};
  const Real ws[5] = {wb, wa, 128.0 / 225.0, wa, wb};
  for (int i = 0; i < 5; ++i) {
    r.x[i] = 0.5 * (xs[i] + 1.0);
    r.w[i] = 0.5 * ws[i];
  }
  return r;
}

// 25-point collapsed tensor rule on the reference triangle, exact for total
// degree 8; suffices for products of the shipped closed-form fields and is
// well inside quadrature-roundoff for analytic ones
struct TriRule {
  std::array<Vec3, 25> lambda;
  std::array<Real, 25> weight;  // sums to 1/2
};

const TriRule& tri_rule() {
  static const TriRule rule = [] {
    const GaussRule g = gauss5();
    TriRule r;
    int k = 0;
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        const Real xi = g.x[i];
        const Real eta = g.x[j];
        const Real x = xi;
        const Real y = eta * (1.0 - xi);
        r.lambda[k] = Vec3(1.0 - x - y, x, y);
        r.weight[k] = g.w[i] * g.w[j] * (1.0 - xi);
        ++k;
      }
    }
    return r;
  }();
  return rule;
}

}  // namespace

FieldBundle bundle_of(const DiscreteSolution& sol) {
  FieldBundle b;
  const DiscreteSolution* s = &sol;
  auto bary = [s](int t, const Vec2& x) { return s->mesh().barycentric(t, x); };
  b.u_f = [s, bary](int t, const Vec2& x) { return s->uf_value(t, bary(t, x)); };
  b.grad_u_f = [s, bary](int t, const Vec2& x) { return s->uf_gradient(t, bary(t, x)); };
  b.p = [s, bary](int t, const Vec2& x) { return s->p_value(t, bary(t, x)); };
  b.u_p = [s, bary](int t, const Vec2& x) { return s->up_value(t, bary(t, x)); };
  b.div_u_p = [s](int t, const Vec2&) { return s->up_divergence(t); };
  b.phi = [s, bary](int t, const Vec2& x) { return s->phi_value(t, bary(t, x)); };
  return b;
}

FieldBundle bundle_difference(const FieldBundle& a, const FieldBundle& b) {
  FieldBundle d;
  d.u_f = [a = a.u_f, b = b.u_f](int t, const Vec2& x) -> Vec2 { return a(t, x) - b(t, x); };
  d.grad_u_f = [a = a.grad_u_f, b = b.grad_u_f](int t, const Vec2& x) -> Mat2 { return a(t, x) - b(t, x); };
  d.p = [a = a.p, b = b.p](int t, const Vec2& x) { return a(t, x) - b(t, x); };
  d.u_p = [a = a.u_p, b = b.u_p](int t, const Vec2& x) -> Vec2 { return a(t, x) - b(t, x); };
  d.div_u_p = [a = a.div_u_p, b = b.div_u_p](int t, const Vec2& x) { return a(t, x) - b(t, x); };
  d.phi = [a = a.phi, b = b.phi](int t, const Vec2& x) { return a(t, x) - b(t, x); };
  return d;
}

HNorm compute_h_norm(const TwoRegionMesh& mesh, const FieldBundle& v) {
  HNorm out;
  const TriRule& rule = tri_rule();

  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const Real scale = 2.0 * mesh.area(t);
    if (mesh.regions()[t] == Region::Fluid) {
      for (int q = 0; q < 25; ++q) {
        const Vec2 x = mesh.point(t, rule.lambda[q]);
        const Real w = scale * rule.weight[q];
        out.uf_h1_sq += w * (v.u_f(t, x).squaredNorm() + v.grad_u_f(t, x).squaredNorm());
        const Real pv = v.p(t, x);
        out.p_l2_sq += w * pv * pv;
      }
    } else {
      for (int q = 0; q < 25; ++q) {
        const Vec2 x = mesh.point(t, rule.lambda[q]);
        const Real w = scale * rule.weight[q];
        const Real dv = v.div_u_p(t, x);
        const Real ph = v.phi(t, x);
        out.up_div_sq += w * (v.u_p(t, x).squaredNorm() + dv * dv);
        out.phi_l2_sq += w * ph * ph;
      }
    }
  }

  const GaussRule g = gauss5();
  for (int e : mesh.edges_of_class(EdgeClass::Interface)) {
    const auto& ev = mesh.edge(e);
    const Vec2 a = mesh.vertices()[ev[0]];
    const Vec2 b = mesh.vertices()[ev[1]];
    const Vec2 n = mesh.edge_normal(e);
    const int tf = mesh.edge_tris(e)[0];
    const int tp = mesh.edge_tris(e)[1];
    const Real len = mesh.h_edge(e);
    for (int q = 0; q < 5; ++q) {
      const Vec2 x = a + g.x[q] * (b - a);
      const Real jump = (v.u_f(tf, x) - v.u_p(tp, x)).dot(n);
      out.jump_sq += len * g.w[q] * jump * jump;
    }
  }
  out.jump_sq /= mesh.h();
  return out;
}

}  // namespace sda
