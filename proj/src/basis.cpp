#include "sda/basis.hpp"

#include <cmath>

namespace sda {

void require_inside_reference(const Vec3& lambda, Real tol) {
  const Real sum = lambda.sum();
  if (std::abs(sum - 1.0) > tol || lambda.minCoeff() < -tol ||
      lambda.maxCoeff() > 1.0 + tol) {
    throw Error("basis: point outside reference triangle");
  }
}

std::array<Real, 3> p1_values(const Vec3& lambda) {
  require_inside_reference(lambda);
  return {lambda[0], lambda[1], lambda[2]};
}

std::array<Vec2, 3> p1_ref_gradients() {
  return {Vec2(-1.0, -1.0), Vec2(1.0, 0.0), Vec2(0.0, 1.0)};
}

Real bubble_value(const Vec3& lambda) {
  require_inside_reference(lambda);
  return 27.0 * lambda[0] * lambda[1] * lambda[2];
}

Vec2 bubble_ref_gradient(const Vec3& lambda) {
  require_inside_reference(lambda);
  const Real x = lambda[1], y = lambda[2];
  return Vec2(27.0 * (y - 2.0 * x * y - y * y),
              27.0 * (x - x * x - 2.0 * x * y));
}

Mat2 bubble_ref_hessian(const Vec3& lambda) {
  require_inside_reference(lambda);
  const Real x = lambda[1], y = lambda[2];
  Mat2 h;
  h(0, 0) = -54.0 * y;
  h(1, 1) = -54.0 * x;
  h(0, 1) = h(1, 0) = 27.0 * (1.0 - 2.0 * x - 2.0 * y);
  return h;
}

const Bdm1Reference& Bdm1Reference::instance() {
  static const Bdm1Reference ref;
  return ref;
}

Bdm1Reference::Bdm1Reference() {
  const Vec2 verts[3] = {Vec2(0.0, 0.0), Vec2(1.0, 0.0), Vec2(0.0, 1.0)};
  // Monomial fields (1,0),(x,0),(y,0),(0,1),(0,x),(0,y).
  auto mono = [](int j, const Vec2& p) -> Vec2 {
    switch (j) {
      case 0: return Vec2(1.0, 0.0);
      case 1: return Vec2(p.x(), 0.0);
      case 2: return Vec2(p.y(), 0.0);
      case 3: return Vec2(0.0, 1.0);
      case 4: return Vec2(0.0, p.x());
      default: return Vec2(0.0, p.y());
    }
  };
  // Two-point Gauss on [-1,1], exact for the quadratic moment integrands.
  const Real gp = 1.0 / std::sqrt(3.0);
  const Real gt[2] = {-gp, gp};

  Eigen::Matrix<Real, 6, 6> dof_of_mono;
  for (int e = 0; e < 3; ++e) {
    const Vec2 a = verts[(e + 1) % 3];
    const Vec2 b = verts[(e + 2) % 3];
    const Vec2 d = b - a;
    const Real len = d.norm();
    const Vec2 n(d.y() / len, -d.x() / len);
    for (int m = 0; m < 2; ++m) {
      for (int j = 0; j < 6; ++j) {
        Real acc = 0.0;
        for (const Real t : gt) {
          const Vec2 p = 0.5 * (a + b) + 0.5 * t * d;
          const Real vn = mono(j, p).dot(n);
          acc += (m == 0 ? vn : vn * t);
        }
        dof_of_mono(2 * e + m, j) = acc * (len / 2.0);
      }
    }
  }
  coeff_ = dof_of_mono.inverse();
}

Vec2 Bdm1Reference::value(int k, const Vec3& lambda) const {
  if (k < 0 || k > 5) throw Error("Bdm1Reference: basis index out of range");
  require_inside_reference(lambda);
  const Real x = lambda[1], y = lambda[2];
  return Vec2(coeff_(0, k) + coeff_(1, k) * x + coeff_(2, k) * y,
              coeff_(3, k) + coeff_(4, k) * x + coeff_(5, k) * y);
}

Real Bdm1Reference::divergence(int k) const {
  if (k < 0 || k > 5) throw Error("Bdm1Reference: basis index out of range");
  return coeff_(1, k) + coeff_(5, k);
}

Mat2 Bdm1Reference::gradient(int k) const {
  if (k < 0 || k > 5) throw Error("Bdm1Reference: basis index out of range");
  Mat2 g;
  g(0, 0) = coeff_(1, k);
  g(0, 1) = coeff_(2, k);
  g(1, 0) = coeff_(4, k);
  g(1, 1) = coeff_(5, k);
  return g;
}

}  // namespace sda
