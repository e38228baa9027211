#include "sda/quadrature.hpp"

#include <cmath>

namespace sda {
namespace {

void push_orbit3(QuadratureRule& r, Real a, Real w) {
  const Real b = 1.0 - 2.0 * a;
  r.tri_points.push_back(Vec3(b, a, a));
  r.tri_points.push_back(Vec3(a, b, a));
  r.tri_points.push_back(Vec3(a, a, b));
  r.weights.insert(r.weights.end(), 3, w);
}

void push_orbit6(QuadratureRule& r, Real a, Real b, Real w) {
  const Real c = 1.0 - a - b;
  r.tri_points.push_back(Vec3(a, b, c));
  r.tri_points.push_back(Vec3(a, c, b));
  r.tri_points.push_back(Vec3(b, a, c));
  r.tri_points.push_back(Vec3(b, c, a));
  r.tri_points.push_back(Vec3(c, a, b));
  r.tri_points.push_back(Vec3(c, b, a));
  r.weights.insert(r.weights.end(), 6, w);
}

QuadratureRule triangle_rule(int degree) {
  QuadratureRule r;
  r.kind = QuadKind::Triangle;
  r.degree = degree;
  switch (degree) {
    case 1:
      r.tri_points.push_back(Vec3(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0));
      r.weights.push_back(1.0);
      break;
    case 2:
      push_orbit3(r, 1.0 / 6.0, 1.0 / 3.0);
      break;
    case 3:
    case 4:
      push_orbit3(r, 0.44594849091596488631832925388305199,
                  0.22338158967801146569500700843312280);
      push_orbit3(r, 0.09157621350977074345957146340220151,
                  0.10995174365532186763832632490021053);
      break;
    case 5: {
      const Real s15 = std::sqrt(15.0);
      r.tri_points.push_back(Vec3(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0));
      r.weights.push_back(9.0 / 40.0);
      push_orbit3(r, (6.0 + s15) / 21.0, (155.0 + s15) / 1200.0);
      push_orbit3(r, (6.0 - s15) / 21.0, (155.0 - s15) / 1200.0);
      break;
    }
    case 6:
      push_orbit3(r, 0.24928674517091042129163855310701908,
                  0.11678627572637936602528961138557944);
      push_orbit3(r, 0.06308901449150222834033160287081916,
                  0.05084490637020681692093680910686898);
      push_orbit6(r, 0.31035245103378440541660773395655215,
                  0.63650249912139864723014259441204970,
                  0.08285107561837357519355345642044245);
      break;
    default:
      throw Error("make_quadrature: unsupported triangle degree " +
                  std::to_string(degree) + " (supported: 1..6)");
  }
  // Stored weights sum to the reference measure 1/2.
  for (Real& w : r.weights) w *= 0.5;
  return r;
}

QuadratureRule edge_rule(int degree) {
  if (degree < 1 || degree > 6) {
    throw Error("make_quadrature: unsupported edge degree " +
                std::to_string(degree) + " (supported: 1..6)");
  }
  QuadratureRule r;
  r.kind = QuadKind::Edge;
  r.degree = degree;
  const int n = degree / 2 + 1;  // n-point Gauss is exact to degree 2n-1
  switch (n) {
    case 1:
      r.edge_points = {0.5};
      r.weights = {1.0};
      break;
    case 2: {
      const Real d = 0.5 / std::sqrt(3.0);
      r.edge_points = {0.5 - d, 0.5 + d};
      r.weights = {0.5, 0.5};
      break;
    }
    case 3: {
      const Real d = 0.5 * std::sqrt(3.0 / 5.0);
      r.edge_points = {0.5 - d, 0.5, 0.5 + d};
      r.weights = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
      break;
    }
    case 4: {
      const Real a = 0.5 * 0.33998104358485626480266575910324149;
      const Real b = 0.5 * 0.86113631159405257522394648889280951;
      const Real wa = 0.5 * 0.65214515486254614262693605077800059;
      const Real wb = 0.5 * 0.34785484513745385737306394922199941;
      r.edge_points = {0.5 - b, 0.5 - a, 0.5 + a, 0.5 + b};
      r.weights = {wb, wa, wa, wb};
      break;
    }
    default:
      throw Error("make_quadrature: internal edge rule selection failure");
  }
  return r;
}

}  // namespace

QuadratureRule make_quadrature(QuadKind kind, int degree) {
  return kind == QuadKind::Triangle ? triangle_rule(degree) : edge_rule(degree);
}

Real monomial_integral(int a, int b, int c, Real area) {
  if (a < 0 || b < 0 || c < 0) throw Error("monomial_integral: negative exponent");
  // a! b! c! * 2 |K| / (a+b+c+2)!
  Real num = 1.0;
  for (int i = 2; i <= a; ++i) num *= i;
  for (int i = 2; i <= b; ++i) num *= i;
  for (int i = 2; i <= c; ++i) num *= i;
  Real den = 1.0;
  for (int i = 2; i <= a + b + c + 2; ++i) den *= i;
  return num * 2.0 * area / den;
}

}  // namespace sda
