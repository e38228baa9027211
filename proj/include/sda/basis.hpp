#pragma once

#include <array>

#include "sda/types.hpp"

namespace sda {

// Reference triangle: V0 = (0,0), V1 = (1,0), V2 = (0,1).
// Barycentric coordinates l0 = 1-x-y, l1 = x, l2 = y.
// Reference edge i connects V_{i+1} -> V_{i+2} (indices mod 3), so edge i is
// opposite vertex i; for counter-clockwise triangles the outward normal along
// an edge with direction d is (d.y, -d.x)/|d|.

/// Throws unless the barycentric point lies inside the reference triangle.
void require_inside_reference(const Vec3& lambda, Real tol = 1e-12);

/// P1 nodal values at a barycentric point (identical to the coordinates).
std::array<Real, 3> p1_values(const Vec3& lambda);

/// Constant P1 gradients with respect to reference coordinates.
std::array<Vec2, 3> p1_ref_gradients();

/// Cubic bubble 27 l0 l1 l2: value 1 at the barycenter, 0 on the boundary.
Real bubble_value(const Vec3& lambda);

/// Bubble gradient with respect to reference coordinates (x,y) = (l1,l2).
Vec2 bubble_ref_gradient(const Vec3& lambda);

/// Bubble Hessian with respect to reference coordinates.
Mat2 bubble_ref_hessian(const Vec3& lambda);

/// BDM1 reference basis: six linear vector fields dual to the edge moments
///   dof_{e,0}(v) = int_e (v.n_e) ds,   dof_{e,1}(v) = int_e (v.n_e) t ds,
/// where n_e is the outward reference normal, t in [-1,1] follows the edge
/// direction V_{e+1} -> V_{e+2}, and ds is the reference arc length.
/// Local dof order: (e0,m0),(e0,m1),(e1,m0),(e1,m1),(e2,m0),(e2,m1).
class Bdm1Reference {
 public:
  static const Bdm1Reference& instance();

  /// Value of basis function k at a reference point.
  Vec2 value(int k, const Vec3& lambda) const;

  /// Constant reference divergence of basis function k.
  Real divergence(int k) const;

  /// Constant reference gradient of basis function k, (i,j) = d v_i / d x_j.
  Mat2 gradient(int k) const;

 private:
  Bdm1Reference();
  // coeff(j,k): coefficient of monomial j in basis k, monomials
  // (1,0),(x,0),(y,0),(0,1),(0,x),(0,y).
  Eigen::Matrix<Real, 6, 6> coeff_;
};

}  // namespace sda
