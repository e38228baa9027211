#pragma once

#include <vector>

#include "sda/types.hpp"

namespace sda {

/// Physical coefficients of the coupled flow problem. The conductivity
/// tensor is constant per element: `K` is the uniform value, optionally
/// overridden element-by-element via `K_per_element`.
struct PhysicalParams {
  Real nu = 1.0;     // fluid viscosity
  Real rho = 1.0;    // fluid density
  Real g = 1.0;      // gravitational acceleration
  Real alpha = 1.0;  // slip-rate coefficient on the interface
  Real delta = 1.0;  // interface stabilization weight
  Mat2 K = Mat2::Identity();
  std::vector<Mat2> K_per_element;

  Real rho_g() const { return rho * g; }

  const Mat2& K_of(int element) const {
    return K_per_element.empty() ? K : K_per_element[element];
  }
  Mat2 K_inv(int element) const { return K_of(element).inverse(); }

  /// alpha / sqrt(tau . K tau) with K taken from the porous element.
  Real slip_coefficient(int porous_element, const Vec2& tau) const;

  /// Throws Error naming the first violated requirement:
  /// nu > 0, rho*g > 0, alpha >= 0, delta > 0, every K symmetric positive
  /// definite, and K_per_element (when present) sized to the mesh.
  void validate(int n_triangles = -1) const;
};

}  // namespace sda
