#pragma once

#include <cmath>
#include <functional>

#include "sda/mesh.hpp"
#include "sda/solution.hpp"
#include "sda/types.hpp"

namespace sda {

/// Element-local field evaluators at physical points. Discrete and analytic
/// operands share this shape so norms can measure either, or a difference.
struct FieldBundle {
  std::function<Vec2(int t, const Vec2& x)> u_f;
  std::function<Mat2(int t, const Vec2& x)> grad_u_f;
  std::function<Real(int t, const Vec2& x)> p;
  std::function<Vec2(int t, const Vec2& x)> u_p;
  std::function<Real(int t, const Vec2& x)> div_u_p;
  std::function<Real(int t, const Vec2& x)> phi;
};

FieldBundle bundle_of(const DiscreteSolution& sol);
FieldBundle bundle_difference(const FieldBundle& a, const FieldBundle& b);

/// Squared contributions of the mesh-dependent norm: full H1 of the fluid
/// velocity, L2 of the pressure, H(div) of the porous velocity, L2 of the
/// head, and the interface term (1/h) * |(v_f - v_p).n_f|_Gamma^2.
struct HNorm {
  Real uf_h1_sq = 0.0;
  Real p_l2_sq = 0.0;
  Real up_div_sq = 0.0;
  Real phi_l2_sq = 0.0;
  Real jump_sq = 0.0;
  Real total() const {
    return std::sqrt(uf_h1_sq + p_l2_sq + up_div_sq + phi_l2_sq + jump_sq);
  }
};

HNorm compute_h_norm(const TwoRegionMesh& mesh, const FieldBundle& v);

inline HNorm compute_h_norm_difference(const TwoRegionMesh& mesh,
                                       const FieldBundle& a,
                                       const FieldBundle& b) {
  return compute_h_norm(mesh, bundle_difference(a, b));
}

}  // namespace sda
