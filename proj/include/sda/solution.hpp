#pragma once

#include <array>
#include <functional>

#include "sda/dof_layout.hpp"
#include "sda/mesh.hpp"
#include "sda/types.hpp"

namespace sda {

using ScalarField = std::function<Real(const Vec2&)>;
using VectorField = std::function<Vec2(const Vec2&)>;

/// Coefficient vector over a DofLayout together with element-local
/// evaluators for all four fields. Gradients are row-major: entry (i,j) is
/// the derivative of component i along direction j.
class DiscreteSolution {
 public:
  DiscreteSolution(const TwoRegionMesh& mesh, const DofLayout& layout,
                   VectorX coefficients);

  const TwoRegionMesh& mesh() const { return *mesh_; }
  const DofLayout& layout() const { return *layout_; }
  const VectorX& coefficients() const { return coef_; }

  // fluid fields; t must be a fluid triangle
  Vec2 uf_value(int t, const Vec3& lambda) const;
  Mat2 uf_gradient(int t, const Vec3& lambda) const;
  Real uf_divergence(int t, const Vec3& lambda) const;
  /// div D(u_fh), nonzero only through the bubble part.
  Vec2 uf_div_sym_gradient(int t, const Vec3& lambda) const;
  Real p_value(int t, const Vec3& lambda) const;
  Vec2 p_gradient(int t) const;

  // porous fields; t must be a porous triangle
  Vec2 up_value(int t, const Vec3& lambda) const;
  Mat2 up_gradient(int t) const;
  Real up_divergence(int t) const;
  Real phi_value(int t, const Vec3& lambda) const;
  Vec2 phi_gradient(int t) const;

 private:
  const TwoRegionMesh* mesh_;
  const DofLayout* layout_;
  VectorX coef_;

  void require_region(int t, Region r, const char* what) const;
};

/// Moments int_E (v.n_E) ds and int_E (v.n_E) t ds of an analytic field on
/// edge e, with t in [-1,1] along the ascending-vertex-id direction and n_E
/// the stored global edge normal; 3-point Gauss.
std::array<Real, 2> bdm1_edge_moments(const TwoRegionMesh& mesh, int e,
                                      const VectorField& field);

/// Interpolant of analytic fields: vertex values for u_f (bubbles zero),
/// p and phi, edge moments for u_p. Returns a full coefficient vector.
VectorX interpolate_fields(const TwoRegionMesh& mesh, const DofLayout& layout,
                           const VectorField& u_f, const ScalarField& p,
                           const VectorField& u_p, const ScalarField& phi);

}  // namespace sda
