#include "sda/solution.hpp"

#include <cmath>
#include <string>

#include "sda/basis.hpp"

namespace sda {

DiscreteSolution::DiscreteSolution(const TwoRegionMesh& mesh,
                                   const DofLayout& layout, VectorX coefficients)
    : mesh_(&mesh), layout_(&layout), coef_(std::move(coefficients)) {
  if (coef_.size() != layout.n_total()) {
    throw Error("DiscreteSolution: coefficient vector size does not match layout");
  }
}

void DiscreteSolution::require_region(int t, Region r, const char* what) const {
  if (mesh_->regions()[t] != r) {
    throw Error(std::string(what) + ": triangle " + std::to_string(t) +
                " is in the wrong region");
  }
}

Vec2 DiscreteSolution::uf_value(int t, const Vec3& lambda) const {
  require_region(t, Region::Fluid, "uf_value");
  const auto& tri = mesh_->triangles()[t];
  Vec2 v = Vec2::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int c = 0; c < 2; ++c) {
      v[c] += coef_[layout_->uf_vertex_dof(tri[i], c)] * lambda[i];
    }
  }
  const Real b = bubble_value(lambda);
  for (int c = 0; c < 2; ++c) v[c] += coef_[layout_->uf_bubble_dof(t, c)] * b;
  return v;
}

Mat2 DiscreteSolution::uf_gradient(int t, const Vec3& lambda) const {
  require_region(t, Region::Fluid, "uf_gradient");
  const auto& tri = mesh_->triangles()[t];
  const Mat2 jit = mesh_->jacobian(t).inverse().transpose();
  const auto ref_grads = p1_ref_gradients();
  Mat2 g = Mat2::Zero();
  for (int i = 0; i < 3; ++i) {
    const Vec2 grad = jit * ref_grads[i];
    for (int c = 0; c < 2; ++c) {
      g.row(c) += coef_[layout_->uf_vertex_dof(tri[i], c)] * grad.transpose();
    }
  }
  const Vec2 gb = jit * bubble_ref_gradient(lambda);
  for (int c = 0; c < 2; ++c) {
    g.row(c) += coef_[layout_->uf_bubble_dof(t, c)] * gb.transpose();
  }
  return g;
}

Real DiscreteSolution::uf_divergence(int t, const Vec3& lambda) const {
  return uf_gradient(t, lambda).trace();
}

Vec2 DiscreteSolution::uf_div_sym_gradient(int t, const Vec3& lambda) const {
  require_region(t, Region::Fluid, "uf_div_sym_gradient");
  const Mat2 jinv = mesh_->jacobian(t).inverse();
  const Mat2 hess = jinv.transpose() * bubble_ref_hessian(lambda) * jinv;
  const Vec2 c(coef_[layout_->uf_bubble_dof(t, 0)],
               coef_[layout_->uf_bubble_dof(t, 1)]);
  return 0.5 * (hess.trace() * c + hess * c);
}

Real DiscreteSolution::p_value(int t, const Vec3& lambda) const {
  require_region(t, Region::Fluid, "p_value");
  const auto& tri = mesh_->triangles()[t];
  Real v = 0.0;
  for (int i = 0; i < 3; ++i) v += coef_[layout_->p_dof(tri[i])] * lambda[i];
  return v;
}

Vec2 DiscreteSolution::p_gradient(int t) const {
  require_region(t, Region::Fluid, "p_gradient");
  const auto& tri = mesh_->triangles()[t];
  const Mat2 jit = mesh_->jacobian(t).inverse().transpose();
  const auto ref_grads = p1_ref_gradients();
  Vec2 g = Vec2::Zero();
  for (int i = 0; i < 3; ++i) {
    g += coef_[layout_->p_dof(tri[i])] * (jit * ref_grads[i]);
  }
  return g;
}

Vec2 DiscreteSolution::up_value(int t, const Vec3& lambda) const {
  require_region(t, Region::Porous, "up_value");
  const Mat2 jac = mesh_->jacobian(t);
  const Real det = jac.determinant();
  const auto& ref = Bdm1Reference::instance();
  Vec2 v = Vec2::Zero();
  for (int le = 0; le < 3; ++le) {
    const auto te = layout_->bdm1_tri_edge(t, le);
    for (int m = 0; m < 2; ++m) {
      v += coef_[te.dof[m]] * te.sign[m] * ref.value(2 * le + m, lambda);
    }
  }
  return (jac * v) / det;
}

Mat2 DiscreteSolution::up_gradient(int t) const {
  require_region(t, Region::Porous, "up_gradient");
  const Mat2 jac = mesh_->jacobian(t);
  const Real det = jac.determinant();
  const auto& ref = Bdm1Reference::instance();
  Mat2 g = Mat2::Zero();
  for (int le = 0; le < 3; ++le) {
    const auto te = layout_->bdm1_tri_edge(t, le);
    for (int m = 0; m < 2; ++m) {
      g += coef_[te.dof[m]] * te.sign[m] * ref.gradient(2 * le + m);
    }
  }
  return (jac * g * jac.inverse()) / det;
}

Real DiscreteSolution::up_divergence(int t) const {
  require_region(t, Region::Porous, "up_divergence");
  const Real det = mesh_->jacobian(t).determinant();
  const auto& ref = Bdm1Reference::instance();
  Real d = 0.0;
  for (int le = 0; le < 3; ++le) {
    const auto te = layout_->bdm1_tri_edge(t, le);
    for (int m = 0; m < 2; ++m) {
      d += coef_[te.dof[m]] * te.sign[m] * ref.divergence(2 * le + m);
    }
  }
  return d / det;
}

Real DiscreteSolution::phi_value(int t, const Vec3& lambda) const {
  require_region(t, Region::Porous, "phi_value");
  const auto& tri = mesh_->triangles()[t];
  Real v = 0.0;
  for (int i = 0; i < 3; ++i) v += coef_[layout_->phi_dof(tri[i])] * lambda[i];
  return v;
}

Vec2 DiscreteSolution::phi_gradient(int t) const {
  require_region(t, Region::Porous, "phi_gradient");
  const auto& tri = mesh_->triangles()[t];
  const Mat2 jit = mesh_->jacobian(t).inverse().transpose();
  const auto ref_grads = p1_ref_gradients();
  Vec2 g = Vec2::Zero();
  for (int i = 0; i < 3; ++i) {
    g += coef_[layout_->phi_dof(tri[i])] * (jit * ref_grads[i]);
  }
  return g;
}

std::array<Real, 2> bdm1_edge_moments(const TwoRegionMesh& mesh, int e,
                                      const VectorField& field) {
  const auto& ev = mesh.edge(e);
  const Vec2 a = mesh.vertices()[ev[0]];
  const Vec2 b = mesh.vertices()[ev[1]];
  const Vec2 n = mesh.edge_normal(e);
  const Real len = mesh.h_edge(e);
  // 3-point Gauss on [-1,1]
  const Real s = std::sqrt(3.0 / 5.0);
  const Real ts[3] = {-s, 0.0, s};
  const Real ws[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  Real m0 = 0.0, m1 = 0.0;
  for (int q = 0; q < 3; ++q) {
    const Vec2 x = 0.5 * (a + b) + 0.5 * ts[q] * (b - a);
    const Real vn = field(x).dot(n);
    m0 += ws[q] * vn;
    m1 += ws[q] * vn * ts[q];
  }
  return {m0 * len / 2.0, m1 * len / 2.0};
}

VectorX interpolate_fields(const TwoRegionMesh& mesh, const DofLayout& layout,
                           const VectorField& u_f, const ScalarField& p,
                           const VectorField& u_p, const ScalarField& phi) {
  VectorX coef = VectorX::Zero(layout.n_total());
  for (int v : mesh.region_vertices(Region::Fluid)) {
    const Vec2 x = mesh.vertices()[v];
    const Vec2 u = u_f(x);
    coef[layout.uf_vertex_dof(v, 0)] = u.x();
    coef[layout.uf_vertex_dof(v, 1)] = u.y();
    coef[layout.p_dof(v)] = p(x);
  }
  for (int e : mesh.porous_edges()) {
    const auto m = bdm1_edge_moments(mesh, e, u_p);
    coef[layout.up_dof(e, 0)] = m[0];
    coef[layout.up_dof(e, 1)] = m[1];
  }
  for (int v : mesh.region_vertices(Region::Porous)) {
    coef[layout.phi_dof(v)] = phi(mesh.vertices()[v]);
  }
  return coef;
}

}  // namespace sda
