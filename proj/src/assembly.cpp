#include "sda/assembly.hpp"

#include <array>
#include <cmath>

#include "sda/basis.hpp"
#include "sda/quadrature.hpp"

namespace sda {

namespace {

// exact for every bilinear-form integrand of the chosen spaces
constexpr int kFormDegree = 4;
// analytic data (loads, Dirichlet traces) get the highest supported rule

// local scalar shapes on a fluid triangle: three vertex functions plus the
// bubble; velocity dof l = 2*m + c for shape m and component c
std::array<int, 8> fluid_velocity_dofs(const DofLayout& layout,
                                       const std::array<int, 3>& tri, int t) {
  std::array<int, 8> dof;
  for (int i = 0; i < 3; ++i) {
    dof[2 * i] = layout.uf_vertex_dof(tri[i], 0);
    dof[2 * i + 1] = layout.uf_vertex_dof(tri[i], 1);
  }
  dof[6] = layout.uf_bubble_dof(t, 0);
  dof[7] = layout.uf_bubble_dof(t, 1);
  return dof;
}

}  // namespace

std::vector<Triplet> assemble_stokes_block(const TwoRegionMesh& mesh,
                                           const DofLayout& layout,
                                           const PhysicalParams& params) {
  std::vector<Triplet> out;
  const QuadratureRule tri_rule = make_quadrature(QuadKind::Triangle, kFormDegree);
  const auto ref_grads = p1_ref_gradients();

  for (int t = 0; t < mesh.n_triangles(); ++t) {
    if (mesh.regions()[t] != Region::Fluid) continue;
    const auto& tri = mesh.triangles()[t];
    const auto vdof = fluid_velocity_dofs(layout, tri, t);
    const Mat2 jit = mesh.jacobian(t).inverse().transpose();
    const Real scale = 2.0 * mesh.area(t);

    Eigen::Matrix<Real, 8, 8> a = Eigen::Matrix<Real, 8, 8>::Zero();
    Eigen::Matrix<Real, 3, 8> bf = Eigen::Matrix<Real, 3, 8>::Zero();
    for (int q = 0; q < static_cast<int>(tri_rule.weights.size()); ++q) {
      const Vec3& lam = tri_rule.tri_points[q];
      const Real w = scale * tri_rule.weights[q];
      std::array<Vec2, 4> g;
      for (int i = 0; i < 3; ++i) g[i] = jit * ref_grads[i];
      g[3] = jit * bubble_ref_gradient(lam);
      for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
          const Real dot = g[m].dot(g[n]);
          for (int c = 0; c < 2; ++c) {
            for (int d = 0; d < 2; ++d) {
              a(2 * m + c, 2 * n + d) +=
                  w * params.nu * ((c == d ? dot : 0.0) + g[m][d] * g[n][c]);
            }
          }
        }
      }
      for (int j = 0; j < 3; ++j) {
        for (int m = 0; m < 4; ++m) {
          for (int c = 0; c < 2; ++c) {
            bf(j, 2 * m + c) += w * lam[j] * g[m][c];
          }
        }
      }
    }
    for (int r = 0; r < 8; ++r) {
      for (int c = 0; c < 8; ++c) {
        if (a(r, c) != 0.0) out.emplace_back(vdof[r], vdof[c], a(r, c));
      }
    }
    for (int j = 0; j < 3; ++j) {
      const int pj = layout.p_dof(tri[j]);
      for (int l = 0; l < 8; ++l) {
        if (bf(j, l) == 0.0) continue;
        out.emplace_back(vdof[l], pj, -bf(j, l));  // -b_f(v_f, p)
        out.emplace_back(pj, vdof[l], bf(j, l));   // +b_f(u_f, q)
      }
    }
  }

  // tangential slip term on the interface; bubbles vanish on edges
  const QuadratureRule edge_rule = make_quadrature(QuadKind::Edge, kFormDegree);
  for (int e : mesh.edges_of_class(EdgeClass::Interface)) {
    const Vec2 tau = tangent_of(mesh.edge_normal(e));
    const Real slip = params.slip_coefficient(mesh.edge_tris(e)[1], tau);
    const Real len = mesh.h_edge(e);
    const auto& ev = mesh.edge(e);
    Mat2 mass = Mat2::Zero();  // end-point P1 traces (1-s, s)
    for (int q = 0; q < static_cast<int>(edge_rule.weights.size()); ++q) {
      const Real s = edge_rule.edge_points[q];
      const Real w = len * edge_rule.weights[q];
      const Real tr[2] = {1.0 - s, s};
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) mass(i, j) += w * tr[i] * tr[j];
      }
    }
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        for (int c = 0; c < 2; ++c) {
          for (int d = 0; d < 2; ++d) {
            const Real v = slip * tau[c] * tau[d] * mass(i, j);
            if (v != 0.0) {
              out.emplace_back(layout.uf_vertex_dof(ev[i], c),
                               layout.uf_vertex_dof(ev[j], d), v);
            }
          }
        }
      }
    }
  }
  return out;
}

std::vector<Triplet> assemble_darcy_block(const TwoRegionMesh& mesh,
                                          const DofLayout& layout,
                                          const PhysicalParams& params) {
  std::vector<Triplet> out;
  const QuadratureRule tri_rule = make_quadrature(QuadKind::Triangle, kFormDegree);
  const auto& ref = Bdm1Reference::instance();
  const Real rg = params.rho_g();

  for (int t = 0; t < mesh.n_triangles(); ++t) {
    if (mesh.regions()[t] != Region::Porous) continue;
    const auto& tri = mesh.triangles()[t];
    const Mat2 jac = mesh.jacobian(t);
    const Real det = jac.determinant();
    const Mat2 kinv = params.K_inv(t);
    const Real scale = 2.0 * mesh.area(t);

    std::array<int, 6> vdof;
    std::array<Real, 6> sign;
    std::array<Real, 6> div;
    for (int le = 0; le < 3; ++le) {
      const auto te = layout.bdm1_tri_edge(t, le);
      for (int m = 0; m < 2; ++m) {
        vdof[2 * le + m] = te.dof[m];
        sign[2 * le + m] = te.sign[m];
        div[2 * le + m] = te.sign[m] * ref.divergence(2 * le + m) / det;
      }
    }

    Eigen::Matrix<Real, 6, 6> a = Eigen::Matrix<Real, 6, 6>::Zero();
    Eigen::Matrix<Real, 3, 6> bp = Eigen::Matrix<Real, 3, 6>::Zero();
    for (int q = 0; q < static_cast<int>(tri_rule.weights.size()); ++q) {
      const Vec3& lam = tri_rule.tri_points[q];
      const Real w = scale * tri_rule.weights[q];
      std::array<Vec2, 6> val;
      for (int l = 0; l < 6; ++l) {
        val[l] = sign[l] * (jac * ref.value(l, lam)) / det;
      }
      for (int l = 0; l < 6; ++l) {
        const Vec2 kv = kinv * val[l];
        for (int n = 0; n < 6; ++n) a(l, n) += w * rg * kv.dot(val[n]);
      }
      for (int j = 0; j < 3; ++j) {
        for (int l = 0; l < 6; ++l) bp(j, l) += w * rg * lam[j] * div[l];
      }
    }
    for (int r = 0; r < 6; ++r) {
      for (int c = 0; c < 6; ++c) {
        if (a(r, c) != 0.0) out.emplace_back(vdof[r], vdof[c], a(r, c));
      }
    }
    for (int j = 0; j < 3; ++j) {
      const int pj = layout.phi_dof(tri[j]);
      for (int l = 0; l < 6; ++l) {
        if (bp(j, l) == 0.0) continue;
        out.emplace_back(vdof[l], pj, -bp(j, l));  // -b_p(v_p, phi)
        out.emplace_back(pj, vdof[l], bp(j, l));   // +b_p(u_p, psi)
      }
    }
  }
  return out;
}

std::vector<Triplet> assemble_interface_coupling(const TwoRegionMesh& mesh,
                                                 const DofLayout& layout,
                                                 const PhysicalParams& params,
                                                 bool include_c_gamma,
                                                 bool include_j_gamma) {
  std::vector<Triplet> out;
  const std::vector<int> gamma = mesh.edges_of_class(EdgeClass::Interface);
  if (gamma.empty()) {
    throw Error("assemble_interface_coupling: mesh has no interface edges");
  }
  const Real h = mesh.h();
  if (include_j_gamma && !(h > 0.0 && h < 1.0)) {
    throw Error("assemble_interface_coupling: stabilization requires mesh size strictly between 0 and 1");
  }
  const QuadratureRule edge_rule = make_quadrature(QuadKind::Edge, kFormDegree);
  const Real rg = params.rho_g();

  for (int e : gamma) {
    const Vec2 n = mesh.edge_normal(e);
    const Real len = mesh.h_edge(e);
    const auto& ev = mesh.edge(e);

    // traces along the edge at parameter s: fluid P1 end points, porous
    // normal-moment basis (v.n is 1/len and 3t/len, t = 2s-1), head P1
    const int uf_dof[2][2] = {
        {layout.uf_vertex_dof(ev[0], 0), layout.uf_vertex_dof(ev[0], 1)},
        {layout.uf_vertex_dof(ev[1], 0), layout.uf_vertex_dof(ev[1], 1)}};
    const int up_dof[2] = {layout.up_dof(e, 0), layout.up_dof(e, 1)};
    const int phi_dof[2] = {layout.phi_dof(ev[0]), layout.phi_dof(ev[1])};

    for (int q = 0; q < static_cast<int>(edge_rule.weights.size()); ++q) {
      const Real s = edge_rule.edge_points[q];
      const Real w = len * edge_rule.weights[q];
      const Real tr[2] = {1.0 - s, s};
      const Real un[2] = {1.0 / len, 3.0 * (2.0 * s - 1.0) / len};

      if (include_c_gamma) {
        for (int j = 0; j < 2; ++j) {
          for (int i = 0; i < 2; ++i) {
            for (int c = 0; c < 2; ++c) {
              // +c_gamma(v_f, phi)
              out.emplace_back(uf_dof[i][c], phi_dof[j], w * rg * n[c] * tr[i] * tr[j]);
            }
            // -c_gamma(v_p, phi)
            out.emplace_back(up_dof[i], phi_dof[j], -w * rg * un[i] * tr[j]);
          }
        }
      }
      if (include_j_gamma) {
        // normal-jump factors of the six coupled trace functions
        std::array<int, 6> dof;
        std::array<Real, 6> jmp;
        for (int i = 0; i < 2; ++i) {
          for (int c = 0; c < 2; ++c) {
            dof[2 * i + c] = uf_dof[i][c];
            jmp[2 * i + c] = n[c] * tr[i];
          }
          dof[4 + i] = up_dof[i];
          jmp[4 + i] = -un[i];
        }
        const Real wj = w * params.delta / h;
        for (int a = 0; a < 6; ++a) {
          for (int b = 0; b < 6; ++b) {
            const Real v = wj * jmp[a] * jmp[b];
            if (v != 0.0) out.emplace_back(dof[a], dof[b], v);
          }
        }
      }
    }
  }
  return out;
}

VectorX assemble_rhs(const TwoRegionMesh& mesh, const DofLayout& layout,
                     const PhysicalParams& params, const VectorField& f_f,
                     const ScalarField& f_p, int degree) {
  VectorX rhs = VectorX::Zero(layout.n_total());
  const QuadratureRule rule = make_quadrature(QuadKind::Triangle, degree);
  const Real rg = params.rho_g();

  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const Real scale = 2.0 * mesh.area(t);
    if (mesh.regions()[t] == Region::Fluid) {
      const auto vdof = fluid_velocity_dofs(layout, tri, t);
      for (int q = 0; q < static_cast<int>(rule.weights.size()); ++q) {
        const Vec3& lam = rule.tri_points[q];
        const Real w = scale * rule.weights[q];
        const Vec2 f = f_f(mesh.point(t, lam));
        const Real shape[4] = {lam[0], lam[1], lam[2], bubble_value(lam)};
        for (int m = 0; m < 4; ++m) {
          for (int c = 0; c < 2; ++c) rhs[vdof[2 * m + c]] += w * f[c] * shape[m];
        }
      }
    } else {
      for (int q = 0; q < static_cast<int>(rule.weights.size()); ++q) {
        const Vec3& lam = rule.tri_points[q];
        const Real w = scale * rule.weights[q];
        const Real f = f_p(mesh.point(t, lam));
        for (int j = 0; j < 3; ++j) {
          rhs[layout.phi_dof(tri[j])] += w * rg * f * lam[j];
        }
      }
    }
  }
  return rhs;
}

VectorX make_lifting(const TwoRegionMesh& mesh, const DofLayout& layout,
                     const VectorField* uf_data, const VectorField* up_data) {
  VectorX lift = VectorX::Zero(layout.n_total());
  for (int e = 0; e < mesh.n_edges(); ++e) {
    if (mesh.edge_class(e) == EdgeClass::BoundaryFluid) {
      if (!uf_data) continue;
      for (int v : mesh.edge(e)) {
        const Vec2 u = (*uf_data)(mesh.vertices()[v]);
        lift[layout.uf_vertex_dof(v, 0)] = u.x();
        lift[layout.uf_vertex_dof(v, 1)] = u.y();
      }
    } else if (mesh.edge_class(e) == EdgeClass::BoundaryPorous) {
      if (!up_data) continue;
      const auto m = bdm1_edge_moments(mesh, e, *up_data);
      lift[layout.up_dof(e, 0)] = m[0];
      lift[layout.up_dof(e, 1)] = m[1];
    }
  }
  return lift;
}

CoupledSystem assemble_system(const TwoRegionMesh& mesh, const DofLayout& layout,
                              const PhysicalParams& params,
                              const VectorField& f_f, const ScalarField& f_p,
                              const AssembleOptions& opts, VectorX lifting) {
  params.validate(mesh.n_triangles());
  if (mesh.edges_of_class(EdgeClass::Interface).empty()) {
    throw Error("assemble_system: mesh has no interface edges, the coupled problem is not posed");
  }
  if (opts.include_j_gamma && !(mesh.h() > 0.0 && mesh.h() < 1.0)) {
    throw Error("assemble_system: stabilization requires mesh size strictly between 0 and 1");
  }

  CoupledSystem sys;
  sys.mesh = &mesh;
  sys.layout = &layout;
  sys.has_mean_constraint = opts.include_mean_constraint;

  const int n_total = layout.n_total();
  if (opts.apply_dirichlet) {
    sys.free_dofs = layout.free_dofs();
    sys.free_index.resize(n_total);
    for (int d = 0; d < n_total; ++d) sys.free_index[d] = layout.free_index(d);
    if (lifting.size() == 0) lifting = VectorX::Zero(n_total);
    if (lifting.size() != n_total) {
      throw Error("assemble_system: lifting vector has the wrong size");
    }
  } else {
    sys.free_dofs.resize(n_total);
    sys.free_index.resize(n_total);
    for (int d = 0; d < n_total; ++d) sys.free_dofs[d] = sys.free_index[d] = d;
    lifting = VectorX::Zero(n_total);
  }
  sys.lifting = lifting;

  std::vector<Triplet> trips = assemble_stokes_block(mesh, layout, params);
  {
    auto darcy = assemble_darcy_block(mesh, layout, params);
    trips.insert(trips.end(), darcy.begin(), darcy.end());
    auto iface = assemble_interface_coupling(mesh, layout, params,
                                             opts.include_c_gamma,
                                             opts.include_j_gamma);
    trips.insert(trips.end(), iface.begin(), iface.end());
  }

  const int n_free = static_cast<int>(sys.free_dofs.size());
  const int n_solve = n_free + (opts.include_mean_constraint ? 1 : 0);
  const VectorX rhs_full =
      assemble_rhs(mesh, layout, params, f_f, f_p, opts.data_degree);

  sys.b = VectorX::Zero(n_solve);
  for (int i = 0; i < n_free; ++i) sys.b[i] = rhs_full[sys.free_dofs[i]];

  std::vector<Triplet> cond;
  cond.reserve(trips.size() + 2 * layout.n_p() + 1);
  for (const Triplet& tr : trips) {
    const int fr = sys.free_index[tr.row()];
    if (fr < 0) continue;
    const int fc = sys.free_index[tr.col()];
    if (fc >= 0) {
      cond.emplace_back(fr, fc, tr.value());
    } else {
      sys.b[fr] -= tr.value() * lifting[tr.col()];
    }
  }

  if (opts.include_mean_constraint) {
    VectorX wp = VectorX::Zero(n_total);
    for (int t = 0; t < mesh.n_triangles(); ++t) {
      if (mesh.regions()[t] != Region::Fluid) continue;
      const Real third = mesh.area(t) / 3.0;
      for (int v : mesh.triangles()[t]) wp[layout.p_dof(v)] += third;
    }
    for (int v : mesh.region_vertices(Region::Fluid)) {
      const int d = layout.p_dof(v);
      const int fd = sys.free_index[d];
      if (wp[d] == 0.0 || fd < 0) continue;
      cond.emplace_back(n_free, fd, wp[d]);
      cond.emplace_back(fd, n_free, wp[d]);
    }
    sys.b[n_free] = opts.pressure_mean_target;
  }

  sys.A.resize(n_solve, n_solve);
  sys.A.setFromTriplets(cond.begin(), cond.end());
  sys.A.makeCompressed();
  return sys;
}

std::string CoupledSystem::field_of(int solve_index) const {
  if (has_mean_constraint && solve_index == n_solve() - 1) return "pressure_mean";
  if (solve_index < 0 || solve_index >= static_cast<int>(free_dofs.size())) {
    throw Error("CoupledSystem::field_of: index out of range");
  }
  const int g = free_dofs[solve_index];
  if (g < layout->p_offset()) return "u_f";
  if (g < layout->up_offset()) return "p";
  if (g < layout->phi_offset()) return "u_p";
  return "phi";
}

VectorX CoupledSystem::expand(const VectorX& x) const {
  if (x.size() < static_cast<int>(free_dofs.size())) {
    throw Error("CoupledSystem::expand: solve vector too short");
  }
  VectorX full = lifting;
  for (int i = 0; i < static_cast<int>(free_dofs.size()); ++i) {
    full[free_dofs[i]] = x[i];
  }
  return full;
}

Real CoupledSystem::multiplier(const VectorX& x) const {
  return has_mean_constraint ? x[x.size() - 1] : 0.0;
}

}  // namespace sda
