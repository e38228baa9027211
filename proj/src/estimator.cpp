#include "sda/estimator.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "sda/quadrature.hpp"

namespace sda {

namespace {

constexpr int kVolumeDegree = 6;
constexpr int kEdgeDegree = 4;

Real cross2(const Vec2& v, const Vec2& n) { return v.x() * n.y() - v.y() * n.x(); }

struct EdgeGeometry {
  Vec2 a, b, n;
  Real len;
};

EdgeGeometry edge_geometry(const TwoRegionMesh& mesh, int e) {
  const auto& ev = mesh.edge(e);
  return {mesh.vertices()[ev[0]], mesh.vertices()[ev[1]], mesh.edge_normal(e),
          mesh.h_edge(e)};
}

}  // namespace

DataProjection project_data(const TwoRegionMesh& mesh, const VectorField& f_f,
                            const ScalarField& f_p) {
  DataProjection proj;
  proj.f_fh.assign(mesh.n_triangles(), Vec2::Zero());
  proj.f_ph.assign(mesh.n_triangles(), {0.0, 0.0, 0.0});
  const QuadratureRule rule = make_quadrature(QuadKind::Triangle, kVolumeDegree);

  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const Real scale = 2.0 * mesh.area(t);
    if (mesh.regions()[t] == Region::Fluid) {
      Vec2 mean = Vec2::Zero();
      for (int q = 0; q < static_cast<int>(rule.weights.size()); ++q) {
        mean += scale * rule.weights[q] * f_f(mesh.point(t, rule.tri_points[q]));
      }
      proj.f_fh[t] = mean / mesh.area(t);
    } else {
      // element mass matrix of the barycentric basis is |K|/12 * (1 + delta)
      Vec3 rhs = Vec3::Zero();
      for (int q = 0; q < static_cast<int>(rule.weights.size()); ++q) {
        const Vec3& lam = rule.tri_points[q];
        rhs += scale * rule.weights[q] * f_p(mesh.point(t, lam)) * lam;
      }
      Eigen::Matrix<Real, 3, 3> mass;
      const Real m = mesh.area(t) / 12.0;
      mass << 2 * m, m, m, m, 2 * m, m, m, m, 2 * m;
      const Vec3 c = mass.ldlt().solve(rhs);
      proj.f_ph[t] = {c[0], c[1], c[2]};
    }
  }
  return proj;
}

std::vector<std::array<Real, 5>> compute_fluid_indicator(
    const DiscreteSolution& sol, const PhysicalParams& params,
    const DataProjection& proj) {
  const TwoRegionMesh& mesh = sol.mesh();
  std::vector<std::array<Real, 5>> out(mesh.n_triangles(), {0, 0, 0, 0, 0});
  const QuadratureRule vol = make_quadrature(QuadKind::Triangle, kVolumeDegree);
  const QuadratureRule edg = make_quadrature(QuadKind::Edge, kEdgeDegree);

  for (int t = 0; t < mesh.n_triangles(); ++t) {
    if (mesh.regions()[t] != Region::Fluid) continue;
    const Real scale = 2.0 * mesh.area(t);
    const Real hk2 = mesh.h_tri(t) * mesh.h_tri(t);
    const Vec2 gp = sol.p_gradient(t);

    Real momentum = 0.0, divergence = 0.0;
    for (int q = 0; q < static_cast<int>(vol.weights.size()); ++q) {
      const Vec3& lam = vol.tri_points[q];
      const Real w = scale * vol.weights[q];
      const Vec2 r = proj.f_fh[t] + 2.0 * params.nu * sol.uf_div_sym_gradient(t, lam) - gp;
      momentum += w * r.squaredNorm();
      const Real dv = sol.uf_divergence(t, lam);
      divergence += w * dv * dv;
    }
    out[t][0] = hk2 * momentum;
    out[t][1] = divergence;

    for (int le = 0; le < 3; ++le) {
      const int e = mesh.tri_edges(t)[le];
      if (mesh.edge_class(e) != EdgeClass::Interface) continue;
      const EdgeGeometry eg = edge_geometry(mesh, e);
      const Vec2 tau = tangent_of(eg.n);
      const int tp = mesh.edge_tris(e)[1];
      const Real slip = params.slip_coefficient(tp, tau);
      Real traction = 0.0, stress = 0.0;
      for (int q = 0; q < static_cast<int>(edg.weights.size()); ++q) {
        const Real s = edg.edge_points[q];
        const Real w = eg.len * edg.weights[q];
        const Vec2 x = eg.a + s * (eg.b - eg.a);
        const Vec3 lam = mesh.barycentric(t, x);
        const Mat2 g = sol.uf_gradient(t, lam);
        const Mat2 d = 0.5 * (g + g.transpose());
        const Real tt = 2.0 * params.nu * eg.n.dot(d * tau) + slip * sol.uf_value(t, lam).dot(tau);
        traction += w * tt * tt;
        const Real ss = sol.p_value(t, lam) - 2.0 * params.nu * eg.n.dot(d * eg.n) -
                        params.rho_g() * sol.phi_value(tp, mesh.barycentric(tp, x));
        stress += w * ss * ss;
      }
      out[t][2] += eg.len * traction;
      out[t][3] += eg.len * stress;
    }
  }
  return out;
}

std::vector<std::array<Real, 5>> compute_porous_indicator(
    const DiscreteSolution& sol, const PhysicalParams& params,
    const ScalarField& f_p, const EstimatorOptions& opts) {
  const TwoRegionMesh& mesh = sol.mesh();
  std::vector<std::array<Real, 5>> out(mesh.n_triangles(), {0, 0, 0, 0, 0});
  const QuadratureRule vol = make_quadrature(QuadKind::Triangle, kVolumeDegree);
  const QuadratureRule edg = make_quadrature(QuadKind::Edge, kEdgeDegree);
  const Real rg = params.rho_g();

  // rho g (K^-1 u_ph + grad phi_h), the Darcy-law defect, from one side
  auto defect = [&](int t, const Vec2& x) -> Vec2 {
    const Vec3 lam = mesh.barycentric(t, x);
    return rg * (params.K_inv(t) * sol.up_value(t, lam) + sol.phi_gradient(t));
  };

  for (int t = 0; t < mesh.n_triangles(); ++t) {
    if (mesh.regions()[t] != Region::Porous) continue;
    const Real hk = mesh.h_tri(t);

    // curl of the defect field is constant: grad phi_h drops out
    const Mat2 m = rg * params.K_inv(t) * sol.up_gradient(t);
    const Real curl = m(1, 0) - m(0, 1);
    out[t][0] = hk * hk * curl * curl * mesh.area(t);

    const Real scale = 2.0 * mesh.area(t);
    const Real div = sol.up_divergence(t);
    Real mass = 0.0;
    for (int q = 0; q < static_cast<int>(vol.weights.size()); ++q) {
      const Real r = rg * (f_p(mesh.point(t, vol.tri_points[q])) - div);
      mass += scale * vol.weights[q] * r * r;
    }
    out[t][1] = mass;

    for (int le = 0; le < 3; ++le) {
      const int e = mesh.tri_edges(t)[le];
      const EdgeClass cls = mesh.edge_class(e);
      const EdgeGeometry eg = edge_geometry(mesh, e);

      if (cls == EdgeClass::InteriorPorous) {
        const int t0 = mesh.edge_tris(e)[0];
        const int t1 = mesh.edge_tris(e)[1];
        Real tang = 0.0, head = 0.0;
        for (int q = 0; q < static_cast<int>(edg.weights.size()); ++q) {
          const Real s = edg.edge_points[q];
          const Real w = eg.len * edg.weights[q];
          const Vec2 x = eg.a + s * (eg.b - eg.a);
          const Real j = cross2(defect(t0, x) - defect(t1, x), eg.n);
          tang += w * j * j;
          const Real dphi = sol.phi_value(t0, mesh.barycentric(t0, x)) -
                            sol.phi_value(t1, mesh.barycentric(t1, x));
          head += w * rg * rg * dphi * dphi;
        }
        out[t][2] += (opts.scaled_tangential_jump ? eg.len : 1.0) * tang;
        out[t][3] += eg.len * head;
      } else if (cls == EdgeClass::BoundaryPorous) {
        Real head = 0.0;
        for (int q = 0; q < static_cast<int>(edg.weights.size()); ++q) {
          const Real s = edg.edge_points[q];
          const Real w = eg.len * edg.weights[q];
          const Vec2 x = eg.a + s * (eg.b - eg.a);
          const Real ph = sol.phi_value(t, mesh.barycentric(t, x));
          head += w * rg * rg * ph * ph;
        }
        out[t][3] += eg.len * head;
      } else if (cls == EdgeClass::Interface) {
        const int tf = mesh.edge_tris(e)[0];
        Real jump = 0.0;
        for (int q = 0; q < static_cast<int>(edg.weights.size()); ++q) {
          const Real s = edg.edge_points[q];
          const Real w = eg.len * edg.weights[q];
          const Vec2 x = eg.a + s * (eg.b - eg.a);
          const Real j = (sol.uf_value(tf, mesh.barycentric(tf, x)) -
                          sol.up_value(t, mesh.barycentric(t, x)))
                             .dot(eg.n);
          jump += w * j * j;
        }
        out[t][4] += params.delta * eg.len / mesh.h() * jump;
      }
    }
  }
  return out;
}

std::vector<Real> compute_oscillation(const TwoRegionMesh& mesh,
                                      const PhysicalParams& params,
                                      const VectorField& f_f,
                                      const ScalarField& f_p,
                                      const DataProjection& proj) {
  std::vector<Real> out(mesh.n_triangles(), 0.0);
  const QuadratureRule vol = make_quadrature(QuadKind::Triangle, kVolumeDegree);
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const Real scale = 2.0 * mesh.area(t);
    Real acc = 0.0;
    if (mesh.regions()[t] == Region::Fluid) {
      for (int q = 0; q < static_cast<int>(vol.weights.size()); ++q) {
        const Vec2 d = f_f(mesh.point(t, vol.tri_points[q])) - proj.f_fh[t];
        acc += scale * vol.weights[q] * d.squaredNorm();
      }
      out[t] = mesh.h_tri(t) * mesh.h_tri(t) * acc;
    } else {
      for (int q = 0; q < static_cast<int>(vol.weights.size()); ++q) {
        const Vec3& lam = vol.tri_points[q];
        const Real d = f_p(mesh.point(t, lam)) - proj.f_ph_value(t, lam);
        acc += scale * vol.weights[q] * d * d;
      }
      out[t] = params.rho_g() * params.rho_g() * acc;
    }
  }
  return out;
}

IndicatorField estimate(const DiscreteSolution& sol, const PhysicalParams& params,
                        const VectorField& f_f, const ScalarField& f_p,
                        const EstimatorOptions& opts) {
  const TwoRegionMesh& mesh = sol.mesh();
  const DataProjection proj = project_data(mesh, f_f, f_p);

  IndicatorField ind;
  const auto fluid = compute_fluid_indicator(sol, params, proj);
  const auto porous = compute_porous_indicator(sol, params, f_p, opts);
  ind.terms.assign(mesh.n_triangles(), {0, 0, 0, 0, 0});
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    ind.terms[t] = mesh.regions()[t] == Region::Fluid ? fluid[t] : porous[t];
  }

  ind.zeta_sq = compute_oscillation(mesh, params, f_f, f_p, proj);
  ind.theta_sq.assign(mesh.n_triangles(), 0.0);
  Real tsum = 0.0, zsum = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    Real s = 0.0;
    for (Real v : ind.terms[t]) s += v;
    ind.theta_sq[t] = s;
    tsum += s;
    zsum += ind.zeta_sq[t];
  }
  ind.theta = std::sqrt(tsum);
  ind.zeta = std::sqrt(zsum);
  return ind;
}

void write_indicator_csv(std::ostream& os, const TwoRegionMesh& mesh,
                         const IndicatorField& ind) {
  os << "element_id,region,theta_sq,zeta_sq,term_1,term_2,term_3,term_4,term_5\n";
  char buf[64];
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    os << t << "," << (mesh.regions()[t] == Region::Fluid ? "fluid" : "porous");
    std::snprintf(buf, sizeof(buf), ",%.12e", ind.theta_sq[t]);
    os << buf;
    std::snprintf(buf, sizeof(buf), ",%.12e", ind.zeta_sq[t]);
    os << buf;
    for (int k = 0; k < 5; ++k) {
      std::snprintf(buf, sizeof(buf), ",%.12e", ind.terms[t][k]);
      os << buf;
    }
    os << "\n";
  }
}

}  // namespace sda
