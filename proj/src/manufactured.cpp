#include "sda/manufactured.hpp"

#include <algorithm>
#include <cmath>

namespace sda {

namespace {

constexpr Real kPi = 3.14159265358979323846264338327950288;

PhysicalParams params_from(const CaseOptions& o) {
  PhysicalParams p;
  p.nu = o.nu;
  p.rho = o.rho;
  p.g = o.g;
  p.alpha = o.alpha;
  p.delta = o.delta;
  p.K = Mat2::Zero();
  p.K(0, 0) = o.k1;
  p.K(1, 1) = o.k2;
  return p;
}

// velocity profile of the trigonometric family: u_f = (cos(pi x) B'(y),
// pi sin(pi x) B(y)); the case flavors differ only in B
struct Profile {
  std::function<Real(Real)> b, db, d2b, d3b;
};

ManufacturedCase trig_family(const std::string& name, const CaseOptions& o,
                             const Profile& B) {
  ManufacturedCase c;
  c.name = name;
  c.params = params_from(o);
  const Real nu = o.nu, rg = o.rho * o.g, k1 = o.k1, k2 = o.k2, r1 = o.r1;
  const Real p0 = rg / 4.0 + 2.0 * nu * kPi * o.sigma;

  auto P = [p0, r1](Real y) { return p0 + r1 * (y - 0.5); };

  c.u_f = [B](const Vec2& x) {
    return Vec2(std::cos(kPi * x.x()) * B.db(x.y()),
                kPi * std::sin(kPi * x.x()) * B.b(x.y()));
  };
  c.grad_u_f = [B](const Vec2& x) {
    const Real s = std::sin(kPi * x.x()), co = std::cos(kPi * x.x());
    Mat2 g;
    g(0, 0) = -kPi * s * B.db(x.y());
    g(0, 1) = co * B.d2b(x.y());
    g(1, 0) = kPi * kPi * co * B.b(x.y());
    g(1, 1) = kPi * s * B.db(x.y());
    return g;
  };
  c.div_sym_grad_u_f = [B](const Vec2& x) {
    const Real s = std::sin(kPi * x.x()), co = std::cos(kPi * x.x());
    return Vec2(0.5 * co * (B.d3b(x.y()) - kPi * kPi * B.db(x.y())),
                0.5 * kPi * s * (B.d2b(x.y()) - kPi * kPi * B.b(x.y())));
  };
  c.p = [P](const Vec2& x) { return std::sin(kPi * x.x()) * P(x.y()); };
  c.grad_p = [P, r1](const Vec2& x) {
    return Vec2(kPi * std::cos(kPi * x.x()) * P(x.y()),
                std::sin(kPi * x.x()) * r1);
  };
  c.phi = [](const Vec2& x) { return std::sin(kPi * x.x()) * x.y() * x.y(); };
  c.grad_phi = [](const Vec2& x) {
    return Vec2(kPi * std::cos(kPi * x.x()) * x.y() * x.y(),
                2.0 * x.y() * std::sin(kPi * x.x()));
  };
  c.u_p = [k1, k2](const Vec2& x) {
    return Vec2(-k1 * kPi * std::cos(kPi * x.x()) * x.y() * x.y(),
                -2.0 * k2 * x.y() * std::sin(kPi * x.x()));
  };
  c.div_u_p = [k1, k2](const Vec2& x) {
    return std::sin(kPi * x.x()) * (k1 * kPi * kPi * x.y() * x.y() - 2.0 * k2);
  };
  c.f_f = [B, P, nu, r1](const Vec2& x) {
    const Real s = std::sin(kPi * x.x()), co = std::cos(kPi * x.x());
    const Real y = x.y();
    return Vec2(co * (nu * kPi * kPi * B.db(y) - nu * B.d3b(y) + kPi * P(y)),
                s * (nu * kPi * (kPi * kPi * B.b(y) - B.d2b(y)) + r1));
  };
  c.f_p = c.div_u_p;
  c.pressure_integral = (2.0 / kPi) * (p0 / 2.0 + r1 / 8.0);
  c.homogeneous_bc = false;
  return c;
}

ManufacturedCase make_poly(const CaseOptions& o) {
  ManufacturedCase c;
  c.name = "poly";
  c.params = params_from(o);
  const Real nu = o.nu, rg = o.rho * o.g, k1 = o.k1, k2 = o.k2;
  const Real w1 = o.w1, w3 = o.w3, cg = o.c_g, r1 = o.r1;
  const Real w2 = o.alpha * w1 / (2.0 * nu * std::sqrt(k1));
  const Real rh = -rg * cg / 4.0 - 2.0 * nu * w1;

  auto X = [](Real x) { return x * x / 2.0 - x * x * x / 3.0; };
  auto dX = [](Real x) { return x - x * x; };
  auto d2X = [](Real x) { return 1.0 - 2.0 * x; };
  const Real d3X = -2.0;
  auto W = [=](Real y) {
    const Real t = y - 0.5;
    return w1 * t + w2 * t * t + w3 * t * t * t;
  };
  auto dW = [=](Real y) {
    const Real t = y - 0.5;
    return w1 + 2.0 * w2 * t + 3.0 * w3 * t * t;
  };
  auto d2W = [=](Real y) { return 2.0 * w2 + 6.0 * w3 * (y - 0.5); };
  const Real d3W = 6.0 * w3;
  auto G = [cg](Real y) { return cg * (y * y - y); };
  auto dG = [cg](Real y) { return cg * (2.0 * y - 1.0); };
  const Real d2G = 2.0 * cg;
  auto R = [rh, r1](Real y) { return rh + r1 * (y - 0.5); };

  c.u_f = [=](const Vec2& q) {
    return Vec2(X(q.x()) * dW(q.y()), -dX(q.x()) * W(q.y()));
  };
  c.grad_u_f = [=](const Vec2& q) {
    Mat2 g;
    g(0, 0) = dX(q.x()) * dW(q.y());
    g(0, 1) = X(q.x()) * d2W(q.y());
    g(1, 0) = -d2X(q.x()) * W(q.y());
    g(1, 1) = -dX(q.x()) * dW(q.y());
    return g;
  };
  c.div_sym_grad_u_f = [=](const Vec2& q) {
    return Vec2(0.5 * (d2X(q.x()) * dW(q.y()) + X(q.x()) * d3W),
                0.5 * (-d3X * W(q.y()) - dX(q.x()) * d2W(q.y())));
  };
  c.p = [=](const Vec2& q) { return dX(q.x()) * R(q.y()); };
  c.grad_p = [=](const Vec2& q) {
    return Vec2(d2X(q.x()) * R(q.y()), dX(q.x()) * r1);
  };
  c.phi = [=](const Vec2& q) { return dX(q.x()) * G(q.y()); };
  c.grad_phi = [=](const Vec2& q) {
    return Vec2(d2X(q.x()) * G(q.y()), dX(q.x()) * dG(q.y()));
  };
  c.u_p = [=](const Vec2& q) {
    return Vec2(-k1 * d2X(q.x()) * G(q.y()), -k2 * dX(q.x()) * dG(q.y()));
  };
  c.div_u_p = [=](const Vec2& q) {
    return 2.0 * cg * (k1 * q.y() * (q.y() - 1.0) + k2 * q.x() * (q.x() - 1.0));
  };
  c.f_f = [=](const Vec2& q) {
    const Real x = q.x(), y = q.y();
    return Vec2(-nu * (d2X(x) * dW(y) + X(x) * d3W) + d2X(x) * R(y),
                -nu * (2.0 * W(y) - dX(x) * d2W(y)) + dX(x) * r1);
  };
  c.f_p = c.div_u_p;
  c.pressure_integral = (1.0 / 6.0) * (rh / 2.0 + r1 / 8.0);
  c.homogeneous_bc = false;
  return c;
}

ManufacturedCase make_trig(const CaseOptions& o) {
  const Real b0 = -o.k2 / kPi;
  const Real b1 = o.sigma;
  const Real b2 =
      0.5 * (o.alpha * o.sigma / (o.nu * std::sqrt(o.k1)) - kPi * kPi * b0);
  Profile B;
  B.b = [=](Real y) {
    const Real t = y - 0.5;
    return b0 + b1 * t + b2 * t * t;
  };
  B.db = [=](Real y) { return b1 + 2.0 * b2 * (y - 0.5); };
  B.d2b = [=](Real) { return 2.0 * b2; };
  B.d3b = [](Real) { return 0.0; };
  return trig_family("trig", o, B);
}

ManufacturedCase make_layer(const CaseOptions& o) {
  const Real eps = o.layer_epsilon, mu = o.layer_mu;
  if (!(eps > 0.0)) throw Error("make_case: layer width must be positive");
  const Real b0 = -o.k2 / kPi;
  const Real d2req = o.alpha * o.sigma / (o.nu * std::sqrt(o.k1)) - kPi * kPi * b0;
  const Real q0 = b0 - mu;
  const Real q1 = o.sigma + mu / eps;
  const Real q2 = 0.5 * (d2req - mu / (eps * eps));
  auto bump = [eps, mu](Real y) { return mu * std::exp(-(y - 0.5) / eps); };
  Profile B;
  B.b = [=](Real y) {
    const Real t = y - 0.5;
    return q0 + q1 * t + q2 * t * t + bump(y);
  };
  B.db = [=](Real y) { return q1 + 2.0 * q2 * (y - 0.5) - bump(y) / eps; };
  B.d2b = [=](Real y) { return 2.0 * q2 + bump(y) / (eps * eps); };
  B.d3b = [=](Real y) { return -bump(y) / (eps * eps * eps); };
  return trig_family("layer", o, B);
}

ManufacturedCase make_vanishing(const CaseOptions& o) {
  ManufacturedCase c;
  c.name = "vanishing";
  c.params = params_from(o);
  const Real cp = o.c_p;
  c.u_f = [](const Vec2&) { return Vec2::Zero(); };
  c.grad_u_f = [](const Vec2&) { return Mat2::Zero(); };
  c.div_sym_grad_u_f = [](const Vec2&) { return Vec2::Zero(); };
  c.p = [cp](const Vec2& x) { return cp * (x.y() - 0.5); };
  c.grad_p = [cp](const Vec2&) { return Vec2(0.0, cp); };
  c.phi = [](const Vec2&) { return 0.0; };
  c.grad_phi = [](const Vec2&) { return Vec2::Zero(); };
  c.u_p = [](const Vec2&) { return Vec2::Zero(); };
  c.div_u_p = [](const Vec2&) { return 0.0; };
  c.f_f = [cp](const Vec2&) { return Vec2(0.0, cp); };
  c.f_p = [](const Vec2&) { return 0.0; };
  c.pressure_integral = cp / 8.0;
  c.homogeneous_bc = true;
  return c;
}

ManufacturedCase make_zero(const CaseOptions& o) {
  ManufacturedCase c = make_vanishing(o);
  c.name = "zero";
  c.p = [](const Vec2&) { return 0.0; };
  c.grad_p = [](const Vec2&) { return Vec2::Zero(); };
  c.f_f = [](const Vec2&) { return Vec2::Zero(); };
  c.pressure_integral = 0.0;
  return c;
}

}  // namespace

ManufacturedCase make_case(const std::string& name, const CaseOptions& opts) {
  if (name == "poly") return make_poly(opts);
  if (name == "trig") return make_trig(opts);
  if (name == "layer") return make_layer(opts);
  if (name == "vanishing") return make_vanishing(opts);
  if (name == "zero") return make_zero(opts);
  throw Error("make_case: unknown case '" + name + "'");
}

std::vector<std::string> case_names() {
  return {"poly", "trig", "layer", "vanishing", "zero"};
}

Real VerifyReport::max_violation() const {
  return std::max({cd1, cd2, cd3, darcy, mass, momentum, divergence});
}

VerifyReport verify_case(const ManufacturedCase& c, Real tolerance,
                         int n_samples) {
  if (n_samples < 2) throw Error("verify_case: need at least 2 samples per axis");
  VerifyReport r;
  const Real rg = c.params.rho_g();
  const Real nu = c.params.nu;

  // interface conditions along y = 1/2; n_f points down, tau = (1,0)
  const Vec2 nf(0.0, -1.0);
  const Vec2 tau = tangent_of(nf);
  const Real slip = c.params.alpha / std::sqrt(tau.dot(c.params.K * tau));
  for (int i = 0; i <= n_samples; ++i) {
    const Vec2 x(static_cast<Real>(i) / n_samples, 0.5);
    const Mat2 g = c.grad_u_f(x);
    const Mat2 d = 0.5 * (g + g.transpose());
    r.cd1 = std::max(r.cd1, std::abs(c.u_f(x).dot(nf) + c.u_p(x).dot(-nf)));
    r.cd2 = std::max(r.cd2, std::abs(c.p(x) - 2.0 * nu * nf.dot(d * nf) - rg * c.phi(x)));
    r.cd3 = std::max(r.cd3, std::abs(2.0 * nu * nf.dot(d * tau) + slip * c.u_f(x).dot(tau)));
  }

  // PDE residuals from the stored analytic derivatives
  for (int i = 0; i <= n_samples; ++i) {
    for (int j = 0; j <= n_samples; ++j) {
      const Real sx = static_cast<Real>(i) / n_samples;
      const Real sy = static_cast<Real>(j) / n_samples;
      const Vec2 xf(sx, 0.5 + 0.5 * sy);
      const Vec2 xp(sx, 0.5 * sy);
      r.momentum = std::max(
          r.momentum, (c.f_f(xf) + 2.0 * nu * c.div_sym_grad_u_f(xf) - c.grad_p(xf)).norm());
      r.divergence = std::max(r.divergence, std::abs(c.grad_u_f(xf).trace()));
      r.darcy = std::max(r.darcy, (c.u_p(xp) + c.params.K * c.grad_phi(xp)).norm());
      r.mass = std::max(r.mass, std::abs(c.f_p(xp) - c.div_u_p(xp)));
    }
  }

  // finite-difference cross-checks of the stored derivatives
  const Real h = 1e-6;
  auto rel = [](Real err, Real scale) { return err / (1.0 + scale); };
  for (int i = 1; i < n_samples; ++i) {
    for (int j = 1; j < n_samples; ++j) {
      const Real sx = static_cast<Real>(i) / n_samples;
      const Real sy = static_cast<Real>(j) / n_samples;
      const Vec2 xf(sx, 0.5 + 0.5 * sy);
      const Vec2 xp(sx, 0.5 * sy);
      Mat2 fd;
      for (int dir = 0; dir < 2; ++dir) {
        const Vec2 dx = dir == 0 ? Vec2(h, 0.0) : Vec2(0.0, h);
        const Vec2 diff = (c.u_f(xf + dx) - c.u_f(xf - dx)) / (2.0 * h);
        fd(0, dir) = diff[0];
        fd(1, dir) = diff[1];
      }
      const Mat2 ga = c.grad_u_f(xf);
      r.fd = std::max(r.fd, rel((fd - ga).norm(), ga.norm()));

      const Vec2 gphi = c.grad_phi(xp);
      const Vec2 fdphi((c.phi(xp + Vec2(h, 0)) - c.phi(xp - Vec2(h, 0))) / (2 * h),
                       (c.phi(xp + Vec2(0, h)) - c.phi(xp - Vec2(0, h))) / (2 * h));
      r.fd = std::max(r.fd, rel((fdphi - gphi).norm(), gphi.norm()));

      // div D(u_f) = (Laplacian u_f + grad div u_f)/2 via differenced gradients
      const Mat2 gxp = c.grad_u_f(xf + Vec2(h, 0)), gxm = c.grad_u_f(xf - Vec2(h, 0));
      const Mat2 gyp = c.grad_u_f(xf + Vec2(0, h)), gym = c.grad_u_f(xf - Vec2(0, h));
      Vec2 div_d;
      for (int comp = 0; comp < 2; ++comp) {
        const Real uxx = (gxp(comp, 0) - gxm(comp, 0)) / (2 * h);
        const Real uyy = (gyp(comp, 1) - gym(comp, 1)) / (2 * h);
        const Real ddiv = comp == 0 ? (gxp.trace() - gxm.trace()) / (2 * h)
                                    : (gyp.trace() - gym.trace()) / (2 * h);
        div_d[comp] = 0.5 * (uxx + uyy + ddiv);
      }
      const Vec2 da = c.div_sym_grad_u_f(xf);
      r.fd = std::max(r.fd, rel((div_d - da).norm(), da.norm()));
    }
  }

  auto reject = [&](const char* what, Real v) {
    if (!(v <= tolerance)) {
      throw Error(std::string("verify_case: ") + c.name + " violates " + what +
                  " by " + std::to_string(v));
    }
  };
  reject("interface mass conservation", r.cd1);
  reject("interface force balance", r.cd2);
  reject("interface slip condition", r.cd3);
  reject("the Darcy law", r.darcy);
  reject("mass conservation", r.mass);
  reject("momentum balance", r.momentum);
  reject("incompressibility", r.divergence);
  if (!(r.fd <= 1e-4)) {
    throw Error("verify_case: " + c.name +
                " has inconsistent analytic derivatives, relative mismatch " +
                std::to_string(r.fd));
  }
  return r;
}

FieldBundle case_bundle(const ManufacturedCase& c) {
  FieldBundle b;
  b.u_f = [f = c.u_f](int, const Vec2& x) { return f(x); };
  b.grad_u_f = [f = c.grad_u_f](int, const Vec2& x) { return f(x); };
  b.p = [f = c.p](int, const Vec2& x) { return f(x); };
  b.u_p = [f = c.u_p](int, const Vec2& x) { return f(x); };
  b.div_u_p = [f = c.div_u_p](int, const Vec2& x) { return f(x); };
  b.phi = [f = c.phi](int, const Vec2& x) { return f(x); };
  return b;
}

HNorm exact_error(const DiscreteSolution& sol, const ManufacturedCase& c) {
  return compute_h_norm_difference(sol.mesh(), case_bundle(c), bundle_of(sol));
}

}  // namespace sda
