#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sda/norms.hpp"
#include "sda/params.hpp"
#include "sda/solution.hpp"
#include "sda/types.hpp"

namespace sda {

/// Closed-form exact solution of the coupled problem on the unit square
/// with the interface at y = 1/2, together with its data and derivatives.
/// f_f and f_p are independently simplified expressions, so comparing them
/// against the assembled differential operators cross-checks the algebra.
struct ManufacturedCase {
  std::string name;
  PhysicalParams params;

  VectorField u_f;
  std::function<Mat2(const Vec2&)> grad_u_f;
  VectorField div_sym_grad_u_f;  // div D(u_f), from second derivatives
  ScalarField p;
  VectorField grad_p;
  VectorField u_p;
  ScalarField div_u_p;
  ScalarField phi;
  VectorField grad_phi;
  VectorField f_f;
  ScalarField f_p;

  Real pressure_integral = 0.0;  // exact integral of p over the fluid region
  bool homogeneous_bc = false;
};

struct CaseOptions {
  Real nu = 1.0, rho = 1.0, g = 1.0, alpha = 1.0, delta = 1.0;
  Real k1 = 1.0, k2 = 1.0;
  Real sigma = 1.0;  // interface slip rate of the trigonometric family
  Real w1 = 1.0, w3 = 1.0, c_g = 1.0, r1 = 1.0;  // polynomial family constants
  Real c_p = 1.0;                 // pressure slope of the in-space case
  Real layer_epsilon = 0.1;       // boundary-layer width
  Real layer_mu = 1.0;            // boundary-layer amplitude
};

/// Registry: poly, trig, layer, vanishing, zero.
ManufacturedCase make_case(const std::string& name, const CaseOptions& opts = {});
std::vector<std::string> case_names();

struct VerifyReport {
  Real cd1 = 0.0, cd2 = 0.0, cd3 = 0.0;  // interface-condition residuals
  Real darcy = 0.0;                      // |u_p + K grad phi|
  Real mass = 0.0;                       // |f_p - div u_p|
  Real momentum = 0.0;  // |f_f + 2 nu div D(u_f) - grad p|, analytic pieces
  Real divergence = 0.0;                 // |div u_f| from grad_u_f
  Real fd = 0.0;  // worst relative finite-difference derivative mismatch
  Real max_violation() const;
};

/// Samples the PDE residuals on region grids and the interface conditions
/// along y = 1/2; throws naming the first condition whose analytic residual
/// exceeds `tolerance`. Finite-difference cross-checks of the stored
/// derivatives must pass a scaled 1e-5 relative bound.
VerifyReport verify_case(const ManufacturedCase& c, Real tolerance = 1e-10,
                         int n_samples = 33);

/// Exact fields in the element-local evaluator shape used by the norms.
FieldBundle case_bundle(const ManufacturedCase& c);

/// Error norm contributions of a discrete solution against the exact case.
HNorm exact_error(const DiscreteSolution& sol, const ManufacturedCase& c);

}  // namespace sda
