#pragma once

#include "sda/assembly.hpp"
#include "sda/solution.hpp"
#include "sda/types.hpp"

namespace sda {

/// Raised when the factorization or the residual contract fails; the message
/// names the dof block (u_f, p, u_p, phi, pressure_mean) when a zero pivot
/// can be attributed to one.
class SolverError : public Error {
 public:
  explicit SolverError(const std::string& what) : Error(what) {}
};

struct SolveReport {
  Real residual = 0.0;    // relative inf-norm residual (absolute when b = 0)
  Real multiplier = 0.0;  // pressure-mean multiplier, 0 when absent
};

/// Direct sparse LU solve of the coupled system. Post-condition:
/// |Ax-b|_inf / |b|_inf <= residual_tol, or |Ax|_inf <= 1e-12 when b = 0;
/// violations raise SolverError. Deterministic: repeated calls yield
/// bitwise-identical coefficients.
DiscreteSolution solve(const CoupledSystem& sys, Real residual_tol = 1e-10,
                       SolveReport* report = nullptr);

/// The raw solve vector (free dofs plus multiplier), for diagnostics.
VectorX solve_vector(const CoupledSystem& sys, Real residual_tol = 1e-10,
                     SolveReport* report = nullptr);

}  // namespace sda
