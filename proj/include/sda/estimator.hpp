#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "sda/params.hpp"
#include "sda/solution.hpp"
#include "sda/types.hpp"

namespace sda {

/// Element-local data approximations: the mean of the fluid load per fluid
/// element and the element L2 projection of the porous source onto linears
/// (stored as barycentric coefficients).
struct DataProjection {
  std::vector<Vec2> f_fh;                  // by triangle id, fluid entries set
  std::vector<std::array<Real, 3>> f_ph;   // by triangle id, porous entries set

  Real f_ph_value(int t, const Vec3& lambda) const {
    return f_ph[t][0] * lambda[0] + f_ph[t][1] * lambda[1] + f_ph[t][2] * lambda[2];
  }
};

DataProjection project_data(const TwoRegionMesh& mesh, const VectorField& f_f,
                            const ScalarField& f_p);

struct EstimatorOptions {
  /// The tangential-jump edge sum carries no h_E factor; this switch adds
  /// one for sensitivity studies.
  bool scaled_tangential_jump = false;
};

/// Per-element squared indicator summands (unused slots stay zero) plus the
/// squared oscillation and the global roots, summed in element-id order.
///
/// Fluid elements, slots 1-4: momentum residual h_K^2 |f_fh + 2 nu div D(u_fh)
/// - grad p_h|_K^2; divergence |div u_fh|_K^2; interface-edge tangential
/// traction residual; interface-edge normal-stress residual.
/// Porous elements, slots 1-5: curl residual h_K^2 |curl(rho g K^-1 u_ph +
/// grad phi_h)|_K^2; mass residual |rho g (f_p - div u_ph)|_K^2; tangential
/// jumps over interior edges; head jumps over interior and outer-boundary
/// edges (one-sided there); interface normal-jump stabilization residual.
struct IndicatorField {
  std::vector<std::array<Real, 5>> terms;
  std::vector<Real> theta_sq;
  std::vector<Real> zeta_sq;
  Real theta = 0.0;
  Real zeta = 0.0;
};

/// The four fluid summands per element; porous rows are zero.
std::vector<std::array<Real, 5>> compute_fluid_indicator(
    const DiscreteSolution& sol, const PhysicalParams& params,
    const DataProjection& proj);

/// The five porous summands per element; fluid rows are zero. The mass
/// residual uses the raw source, not its projection.
std::vector<std::array<Real, 5>> compute_porous_indicator(
    const DiscreteSolution& sol, const PhysicalParams& params,
    const ScalarField& f_p, const EstimatorOptions& opts = {});

/// Squared oscillation per element: fluid h_K^2 |f_f - f_fh|_K^2, porous
/// (rho g)^2 |f_p - f_ph|_K^2.
std::vector<Real> compute_oscillation(const TwoRegionMesh& mesh,
                                      const PhysicalParams& params,
                                      const VectorField& f_f,
                                      const ScalarField& f_p,
                                      const DataProjection& proj);

IndicatorField estimate(const DiscreteSolution& sol, const PhysicalParams& params,
                        const VectorField& f_f, const ScalarField& f_p,
                        const EstimatorOptions& opts = {});

/// CSV dump: element_id,region,theta_sq,zeta_sq,term_1..term_5.
void write_indicator_csv(std::ostream& os, const TwoRegionMesh& mesh,
                         const IndicatorField& ind);

}  // namespace sda
