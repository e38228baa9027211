#pragma once

#include <string>
#include <vector>

#include "sda/dof_layout.hpp"
#include "sda/mesh.hpp"
#include "sda/params.hpp"
#include "sda/solution.hpp"
#include "sda/types.hpp"

namespace sda {

/// Linear system over the unconstrained dofs, optionally bordered by one
/// pressure-mean constraint row/column (then the last solve index is the
/// multiplier). `lifting` holds Dirichlet values at constrained dofs and is
/// zero elsewhere; expand() merges it with a solve vector into a full
/// coefficient vector.
struct CoupledSystem {
  SparseMatrix A;
  VectorX b;
  VectorX lifting;
  std::vector<int> free_dofs;   // solve index -> global dof
  std::vector<int> free_index;  // global dof -> solve index, -1 if constrained
  bool has_mean_constraint = false;
  const TwoRegionMesh* mesh = nullptr;
  const DofLayout* layout = nullptr;

  int n_solve() const { return static_cast<int>(A.rows()); }
  /// Field name owning a solve index: u_f, p, u_p, phi, or pressure_mean.
  std::string field_of(int solve_index) const;
  VectorX expand(const VectorX& x) const;
  Real multiplier(const VectorX& x) const;
};

/// Volume and interface contributions of the fluid momentum and mass forms:
/// 2*nu*(D(u),D(v)) over fluid triangles, the tangential slip term on the
/// interface, and the divergence/pressure coupling with its skew sign pair.
/// Triplets are in global dof indices.
std::vector<Triplet> assemble_stokes_block(const TwoRegionMesh& mesh,
                                           const DofLayout& layout,
                                           const PhysicalParams& params);

/// rho*g*(K^-1 u, v) over porous triangles plus the divergence/head
/// coupling with its skew sign pair.
std::vector<Triplet> assemble_darcy_block(const TwoRegionMesh& mesh,
                                          const DofLayout& layout,
                                          const PhysicalParams& params);

/// Interface coupling: rho*g*<phi, (v_f - v_p).n> tested against both
/// velocities, and the normal-jump stabilization delta/h * <(u_f-u_p).n,
/// (v_f-v_p).n> with the global mesh size h.
std::vector<Triplet> assemble_interface_coupling(const TwoRegionMesh& mesh,
                                                 const DofLayout& layout,
                                                 const PhysicalParams& params,
                                                 bool include_c_gamma = true,
                                                 bool include_j_gamma = true);

/// Load vector (f_f, v_f) + rho*g*(f_p, psi) over all global dofs.
VectorX assemble_rhs(const TwoRegionMesh& mesh, const DofLayout& layout,
                     const PhysicalParams& params, const VectorField& f_f,
                     const ScalarField& f_p, int degree = 6);

/// Dirichlet values at constrained dofs: vertex interpolation of uf_data on
/// the outer fluid boundary, edge moments of up_data on the outer porous
/// boundary. Null fields mean zero data.
VectorX make_lifting(const TwoRegionMesh& mesh, const DofLayout& layout,
                     const VectorField* uf_data, const VectorField* up_data);

struct AssembleOptions {
  bool include_c_gamma = true;
  bool include_j_gamma = true;
  /// Border the system with one row/column enforcing the integral of the
  /// pressure over the fluid region; without it the coupled matrix has the
  /// one-dimensional kernel (p, phi) = (rho*g*c, c) and direct solves fail.
  bool include_mean_constraint = true;
  /// Target value of that integral (not the mean).
  Real pressure_mean_target = 0.0;
  /// When false all dofs are kept in the solve (for singularity studies).
  bool apply_dirichlet = true;
  /// Triangle quadrature degree for the load vector.
  int data_degree = 6;
};

/// Assemble the condensed coupled system. `lifting` must be empty or sized
/// to the full dof count; it supplies inhomogeneous Dirichlet values.
CoupledSystem assemble_system(const TwoRegionMesh& mesh, const DofLayout& layout,
                              const PhysicalParams& params,
                              const VectorField& f_f, const ScalarField& f_p,
                              const AssembleOptions& opts = {},
                              VectorX lifting = VectorX());

}  // namespace sda
