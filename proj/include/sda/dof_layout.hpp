#pragma once

#include <vector>

#include "sda/mesh.hpp"
#include "sda/types.hpp"

namespace sda {

/// Global degree-of-freedom numbering for the four coupled fields, in block
/// order [u_f | p | u_p | phi].
///
///  - u_f: vector P1 on fluid vertices plus a vector cubic bubble per fluid
///    triangle; component dofs interleaved per entity, bubbles appended
///    after all vertex dofs.
///  - p: scalar P1 on fluid vertices.
///  - u_p: two edge moments per porous edge (constant and linear weight of
///    the normal trace along the ascending-vertex-id direction).
///  - phi: scalar P1 on porous vertices.
///
/// Constrained dofs carry Dirichlet data: both u_f components at every
/// vertex touching an outer fluid boundary edge, and both u_p moments on
/// outer porous boundary edges. Everything else is free.
class DofLayout {
 public:
  explicit DofLayout(const TwoRegionMesh& mesh);

  // block sizes and offsets
  int n_uf() const { return n_uf_; }
  int n_p() const { return n_p_; }
  int n_up() const { return n_up_; }
  int n_phi() const { return n_phi_; }
  int n_total() const { return n_total_; }
  int uf_offset() const { return 0; }
  int p_offset() const { return n_uf_; }
  int up_offset() const { return n_uf_ + n_p_; }
  int phi_offset() const { return n_uf_ + n_p_ + n_up_; }

  // fluid velocity
  int n_fluid_vertices() const { return static_cast<int>(fluid_vertex_of_.size()); }
  int n_fluid_triangles() const { return static_cast<int>(fluid_tri_of_.size()); }
  /// Position of vertex v among fluid vertices, -1 if not a fluid vertex.
  int fluid_vertex_index(int v) const { return fluid_vertex_index_[v]; }
  int fluid_tri_index(int t) const { return fluid_tri_index_[t]; }
  int uf_vertex_dof(int v, int comp) const;
  int uf_bubble_dof(int t, int comp) const;

  // pressure
  int p_dof(int v) const;

  // porous velocity
  int n_porous_edges() const { return static_cast<int>(porous_edge_of_.size()); }
  int porous_edge_index(int e) const { return porous_edge_index_[e]; }
  /// Global dof of moment k (0 or 1) on porous edge e.
  int up_dof(int e, int moment) const;

  /// Global dofs and orientation signs of the two moments on the edge
  /// opposite local vertex `le` of porous triangle t. A basis function tied
  /// to the global edge moments equals sign * (Piola image of the reference
  /// basis for that edge slot) on this triangle.
  struct Bdm1TriEdge {
    int dof[2];
    Real sign[2];
  };
  Bdm1TriEdge bdm1_tri_edge(int t, int le) const;

  // head
  int phi_dof(int v) const;

  // constraint bookkeeping
  bool constrained(int dof) const { return constrained_[dof]; }
  int n_free() const { return static_cast<int>(free_dofs_.size()); }
  /// Position of a global dof among free dofs, -1 if constrained.
  int free_index(int dof) const { return free_index_[dof]; }
  const std::vector<int>& free_dofs() const { return free_dofs_; }

 private:
  const TwoRegionMesh* mesh_;
  int n_uf_ = 0, n_p_ = 0, n_up_ = 0, n_phi_ = 0, n_total_ = 0;
  std::vector<int> fluid_vertex_index_, fluid_vertex_of_;
  std::vector<int> fluid_tri_index_, fluid_tri_of_;
  std::vector<int> porous_edge_index_, porous_edge_of_;
  std::vector<int> porous_vertex_index_;
  std::vector<bool> constrained_;
  std::vector<int> free_index_, free_dofs_;
};

}  // namespace sda
