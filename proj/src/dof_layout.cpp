#include "sda/dof_layout.hpp"

#include <string>

namespace sda {

DofLayout::DofLayout(const TwoRegionMesh& mesh) : mesh_(&mesh) {
  const int nv = mesh.n_vertices();
  const int nt = mesh.n_triangles();
  const int ne = mesh.n_edges();

  fluid_vertex_of_ = mesh.region_vertices(Region::Fluid);
  fluid_vertex_index_.assign(nv, -1);
  for (int i = 0; i < static_cast<int>(fluid_vertex_of_.size()); ++i) {
    fluid_vertex_index_[fluid_vertex_of_[i]] = i;
  }

  fluid_tri_index_.assign(nt, -1);
  for (int t = 0; t < nt; ++t) {
    if (mesh.regions()[t] == Region::Fluid) {
      fluid_tri_index_[t] = static_cast<int>(fluid_tri_of_.size());
      fluid_tri_of_.push_back(t);
    }
  }

  porous_edge_of_ = mesh.porous_edges();
  porous_edge_index_.assign(ne, -1);
  for (int i = 0; i < static_cast<int>(porous_edge_of_.size()); ++i) {
    porous_edge_index_[porous_edge_of_[i]] = i;
  }

  const std::vector<int>& pv = mesh.region_vertices(Region::Porous);
  porous_vertex_index_.assign(nv, -1);
  for (int i = 0; i < static_cast<int>(pv.size()); ++i) {
    porous_vertex_index_[pv[i]] = i;
  }

  n_uf_ = 2 * static_cast<int>(fluid_vertex_of_.size()) +
          2 * static_cast<int>(fluid_tri_of_.size());
  n_p_ = static_cast<int>(fluid_vertex_of_.size());
  n_up_ = 2 * static_cast<int>(porous_edge_of_.size());
  n_phi_ = static_cast<int>(pv.size());
  n_total_ = n_uf_ + n_p_ + n_up_ + n_phi_;

  constrained_.assign(n_total_, false);
  for (int e = 0; e < ne; ++e) {
    if (mesh.edge_class(e) == EdgeClass::BoundaryFluid) {
      for (int v : mesh.edge(e)) {
        constrained_[uf_vertex_dof(v, 0)] = true;
        constrained_[uf_vertex_dof(v, 1)] = true;
      }
    } else if (mesh.edge_class(e) == EdgeClass::BoundaryPorous) {
      constrained_[up_dof(e, 0)] = true;
      constrained_[up_dof(e, 1)] = true;
    }
  }

  free_index_.assign(n_total_, -1);
  free_dofs_.reserve(n_total_);
  for (int d = 0; d < n_total_; ++d) {
    if (!constrained_[d]) {
      free_index_[d] = static_cast<int>(free_dofs_.size());
      free_dofs_.push_back(d);
    }
  }
}

int DofLayout::uf_vertex_dof(int v, int comp) const {
  const int i = fluid_vertex_index_[v];
  if (i < 0) throw Error("uf_vertex_dof: vertex " + std::to_string(v) + " is not a fluid vertex");
  return 2 * i + comp;
}

int DofLayout::uf_bubble_dof(int t, int comp) const {
  const int i = fluid_tri_index_[t];
  if (i < 0) throw Error("uf_bubble_dof: triangle " + std::to_string(t) + " is not fluid");
  return 2 * static_cast<int>(fluid_vertex_of_.size()) + 2 * i + comp;
}

int DofLayout::p_dof(int v) const {
  const int i = fluid_vertex_index_[v];
  if (i < 0) throw Error("p_dof: vertex " + std::to_string(v) + " is not a fluid vertex");
  return p_offset() + i;
}

int DofLayout::up_dof(int e, int moment) const {
  const int i = porous_edge_index_[e];
  if (i < 0) throw Error("up_dof: edge " + std::to_string(e) + " is not a porous edge");
  return up_offset() + 2 * i + moment;
}

DofLayout::Bdm1TriEdge DofLayout::bdm1_tri_edge(int t, int le) const {
  const TwoRegionMesh& m = *mesh_;
  if (m.regions()[t] != Region::Porous) {
    throw Error("bdm1_tri_edge: triangle " + std::to_string(t) + " is not porous");
  }
  const int e = m.tri_edges(t)[le];
  const auto& tri = m.triangles()[t];
  const int a = tri[(le + 1) % 3];
  const int b = tri[(le + 2) % 3];

  // outward normal of the triangle on this edge
  const Vec2 d = m.vertices()[b] - m.vertices()[a];
  const Vec2 n_out = Vec2(d.y(), -d.x()).normalized();
  const Real sn = n_out.dot(m.edge_normal(e)) > 0 ? 1.0 : -1.0;
  // +1 when the local edge direction matches the ascending-id direction
  const Real st = a < b ? 1.0 : -1.0;

  Bdm1TriEdge out;
  out.dof[0] = up_dof(e, 0);
  out.dof[1] = up_dof(e, 1);
  out.sign[0] = sn;
  out.sign[1] = sn * st;
  return out;
}

int DofLayout::phi_dof(int v) const {
  const int i = porous_vertex_index_[v];
  if (i < 0) throw Error("phi_dof: vertex " + std::to_string(v) + " is not a porous vertex");
  return phi_offset() + i;
}

}  // namespace sda
