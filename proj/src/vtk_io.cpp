#include "sda/vtk_io.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sda {

namespace {

std::string fmt(Real v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

}  // namespace

void write_vtk(std::ostream& os, const TwoRegionMesh& mesh,
               const DiscreteSolution* sol) {
  const int nv = mesh.n_vertices();
  const int nt = mesh.n_triangles();
  os << "# vtk DataFile Version 3.0\n";
  os << "coupled flow fields\n";
  os << "ASCII\n";
  os << "DATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << nv << " double\n";
  for (int v = 0; v < nv; ++v) {
    const Vec2& x = mesh.vertices()[v];
    os << fmt(x.x()) << " " << fmt(x.y()) << " " << fmt(0.0) << "\n";
  }
  os << "CELLS " << nt << " " << 4 * nt << "\n";
  for (int t = 0; t < nt; ++t) {
    const auto& tri = mesh.triangles()[t];
    os << "3 " << tri[0] << " " << tri[1] << " " << tri[2] << "\n";
  }
  os << "CELL_TYPES " << nt << "\n";
  for (int t = 0; t < nt; ++t) os << "5\n";

  if (sol) {
    const DofLayout& layout = sol->layout();
    const VectorX& c = sol->coefficients();
    os << "POINT_DATA " << nv << "\n";
    os << "SCALARS p double 1\nLOOKUP_TABLE default\n";
    for (int v = 0; v < nv; ++v) {
      const int i = layout.fluid_vertex_index(v);
      os << fmt(i >= 0 ? c[layout.p_dof(v)] : 0.0) << "\n";
    }
    os << "SCALARS phi double 1\nLOOKUP_TABLE default\n";
    std::vector<char> porous(nv, 0);
    for (int v : mesh.region_vertices(Region::Porous)) porous[v] = 1;
    for (int v = 0; v < nv; ++v) {
      os << fmt(porous[v] ? c[layout.phi_dof(v)] : 0.0) << "\n";
    }
    os << "VECTORS u_f double\n";
    for (int v = 0; v < nv; ++v) {
      const int i = layout.fluid_vertex_index(v);
      const Real ux = i >= 0 ? c[layout.uf_vertex_dof(v, 0)] : 0.0;
      const Real uy = i >= 0 ? c[layout.uf_vertex_dof(v, 1)] : 0.0;
      os << fmt(ux) << " " << fmt(uy) << " " << fmt(0.0) << "\n";
    }
  }

  os << "CELL_DATA " << nt << "\n";
  os << "SCALARS region int 1\nLOOKUP_TABLE default\n";
  for (int t = 0; t < nt; ++t) {
    os << (mesh.regions()[t] == Region::Fluid ? 0 : 1) << "\n";
  }
  if (sol) {
    os << "VECTORS u_p double\n";
    const Vec3 center(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
    for (int t = 0; t < nt; ++t) {
      Vec2 u = Vec2::Zero();
      if (mesh.regions()[t] == Region::Porous) u = sol->up_value(t, center);
      os << fmt(u.x()) << " " << fmt(u.y()) << " " << fmt(0.0) << "\n";
    }
  }
}

void write_vtk_file(const std::string& path, const TwoRegionMesh& mesh,
                    const DiscreteSolution* sol) {
  std::ofstream os(path);
  if (!os) throw Error("write_vtk_file: cannot open " + path);
  write_vtk(os, mesh, sol);
}

namespace {

std::vector<Real> read_scalars(std::istream& is, int n, const std::string& name) {
  std::string table, ignored;
  is >> table >> ignored;  // LOOKUP_TABLE default
  if (table != "LOOKUP_TABLE") {
    throw Error("read_vtk: scalars " + name + " missing lookup table");
  }
  std::vector<Real> out(n);
  for (int i = 0; i < n; ++i) {
    if (!(is >> out[i])) throw Error("read_vtk: truncated scalars " + name);
  }
  return out;
}

std::vector<Vec2> read_vectors(std::istream& is, int n, const std::string& name) {
  std::vector<Vec2> out(n);
  for (int i = 0; i < n; ++i) {
    Real x, y, z;
    if (!(is >> x >> y >> z)) throw Error("read_vtk: truncated vectors " + name);
    out[i] = Vec2(x, y);
  }
  return out;
}

}  // namespace

VtkGrid read_vtk(std::istream& is) {
  VtkGrid grid;
  std::string line;
  for (int i = 0; i < 4; ++i) {
    if (!std::getline(is, line)) throw Error("read_vtk: truncated header");
  }
  if (line.find("UNSTRUCTURED_GRID") == std::string::npos) {
    throw Error("read_vtk: expected an unstructured grid");
  }

  std::string tok;
  bool in_point_data = false;
  int n_points = 0, n_cells = 0;
  while (is >> tok) {
    if (tok == "POINTS") {
      std::string type;
      is >> n_points >> type;
      grid.points.resize(n_points);
      for (int i = 0; i < n_points; ++i) {
        Real x, y, z;
        if (!(is >> x >> y >> z)) throw Error("read_vtk: truncated points");
        grid.points[i] = Vec2(x, y);
      }
    } else if (tok == "CELLS") {
      int total = 0;
      is >> n_cells >> total;
      grid.cells.resize(n_cells);
      for (int i = 0; i < n_cells; ++i) {
        int sz;
        if (!(is >> sz) || sz != 3) throw Error("read_vtk: only triangles supported");
        is >> grid.cells[i][0] >> grid.cells[i][1] >> grid.cells[i][2];
      }
    } else if (tok == "CELL_TYPES") {
      int n;
      is >> n;
      for (int i = 0; i < n; ++i) {
        int type;
        if (!(is >> type) || type != 5) throw Error("read_vtk: only triangles supported");
      }
    } else if (tok == "POINT_DATA") {
      int n;
      is >> n;
      if (n != n_points) throw Error("read_vtk: point data size mismatch");
      in_point_data = true;
    } else if (tok == "CELL_DATA") {
      int n;
      is >> n;
      if (n != n_cells) throw Error("read_vtk: cell data size mismatch");
      in_point_data = false;
    } else if (tok == "SCALARS") {
      std::string name, type;
      int comps;
      is >> name >> type >> comps;
      const int n = in_point_data ? n_points : n_cells;
      auto& dst = in_point_data ? grid.point_scalars : grid.cell_scalars;
      dst[name] = read_scalars(is, n, name);
    } else if (tok == "VECTORS") {
      std::string name, type;
      is >> name >> type;
      const int n = in_point_data ? n_points : n_cells;
      auto& dst = in_point_data ? grid.point_vectors : grid.cell_vectors;
      dst[name] = read_vectors(is, n, name);
    } else {
      throw Error("read_vtk: unexpected token " + tok);
    }
  }
  if (grid.points.empty() || grid.cells.empty()) {
    throw Error("read_vtk: missing points or cells");
  }
  return grid;
}

}  // namespace sda
