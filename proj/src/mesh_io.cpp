#include "sda/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sda {

void write_mesh(std::ostream& os, const TwoRegionMesh& mesh) {
  os << "ndim=2 " << mesh.n_vertices() << " " << mesh.n_triangles() << "\n";
  char buf[64];
  for (const Vec2& v : mesh.vertices()) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", v.x(), v.y());
    os << buf;
  }
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    os << tri[0] << " " << tri[1] << " " << tri[2] << " "
       << (mesh.regions()[t] == Region::Fluid ? 'f' : 'p') << "\n";
  }
}

void write_mesh_file(const std::string& path, const TwoRegionMesh& mesh) {
  std::ofstream os(path);
  if (!os) throw Error("write_mesh_file: cannot open " + path);
  write_mesh(os, mesh);
  if (!os) throw Error("write_mesh_file: write failed for " + path);
}

TwoRegionMesh read_mesh(std::istream& is) {
  std::string tag;
  if (!(is >> tag) || tag != "ndim=2") {
    throw Error("read_mesh: expected header token 'ndim=2'");
  }
  int nv = 0, nt = 0;
  if (!(is >> nv >> nt) || nv < 3 || nt < 1) {
    throw Error("read_mesh: invalid vertex/triangle counts");
  }
  std::vector<Vec2> verts(nv);
  for (int v = 0; v < nv; ++v) {
    if (!(is >> verts[v].x() >> verts[v].y())) {
      throw Error("read_mesh: malformed vertex line " + std::to_string(v));
    }
  }
  std::vector<std::array<int, 3>> tris(nt);
  std::vector<Region> regions(nt);
  for (int t = 0; t < nt; ++t) {
    std::string r;
    if (!(is >> tris[t][0] >> tris[t][1] >> tris[t][2] >> r) ||
        (r != "f" && r != "p")) {
      throw Error("read_mesh: malformed triangle line " + std::to_string(t));
    }
    regions[t] = r == "f" ? Region::Fluid : Region::Porous;
  }
  return TwoRegionMesh(std::move(verts), std::move(tris), std::move(regions));
}

TwoRegionMesh read_mesh_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("read_mesh_file: cannot open " + path);
  return read_mesh(is);
}

}  // namespace sda
