#pragma once

#include <iosfwd>
#include <string>

#include "sda/mesh.hpp"

namespace sda {

/// Plain-text mesh format:
///   ndim=2 <n_vertices> <n_triangles>
///   x y                (one line per vertex)
///   v0 v1 v2 region    (one line per triangle, region 'f' or 'p')
void write_mesh(std::ostream& os, const TwoRegionMesh& mesh);
void write_mesh_file(const std::string& path, const TwoRegionMesh& mesh);

TwoRegionMesh read_mesh(std::istream& is);
TwoRegionMesh read_mesh_file(const std::string& path);

}  // namespace sda
