#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sda/mesh.hpp"
#include "sda/solution.hpp"
#include "sda/types.hpp"

namespace sda {

/// Legacy ASCII unstructured-grid writer. Point data: p, phi (zero outside
/// their region), u_f vertex values. Cell data: region id and u_p at
/// centroids. Pass a null solution to dump the mesh alone.
void write_vtk(std::ostream& os, const TwoRegionMesh& mesh,
               const DiscreteSolution* sol);

void write_vtk_file(const std::string& path, const TwoRegionMesh& mesh,
                    const DiscreteSolution* sol);

/// In-memory form of a legacy ASCII file, for round-trip checks.
struct VtkGrid {
  std::vector<Vec2> points;
  std::vector<std::array<int, 3>> cells;
  std::map<std::string, std::vector<Real>> point_scalars;
  std::map<std::string, std::vector<Vec2>> point_vectors;
  std::map<std::string, std::vector<Real>> cell_scalars;
  std::map<std::string, std::vector<Vec2>> cell_vectors;
};

/// Minimal reader for the subset emitted by write_vtk. Malformed input
/// raises Error naming the offending section.
VtkGrid read_vtk(std::istream& is);

}  // namespace sda
