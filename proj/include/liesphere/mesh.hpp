#pragma once

// Triangle meshes of Legendre grids and Dupin cyclides, OBJ output.

#include "liesphere/legendre.hpp"
#include "liesphere/transforms.hpp"

#include <array>
#include <string>
#include <vector>

namespace liesphere {

struct MeshOutput {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;  // 0-based
  int dropped_vertices = 0;               // elements without a finite point sphere
  int dropped_cells = 0;
};

// Row-major vertices; quad (i,j),(i+1,j),(i+1,j+1),(i,j+1) split along (i,j)-(i+1,j+1).
// Cells touching an infinite vertex are dropped.
MeshOutput mesh_of(const LegendreGrid& g);
// n x n samples of L(theta) and L^perp(phi), periodic both ways.
MeshOutput mesh_of(const DupinCyclide& c, int n = 64);

// Concatenation with re-indexed faces.
void append(MeshOutput& into, const MeshOutput& m);

// "v x y z" lines, then "f i j k" with 1-based indices.
std::string obj_text(const MeshOutput& m);
// Throws Error on filesystem failures or an empty mesh.
void write_obj(const MeshOutput& m, const std::string& path);

}  // namespace liesphere
