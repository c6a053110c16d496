#include "liesphere/mesh.hpp"

#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>

namespace liesphere {

namespace {

MeshOutput mesh_from(int nu, int nt, bool pu, bool pt, const std::vector<std::optional<Vec3>>& pts) {
  MeshOutput m;
  std::vector<int> id(pts.size(), -1);
  for (size_t k = 0; k < pts.size(); ++k) {
    if (!pts[k] || !pts[k]->allFinite()) {
      ++m.dropped_vertices;
      continue;
    }
    id[k] = static_cast<int>(m.vertices.size());
    m.vertices.push_back(*pts[k]);
  }
  const int cu = pu ? nu : nu - 1, ct = pt ? nt : nt - 1;
  for (int i = 0; i < cu; ++i)
    for (int j = 0; j < ct; ++j) {
      const int i1 = (i + 1) % nu, j1 = (j + 1) % nt;
      const int a = id[i * nt + j], b = id[i1 * nt + j], c = id[i1 * nt + j1], d = id[i * nt + j1];
      if (a < 0 || b < 0 || c < 0 || d < 0) {
        ++m.dropped_cells;
        continue;
      }
      m.faces.push_back({a, b, c});
      m.faces.push_back({a, c, d});
    }
  return m;
}

}  // namespace

MeshOutput mesh_of(const LegendreGrid& g) {
  const GridSpec& s = g.spec();
  std::vector<std::optional<Vec3>> pts(s.size());
  for (int i = 0; i < s.n_u; ++i)
    for (int j = 0; j < s.n_th; ++j) pts[s.index(i, j)] = surface_point(g, i, j);
  return mesh_from(s.n_u, s.n_th, s.periodic_u, s.periodic_th, pts);
}

MeshOutput mesh_of(const DupinCyclide& c, int n) {
  const CircleFrame a = circle_frame(c.d), b = circle_frame(c.dperp);
  std::vector<std::optional<Vec3>> pts(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto p = point_sphere_of(a.at(2.0 * std::numbers::pi * i / n), b.at(2.0 * std::numbers::pi * j / n));
      if (p) pts[i * n + j] = Vec3((*p)(0), (*p)(1), (*p)(2));
    }
  return mesh_from(n, n, true, true, pts);
}

void append(MeshOutput& into, const MeshOutput& m) {
  const int off = static_cast<int>(into.vertices.size());
  into.vertices.insert(into.vertices.end(), m.vertices.begin(), m.vertices.end());
  for (const auto& f : m.faces) into.faces.push_back({f[0] + off, f[1] + off, f[2] + off});
  into.dropped_vertices += m.dropped_vertices;
  into.dropped_cells += m.dropped_cells;
}

std::string obj_text(const MeshOutput& m) {
  std::string out;
  char buf[128];
  for (const Vec3& v : m.vertices) {
    std::snprintf(buf, sizeof buf, "v %.12g %.12g %.12g\n", v.x(), v.y(), v.z());
    out += buf;
  }
  for (const auto& f : m.faces) {
    std::snprintf(buf, sizeof buf, "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
    out += buf;
  }
  return out;
}

void write_obj(const MeshOutput& m, const std::string& path) {
  if (m.vertices.empty()) throw Error("write_obj: mesh has no finite vertices (" + path + ")");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("write_obj: cannot open " + path);
  f << obj_text(m);
  if (!f) throw Error("write_obj: write failed for " + path);
}

}  // namespace liesphere
