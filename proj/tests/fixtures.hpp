#pragma once

// Surfaces and curves shared by the unit tests and the acceptance binary.

#include "liesphere/conformal.hpp"
#include "liesphere/transforms.hpp"

#include <numbers>
#include <random>
#include <vector>

namespace fx {

using namespace liesphere;
inline constexpr double kPi = std::numbers::pi;

inline SphereCurve cylinder_curve(int n_u, double r = 1.0) {
  return presets::sphere_curve(presets::line({0, 0, 0}, {0, 0, 1}), presets::constant_radius(r),
                               CurveGrid::open(n_u, -1, 1));
}

inline SphereCurve torus_curve(int n_u, double big = 2.0, double small = 1.0) {
  return presets::sphere_curve(presets::circle({0, 0, 0}, big), presets::constant_radius(small), CurveGrid::closed(n_u));
}

inline SphereCurve helix_curve(int n_u) {
  return presets::sphere_curve(presets::helix(1, 0.5), presets::constant_radius(0.3), CurveGrid::open(n_u, 0, 2 * kPi));
}

// Triaxial ellipsoid x^2/9 + y^2/4 + z^2 = 1 in confocal (curvature line) coordinates, one octant.
inline LegendreGrid ellipsoid(int n) {
  const double A = 9, B = 4, C = 1;
  GridSpec s{n, n, 4.5, 4.0 / (n - 1), 1.5, 2.0 / (n - 1), false, false};
  std::vector<Vec3> pts, nrm;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double u = s.u(i), v = s.th(j);
      const double x = std::sqrt(A * (A - u) * (A - v) / ((A - B) * (A - C)));
      const double y = std::sqrt(B * (B - u) * (B - v) / ((B - A) * (B - C)));
      const double z = std::sqrt(C * (C - u) * (C - v) / ((C - A) * (C - B)));
      pts.emplace_back(x, y, z);
      nrm.push_back(Vec3(x / A, y / B, z / C).normalized());
    }
  return make_legendre_from_surface(pts, nrm, s);
}

// Channel-surface bundle: curve, envelope, curvature data, channel report, Omega_0 with (sigma_1, e6) = -1.
struct Channel {
  SphereCurve s;
  LegendreGrid g;
  CurvatureData cd;
  ChannelReport ch;
  Omega0Structure om;

  explicit Channel(SphereCurve curve, int n_th, Exec ex = Exec::parallel)
      : s(std::move(curve)),
        g(envelope(s, n_th, {}, ex).grid),
        cd(curvature_data(g, {}, ex)),
        ch(is_channel(g, cd, {}, ex)),
        om(omega0_form(g, ch, special_lift_against(s, basis(6)), ex)) {}
};

// Lightcone point of P(1) span{three seeded random point spheres}: a unit sphere.
inline LieVec random_phi0(std::mt19937_64& rng, double theta) {
  std::normal_distribution<double> nd;
  const Mat6 pa = parallel_transform_matrix(1.0);
  std::vector<LieVec> v;
  for (int k = 0; k < 3; ++k) {
    const double x = nd(rng), y = nd(rng), z = nd(rng);
    v.push_back(pa * point_lift(Vec3(x, y, z)).rep());
  }
  return phi0_from_subspace(span(v), theta);
}

inline double max_theta_line_residual(const LegendreGrid& g) {
  double m = 0.0;
  for (int i = 0; i < g.n_u(); ++i) m = std::max(m, spherical_line_residual(g, Axis::th, i).residual);
  return m;
}

}  // namespace fx
