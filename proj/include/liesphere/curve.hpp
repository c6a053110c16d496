#pragma once

// Sampled sphere curves u -> s(u) with derivative access up to third order.

#include "liesphere/core.hpp"

#include <array>
#include <functional>
#include <vector>

namespace liesphere {

// u_i = u0 + i*du for i in [0, n). A periodic grid has period n*du.
struct CurveGrid {
  int n = 0;
  double u0 = 0.0;
  double du = 0.0;
  bool periodic = false;

  double u(int i) const { return u0 + i * du; }
  double period() const { return n * du; }
  static CurveGrid closed(int n, double u0 = 0.0);  // [u0, u0 + 2pi)
  static CurveGrid open(int n, double a, double b);  // n samples, a and b inclusive
};

// value and first three derivatives
struct Jet {
  std::array<LieVec, 4> d;
  const LieVec& operator[](int k) const { return d[k]; }
  LieVec& operator[](int k) { return d[k]; }
};

// Center curve and signed radius with derivatives 0..3 at u.
using CenterFn = std::function<std::array<Vec3, 4>(double)>;
using RadiusFn = std::function<std::array<double, 4>(double)>;

// s = sphere_lift(c, r); with Q = |c|^2 - r^2, s^(k) = (c^(k), -Q^(k)/2, Q^(k)/2, r^(k)).
Jet sphere_jet(const std::array<Vec3, 4>& c, const std::array<double, 4>& r);

class SphereCurve {
 public:
  SphereCurve() = default;

  // Exact jets everywhere, including between samples.
  static SphereCurve from_jet_fn(std::function<Jet(double)> fn, const CurveGrid& grid);
  // Derivatives by five-point differences (shifted stencils at open ends).
  static SphereCurve from_samples(std::vector<LieVec> values, const CurveGrid& grid);
  // Exact first derivatives, e.g. an ODE right-hand side; higher ones by differences.
  static SphereCurve from_samples(std::vector<LieVec> values, std::vector<LieVec> first,
                                  const CurveGrid& grid);

  int size() const { return grid_.n; }
  const CurveGrid& grid() const { return grid_; }
  bool analytic() const { return static_cast<bool>(fn_); }

  const LieVec& value(int i) const { return jets_[i][0]; }
  const LieVec& d1(int i) const { return jets_[i][1]; }
  const LieVec& d2(int i) const { return jets_[i][2]; }
  const LieVec& d3(int i) const { return jets_[i][3]; }
  const Jet& jet(int i) const { return jets_[i]; }

  // Exact when analytic, quintic Hermite in (s, s', s'') between samples otherwise.
  Jet evaluate(double u) const;

  // min_i (s', s') / |s|^2, the induced metric on s^(1)/s for the unit lift
  double regularity() const;
  // Throws PreconditionError naming the first offending sample.
  void require_regular(double eps_reg = 1e-6) const;
  double max_null_residual() const;

  // Same samples, every representative mapped by a fixed linear map.
  SphereCurve transformed(const Mat6& m) const;

 private:
  CurveGrid grid_;
  std::vector<Jet> jets_;
  std::function<Jet(double)> fn_;
};

// Finite-difference weights for derivatives 0..m at z from nodes x (Fornberg).
std::vector<std::vector<double>> fd_weights(double z, const std::vector<double>& x, int m);

namespace presets {

CenterFn line(const Vec3& p0, const Vec3& dir);
// radius R around `center` in the plane z = center.z
CenterFn circle(const Vec3& center, double R);
// (R cos u, R sin u, pitch*u)
CenterFn helix(double R, double pitch);

RadiusFn constant_radius(double r);
// coefficients a0 + a1 u + a2 u^2 + ...
RadiusFn polynomial_radius(std::vector<double> coeffs);

SphereCurve sphere_curve(const CenterFn& c, const RadiusFn& r, const CurveGrid& grid);

// Sampled centers and radii (one per grid sample); derivatives by differences.
SphereCurve sampled_sphere_curve(const std::vector<Vec3>& centers, const std::vector<double>& radii,
                                 const CurveGrid& grid);

}  // namespace presets

}  // namespace liesphere
