#include "liesphere/curve.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <sstream>

namespace liesphere {

CurveGrid CurveGrid::closed(int n, double u0) {
  return CurveGrid{n, u0, 2.0 * std::numbers::pi / n, true};
}

CurveGrid CurveGrid::open(int n, double a, double b) {
  if (n < 2) throw PreconditionError("CurveGrid::open needs at least two samples");
  return CurveGrid{n, a, (b - a) / (n - 1), false};
}

Jet sphere_jet(const std::array<Vec3, 4>& c, const std::array<double, 4>& r) {
  const double q[4] = {
      c[0].squaredNorm() - r[0] * r[0],
      2.0 * (c[0].dot(c[1]) - r[0] * r[1]),
      2.0 * (c[1].dot(c[1]) + c[0].dot(c[2]) - r[1] * r[1] - r[0] * r[2]),
      2.0 * (3.0 * c[1].dot(c[2]) + c[0].dot(c[3]) - 3.0 * r[1] * r[2] - r[0] * r[3]),
  };
  Jet j;
  j[0] << c[0], 0.5 * (1.0 - q[0]), 0.5 * (1.0 + q[0]), r[0];
  for (int k = 1; k < 4; ++k) j[k] << c[k], -0.5 * q[k], 0.5 * q[k], r[k];
  return j;
}

std::vector<std::vector<double>> fd_weights(double z, const std::vector<double>& x, int m) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0, c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

namespace {

void check_grid(const CurveGrid& g) {
  if (g.n < 5) throw PreconditionError("SphereCurve: need at least 5 samples, got " + std::to_string(g.n));
  if (!(g.du > 0.0)) throw PreconditionError("SphereCurve: step must be positive");
}

// derivative orders [first, 3] filled from values by five-point stencils
void fill_differences(std::vector<Jet>& jets, const CurveGrid& g, int first) {
  const int n = g.n;
  std::vector<Jet> out = jets;
  for (int i = 0; i < n; ++i) {
    int start = i - 2;
    if (!g.periodic) start = std::clamp(start, 0, n - 5);
    std::vector<double> x(5);
    for (int k = 0; k < 5; ++k) x[k] = (start + k) * g.du;
    const auto w = fd_weights(i * g.du, x, 3);
    for (int ord = first; ord <= 3; ++ord) {
      LieVec acc = LieVec::Zero();
      for (int k = 0; k < 5; ++k) {
        int idx = start + k;
        if (g.periodic) idx = ((idx % n) + n) % n;
        acc += w[ord][k] * jets[idx][0];
      }
      out[i][ord] = acc;
    }
  }
  // with an exact first derivative, differentiate it instead of the values
  if (first == 2) {
    for (int i = 0; i < n; ++i) {
      int start = i - 2;
      if (!g.periodic) start = std::clamp(start, 0, n - 5);
      std::vector<double> x(5);
      for (int k = 0; k < 5; ++k) x[k] = (start + k) * g.du;
      const auto w = fd_weights(i * g.du, x, 2);
      for (int ord = 1; ord <= 2; ++ord) {
        LieVec acc = LieVec::Zero();
        for (int k = 0; k < 5; ++k) {
          int idx = start + k;
          if (g.periodic) idx = ((idx % n) + n) % n;
          acc += w[ord][k] * jets[idx][1];
        }
        out[i][ord + 1] = acc;
      }
    }
  }
  jets = std::move(out);
}

constexpr double kHermite[6][6] = {
    {1, 0, 0, -10, 15, -6},   {0, 1, 0, -6, 8, -3},     {0, 0, 0.5, -1.5, 1.5, -0.5},
    {0, 0, 0, 10, -15, 6},    {0, 0, 0, -4, 7, -3},     {0, 0, 0, 0.5, -1, 0.5},
};

}  // namespace

SphereCurve SphereCurve::from_jet_fn(std::function<Jet(double)> fn, const CurveGrid& grid) {
  check_grid(grid);
  SphereCurve c;
  c.grid_ = grid;
  c.jets_.resize(grid.n);
  for (int i = 0; i < grid.n; ++i) c.jets_[i] = fn(grid.u(i));
  c.fn_ = std::move(fn);
  return c;
}

SphereCurve SphereCurve::from_samples(std::vector<LieVec> values, const CurveGrid& grid) {
  check_grid(grid);
  if (static_cast<int>(values.size()) != grid.n)
    throw PreconditionError("SphereCurve: sample count does not match grid");
  SphereCurve c;
  c.grid_ = grid;
  c.jets_.resize(grid.n);
  for (int i = 0; i < grid.n; ++i) c.jets_[i][0] = values[i];
  fill_differences(c.jets_, grid, 1);
  return c;
}

SphereCurve SphereCurve::from_samples(std::vector<LieVec> values, std::vector<LieVec> first,
                                      const CurveGrid& grid) {
  check_grid(grid);
  if (static_cast<int>(values.size()) != grid.n || static_cast<int>(first.size()) != grid.n)
    throw PreconditionError("SphereCurve: sample count does not match grid");
  SphereCurve c;
  c.grid_ = grid;
  c.jets_.resize(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    c.jets_[i][0] = values[i];
    c.jets_[i][1] = first[i];
  }
  fill_differences(c.jets_, grid, 2);
  return c;
}

Jet SphereCurve::evaluate(double u) const {
  if (fn_) return fn_(u);
  const CurveGrid& g = grid_;
  double s = (u - g.u0) / g.du;
  int i;
  if (g.periodic) {
    const double n = g.n;
    s = std::fmod(s, n);
    if (s < 0) s += n;
    i = std::min(static_cast<int>(std::floor(s)), g.n - 1);
  } else {
    i = std::clamp(static_cast<int>(std::floor(s)), 0, g.n - 2);
  }
  const double t = s - i;
  const int i1 = g.periodic ? (i + 1) % g.n : i + 1;
  const double h = g.du;
  const LieVec data[6] = {jets_[i][0], h * jets_[i][1], h * h * jets_[i][2],
                          jets_[i1][0], h * jets_[i1][1], h * h * jets_[i1][2]};
  // polynomial coefficients in t
  LieVec coef[6];
  for (int p = 0; p < 6; ++p) {
    coef[p] = LieVec::Zero();
    for (int b = 0; b < 6; ++b) coef[p] += kHermite[b][p] * data[b];
  }
  Jet out;
  for (int k = 0; k < 4; ++k) {
    LieVec acc = LieVec::Zero();
    for (int p = 5; p >= k; --p) {
      double f = 1.0;
      for (int q = 0; q < k; ++q) f *= (p - q);
      acc += f * std::pow(t, p - k) * coef[p];
    }
    out[k] = acc / std::pow(h, k);
  }
  return out;
}

double SphereCurve::regularity() const {
  double mn = std::numeric_limits<double>::infinity();
  for (const Jet& j : jets_) mn = std::min(mn, inner(j[1], j[1]) / j[0].squaredNorm());
  return mn;
}

void SphereCurve::require_regular(double eps_reg) const {
  for (int i = 0; i < grid_.n; ++i) {
    const double g = inner(jets_[i][1], jets_[i][1]) / jets_[i][0].squaredNorm();
    if (!(g > eps_reg)) {
      std::ostringstream os;
      os << "sphere curve not regular at sample " << i << " (u = " << grid_.u(i)
         << "): induced metric " << g << " <= " << eps_reg;
      throw PreconditionError(os.str());
    }
  }
}

double SphereCurve::max_null_residual() const {
  double mx = 0.0;
  for (const Jet& j : jets_) mx = std::max(mx, null_residual(j[0]));
  return mx;
}

SphereCurve SphereCurve::transformed(const Mat6& m) const {
  SphereCurve c;
  c.grid_ = grid_;
  c.jets_ = jets_;
  for (Jet& j : c.jets_)
    for (int k = 0; k < 4; ++k) j[k] = m * j[k];
  if (fn_) {
    auto fn = fn_;
    c.fn_ = [fn, m](double u) {
      Jet j = fn(u);
      for (int k = 0; k < 4; ++k) j[k] = m * j[k];
      return j;
    };
  }
  return c;
}

namespace presets {

CenterFn line(const Vec3& p0, const Vec3& dir) {
  return [p0, dir](double u) -> std::array<Vec3, 4> {
    return {p0 + u * dir, dir, Vec3::Zero(), Vec3::Zero()};
  };
}

CenterFn circle(const Vec3& center, double R) {
  return [center, R](double u) -> std::array<Vec3, 4> {
    const double c = std::cos(u), s = std::sin(u);
    return {center + Vec3(R * c, R * s, 0), Vec3(-R * s, R * c, 0), Vec3(-R * c, -R * s, 0),
            Vec3(R * s, -R * c, 0)};
  };
}

CenterFn helix(double R, double pitch) {
  return [R, pitch](double u) -> std::array<Vec3, 4> {
    const double c = std::cos(u), s = std::sin(u);
    return {Vec3(R * c, R * s, pitch * u), Vec3(-R * s, R * c, pitch), Vec3(-R * c, -R * s, 0),
            Vec3(R * s, -R * c, 0)};
  };
}

RadiusFn constant_radius(double r) {
  return [r](double) -> std::array<double, 4> { return {r, 0.0, 0.0, 0.0}; };
}

RadiusFn polynomial_radius(std::vector<double> coeffs) {
  return [coeffs](double u) -> std::array<double, 4> {
    std::array<double, 4> out{0, 0, 0, 0};
    for (int k = 0; k < 4; ++k) {
      for (int p = k; p < static_cast<int>(coeffs.size()); ++p) {
        double f = 1.0;
        for (int q = 0; q < k; ++q) f *= (p - q);
        out[k] += f * coeffs[p] * std::pow(u, p - k);
      }
    }
    return out;
  };
}

SphereCurve sphere_curve(const CenterFn& c, const RadiusFn& r, const CurveGrid& grid) {
  return SphereCurve::from_jet_fn([c, r](double u) { return sphere_jet(c(u), r(u)); }, grid);
}

SphereCurve sampled_sphere_curve(const std::vector<Vec3>& centers, const std::vector<double>& radii,
                                 const CurveGrid& grid) {
  if (centers.size() != radii.size())
    throw PreconditionError("sampled_sphere_curve: centers and radii differ in length");
  std::vector<LieVec> v;
  v.reserve(centers.size());
  for (size_t i = 0; i < centers.size(); ++i) v.push_back(sphere_lift(centers[i], radii[i]).rep());
  return SphereCurve::from_samples(std::move(v), grid);
}

}  // namespace presets

}  // namespace liesphere
