#pragma once

// (u, theta) parameter grids and the second-order difference stencils used on them.

#include <algorithm>
#include <cmath>
#include <numbers>

namespace liesphere {

struct GridSpec {
  int n_u = 0;
  int n_th = 0;
  double u0 = 0.0;
  double du = 0.0;
  double th0 = 0.0;
  double dth = 0.0;
  bool periodic_u = false;
  bool periodic_th = true;

  double u(int i) const { return u0 + i * du; }
  double th(int j) const { return th0 + j * dth; }
  int size() const { return n_u * n_th; }
  int index(int i, int j) const { return i * n_th + j; }
  double h() const { return std::max(du, dth); }

  // n_u samples on [a, b] inclusive, n_th samples on the full circle
  static GridSpec open_by_circle(int n_u, double a, double b, int n_th) {
    return GridSpec{n_u, n_th, a, (b - a) / (n_u - 1), 0.0, 2.0 * std::numbers::pi / n_th, false, true};
  }
};

enum class Axis { u, th };

// One axis of a grid: length, step and wrap flag.
struct Line {
  int n;
  double h;
  bool periodic;

  static Line of(const GridSpec& g, Axis a) {
    return a == Axis::u ? Line{g.n_u, g.du, g.periodic_u} : Line{g.n_th, g.dth, g.periodic_th};
  }
  bool interior(int k) const { return periodic || (k > 0 && k < n - 1); }
  int wrap(int k) const { return periodic ? ((k % n) + n) % n : k; }

  // f(k) -> value; central where possible, one-sided second order at open ends
  template <class F>
  auto d1(int k, F&& f) const -> decltype(f(0)) {
    if (interior(k)) return (f(wrap(k + 1)) - f(wrap(k - 1))) / (2.0 * h);
    if (k == 0) return (-3.0 * f(0) + 4.0 * f(1) - f(2)) / (2.0 * h);
    return (3.0 * f(n - 1) - 4.0 * f(n - 2) + f(n - 3)) / (2.0 * h);
  }
  template <class F>
  auto d2(int k, F&& f) const -> decltype(f(0)) {
    if (interior(k)) return (f(wrap(k + 1)) - 2.0 * f(k) + f(wrap(k - 1))) / (h * h);
    if (k == 0) return (2.0 * f(0) - 5.0 * f(1) + 4.0 * f(2) - f(3)) / (h * h);
    return (2.0 * f(n - 1) - 5.0 * f(n - 2) + 4.0 * f(n - 3) - f(n - 4)) / (h * h);
  }
};

}  // namespace liesphere
