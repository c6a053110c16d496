#pragma once

// Discrete Legendre maps: grids of contact elements span{sigma, tau}.

#include "liesphere/core.hpp"
#include "liesphere/exec.hpp"
#include "liesphere/grid.hpp"
#include "liesphere/subspace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace liesphere {

class LegendreGrid {
 public:
  LegendreGrid() = default;
  explicit LegendreGrid(const GridSpec& spec);

  // Frames are Euclidean-normalised; throws if a frame fails isotropy by more than iso_tol.
  static LegendreGrid from_frames(const GridSpec& spec, std::vector<LieVec> sigma,
                                  std::vector<LieVec> tau, double iso_tol = 1e-10);

  const GridSpec& spec() const { return spec_; }
  int n_u() const { return spec_.n_u; }
  int n_th() const { return spec_.n_th; }

  const LieVec& sigma(int i, int j) const { return sigma_[spec_.index(i, j)]; }
  const LieVec& tau(int i, int j) const { return tau_[spec_.index(i, j)]; }
  void set(int i, int j, const LieVec& s, const LieVec& t);

  Subspace element(int i, int j) const { return span({sigma(i, j), tau(i, j)}); }
  double max_isotropy() const;

  // every frame vector mapped by m(i) (u-dependent linear maps)
  template <class F>
  LegendreGrid mapped(F&& m) const {
    LegendreGrid out(spec_);
    for (int i = 0; i < spec_.n_u; ++i) {
      const auto mi = m(i);
      for (int j = 0; j < spec_.n_th; ++j) out.set(i, j, mi * sigma(i, j), mi * tau(i, j));
    }
    return out;
  }

 private:
  GridSpec spec_;
  std::vector<LieVec> sigma_, tau_;
};

// Surface lift: span{point sphere, oriented tangent plane}.
LegendreGrid make_legendre_from_surface(const std::vector<Vec3>& points,
                                        const std::vector<Vec3>& normals, const GridSpec& spec);

// Coordinates on the quotient f^perp/f in a basis orthonormal for the induced metric.
struct Quotient {
  Eigen::Matrix<double, 2, 6> proj;  // v in f^perp -> R^2
  Eigen::Matrix2d gram;              // metric of the chosen complement (positive definite)
  Eigen::Vector2d operator()(const LieVec& v) const { return proj * v; }
};
Quotient quotient_of(const LieVec& sigma, const LieVec& tau);

struct ValidationOptions {
  double isotropy_tol = 1e-10;
  double contact_tol = -1.0;  // negative: max(1e-8, 10 h^2)
  double immersion_tol = 1e-4;
};

struct ValidationReport {
  double isotropy = 0.0;
  double contact = 0.0;
  double immersion = 0.0;
  double contact_tol = 0.0;
  bool pass = false;
  int worst_contact_i = -1, worst_contact_j = -1;
  int worst_immersion_i = -1, worst_immersion_j = -1;
};

ValidationReport validate_legendre(const LegendreGrid& g, const ValidationOptions& opt = {},
                                   Exec exec = default_exec());

struct CurvatureOptions {
  double umbilic_tol = 1e-6;  // on both kappa_gap and sphere_gap
};

struct CurvaturePoint {
  LieVec s1, s2;                // unit representatives, signs aligned across the grid
  Eigen::Vector2d c1, c2;       // coefficients on (sigma, tau)
  Eigen::Vector2d dir1, dir2;   // (u, theta) components, unit length
  double kappa_gap = 0.0;       // degeneracy of the pencil (B_u, B_theta); 0 at an umbilic
  double sphere_gap = 0.0;      // projective distance between s1 and s2
  bool umbilic = false;
};

struct CurvatureData {
  GridSpec spec;
  std::vector<CurvaturePoint> pts;
  double umbilic_tol = 0.0;
  int umbilic_count = 0;
  const CurvaturePoint& at(int i, int j) const { return pts[spec.index(i, j)]; }
};

CurvatureData curvature_data(const LegendreGrid& g, const CurvatureOptions& opt = {},
                             Exec exec = default_exec());

struct SplitPoint {
  Subspace s1, s2;
  Mat6 n_u = Mat6::Zero(), n_th = Mat6::Zero();
  bool ok = false;
};

struct LieCyclideSplit {
  GridSpec spec;
  std::vector<SplitPoint> pts;
  double max_cross_inner = 0.0;      // S1 against S2
  double max_complement_res = 0.0;   // S2 against orth_complement(S1)
  double max_diagonal_block = 0.0;   // |P1 N P1| + |P2 N P2|
  double max_skew_defect = 0.0;
  std::vector<std::string> failures;  // per-point signature or umbilic failures
  const SplitPoint& at(int i, int j) const { return pts[spec.index(i, j)]; }
};

// Metric projection onto S along S^perp.
Mat6 metric_projector(const Subspace& s);

LieCyclideSplit lie_cyclide_split(const LegendreGrid& g, const CurvatureData& cd,
                                  Exec exec = default_exec());

enum class CircularDir { none, dir1, dir2, both };
std::string to_string(CircularDir d);

struct ChannelOptions {
  double channel_tol = -1.0;  // negative: max(1e-8, 10 h^2)
};

struct ChannelReport {
  CircularDir circular = CircularDir::none;
  CircularDir circular_by_n = CircularDir::none;
  double variation1 = 0.0, variation2 = 0.0;  // max projective variation of s_i along dir_i
  double n1 = 0.0, n2 = 0.0;                  // max |N(dir_i)|
  double tol = 0.0;
  bool agree = false;
  bool dir1_circular() const { return circular == CircularDir::dir1 || circular == CircularDir::both; }
  bool dir2_circular() const { return circular == CircularDir::dir2 || circular == CircularDir::both; }
};

ChannelReport is_channel(const LegendreGrid& g, const CurvatureData& cd, const LieCyclideSplit& split,
                         const ChannelOptions& opt = {}, Exec exec = default_exec());
ChannelReport is_channel(const LegendreGrid& g, const CurvatureData& cd,
                         const ChannelOptions& opt = {}, Exec exec = default_exec());

// tau6 sigma - sigma6 tau; nullopt when the element has no finite point.
std::optional<LieVec> point_sphere_of(const LieVec& sigma, const LieVec& tau, double tol = 1e-9);
std::optional<Vec3> surface_point(const LegendreGrid& g, int i, int j);

struct SphericalLineResult {
  double residual = 0.0;  // smallest singular value of the normalised point matrix
  LieVec sphere;          // minimiser, completed to a null vector when possible
  bool sphere_is_real = false;
  int samples = 0;
};

// direction Axis::th: the line i = index; Axis::u: the line j = index.
SphericalLineResult spherical_line_residual(const LegendreGrid& g, Axis direction, int index);

}  // namespace liesphere
