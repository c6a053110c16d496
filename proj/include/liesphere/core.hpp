#pragma once

// Hexaspherical coordinates on R^{4,2}: metric, sphere/plane lifts,
// space-form projection and the o(4,2) ~ Lambda^2 identification.

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <variant>

namespace liesphere {

using LieVec = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec3 = Eigen::Vector3d;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented precondition (non-null vector, wrong signature, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A spanning set, or a derived subspace, lost rank.
class RankDeficiencyError : public Error {
 public:
  using Error::Error;
};

// Basis order (x1..x6), signs (+,+,+,+,-,-).
const Mat6& metric();

inline double inner(const LieVec& a, const LieVec& b) {
  return a(0) * b(0) + a(1) * b(1) + a(2) * b(2) + a(3) * b(3) - a(4) * b(4) - a(5) * b(5);
}

// e_k, 1-based to match the coordinate names.
LieVec basis(int k);

// |(v,v)| / |v|^2, the scale-free lightcone residual.
double null_residual(const LieVec& v);

// |sin| of the Euclidean angle between the lines spanned by a and b.
double projective_distance(const LieVec& a, const LieVec& b);

// Projective lightcone point.
class LiePoint {
 public:
  static constexpr double kDefaultNullTol = 1e-10;

  explicit LiePoint(const LieVec& rep, double tol_null = kDefaultNullTol);

  const LieVec& rep() const { return rep_; }
  double tol_null() const { return tol_null_; }

  // Scale-invariant comparison with |sin angle| <= tol.
  bool same_as(const LiePoint& other, double tol = 1e-8) const {
    return projective_distance(rep_, other.rep_) <= tol;
  }

 private:
  LieVec rep_;
  double tol_null_;
};

struct Sphere {
  Vec3 center;
  double radius;  // signed; sign is the orientation
};
struct Plane {
  Vec3 normal;  // unit
  double offset;
};
struct Point {
  Vec3 position;
};
struct Infinity {};

using EuclideanSphere = std::variant<Sphere, Plane, Point, Infinity>;

// (c, (1-|c|^2+r^2)/2, (1+|c|^2-r^2)/2, r)
LiePoint sphere_lift(const Vec3& center, double radius);
inline LiePoint point_lift(const Vec3& p) { return sphere_lift(p, 0.0); }

// (n, -d, d, 1); contact with sphere_lift(c, r) iff c.n - d = r.
LiePoint plane_lift(const Vec3& normal, double offset);

LieVec lift(const EuclideanSphere& s);

// Rejects vectors off the lightcone (residual > tol_null); tol_proj is the
// relative threshold for the x4+x5 and x6 branches.
EuclideanSphere project_to_euclidean(const LieVec& v, double tol_null = LiePoint::kDefaultNullTol,
                                     double tol_proj = 1e-12);
inline EuclideanSphere project_to_euclidean(const LiePoint& p, double tol_proj = 1e-12) {
  return project_to_euclidean(p.rep(), p.tol_null(), tol_proj);
}

std::string describe(const EuclideanSphere& s);

// Element of o(4,2) acting on LieVecs.
struct SkewMap {
  Mat6 m = Mat6::Zero();

  LieVec operator()(const LieVec& v) const { return m * v; }

  // max |(m a, b) + (a, m b)| over basis pairs
  double skew_defect() const;

  SkewMap operator+(const SkewMap& o) const { return {m + o.m}; }
  SkewMap operator-(const SkewMap& o) const { return {m - o.m}; }
  SkewMap operator*(double s) const { return {m * s}; }
  double norm() const { return m.norm(); }

  static SkewMap zero() { return {}; }
};

// a^b(c) = (a,c) b - (b,c) a
SkewMap wedge(const LieVec& a, const LieVec& b);

// (w1 curlywedge w2)(du, dtheta) for vector-valued 1-forms given by components.
SkewMap curly_wedge(const LieVec& w1_u, const LieVec& w1_theta, const LieVec& w2_u,
                    const LieVec& w2_theta);

// [A^B](du, dtheta) = [A_u, B_theta] - [A_theta, B_u]
SkewMap form_bracket(const SkewMap& a_u, const SkewMap& a_theta, const SkewMap& b_u,
                     const SkewMap& b_theta);

// Lie sphere transformation shifting every signed radius by a.
Mat6 parallel_transform_matrix(double a);
LieVec parallel_transform(const LieVec& v, double a);
LiePoint parallel_transform(const LiePoint& p, double a);

// max |M^T G M - G|, zero for elements of O(4,2)
double orthogonality_defect(const Mat6& m);

}  // namespace liesphere
