#pragma once

// Symmetry breaking by a timelike p: curves as point-sphere curves, tubes, Ribaucour
// pairs of curves and their circle congruences, and the isotropy projection to R^{3,1}.

#include "liesphere/transforms.hpp"

#include <vector>

namespace liesphere {

struct MinkowskiPoint {
  Vec3 c = Vec3::Zero();
  double r = 0.0;
};

// Throws PreconditionError for planes and the point at infinity.
MinkowskiPoint isotropy_projection(const LiePoint& p);
LiePoint isotropy_lift(const MinkowskiPoint& q);

// A Lie sphere transformation (a metric reflection, or the identity) taking e6 to the
// normalised p. Throws unless p is timelike.
Mat6 polarity_map(const LieVec& p);

class ConformalCurve {
 public:
  static ConformalCurve from_fn(const CenterFn& gamma, const CurveGrid& grid, const LieVec& p = basis(6),
                                double eps = 1e-6);
  static ConformalCurve from_points(const std::vector<Vec3>& pts, const CurveGrid& grid,
                                    const LieVec& p = basis(6), double eps = 1e-6);

  const CurveGrid& grid() const { return lift_.grid(); }
  const std::vector<Vec3>& gamma() const { return gamma_; }
  const std::vector<Vec3>& tangent() const { return tangent_; }
  const std::vector<Vec3>& second() const { return second_; }
  const LieVec& p_vec() const { return p_; }
  const Mat6& polarity() const { return r_; }
  // point-sphere lifts, carried to p^perp by the polarity
  const SphereCurve& lift() const { return lift_; }
  double min_speed() const;

 private:
  static ConformalCurve build(SphereCurve point_lift, const LieVec& p, double eps);

  std::vector<Vec3> gamma_, tangent_, second_;
  LieVec p_ = basis(6);
  Mat6 r_ = Mat6::Identity();
  SphereCurve lift_;
};

EnvelopeResult curve_legendre_lift(const ConformalCurve& c, int n_th, Exec exec = default_exec());

struct TubeResult {
  LegendreGrid grid;       // frames of the curve lift mapped by the parallel transform
  SphereCurve curve;       // the tube's sphere curve
  Mat6 transform;          // polarity-conjugated parallel transform
  double focal_margin = 0; // min over u of 1 - |a| kappa(u); the tube is singular where it reaches 0
};

// Throws PreconditionError when a = 0 or the tube reaches a focal point.
TubeResult tube(const ConformalCurve& c, double a, int n_th, Exec exec = default_exec());
SphereCurve tube_curve(const ConformalCurve& c, double a);

// verify_ribaucour on the point-sphere lifts; coincident points throw PreconditionError.
RibaucourReport ribaucour_curve_check(const ConformalCurve& c1, const ConformalCurve& c2);

struct CircleSample {
  Vec3 point = Vec3::Zero();
  bool finite = false;
};

// Point of the circle through gamma1(u_i), gamma2(u_i) spanned by s1, s1', s2.
CircleSample circle_congruence(const ConformalCurve& c1, const ConformalCurve& c2, int i, double theta);

struct CircleCongruenceReport {
  double ribaucour = 0.0;       // max verify_ribaucour residual
  double membership = 0.0;      // max Euclidean distance of the curve points from their circles
  double tangency = 0.0;        // max angle (rad) between circle and curve tangents
  double nullity = 0.0;         // max null residual of sampled circle points
  double p_orthogonality = 0.0; // max |(x, p)| of sampled circle points
};

// Throws PreconditionError where the pair fails the Ribaucour test at tol.
CircleCongruenceReport circle_congruence_check(const ConformalCurve& c1, const ConformalCurve& c2,
                                               int n_theta = 32, double tol = -1.0,
                                               Exec exec = default_exec());

}  // namespace liesphere
