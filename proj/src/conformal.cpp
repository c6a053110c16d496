#include "liesphere/conformal.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

namespace liesphere {

namespace {

Vec3 head3(const LieVec& v) { return Vec3(v(0), v(1), v(2)); }

}  // namespace

MinkowskiPoint isotropy_projection(const LiePoint& p) {
  const EuclideanSphere e = project_to_euclidean(p);
  if (const auto* s = std::get_if<Sphere>(&e)) return {s->center, s->radius};
  if (const auto* q = std::get_if<Point>(&e)) return {q->position, 0.0};
  throw PreconditionError("isotropy_projection: " + describe(e) + " has no image in R^{3,1}");
}

LiePoint isotropy_lift(const MinkowskiPoint& q) { return sphere_lift(q.c, q.r); }

Mat6 polarity_map(const LieVec& p) {
  const double pp = inner(p, p);
  if (!(pp < -1e-12 * p.squaredNorm())) throw PreconditionError("polarity_map: p must be timelike");
  LieVec ph = p / std::sqrt(-pp);
  const LieVec e6 = basis(6);
  if ((ph - e6).norm() <= 1e-14 || (ph + e6).norm() <= 1e-14) return Mat6::Identity();
  // with ph_6 <= 0 the mirror w = e6 - ph is never null: (w, w) = 2 (ph_6 - 1)
  if (ph(5) > 0) ph = -ph;
  const LieVec w = e6 - ph;
  return Mat6::Identity() - 2.0 * w * (metric() * w).transpose() / inner(w, w);
}

ConformalCurve ConformalCurve::build(SphereCurve point_lift, const LieVec& p, double eps) {
  ConformalCurve c;
  c.r_ = polarity_map(p);
  c.p_ = c.r_ * basis(6);
  const int n = point_lift.size();
  for (int i = 0; i < n; ++i) {
    c.gamma_.push_back(head3(point_lift.value(i)) / (point_lift.value(i)(3) + point_lift.value(i)(4)));
    c.tangent_.push_back(head3(point_lift.d1(i)));
    c.second_.push_back(head3(point_lift.d2(i)));
  }
  c.lift_ = c.r_.isIdentity() ? std::move(point_lift) : point_lift.transformed(c.r_);
  const double sp = c.min_speed();
  if (sp < eps) {
    std::ostringstream os;
    os << "ConformalCurve: speed " << sp << " below " << eps;
    throw PreconditionError(os.str());
  }
  return c;
}

ConformalCurve ConformalCurve::from_fn(const CenterFn& gamma, const CurveGrid& grid, const LieVec& p,
                                       double eps) {
  return build(presets::sphere_curve(gamma, presets::constant_radius(0.0), grid), p, eps);
}

ConformalCurve ConformalCurve::from_points(const std::vector<Vec3>& pts, const CurveGrid& grid,
                                           const LieVec& p, double eps) {
  if (static_cast<int>(pts.size()) != grid.n) throw PreconditionError("ConformalCurve: point count does not match grid");
  return build(presets::sampled_sphere_curve(pts, std::vector<double>(pts.size(), 0.0), grid), p, eps);
}

double ConformalCurve::min_speed() const {
  double m = std::numeric_limits<double>::infinity();
  for (const Vec3& t : tangent_) m = std::min(m, t.norm());
  return m;
}

EnvelopeResult curve_legendre_lift(const ConformalCurve& c, int n_th, Exec exec) {
  return envelope(c.lift(), n_th, {}, exec);
}

SphereCurve tube_curve(const ConformalCurve& c, double a) {
  const Mat6 m = c.polarity() * parallel_transform_matrix(a) * c.polarity().inverse();
  return c.lift().transformed(m);
}

TubeResult tube(const ConformalCurve& c, double a, int n_th, Exec exec) {
  if (a == 0.0) throw PreconditionError("tube: radius must be nonzero");
  TubeResult t;
  t.focal_margin = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < c.tangent().size(); ++i) {
    const Vec3& d1 = c.tangent()[i];
    const double kappa = d1.cross(c.second()[i]).norm() / std::pow(d1.norm(), 3);
    t.focal_margin = std::min(t.focal_margin, 1.0 - std::abs(a) * kappa);
  }
  if (t.focal_margin <= 1e-6) {
    std::ostringstream os;
    os << "tube: radius " << a << " reaches a focal point (margin " << t.focal_margin << ")";
    throw PreconditionError(os.str());
  }
  t.transform = c.polarity() * parallel_transform_matrix(a) * c.polarity().inverse();
  t.curve = c.lift().transformed(t.transform);
  const EnvelopeResult base = curve_legendre_lift(c, n_th, exec);
  t.grid = base.grid.mapped([&](int) { return t.transform; });
  return t;
}

RibaucourReport ribaucour_curve_check(const ConformalCurve& c1, const ConformalCurve& c2) {
  return verify_ribaucour(c1.lift(), c2.lift());
}

namespace {

struct CircleAt {
  Mat6 back;       // undoes the polarity
  CircleFrame frame;
};

CircleAt circle_at(const ConformalCurve& c1, const ConformalCurve& c2, int i) {
  const LieVec& a = c1.lift().value(i);
  const Subspace s = span({a / a.norm(), c1.lift().d1(i) / a.norm(), c2.lift().value(i) / c2.lift().value(i).norm()});
  return {c1.polarity().inverse(), circle_frame(s)};
}

CircleSample sample(const CircleAt& c, double theta) {
  const EuclideanSphere e = project_to_euclidean(LieVec(c.back * c.frame.at(theta)), 1e-9);
  if (const auto* p = std::get_if<Point>(&e)) return {p->position, true};
  if (const auto* s = std::get_if<Sphere>(&e)) return {s->center, true};
  return {};
}

// circle parameter of the lightcone point x: x ~ cos E1 + sin E2 + E3
double parameter_of(const CircleFrame& f, const LieVec& x) { return std::atan2(inner(x, f.e2), inner(x, f.e1)); }

}  // namespace

CircleSample circle_congruence(const ConformalCurve& c1, const ConformalCurve& c2, int i, double theta) {
  return sample(circle_at(c1, c2, i), theta);
}

CircleCongruenceReport circle_congruence_check(const ConformalCurve& c1, const ConformalCurve& c2, int n_theta,
                                               double tol, Exec exec) {
  const RibaucourReport rib = ribaucour_curve_check(c1, c2);
  const double du = c1.grid().du;
  const double t = tol > 0 ? tol : std::max(1e-8, 10.0 * du * du);
  if (rib.max_residual > t) {
    std::ostringstream os;
    os << "circle_congruence: not a Ribaucour pair at sample " << rib.worst << " (residual " << rib.max_residual
       << " > " << t << ")";
    throw PreconditionError(os.str());
  }
  const int n = c1.grid().n;
  std::vector<CircleCongruenceReport> per(n);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int i = 0; i < n; ++i) {
    CircleCongruenceReport& r = per[i];
    const CircleAt c = circle_at(c1, c2, i);
    for (int k = 0; k < n_theta; ++k) {
      const LieVec x = c.frame.at(2.0 * std::numbers::pi * k / n_theta);
      r.nullity = std::max(r.nullity, null_residual(x));
      r.p_orthogonality = std::max(r.p_orthogonality, std::abs(inner(x, c1.p_vec())) / x.norm());
    }
    const ConformalCurve* cs[2] = {&c1, &c2};
    for (const ConformalCurve* cv : cs) {
      const double th = parameter_of(c.frame, cv->lift().value(i));
      const CircleSample at = sample(c, th);
      if (!at.finite) continue;
      r.membership = std::max(r.membership, (at.point - cv->gamma()[i]).norm());
      const double h = 1e-5;
      const CircleSample p = sample(c, th + h), m = sample(c, th - h);
      if (!p.finite || !m.finite) continue;
      const Vec3 tc = (p.point - m.point) / (2.0 * h);
      const Vec3& tg = cv->tangent()[i];
      r.tangency = std::max(r.tangency, std::atan2(tc.cross(tg).norm(), std::abs(tc.dot(tg))));
    }
  }
  CircleCongruenceReport out;
  out.ribaucour = rib.max_residual;
  for (const auto& r : per) {
    out.membership = std::max(out.membership, r.membership);
    out.tangency = std::max(out.tangency, r.tangency);
    out.nullity = std::max(out.nullity, r.nullity);
    out.p_orthogonality = std::max(out.p_orthogonality, r.p_orthogonality);
  }
  return out;
}

}  // namespace liesphere
