#include "liesphere/core.hpp"

#include <cmath>
#include <sstream>

namespace liesphere {

const Mat6& metric() {
  static const Mat6 g = [] {
    Mat6 m = Mat6::Zero();
    m.diagonal() << 1, 1, 1, 1, -1, -1;
    return m;
  }();
  return g;
}

LieVec basis(int k) {
  if (k < 1 || k > 6) throw PreconditionError("basis index must lie in 1..6, got " + std::to_string(k));
  LieVec e = LieVec::Zero();
  e(k - 1) = 1.0;
  return e;
}

double null_residual(const LieVec& v) {
  const double n2 = v.squaredNorm();
  if (n2 == 0.0) return 0.0;
  return std::abs(inner(v, v)) / n2;
}

double projective_distance(const LieVec& a, const LieVec& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 1.0;
  const LieVec ua = a / na, ub = b / nb;
  const double c = ua.dot(ub);
  // |sin| through the rejection, stable near 0
  return (ub - c * ua).norm();
}

LiePoint::LiePoint(const LieVec& rep, double tol_null) : rep_(rep), tol_null_(tol_null) {
  if (rep.norm() == 0.0) throw PreconditionError("LiePoint: zero representative");
  const double res = null_residual(rep);
  if (res > tol_null) {
    std::ostringstream os;
    os << "LiePoint: representative is not null (residual " << res << " > " << tol_null << ")";
    throw PreconditionError(os.str());
  }
}

LiePoint sphere_lift(const Vec3& c, double r) {
  const double c2 = c.squaredNorm(), r2 = r * r;
  LieVec v;
  v << c(0), c(1), c(2), 0.5 * (1.0 - c2 + r2), 0.5 * (1.0 + c2 - r2), r;
  return LiePoint(v);
}

LiePoint plane_lift(const Vec3& n, double d) {
  if (std::abs(n.norm() - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "plane_lift: normal must be unit within 1e-12, |n| = " << n.norm();
    throw PreconditionError(os.str());
  }
  LieVec v;
  v << n(0), n(1), n(2), -d, d, 1.0;
  return LiePoint(v);
}

LieVec lift(const EuclideanSphere& s) {
  struct Visitor {
    LieVec operator()(const Sphere& x) const { return sphere_lift(x.center, x.radius).rep(); }
    LieVec operator()(const Plane& x) const { return plane_lift(x.normal, x.offset).rep(); }
    LieVec operator()(const Point& x) const { return point_lift(x.position).rep(); }
    LieVec operator()(const Infinity&) const {
      LieVec v;
      v << 0, 0, 0, -1, 1, 0;
      return v;
    }
  };
  return std::visit(Visitor{}, s);
}

EuclideanSphere project_to_euclidean(const LieVec& v, double tol_null, double tol_proj) {
  const double res = null_residual(v);
  if (res > tol_null) {
    std::ostringstream os;
    os << "project_to_euclidean: vector is not null (residual " << res << ")";
    throw PreconditionError(os.str());
  }
  const double scale = v.norm();
  const double h = v(3) + v(4);
  if (std::abs(h) > tol_proj * scale) {
    const LieVec w = v / h;
    if (std::abs(w(5)) <= tol_proj * w.norm()) return Point{Vec3(w(0), w(1), w(2))};
    return Sphere{Vec3(w(0), w(1), w(2)), w(5)};
  }
  if (std::abs(v(5)) > tol_proj * scale) {
    const LieVec w = v / v(5);
    return Plane{Vec3(w(0), w(1), w(2)), -w(3)};
  }
  return Infinity{};
}

std::string describe(const EuclideanSphere& s) {
  std::ostringstream os;
  struct Visitor {
    std::ostringstream& os;
    void operator()(const Sphere& x) const {
      os << "Sphere(c=(" << x.center.transpose() << "), r=" << x.radius << ")";
    }
    void operator()(const Plane& x) const {
      os << "Plane(n=(" << x.normal.transpose() << "), d=" << x.offset << ")";
    }
    void operator()(const Point& x) const { os << "Point(" << x.position.transpose() << ")"; }
    void operator()(const Infinity&) const { os << "Infinity"; }
  };
  std::visit(Visitor{os}, s);
  return os.str();
}

double SkewMap::skew_defect() const {
  // (m a, b) + (a, m b) = a^T (m^T G + G m) b
  const Mat6& g = metric();
  return (m.transpose() * g + g * m).cwiseAbs().maxCoeff();
}

SkewMap wedge(const LieVec& a, const LieVec& b) {
  const Mat6& g = metric();
  SkewMap w;
  w.m = b * (g * a).transpose() - a * (g * b).transpose();
  return w;
}

SkewMap curly_wedge(const LieVec& w1_u, const LieVec& w1_theta, const LieVec& w2_u,
                    const LieVec& w2_theta) {
  return wedge(w1_u, w2_theta) - wedge(w1_theta, w2_u);
}

SkewMap form_bracket(const SkewMap& a_u, const SkewMap& a_theta, const SkewMap& b_u,
                     const SkewMap& b_theta) {
  SkewMap r;
  r.m = (a_u.m * b_theta.m - b_theta.m * a_u.m) - (a_theta.m * b_u.m - b_u.m * a_theta.m);
  return r;
}

Mat6 parallel_transform_matrix(double a) {
  // x4' = x4 + a x6 + a^2/2 (x4+x5), x5' = x5 - a x6 - a^2/2 (x4+x5), x6' = x6 + a (x4+x5)
  Mat6 p = Mat6::Identity();
  const double h = 0.5 * a * a;
  p(3, 3) += h;
  p(3, 4) += h;
  p(3, 5) += a;
  p(4, 3) -= h;
  p(4, 4) -= h;
  p(4, 5) -= a;
  p(5, 3) += a;
  p(5, 4) += a;
  return p;
}

LieVec parallel_transform(const LieVec& v, double a) { return parallel_transform_matrix(a) * v; }

LiePoint parallel_transform(const LiePoint& p, double a) {
  return LiePoint(parallel_transform(p.rep(), a), p.tol_null());
}

double orthogonality_defect(const Mat6& m) {
  const Mat6& g = metric();
  return (m.transpose() * g * m - g).cwiseAbs().maxCoeff();
}

}  // namespace liesphere
