#include "liesphere/legendre.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <sstream>

namespace liesphere {

LegendreGrid::LegendreGrid(const GridSpec& spec)
    : spec_(spec), sigma_(spec.size(), LieVec::Zero()), tau_(spec.size(), LieVec::Zero()) {}

void LegendreGrid::set(int i, int j, const LieVec& s, const LieVec& t) {
  const int k = spec_.index(i, j);
  sigma_[k] = s / s.norm();
  tau_[k] = t / t.norm();
}

LegendreGrid LegendreGrid::from_frames(const GridSpec& spec, std::vector<LieVec> sigma,
                                       std::vector<LieVec> tau, double iso_tol) {
  if (static_cast<int>(sigma.size()) != spec.size() || static_cast<int>(tau.size()) != spec.size())
    throw PreconditionError("LegendreGrid: frame count does not match grid");
  LegendreGrid g(spec);
  for (int i = 0; i < spec.n_u; ++i)
    for (int j = 0; j < spec.n_th; ++j) {
      const int k = spec.index(i, j);
      g.set(i, j, sigma[k], tau[k]);
    }
  const double iso = g.max_isotropy();
  if (iso > iso_tol) {
    std::ostringstream os;
    os << "LegendreGrid: isotropy residual " << iso << " exceeds " << iso_tol;
    throw PreconditionError(os.str());
  }
  return g;
}

double LegendreGrid::max_isotropy() const {
  double mx = 0.0;
  for (size_t k = 0; k < sigma_.size(); ++k) {
    mx = std::max({mx, std::abs(inner(sigma_[k], sigma_[k])), std::abs(inner(tau_[k], tau_[k])),
                   std::abs(inner(sigma_[k], tau_[k]))});
  }
  return mx;
}

LegendreGrid make_legendre_from_surface(const std::vector<Vec3>& points,
                                        const std::vector<Vec3>& normals, const GridSpec& spec) {
  if (static_cast<int>(points.size()) != spec.size() || points.size() != normals.size())
    throw PreconditionError("make_legendre_from_surface: point/normal grids differ in shape");
  std::vector<LieVec> s(points.size()), t(points.size());
  for (size_t k = 0; k < points.size(); ++k) {
    if (std::abs(normals[k].norm() - 1.0) > 1e-12) {
      std::ostringstream os;
      os << "make_legendre_from_surface: non-unit normal at (" << k / spec.n_th << ","
         << k % spec.n_th << ")";
      throw PreconditionError(os.str());
    }
    s[k] = point_lift(points[k]).rep();
    t[k] = plane_lift(normals[k], points[k].dot(normals[k])).rep();
  }
  return LegendreGrid::from_frames(spec, std::move(s), std::move(t));
}

Quotient quotient_of(const LieVec& sigma, const LieVec& tau) {
  // N: the part of f^perp Euclidean-orthogonal to f
  Eigen::Matrix<double, 4, 6> c;
  c.row(0) = (metric() * sigma).transpose();
  c.row(1) = (metric() * tau).transpose();
  c.row(2) = sigma.transpose();
  c.row(3) = tau.transpose();
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 6>> svd(c, Eigen::ComputeFullV);
  const Eigen::Matrix<double, 6, 2> n = svd.matrixV().rightCols(2);
  Quotient q;
  q.gram = n.transpose() * metric() * n;
  const Eigen::LLT<Eigen::Matrix2d> llt(q.gram);
  const Eigen::Matrix2d linv = Eigen::Matrix2d(llt.matrixL()).inverse();
  q.proj = linv * n.transpose() * metric();
  return q;
}

namespace {

struct FrameDerivs {
  LieVec s_u, t_u, s_th, t_th;
};

FrameDerivs frame_derivs(const LegendreGrid& g, int i, int j) {
  const Line lu = Line::of(g.spec(), Axis::u), lt = Line::of(g.spec(), Axis::th);
  FrameDerivs d;
  d.s_u = lu.d1(i, [&](int k) -> LieVec { return g.sigma(k, j); });
  d.t_u = lu.d1(i, [&](int k) -> LieVec { return g.tau(k, j); });
  d.s_th = lt.d1(j, [&](int k) -> LieVec { return g.sigma(i, k); });
  d.t_th = lt.d1(j, [&](int k) -> LieVec { return g.tau(i, k); });
  return d;
}

double default_tol(double requested, const GridSpec& s) {
  if (requested > 0) return requested;
  const double h = s.h();
  return std::max(1e-8, 10.0 * h * h);
}

}  // namespace

ValidationReport validate_legendre(const LegendreGrid& g, const ValidationOptions& opt, Exec exec) {
  const GridSpec& s = g.spec();
  const int n = s.size();
  std::vector<double> contact(n, 0.0), immersion(n, 0.0);
  const Line lu = Line::of(s, Axis::u), lt = Line::of(s, Axis::th);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int k = 0; k < n; ++k) {
    const int i = k / s.n_th, j = k % s.n_th;
    const LieVec& sg = g.sigma(i, j);
    const LieVec& tu = g.tau(i, j);
    const FrameDerivs d = frame_derivs(g, i, j);
    double c = 0.0;
    auto acc = [&](const LieVec& dv) {
      c = std::max({c, std::abs(inner(dv, sg)), std::abs(inner(dv, tu))});
    };
    if (lu.interior(i)) {
      acc(d.s_u);
      acc(d.t_u);
    }
    if (lt.interior(j)) {
      acc(d.s_th);
      acc(d.t_th);
    }
    contact[k] = c;
    const Quotient q = quotient_of(sg, tu);
    Eigen::Matrix<double, 4, 2> b;
    b << q(d.s_u), q(d.s_th), q(d.t_u), q(d.t_th);
    immersion[k] = Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>>(b).singularValues()(1);
  }
  ValidationReport r;
  r.isotropy = g.max_isotropy();
  r.immersion = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    if (contact[k] > r.contact) {
      r.contact = contact[k];
      r.worst_contact_i = k / s.n_th;
      r.worst_contact_j = k % s.n_th;
    }
    if (immersion[k] < r.immersion) {
      r.immersion = immersion[k];
      r.worst_immersion_i = k / s.n_th;
      r.worst_immersion_j = k % s.n_th;
    }
  }
  r.contact_tol = default_tol(opt.contact_tol, s);
  r.pass = r.isotropy <= opt.isotropy_tol && r.contact <= r.contact_tol &&
           r.immersion > opt.immersion_tol;
  return r;
}

namespace {

Eigen::Vector2d null_direction(const Eigen::Matrix2d& m) {
  // m = [B_u v, B_th v]; X with X_u m.col(0) + X_th m.col(1) = 0
  const Eigen::Vector2d r = m.row(0).norm() >= m.row(1).norm() ? Eigen::Vector2d(m.row(0))
                                                                : Eigen::Vector2d(m.row(1));
  Eigen::Vector2d x(r(1), -r(0));
  const double nx = x.norm();
  return nx > 0 ? Eigen::Vector2d(x / nx) : Eigen::Vector2d(0.0, 1.0);
}

CurvaturePoint curvature_point(const LegendreGrid& g, int i, int j, double umbilic_tol) {
  const LieVec& sg = g.sigma(i, j);
  const LieVec& tu = g.tau(i, j);
  const FrameDerivs d = frame_derivs(g, i, j);
  const Quotient q = quotient_of(sg, tu);
  Eigen::Matrix2d bu, bt;
  bu << q(d.s_u), q(d.t_u);
  bt << q(d.s_th), q(d.t_th);

  CurvaturePoint p;
  Eigen::Matrix<double, 4, 2> stacked;
  stacked << bu, bt;
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>> svd(stacked, Eigen::ComputeFullV);
  const Eigen::Vector2d sv = svd.singularValues();
  p.kappa_gap = sv(0) > 0 ? sv(1) / sv(0) : 0.0;

  const Eigen::Matrix2d k0 = bu.row(0).transpose() * bt.row(1) - bu.row(1).transpose() * bt.row(0);
  const Eigen::Matrix2d kk = 0.5 * (k0 + k0.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(kk);
  const Eigen::Vector2d kv = es.eigenvalues();
  const Eigen::Matrix2d ke = es.eigenvectors();

  Eigen::Vector2d va, vb;
  if (p.kappa_gap < umbilic_tol || kv(0) * kv(1) >= 0.0) {
    p.umbilic = true;
    va = vb = svd.matrixV().col(1);
  } else {
    va = std::sqrt(kv(1)) * ke.col(0) + std::sqrt(-kv(0)) * ke.col(1);
    vb = std::sqrt(kv(1)) * ke.col(0) - std::sqrt(-kv(0)) * ke.col(1);
  }
  Eigen::Matrix2d ma, mb;
  ma << bu * va, bt * va;
  mb << bu * vb, bt * vb;
  Eigen::Vector2d xa = null_direction(ma), xb = null_direction(mb);
  if (p.umbilic) {
    xa = Eigen::Vector2d(0.0, 1.0);
    xb = Eigen::Vector2d(1.0, 0.0);
  }
  if (std::abs(xb(1)) > std::abs(xa(1))) {
    std::swap(va, vb);
    std::swap(xa, xb);
  }
  if (xa(1) < 0) xa = -xa;
  if (xb(0) < 0) xb = -xb;
  p.dir1 = xa;
  p.dir2 = xb;
  auto sphere = [&](const Eigen::Vector2d& v, LieVec& s, Eigen::Vector2d& c) {
    const LieVec raw = v(0) * sg + v(1) * tu;
    const double nr = raw.norm();
    s = raw / nr;
    c = v / nr;
  };
  sphere(va, p.s1, p.c1);
  sphere(vb, p.s2, p.c2);
  p.sphere_gap = projective_distance(p.s1, p.s2);
  if (p.sphere_gap < umbilic_tol) p.umbilic = true;
  return p;
}

}  // namespace

CurvatureData curvature_data(const LegendreGrid& g, const CurvatureOptions& opt, Exec exec) {
  const GridSpec& s = g.spec();
  CurvatureData cd;
  cd.spec = s;
  cd.umbilic_tol = opt.umbilic_tol;
  cd.pts.resize(s.size());
  const double tol = cd.umbilic_tol;
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int k = 0; k < s.size(); ++k) cd.pts[k] = curvature_point(g, k / s.n_th, k % s.n_th, tol);

  // row-major sign propagation
  for (int i = 0; i < s.n_u; ++i)
    for (int j = 0; j < s.n_th; ++j) {
      if (i == 0 && j == 0) continue;
      CurvaturePoint& p = cd.pts[s.index(i, j)];
      const CurvaturePoint& ref = j > 0 ? cd.pts[s.index(i, j - 1)] : cd.pts[s.index(i - 1, 0)];
      if (p.s1.dot(ref.s1) < 0) {
        p.s1 = -p.s1;
        p.c1 = -p.c1;
      }
      if (p.s2.dot(ref.s2) < 0) {
        p.s2 = -p.s2;
        p.c2 = -p.c2;
      }
    }
  for (const auto& p : cd.pts) cd.umbilic_count += p.umbilic ? 1 : 0;
  return cd;
}

Mat6 metric_projector(const Subspace& s) {
  const Basis& b = s.basis();
  const Eigen::MatrixXd gb = metric() * b;
  const Eigen::MatrixXd m = b.transpose() * gb;
  return b * m.inverse() * gb.transpose();
}

namespace {

// Y . D field at (i,j). Neighbour values are sign-aligned through ref, the curvature
// sphere whose representative fixes the sign of the field; row-major sign propagation
// may leave a flip across the periodic seam.
template <class F, class R>
LieVec directional(const GridSpec& s, int i, int j, const Eigen::Vector2d& y, F&& field, R&& ref) {
  const Line lu = Line::of(s, Axis::u), lt = Line::of(s, Axis::th);
  const LieVec c = ref(i, j);
  auto at = [&](int a, int b) -> LieVec { return ref(a, b).dot(c) < 0 ? LieVec(-field(a, b)) : field(a, b); };
  const LieVec du = lu.d1(i, [&](int k) -> LieVec { return at(k, j); });
  const LieVec dt = lt.d1(j, [&](int k) -> LieVec { return at(i, k); });
  return y(0) * du + y(1) * dt;
}

}  // namespace

LieCyclideSplit lie_cyclide_split(const LegendreGrid& g, const CurvatureData& cd, Exec exec) {
  const GridSpec& s = g.spec();
  const int n = s.size();
  LieCyclideSplit out;
  out.spec = s;
  out.pts.resize(n);
  std::vector<LieVec> w1(n), w2(n);
  auto s1 = [&](int i, int j) -> LieVec { return cd.at(i, j).s1; };
  auto s2 = [&](int i, int j) -> LieVec { return cd.at(i, j).s2; };
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int k = 0; k < n; ++k) {
    const int i = k / s.n_th, j = k % s.n_th;
    const CurvaturePoint& p = cd.pts[k];
    w1[k] = directional(s, i, j, p.dir2, s1, s1);
    w2[k] = directional(s, i, j, p.dir1, s2, s2);
  }
  std::vector<Mat6> p1(n, Mat6::Zero());
  std::vector<char> ok(n, 0);
  auto w1f = [&](int i, int j) -> LieVec { return w1[s.index(i, j)]; };
  auto w2f = [&](int i, int j) -> LieVec { return w2[s.index(i, j)]; };
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int k = 0; k < n; ++k) {
    const int i = k / s.n_th, j = k % s.n_th;
    const CurvaturePoint& p = cd.pts[k];
    if (p.umbilic) continue;
    const LieVec z1 = directional(s, i, j, p.dir2, w1f, s1);
    const LieVec z2 = directional(s, i, j, p.dir1, w2f, s2);
    Basis b1(6, 3), b2(6, 3);
    b1 << p.s1, w1[k] / w1[k].norm(), z1 / z1.norm();
    b2 << p.s2, w2[k] / w2[k].norm(), z2 / z2.norm();
    SplitPoint& sp = out.pts[k];
    sp.s1 = Subspace::from_columns(b1, 1e-8);
    sp.s2 = Subspace::from_columns(b2, 1e-8);
    const Signature want{2, 1, 0};
    if (sp.s1.dim() == 3 && sp.s2.dim() == 3 && sp.s1.signature() == want &&
        sp.s2.signature() == want) {
      p1[k] = metric_projector(sp.s1);
      ok[k] = 1;
      sp.ok = true;
    }
  }
  const Line lu = Line::of(s, Axis::u), lt = Line::of(s, Axis::th);
  std::vector<double> cross(n, 0.0), comp(n, 0.0), diag(n, 0.0), skew(n, 0.0);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int k = 0; k < n; ++k) {
    if (!ok[k]) continue;
    const int i = k / s.n_th, j = k % s.n_th;
    // stencils need valid neighbours
    auto nb_ok = [&](const Line& l, int idx, auto at) {
      const int lo = l.interior(idx) ? idx - 1 : (idx == 0 ? 0 : idx - 2);
      const int hi = l.interior(idx) ? idx + 1 : (idx == 0 ? 2 : idx);
      for (int m = lo; m <= hi; ++m)
        if (!ok[at(l.wrap(m))]) return false;
      return true;
    };
    SplitPoint& sp = out.pts[k];
    const Mat6& pk = p1[k];
    if (nb_ok(lu, i, [&](int m) { return s.index(m, j); })) {
      const Mat6 dp = lu.d1(i, [&](int m) -> Mat6 { return p1[s.index(m, j)]; });
      sp.n_u = dp * pk - pk * dp;
    }
    if (nb_ok(lt, j, [&](int m) { return s.index(i, m); })) {
      const Mat6 dp = lt.d1(j, [&](int m) -> Mat6 { return p1[s.index(i, m)]; });
      sp.n_th = dp * pk - pk * dp;
    }
    cross[k] = cross_inner(sp.s1, sp.s2);
    comp[k] = subspace_equal(sp.s2, orth_complement(sp.s1)).residual;
    const Mat6 p2 = Mat6::Identity() - pk;
    diag[k] = std::max((pk * sp.n_u * pk).norm() + (p2 * sp.n_u * p2).norm(),
                       (pk * sp.n_th * pk).norm() + (p2 * sp.n_th * p2).norm());
    skew[k] = std::max(SkewMap{sp.n_u}.skew_defect(), SkewMap{sp.n_th}.skew_defect());
  }
  for (int k = 0; k < n; ++k) {
    out.max_cross_inner = std::max(out.max_cross_inner, cross[k]);
    out.max_complement_res = std::max(out.max_complement_res, comp[k]);
    out.max_diagonal_block = std::max(out.max_diagonal_block, diag[k]);
    out.max_skew_defect = std::max(out.max_skew_defect, skew[k]);
    if (!ok[k] && out.failures.size() < 20) {
      std::ostringstream os;
      os << "(" << k / s.n_th << "," << k % s.n_th << "): "
         << (cd.pts[k].umbilic ? "umbilic" : "cyclide signature is not (2,1,0)");
      out.failures.push_back(os.str());
    }
  }
  return out;
}

std::string to_string(CircularDir d) {
  switch (d) {
    case CircularDir::none: return "none";
    case CircularDir::dir1: return "dir1";
    case CircularDir::dir2: return "dir2";
    case CircularDir::both: return "both";
  }
  return "none";
}

namespace {

CircularDir classify(bool c1, bool c2) {
  if (c1 && c2) return CircularDir::both;
  if (c1) return CircularDir::dir1;
  if (c2) return CircularDir::dir2;
  return CircularDir::none;
}

}  // namespace

ChannelReport is_channel(const LegendreGrid& g, const CurvatureData& cd, const LieCyclideSplit& split,
                         const ChannelOptions& opt, Exec exec) {
  const GridSpec& s = g.spec();
  const int n = s.size();
  std::vector<double> v1(n, 0.0), v2(n, 0.0), m1(n, 0.0), m2(n, 0.0);
  auto s1 = [&](int i, int j) -> LieVec { return cd.at(i, j).s1; };
  auto s2 = [&](int i, int j) -> LieVec { return cd.at(i, j).s2; };
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int k = 0; k < n; ++k) {
    const int i = k / s.n_th, j = k % s.n_th;
    const CurvaturePoint& p = cd.pts[k];
    if (p.umbilic) continue;
    const LieVec d1 = directional(s, i, j, p.dir1, s1, s1);
    const LieVec d2 = directional(s, i, j, p.dir2, s2, s2);
    v1[k] = (d1 - p.s1.dot(d1) * p.s1).norm();
    v2[k] = (d2 - p.s2.dot(d2) * p.s2).norm();
    const SplitPoint& sp = split.pts[k];
    if (sp.ok) {
      m1[k] = (p.dir1(0) * sp.n_u + p.dir1(1) * sp.n_th).norm();
      m2[k] = (p.dir2(0) * sp.n_u + p.dir2(1) * sp.n_th).norm();
    }
  }
  ChannelReport r;
  for (int k = 0; k < n; ++k) {
    r.variation1 = std::max(r.variation1, v1[k]);
    r.variation2 = std::max(r.variation2, v2[k]);
    r.n1 = std::max(r.n1, m1[k]);
    r.n2 = std::max(r.n2, m2[k]);
  }
  r.tol = default_tol(opt.channel_tol, s);
  r.circular = classify(r.variation1 <= r.tol, r.variation2 <= r.tol);
  r.circular_by_n = classify(r.n1 <= r.tol, r.n2 <= r.tol);
  r.agree = r.circular == r.circular_by_n;
  return r;
}

ChannelReport is_channel(const LegendreGrid& g, const CurvatureData& cd, const ChannelOptions& opt,
                         Exec exec) {
  return is_channel(g, cd, lie_cyclide_split(g, cd, exec), opt, exec);
}

std::optional<LieVec> point_sphere_of(const LieVec& sigma, const LieVec& tau, double tol) {
  LieVec v = tau(5) * sigma - sigma(5) * tau;
  const double nv = v.norm();
  if (nv <= tol * std::max(sigma.norm(), tau.norm())) return std::nullopt;
  const double h = v(3) + v(4);
  if (std::abs(h) <= tol * nv) return std::nullopt;
  return LieVec(v / h);
}

std::optional<Vec3> surface_point(const LegendreGrid& g, int i, int j) {
  const auto p = point_sphere_of(g.sigma(i, j), g.tau(i, j));
  if (!p) return std::nullopt;
  return Vec3((*p)(0), (*p)(1), (*p)(2));
}

SphericalLineResult spherical_line_residual(const LegendreGrid& g, Axis direction, int index) {
  const GridSpec& s = g.spec();
  const int len = direction == Axis::th ? s.n_th : s.n_u;
  if (len < 6) throw PreconditionError("spherical_line_residual: need at least 6 samples on the line");
  std::vector<LieVec> pts;
  for (int k = 0; k < len; ++k) {
    const int i = direction == Axis::th ? index : k;
    const int j = direction == Axis::th ? k : index;
    const auto p = point_sphere_of(g.sigma(i, j), g.tau(i, j));
    if (p) pts.push_back(*p);
  }
  if (pts.size() < 6) throw PreconditionError("spherical_line_residual: fewer than 6 finite points");
  // x6 of a point sphere vanishes, so the sixth column carries no information
  Eigen::MatrixXd m(pts.size(), 5);
  for (size_t r = 0; r < pts.size(); ++r) {
    Eigen::Matrix<double, 1, 5> row;
    row << pts[r](0), pts[r](1), pts[r](2), pts[r](3), -pts[r](4);
    m.row(static_cast<Eigen::Index>(r)) = row / row.norm();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  SphericalLineResult out;
  out.samples = static_cast<int>(pts.size());
  out.residual = svd.singularValues()(4);
  const Eigen::Matrix<double, 5, 1> v = svd.matrixV().col(4);
  const double s6sq = v.head<4>().squaredNorm() - v(4) * v(4);
  out.sphere_is_real = s6sq >= 0.0;
  out.sphere << v, std::sqrt(std::max(0.0, s6sq));
  return out;
}

}  // namespace liesphere
