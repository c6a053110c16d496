#include "liesphere/transforms.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <sstream>

namespace liesphere {

namespace {

CurveGrid curve_grid_of(const GridSpec& s) { return CurveGrid{s.n_u, s.u0, s.du, s.periodic_u}; }

template <class T, class F>
T rk4_step(const T& y, double u, double h, F&& rhs) {
  const T k1 = rhs(u, y);
  const T k2 = rhs(u + 0.5 * h, T(y + 0.5 * h * k1));
  const T k3 = rhs(u + 0.5 * h, T(y + 0.5 * h * k2));
  const T k4 = rhs(u + h, T(y + h * k3));
  return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

std::string at_sample(const char* what, int i, double u) {
  std::ostringstream os;
  os << what << " at sample " << i << " (u = " << u << ")";
  return os.str();
}

void require_same_grid(const CurveGrid& a, const CurveGrid& b, const char* who) {
  if (a.n != b.n || std::abs(a.du - b.du) > 1e-14 * std::max(1.0, std::abs(a.du)) ||
      std::abs(a.u0 - b.u0) > 1e-12)
    throw PreconditionError(std::string(who) + ": curves are sampled on different grids");
}

LieVec unit(const LieVec& v) { return v / v.norm(); }

}  // namespace

FlatnessReport flatness_check(const Omega0Structure& om, const std::vector<double>& lambdas,
                              Exec exec) {
  const GridSpec& s = om.spec;
  const int eu = s.periodic_u ? s.n_u : s.n_u - 1;
  const int et = s.periodic_th ? s.n_th : s.n_th - 1;
  FlatnessReport r;
  for (double lambda : lambdas) {
    // u-edges carry exp(-lambda du eta(u_mid)), theta-edges the identity
    std::vector<Mat6> edge(eu);
    for (int i = 0; i < eu; ++i) {
      const Mat6 a = -lambda * s.du * om.eta_u_at(s.u(i) + 0.5 * s.du).m;
      edge[i] = a.exp();
    }
    std::vector<double> d(static_cast<size_t>(eu) * et, 0.0);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (int k = 0; k < eu * et; ++k) {
      const int i = k / et;
      // bottom edge at theta_j, top edge at theta_{j+1}; the theta sides are trivial
      const Mat6 bottom = edge[i], top = edge[i];
      const Mat6 h = top.inverse() * bottom;
      d[k] = (h - Mat6::Identity()).norm() / (s.du * s.dth);
    }
    double mx = 0.0;
    for (double x : d) mx = std::max(mx, x);
    r.lambdas.push_back(lambda);
    r.defects.push_back(mx);
    r.max_defect = std::max(r.max_defect, mx);
  }
  return r;
}

LieVec phi0_from_subspace(const Subspace& s, double theta) { return lightcone_circle(s, theta).rep(); }

DarbouxResult darboux_transform(const LegendreGrid& g, const Omega0Structure& om, double m,
                                const LieVec& phi0, const DarbouxOptions& opt, Exec exec) {
  if (m == 0.0) throw PreconditionError("darboux_transform: m must be nonzero");
  if (null_residual(phi0) > opt.null_tol) throw PreconditionError("darboux_transform: phi0 is not null");
  const GridSpec& s = g.spec();
  const LieVec& sig0 = om.lift.value[0];
  if (std::abs(inner(phi0, sig0)) <= opt.degeneracy_tol * phi0.norm() * sig0.norm())
    throw PreconditionError("darboux_transform: phi0 is orthogonal to sigma_1(u0)");

  DarbouxResult r;
  r.m = m;
  const int n = s.n_u;
  auto rhs = [&](double u, const LieVec& y) -> LieVec { return -m * (om.eta_u_at(u).m * y); };
  r.phi.resize(n);
  r.dphi.resize(n);
  r.phi[0] = phi0;
  for (int i = 0; i + 1 < n; ++i) r.phi[i + 1] = rk4_step(r.phi[i], s.u(i), s.du, rhs);
  bool closes = false;
  if (s.periodic_u) {
    const LieVec end = rk4_step(r.phi[n - 1], s.u(n - 1), s.du, rhs);
    closes = (end - r.phi[0]).norm() <= 1e-8 * r.phi[0].norm();
  }
  const double q0 = inner(phi0, phi0) / phi0.squaredNorm();
  for (int i = 0; i < n; ++i) {
    r.dphi[i] = -m * (om.eta_u_samples[i] * r.phi[i]);
    r.null_drift = std::max(r.null_drift, std::abs(inner(r.phi[i], r.phi[i]) / r.phi[i].squaredNorm() - q0));
  }
  r.null_ok = r.null_drift <= opt.null_tol;
  CurveGrid cg = curve_grid_of(s);
  cg.periodic = closes;
  r.hat_s = SphereCurve::from_samples(r.phi, r.dphi, cg);

  GridSpec hs = s;
  hs.periodic_u = closes;
  r.hat_f = LegendreGrid(hs);
  r.s0.resize(s.size());
  std::vector<char> bad(s.size(), 0);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int k = 0; k < s.size(); ++k) {
    const int i = k / s.n_th, j = k % s.n_th;
    const LieVec& sg = g.sigma(i, j);
    const LieVec& tu = g.tau(i, j);
    const LieVec& ph = r.phi[i];
    const LieVec v = inner(tu, ph) * sg - inner(sg, ph) * tu;
    if (v.norm() <= opt.degeneracy_tol * ph.norm()) {
      bad[k] = 1;
      continue;
    }
    r.s0[k] = unit(v);
    r.hat_f.set(i, j, r.s0[k], ph);
  }
  for (int k = 0; k < s.size(); ++k)
    if (bad[k]) {
      std::ostringstream os;
      os << "darboux_transform: phi is orthogonal to the element at (" << k / s.n_th << ", "
         << k % s.n_th << ")";
      throw PreconditionError(os.str());
    }
  return r;
}

CalapsoResult calapso_transform(const LegendreGrid& g, const Omega0Structure& om, double lambda,
                                Exec exec) {
  const GridSpec& s = g.spec();
  const int n = s.n_u;
  CalapsoResult c;
  c.gauge.lambda = lambda;
  auto rhs = [&](double u, const Mat6& y) -> Mat6 { return -lambda * (om.eta_u_at(u).m * y); };
  c.gauge.tinv.resize(n);
  c.gauge.tinv[0] = Mat6::Identity();
  for (int i = 0; i + 1 < n; ++i) c.gauge.tinv[i + 1] = rk4_step(c.gauge.tinv[i], s.u(i), s.du, rhs);

  std::vector<Mat6> t(n);
  const Mat6& G = metric();
  for (int i = 0; i < n; ++i) {
    t[i] = c.gauge.tinv[i].inverse();
    c.gauge.ortho_defect = std::max(c.gauge.ortho_defect, (t[i].transpose() * G * t[i] - G).cwiseAbs().maxCoeff());
  }
  for (int i = 0; i + 1 < n; ++i) {
    const Mat6 e = (c.gauge.tinv[i + 1] - c.gauge.tinv[i]) / s.du +
                   0.5 * lambda * (om.eta_u_samples[i] * c.gauge.tinv[i] + om.eta_u_samples[i + 1] * c.gauge.tinv[i + 1]);
    c.gauge.gauge_residual = std::max(c.gauge.gauge_residual, e.norm());
  }

  GridSpec ts = s;
  // T need not close up around a closed curve
  if (ts.periodic_u) {
    const Mat6 end = rk4_step(c.gauge.tinv[n - 1], s.u(n - 1), s.du, rhs);
    ts.periodic_u = (end - Mat6::Identity()).norm() <= 1e-8;
  }
  c.grid = LegendreGrid(ts);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int k = 0; k < s.size(); ++k) {
    const int i = k / s.n_th, j = k % s.n_th;
    c.grid.set(i, j, t[i] * g.sigma(i, j), t[i] * g.tau(i, j));
  }

  // d(T sigma_1) = T (sigma_1' + lambda eta sigma_1)
  c.q_uu.resize(n);
  const double sgn = om.star.sign_t2;
  for (int i = 0; i < n; ++i) {
    const LieVec& v = om.lift.value[i];
    const LieVec d = t[i] * (om.lift.deriv[i] + lambda * (om.eta_u_samples[i] * v));
    c.q_uu[i] = -sgn * inner(d, d);
    c.q_residual = std::max(c.q_residual, std::abs(c.q_uu[i] - om.q_uu[i]));
  }
  return c;
}

double curvature_sphere_mapping(const CalapsoResult& c, const CurvatureData& cd,
                                const CurvatureData& cd_lambda) {
  double mx = 0.0;
  const GridSpec& s = cd.spec;
  for (int i = 0; i < s.n_u; ++i) {
    const Mat6 t = c.gauge.t(i);
    for (int j = 0; j < s.n_th; ++j) {
      const auto& a = cd.at(i, j);
      const auto& b = cd_lambda.at(i, j);
      if (a.umbilic || b.umbilic) continue;
      mx = std::max({mx, projective_distance(t * a.s1, b.s1), projective_distance(t * a.s2, b.s2)});
    }
  }
  return mx;
}

SphereCurve ribaucour_partner_curve(const SphereCurve& s, const ScalarFn& beta, const ScalarFn& gamma,
                                    const LieVec& hat_s0, double contact_tol) {
  if (null_residual(hat_s0) > 1e-10) throw PreconditionError("ribaucour_partner_curve: hat_s0 is not null");
  const CurveGrid& cg = s.grid();
  auto rhs = [&](double u, const LieVec& x) -> LieVec {
    const Jet j = s.evaluate(u);
    const double b = beta(u);
    const double alpha = -b * inner(j[1], x) / inner(j[0], x);
    return alpha * j[0] + b * j[1] + gamma(u) * x;
  };
  auto check = [&](int i, const LieVec& x) {
    const LieVec& v = s.value(i);
    if (std::abs(inner(v, x)) <= contact_tol * v.norm() * x.norm())
      throw PreconditionError(at_sample("ribaucour_partner_curve: s and hat_s span a contact element", i, cg.u(i)));
  };
  std::vector<LieVec> vals(cg.n), first(cg.n);
  vals[0] = hat_s0;
  check(0, vals[0]);
  // substeps keep the O(h^4) drift off the lightcone below 1e-10 at desk resolutions
  constexpr int kSub = 8;
  auto advance = [&](LieVec x, double u) {
    const double h = cg.du / kSub;
    for (int k = 0; k < kSub; ++k) x = rk4_step(x, u + k * h, h, rhs);
    return x;
  };
  for (int i = 0; i + 1 < cg.n; ++i) {
    vals[i + 1] = advance(vals[i], cg.u(i));
    check(i + 1, vals[i + 1]);
  }
  CurveGrid out = cg;
  if (cg.periodic) {
    const LieVec end = advance(vals[cg.n - 1], cg.u(cg.n - 1));
    out.periodic = projective_distance(end, vals[0]) <= 1e-8;
  }
  for (int i = 0; i < cg.n; ++i) first[i] = rhs(cg.u(i), vals[i]);
  SphereCurve r = SphereCurve::from_samples(std::move(vals), std::move(first), out);
  r.require_regular();
  return r;
}

RibaucourReport verify_ribaucour(const SphereCurve& s, const SphereCurve& hat_s, double contact_tol) {
  require_same_grid(s.grid(), hat_s.grid(), "verify_ribaucour");
  const CurveGrid& cg = s.grid();
  RibaucourReport r;
  r.residuals.resize(cg.n);
  for (int i = 0; i < cg.n; ++i) {
    const LieVec a = unit(s.value(i)), b = unit(hat_s.value(i));
    if (std::abs(inner(a, b)) <= contact_tol)
      throw PreconditionError(at_sample("verify_ribaucour: s and hat_s are in contact", i, cg.u(i)));
    const LieVec da = s.d1(i) / s.value(i).norm(), db = hat_s.d1(i) / hat_s.value(i).norm();
    Subspace x, y;
    try {
      x = span({a, da, b});
      y = span({b, db, a});
    } catch (const RankDeficiencyError&) {
      throw RankDeficiencyError(at_sample("verify_ribaucour: span has rank below 3", i, cg.u(i)));
    }
    r.residuals[i] = subspace_equal(x, y).residual;
    if (r.residuals[i] >= r.max_residual) {
      r.max_residual = r.residuals[i];
      r.worst = i;
    }
  }
  return r;
}

CyclideCongruences ribaucour_cyclides(const RibaucourPair& p, Exec exec) {
  const LegendreGrid& f = *p.f;
  const LegendreGrid& fh = *p.hat_f;
  const SphereCurve& s = *p.s;
  const SphereCurve& sh = *p.hat_s;
  const GridSpec& gs = f.spec();
  if (fh.n_u() != gs.n_u || fh.n_th() != gs.n_th || s.size() != gs.n_u || sh.size() != gs.n_u)
    throw PreconditionError("ribaucour_cyclides: grids and curves do not match");

  CyclideCongruences c;
  c.spec = gs;
  const int nu = gs.n_u, nt = gs.n_th, n = gs.size();
  c.d1.resize(nu);
  c.hat_d1.resize(nu);
  std::vector<double> co1(nu, 0.0);
  for (int i = 0; i < nu; ++i) {
    const LieVec a = s.value(i), b = sh.value(i);
    c.d1[i] = span({unit(a), unit(b), s.d1(i) / a.norm()});
    c.hat_d1[i] = span({unit(a), unit(b), sh.d1(i) / b.norm()});
    co1[i] = subspace_equal(c.d1[i], c.hat_d1[i]).residual;
  }

  c.s0.resize(n);
  std::vector<double> inter(n, 0.0), sep(n, 1.0), gap(n, 1.0);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int k = 0; k < n; ++k) {
    const int i = k / nt, j = k % nt;
    Eigen::Matrix<double, 6, 4> m;
    m << f.element(i, j).basis(), fh.element(i, j).basis();
    Eigen::JacobiSVD<Eigen::Matrix<double, 6, 4>> svd(m, Eigen::ComputeFullV);
    const auto sv = svd.singularValues();
    inter[k] = sv(3);
    gap[k] = sv(2);
    const Eigen::Vector4d v = svd.matrixV().col(3);
    LieVec x = m.leftCols<2>() * v.head<2>();
    c.s0[k] = unit(x);
    const auto& a = p.cd->at(i, j);
    const auto& b = p.hat_cd->at(i, j);
    sep[k] = std::min({projective_distance(c.s0[k], a.s1), projective_distance(c.s0[k], a.s2),
                       projective_distance(c.s0[k], b.s1), projective_distance(c.s0[k], b.s2)});
  }
  // sign alignment along theta so that sample spans are well conditioned
  for (int k = 1; k < n; ++k)
    if (k % nt != 0 && c.s0[k].dot(c.s0[k - 1]) < 0) c.s0[k] = -c.s0[k];

  c.d2.resize(n);
  c.hat_d2.resize(n);
  const Line lt = Line::of(gs, Axis::th), lu = Line::of(gs, Axis::u);
  std::vector<double> co2(n, 0.0), du1(n, 0.0), du2(n, 0.0), k1(n, 0.0);
  std::vector<char> fail(n, 0);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int k = 0; k < n; ++k) {
    const int i = k / nt, j = k % nt;
    try {
      const auto& a = p.cd->at(i, j);
      const auto& b = p.hat_cd->at(i, j);
      auto aligned = [&](const CurvatureData& d) {
        return [&d, i, j](int q) -> LieVec {
          const LieVec& v = d.at(i, q).s2;
          return v.dot(d.at(i, j).s2) < 0 ? LieVec(-v) : v;
        };
      };
      const LieVec ds2 = lt.d1(j, aligned(*p.cd));
      const LieVec dhs2 = lt.d1(j, aligned(*p.hat_cd));
      c.d2[k] = span({a.s2, b.s2, ds2});
      c.hat_d2[k] = span({a.s2, b.s2, dhs2});
      co2[k] = subspace_equal(c.d2[k], c.hat_d2[k]).residual;

      auto s0 = [&](int ii, int jj) -> const LieVec& { return c.s0[gs.index(ii, jj)]; };
      const Subspace th_span = span({s0(i, lt.wrap(j - 1)), s0(i, j), s0(i, lt.wrap(j + 1))});
      du1[k] = subspace_equal(orth_complement(c.d1[i]), th_span).residual;
      const int i0 = lu.periodic ? i - 1 : std::clamp(i - 1, 0, nu - 3);
      const Subspace u_span = span({s0(lu.wrap(i0), j), s0(lu.wrap(i0 + 1), j), s0(lu.wrap(i0 + 2), j)});
      du2[k] = subspace_equal(orth_complement(c.d2[k]), u_span).residual;

      // D1 from the grid's own curvature spheres, compared across the theta-circle
      const Subspace here = span({a.s1, b.s1, s.d1(i) / s.value(i).norm()});
      const auto& a0 = p.cd->at(i, 0);
      const auto& b0 = p.hat_cd->at(i, 0);
      const Subspace ref = span({a0.s1, b0.s1, s.d1(i) / s.value(i).norm()});
      k1[k] = subspace_equal(here, ref).residual;
    } catch (const Error&) {
      fail[k] = 1;
    }
  }
  std::vector<double> k2(n, 0.0);
  const int eu = lu.periodic ? nu : nu - 1;
  for (int k = 0; k < n; ++k) {
    const int i = k / nt, j = k % nt;
    if (i >= eu || fail[k] || fail[gs.index(lu.wrap(i + 1), j)]) continue;
    k2[k] = subspace_equal(c.d2[k], c.d2[gs.index(lu.wrap(i + 1), j)]).residual / gs.du;
  }

  c.min_separation = 1.0;
  for (int i = 0; i < nu; ++i) c.coincidence1 = std::max(c.coincidence1, co1[i]);
  for (int k = 0; k < n; ++k) {
    const int i = k / nt, j = k % nt;
    std::ostringstream os;
    if (gap[k] < 1e-6) os << "f and hat_f share more than a line at (" << i << ", " << j << ")";
    else if (sep[k] < 1e-6) os << "s0 meets a curvature sphere at (" << i << ", " << j << ")";
    else if (fail[k]) os << "rank loss in a cyclide span at (" << i << ", " << j << ")";
    if (!os.str().empty() && c.failures.size() < 20) c.failures.push_back(os.str());
    c.intersection = std::max(c.intersection, inter[k]);
    c.min_separation = std::min(c.min_separation, sep[k]);
    if (fail[k]) continue;
    c.coincidence2 = std::max(c.coincidence2, co2[k]);
    c.duality1 = std::max(c.duality1, du1[k]);
    c.duality2 = std::max(c.duality2, du2[k]);
    c.constancy1 = std::max(c.constancy1, k1[k]);
    c.constancy2 = std::max(c.constancy2, k2[k]);
  }
  return c;
}

CongruenceContact congruence_contact(const RibaucourPair& p, const CyclideCongruences& c, int n_samples,
                                     Exec exec) {
  const GridSpec& gs = c.spec;
  const int nu = gs.n_u, nt = gs.n_th;
  std::vector<double> sc(nu, 0.0), tg(nu, 0.0), lm(nu, 0.0);
  std::vector<char> fail(nu, 0);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int i = 0; i < nu; ++i) {
    try {
      const Subspace dp = orth_complement(c.d1[i]);
      const CircleFrame fd = circle_frame(c.d1[i]), fp = circle_frame(dp);
      const LieVec a = unit(p.s->value(i)), b = unit(p.hat_s->value(i));
      for (int k = 0; k < n_samples; ++k) {
        const double t = 2.0 * std::numbers::pi * k / n_samples;
        const LieVec lp = unit(fp.at(t)), ld = unit(fd.at(t));
        sc[i] = std::max({sc[i], std::abs(inner(a, lp)), std::abs(inner(b, lp))});
        for (int j = 0; j < nt; ++j) tg[i] = std::max(tg[i], std::abs(inner(c.s0[gs.index(i, j)], ld)));
      }
      const Mat6 pd = metric_projector(c.d1[i]);
      for (int j = 0; j < nt; ++j) {
        for (const LegendreGrid* g : {p.f, p.hat_f}) {
          const auto pt = point_sphere_of(g->sigma(i, j), g->tau(i, j));
          if (!pt) continue;
          const LieVec x = unit(*pt);
          const LieVec y = pd * x;
          lm[i] = std::max(lm[i], std::abs(inner(y, y)));
        }
      }
    } catch (const Error&) {
      fail[i] = 1;
    }
  }
  CongruenceContact r;
  for (int i = 0; i < nu; ++i) {
    if (fail[i]) throw PreconditionError(at_sample("congruence_contact: D1 is not a (2,1) subspace", i, gs.u(i)));
    r.sphere_contact = std::max(r.sphere_contact, sc[i]);
    r.tangency = std::max(r.tangency, tg[i]);
    r.line_membership = std::max(r.line_membership, lm[i]);
  }
  return r;
}

DupinCyclide dupin_from_spheres(const LieVec& a, const LieVec& b, const LieVec& c) {
  for (const LieVec* v : {&a, &b, &c})
    if (null_residual(*v) > 1e-10) throw PreconditionError("dupin_from_spheres: input is not a Lie sphere");
  Subspace d;
  try {
    d = span({unit(a), unit(b), unit(c)});
  } catch (const RankDeficiencyError&) {
    throw PreconditionError("dupin_from_spheres: the three spheres are linearly dependent");
  }
  DupinCyclide r = dupin_from_splitting(d);
  r.provenance = "from-three-spheres";
  return r;
}

DupinCyclide dupin_from_splitting(const Subspace& d) {
  const Signature sig = d.signature();
  if (d.dim() != 3 || !(sig == Signature{2, 1, 0})) {
    std::ostringstream os;
    os << "dupin: D has signature (" << sig.plus << "," << sig.minus << "," << sig.zero << "), need (2,1,0)";
    throw PreconditionError(os.str());
  }
  return DupinCyclide{d, orth_complement(d), "from-splitting"};
}

double dupin_contact_residual(const DupinCyclide& c, int n) {
  const CircleFrame a = circle_frame(c.d), b = circle_frame(c.dperp);
  double mx = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const LieVec x = unit(a.at(2.0 * std::numbers::pi * j / n));
      const LieVec y = unit(b.at(2.0 * std::numbers::pi * k / n));
      mx = std::max(mx, std::abs(inner(x, y)));
    }
  return mx;
}

DarbouxPairStructure darboux_pair_structure(const LegendreGrid& f, const SphereCurve& s,
                                            const LegendreGrid& hat_f, const SphereCurve& hat_s,
                                            double tol) {
  require_same_grid(s.grid(), hat_s.grid(), "darboux_pair_structure");
  const CurveGrid& cg = s.grid();
  const int n = cg.n;
  if (f.n_u() != n || hat_f.n_u() != n) throw PreconditionError("darboux_pair_structure: grid/curve mismatch");
  DarbouxPairStructure r;
  r.tol = tol > 0 ? tol : std::max(1e-8, 10.0 * cg.du * cg.du);

  // nu' = -nu (a', b)/(a, b) makes (nu a)' orthogonal to b; half steps give Simpson midpoints
  auto rhs = [&](double u, const double& nu) -> double {
    const Jet a = s.evaluate(u), b = hat_s.evaluate(u);
    const double ab = inner(a[0], b[0]);
    if (std::abs(ab) <= 1e-12 * a[0].norm() * b[0].norm())
      throw PreconditionError("darboux_pair_structure: (sigma, hat_sigma) vanishes near u = " + std::to_string(u));
    return -nu * inner(a[1], b[0]) / ab;
  };
  const int m = 2 * n - 1;
  std::vector<double> nu(m);
  nu[0] = 1.0;
  for (int k = 0; k + 1 < m; ++k) nu[k + 1] = rk4_step(nu[k], cg.u0 + 0.5 * k * cg.du, 0.5 * cg.du, rhs);

  struct Lifted {
    LieVec x, dx, y, dy;
  };
  auto lift = [&](double u, double v) {
    const Jet a = s.evaluate(u), b = hat_s.evaluate(u);
    const double ab = inner(a[0], b[0]);
    const double dab = inner(a[1], b[0]) + inner(a[0], b[1]);
    const double dv = rhs(u, v);
    const double w = -1.0 / (v * ab);
    const double dw = -w * (dv / v + dab / ab);
    return Lifted{v * a[0], dv * a[0] + v * a[1], w * b[0], dw * b[0] + w * b[1]};
  };
  std::vector<Lifted> at(m);
  for (int k = 0; k < m; ++k) at[k] = lift(cg.u0 + 0.5 * k * cg.du, nu[k]);
  for (int i = 0; i < n; ++i) {
    const Lifted& l = at[2 * i];
    r.sigma1.push_back(l.x);
    r.dsigma1.push_back(l.dx);
    r.hat_sigma1.push_back(l.y);
    r.dhat_sigma1.push_back(l.dy);
    r.eta_u.push_back(wedge(l.x, l.dy).m);
    r.normalisation = std::max(r.normalisation, std::abs(inner(l.x, l.y) + 1.0));
    // d eta = d sigma_1 curlywedge d hat_sigma_1, theta-parts vanish
    r.closedness = std::max(r.closedness, curly_wedge(l.dx, LieVec::Zero(), l.dy, LieVec::Zero()).norm());
    const double nd = std::max(l.dy.norm(), 1e-300), nx = std::max(l.dx.norm(), 1e-300);
    for (int j = 0; j < f.n_th(); ++j) {
      r.inclusion = std::max({r.inclusion, std::abs(inner(l.dy, f.sigma(i, j))) / nd,
                              std::abs(inner(l.dy, f.tau(i, j))) / nd,
                              std::abs(inner(l.dx, hat_f.sigma(i, j))) / nx,
                              std::abs(inner(l.dx, hat_f.tau(i, j))) / nx});
    }
  }
  // Simpson form of hat_sigma_1(u_{i+1}) - hat_sigma_1(u_i) = -int eta hat_sigma_1
  for (int i = 0; i + 1 < n; ++i) {
    auto eh = [&](int k) -> LieVec { return wedge(at[k].x, at[k].dy)(at[k].y); };
    const LieVec e = (at[2 * i + 2].y - at[2 * i].y) / cg.du +
                     (eh(2 * i) + 4.0 * eh(2 * i + 1) + eh(2 * i + 2)) / 6.0;
    r.parallel = std::max(r.parallel, e.norm() / at[2 * i].y.norm());
  }
  r.pass = r.normalisation <= 1e-10 && r.inclusion <= r.tol && r.parallel <= r.tol;
  return r;
}

}  // namespace liesphere
