#include "liesphere/channel.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

namespace liesphere {

namespace {

Subspace osculating(const Jet& j) { return Subspace::from_columns((Basis(6, 3) << j[0], j[1], j[2]).finished(), 1e-12); }

void check_v(const Subspace& v, int i, double u) {
  if (v.dim() != 3 || !(v.signature() == Signature{2, 1, 0})) {
    std::ostringstream os;
    os << "envelope: V has signature (" << v.signature().plus << "," << v.signature().minus << ","
       << v.signature().zero << ") in dimension " << v.dim() << " at sample " << i << " (u = " << u
       << ")";
    throw PreconditionError(os.str());
  }
}

// metric Gram-Schmidt of (E1, E2, E3), E3 timelike first
void reorthonormalise(CircleFrame& f) {
  f.e3 /= std::sqrt(-inner(f.e3, f.e3));
  f.e1 += inner(f.e1, f.e3) * f.e3;
  f.e1 /= std::sqrt(inner(f.e1, f.e1));
  f.e2 += inner(f.e2, f.e3) * f.e3;
  f.e2 -= inner(f.e2, f.e1) * f.e1;
  f.e2 /= std::sqrt(inner(f.e2, f.e2));
}

void project_out(CircleFrame& f, const Subspace& v) {
  const Mat6 q = Mat6::Identity() - metric_projector(v);
  f.e1 = q * f.e1;
  f.e2 = q * f.e2;
  f.e3 = q * f.e3;
}

// E_k' = ((E_k, s''') / (s', s')) s keeps theta-lines of p = cos E1 + sin E2 + E3
// moving only along s.
CircleFrame transport_rhs(const CircleFrame& f, const Jet& j) {
  const double g = inner(j[1], j[1]);
  return {inner(f.e1, j[3]) / g * j[0], inner(f.e2, j[3]) / g * j[0], inner(f.e3, j[3]) / g * j[0]};
}

CircleFrame axpy(const CircleFrame& f, double a, const CircleFrame& k) {
  return {f.e1 + a * k.e1, f.e2 + a * k.e2, f.e3 + a * k.e3};
}

CircleFrame rk4_transport(const SphereCurve& s, CircleFrame f, double u, double h, int substeps) {
  const double dt = h / substeps;
  for (int m = 0; m < substeps; ++m) {
    const double t = u + m * dt;
    const Jet j0 = s.evaluate(t), jm = s.evaluate(t + 0.5 * dt), j1 = s.evaluate(t + dt);
    const CircleFrame k1 = transport_rhs(f, j0);
    const CircleFrame k2 = transport_rhs(axpy(f, 0.5 * dt, k1), jm);
    const CircleFrame k3 = transport_rhs(axpy(f, 0.5 * dt, k2), jm);
    const CircleFrame k4 = transport_rhs(axpy(f, dt, k3), j1);
    f.e1 += dt / 6.0 * (k1.e1 + 2.0 * k2.e1 + 2.0 * k3.e1 + k4.e1);
    f.e2 += dt / 6.0 * (k1.e2 + 2.0 * k2.e2 + 2.0 * k3.e2 + k4.e2);
    f.e3 += dt / 6.0 * (k1.e3 + 2.0 * k2.e3 + 2.0 * k3.e3 + k4.e3);
  }
  return f;
}

double frame_distance(const CircleFrame& a, const CircleFrame& b) {
  return std::max({(a.e1 - b.e1).norm(), (a.e2 - b.e2).norm(), (a.e3 - b.e3).norm()});
}

}  // namespace

EnvelopeResult envelope(const SphereCurve& s, int n_th, const EnvelopeOptions& opt, Exec exec) {
  if (n_th < 3) throw PreconditionError("envelope: need at least 3 theta samples");
  s.require_regular(opt.eps_reg);
  const CurveGrid& cg = s.grid();
  const int n = cg.n;
  auto v_at = [&](int i, const Jet& j) {
    Subspace v = opt.custom_v ? (*opt.custom_v)(cg.u(i), j) : osculating(j);
    check_v(v, i, cg.u(i));
    if (opt.custom_v && (v.membership_residual(j[0]) > 1e-8 || v.membership_residual(j[1]) > 1e-8)) {
      std::ostringstream os;
      os << "envelope: custom V misses s or s' at sample " << i;
      throw PreconditionError(os.str());
    }
    return v;
  };

  EnvelopeResult out;
  out.frames.resize(n);
  out.frames[0] = circle_frame(orth_complement(v_at(0, s.jet(0))));
  const int steps = cg.periodic ? n : n - 1;
  CircleFrame closing;
  for (int i = 0; i < steps; ++i) {
    const int next = (i + 1) % n;
    CircleFrame f = out.frames[i];
    if (!opt.custom_v) f = rk4_transport(s, f, cg.u(i), cg.du, opt.substeps);
    project_out(f, v_at(next, s.jet(next)));
    reorthonormalise(f);
    if (i + 1 < n)
      out.frames[i + 1] = f;
    else
      closing = f;
  }
  if (cg.periodic) {
    out.holonomy_defect = frame_distance(closing, out.frames[0]);
    out.closed = out.holonomy_defect <= opt.holonomy_tol;
  }

  GridSpec spec;
  spec.n_u = n;
  spec.n_th = n_th;
  spec.u0 = cg.u0;
  spec.du = cg.du;
  spec.th0 = 0.0;
  spec.dth = 2.0 * std::numbers::pi / n_th;
  spec.periodic_u = out.closed;
  spec.periodic_th = true;
  out.grid = LegendreGrid(spec);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int k = 0; k < spec.size(); ++k) {
    const int i = k / n_th, j = k % n_th;
    out.grid.set(i, j, s.value(i), out.frames[i].at(spec.th(j)));
  }
  return out;
}

SpecialLift special_lift_unit(const SphereCurve& s) {
  auto f = [](const LieVec& v, const LieVec& d) {
    const double n = v.norm();
    return std::make_pair(LieVec(v / n), LieVec(d / n - v * v.dot(d) / (n * n * n)));
  };
  SpecialLift l;
  l.normalisation = "unit";
  for (int i = 0; i < s.size(); ++i) {
    const auto [a, b] = f(s.value(i), s.d1(i));
    l.value.push_back(a);
    l.deriv.push_back(b);
  }
  l.at = [s, f](double u) {
    const Jet j = s.evaluate(u);
    return f(j[0], j[1]);
  };
  return l;
}

SpecialLift special_lift_against(const SphereCurve& s, const LieVec& p, double tol) {
  auto f = [p](const LieVec& v, const LieVec& d) {
    const double a = inner(v, p), b = inner(d, p);
    return std::make_pair(LieVec(-v / a), LieVec(-d / a + v * b / (a * a)));
  };
  SpecialLift l;
  l.normalisation = "against_p";
  for (int i = 0; i < s.size(); ++i) {
    const double a = inner(s.value(i), p);
    if (std::abs(a) <= tol * s.value(i).norm() * p.norm()) {
      std::ostringstream os;
      os << "special_lift: (sigma, p) vanishes at sample " << i << " (u = " << s.grid().u(i) << ")";
      throw PreconditionError(os.str());
    }
    const auto [x, y] = f(s.value(i), s.d1(i));
    l.value.push_back(x);
    l.deriv.push_back(y);
  }
  l.at = [s, f](double u) {
    const Jet j = s.evaluate(u);
    return f(j[0], j[1]);
  };
  return l;
}

SpecialLift rescale_lift(const SpecialLift& l, std::function<std::array<double, 2>(double)> mu,
                         const CurveGrid& grid) {
  SpecialLift out;
  out.normalisation = l.normalisation + "*mu";
  for (size_t i = 0; i < l.value.size(); ++i) {
    const auto m = mu(grid.u(static_cast<int>(i)));
    out.value.push_back(m[0] * l.value[i]);
    out.deriv.push_back(m[1] * l.value[i] + m[0] * l.deriv[i]);
  }
  auto base = l.at;
  out.at = [base, mu](double u) {
    const auto [v, d] = base(u);
    const auto m = mu(u);
    return std::make_pair(LieVec(m[0] * v), LieVec(m[1] * v + m[0] * d));
  };
  return out;
}

std::string StarConvention::describe() const {
  std::ostringstream os;
  os << "star = " << (sign_t1 < 0 ? "-" : "+") << "id on T1* (theta), " << (sign_t2 < 0 ? "-" : "+")
     << "id on T2* (u)";
  return os.str();
}

SkewMap Omega0Structure::eta_u_at(double u) const {
  const auto [v, d] = lift.at(u);
  return wedge(v, d) * static_cast<double>(star.sign_t2);
}

Omega0Structure omega0_form(const LegendreGrid& g, const ChannelReport& channel,
                            const SpecialLift& lift, Exec exec) {
  if (!channel.dir1_circular())
    throw PreconditionError("omega0_form: grid is not channel in dir1 (circular = " +
                            to_string(channel.circular) + ")");
  const GridSpec& s = g.spec();
  if (static_cast<int>(lift.value.size()) != s.n_u)
    throw PreconditionError("omega0_form: lift length does not match the grid");
  Omega0Structure om;
  om.spec = s;
  om.lift = lift;
  om.eta_u_samples.resize(s.n_u);
  om.q_uu.resize(s.n_u);
  for (int i = 0; i < s.n_u; ++i) {
    // star d sigma_1 = sign_t2 * sigma_1' du, the theta part of d sigma_1 vanishes
    const LieVec star_d = static_cast<double>(om.star.sign_t2) * lift.deriv[i];
    om.eta_u_samples[i] = wedge(lift.value[i], star_d).m;
    om.q_uu[i] = -inner(star_d, lift.deriv[i]);
  }
  const int n = s.size();
  std::vector<double> closed(n, 0.0), br(n, 0.0), mem(n, 0.0);
  const Line lt = Line::of(s, Axis::th);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int k = 0; k < n; ++k) {
    const int i = k / s.n_th, j = k % s.n_th;
    // d eta(du, dth) = D_u eta_th - D_th eta_u, eta_th = 0
    const Mat6 dth = lt.d1(j, [&](int) -> Mat6 { return om.eta_u_samples[i]; });
    closed[k] = dth.norm();
    br[k] = form_bracket(om.eta_u(i, j), om.eta_th(i, j), om.eta_u(i, j), om.eta_th(i, j)).norm();
    const Subspace e = span({g.sigma(i, j), g.tau(i, j)});
    mem[k] = e.membership_residual(lift.value[i]);
  }
  for (int k = 0; k < n; ++k) {
    om.closedness = std::max(om.closedness, closed[k]);
    om.bracket = std::max(om.bracket, br[k]);
    om.lift_membership = std::max(om.lift_membership, mem[k]);
  }
  return om;
}

double conserved_residual(const Omega0Structure& om, const LieVec& pvec, double lambda) {
  const auto& v = om.lift.value;
  const double h = om.spec.du;
  double mx = 0.0;
  const int n = static_cast<int>(v.size());
  const int edges = om.spec.periodic_u ? n : n - 1;
  for (int i = 0; i < edges; ++i) {
    const int i1 = (i + 1) % n;
    const LieVec p0 = pvec + lambda * v[i], p1 = pvec + lambda * v[i1];
    const LieVec r = (p1 - p0) / h + lambda * 0.5 * (om.eta_u_samples[i] * p0 + om.eta_u_samples[i1] * p1);
    mx = std::max(mx, r.norm());
  }
  return mx;
}

ConservedReport conserved_quantity(const Omega0Structure& om, const LieVec& pvec,
                                   const std::vector<double>& lambdas, double norm_tol) {
  for (size_t i = 0; i < om.lift.value.size(); ++i) {
    const double a = inner(om.lift.value[i], pvec);
    if (std::abs(a + 1.0) > norm_tol) {
      std::ostringstream os;
      os << "conserved_quantity: lift has (sigma_1, p) = " << a << " at sample " << i
         << ", expected -1";
      throw PreconditionError(os.str());
    }
  }
  ConservedReport r;
  for (double l : lambdas) {
    r.lambdas.push_back(l);
    r.residuals.push_back(conserved_residual(om, pvec, l));
    r.max_residual = std::max(r.max_residual, r.residuals.back());
  }
  return r;
}

}  // namespace liesphere
