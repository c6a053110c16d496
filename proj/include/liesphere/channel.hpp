#pragma once

// Channel surfaces as envelopes of sphere curves, with their Omega_0 structure.

#include "liesphere/curve.hpp"
#include "liesphere/legendre.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace liesphere {

// V(u) must contain s(u) and s'(u) and have signature (2,1).
using VChoice = std::function<Subspace(double u, const Jet&)>;

struct EnvelopeOptions {
  std::optional<VChoice> custom_v;  // default: osculating span{s, s', s''}
  int substeps = 4;                 // RK4 substeps per grid step for the frame transport
  double holonomy_tol = 1e-6;
  double eps_reg = 1e-6;
};

struct EnvelopeResult {
  LegendreGrid grid;
  std::vector<CircleFrame> frames;  // per u-sample, spanning V(u)^perp
  double holonomy_defect = 0.0;     // closed curves only
  bool closed = false;              // periodic in u after transport
};

// Element (i,j) = span{s(u_i), frame_i.at(theta_j)}. With the osculating V the circle
// frame is transported so that only s-components change along u, which makes the
// u-lines curvature lines. Closed curves whose transport does not close within
// holonomy_tol produce a grid that is open in u.
EnvelopeResult envelope(const SphereCurve& s, int n_th, const EnvelopeOptions& opt = {},
                        Exec exec = default_exec());

// A lift sigma_1 with its u-derivative, on the samples and at arbitrary u.
struct SpecialLift {
  std::vector<LieVec> value, deriv;
  std::function<std::pair<LieVec, LieVec>(double)> at;
  std::string normalisation;
};

SpecialLift special_lift_unit(const SphereCurve& s);
// (sigma_1, p) = -1; throws PreconditionError where (sigma, p) vanishes.
SpecialLift special_lift_against(const SphereCurve& s, const LieVec& p, double tol = 1e-12);
// mu(u) sigma_1; mu returns (mu, mu')
SpecialLift rescale_lift(const SpecialLift& l, std::function<std::array<double, 2>(double)> mu,
                         const CurveGrid& grid);

struct StarConvention {
  int sign_t1 = -1;  // on T_1^* (the circular, theta direction)
  int sign_t2 = +1;  // on T_2^* (the u direction)
  std::string describe() const;
};

struct Omega0Structure {
  GridSpec spec;
  SpecialLift lift;
  std::vector<Mat6> eta_u_samples;  // per u-sample; eta is theta-independent
  std::vector<double> q_uu;
  StarConvention star;
  double closedness = 0.0;        // max |D_u eta_th - D_th eta_u| over the grid
  double bracket = 0.0;           // max |[eta ^ eta]|
  double lift_membership = 0.0;   // sigma_1 against the grid elements

  SkewMap eta_u(int i, int /*j*/ = 0) const { return {eta_u_samples[i]}; }
  SkewMap eta_th(int, int) const { return SkewMap::zero(); }
  SkewMap eta_u_at(double u) const;
};

// Requires dir1 circular; eta_u = sigma_1 ^ sigma_1', eta_th = 0, q_uu = -(sigma_1', sigma_1').
Omega0Structure omega0_form(const LegendreGrid& g, const ChannelReport& channel,
                            const SpecialLift& lift, Exec exec = default_exec());

struct ConservedReport {
  std::vector<double> lambdas;
  std::vector<double> residuals;  // per lambda, max over edges, per unit length
  double max_residual = 0.0;
};

// |(p_{i+1} - p_i)/du + lambda (eta_i p_i + eta_{i+1} p_{i+1})/2| with p = pvec + lambda sigma_1.
double conserved_residual(const Omega0Structure& om, const LieVec& pvec, double lambda);
// Rejects lifts with (sigma_1, pvec) != -1.
ConservedReport conserved_quantity(const Omega0Structure& om, const LieVec& pvec,
                                   const std::vector<double>& lambdas, double norm_tol = 1e-10);

}  // namespace liesphere
