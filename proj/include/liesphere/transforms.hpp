#pragma once

// Transformations of channel surfaces: the flat family d + lambda*eta, Lie-Darboux and
// Calapso transforms, Ribaucour pairs of sphere curves and their cyclide congruences.

#include "liesphere/channel.hpp"

#include <functional>
#include <string>
#include <vector>

namespace liesphere {

struct FlatnessReport {
  std::vector<double> lambdas;
  std::vector<double> defects;  // per lambda: max |H - I| / (du dth) over plaquettes
  double max_defect = 0.0;
};

// Plaquette holonomy of d + lambda*eta with exact edge exponentials.
FlatnessReport flatness_check(const Omega0Structure& om, const std::vector<double>& lambdas,
                              Exec exec = default_exec());

struct DarbouxOptions {
  double null_tol = 1e-10;
  double degeneracy_tol = 1e-6;  // |(phi0, sigma_1(u0))| relative, and phi against f
};

struct DarbouxResult {
  double m = 0.0;
  std::vector<LieVec> phi, dphi;  // parallel section and its exact derivative -m eta phi
  SphereCurve hat_s;
  LegendreGrid hat_f;
  std::vector<LieVec> s0;  // per grid point, (tau, phi) sigma - (sigma, phi) tau
  double null_drift = 0.0;  // max |(phi,phi) - (phi0,phi0)| / |phi|^2
  bool null_ok = false;
};

// RK4 for phi' = -m eta_u phi from phi0 at u0.
DarbouxResult darboux_transform(const LegendreGrid& g, const Omega0Structure& om, double m,
                                const LieVec& phi0, const DarbouxOptions& opt = {},
                                Exec exec = default_exec());

// A lightcone point of the (2,1) subspace s at angle theta.
LieVec phi0_from_subspace(const Subspace& s, double theta);

struct GaugeField {
  double lambda = 0.0;
  std::vector<Mat6> tinv;        // T^{-1} per u-sample, identity at u0
  double ortho_defect = 0.0;     // max entry of |T^T G T - G|
  double gauge_residual = 0.0;   // trapezoidal defect of the gauge equation per unit length
  Mat6 t(int i) const { return tinv[i].inverse(); }
};

struct CalapsoResult {
  GaugeField gauge;
  LegendreGrid grid;           // T f
  std::vector<double> q_uu;    // quadratic differential of the lift T sigma_1
  double q_residual = 0.0;     // max |q^lambda - q|
};

CalapsoResult calapso_transform(const LegendreGrid& g, const Omega0Structure& om, double lambda,
                                Exec exec = default_exec());

// Largest projective distance between the curvature spheres of T f and T applied to those of f.
double curvature_sphere_mapping(const CalapsoResult& c, const CurvatureData& cd,
                                const CurvatureData& cd_lambda);

using ScalarFn = std::function<double(double)>;

// hat_s' = alpha sigma + beta sigma' + gamma hat_s with alpha chosen to keep hat_s null.
SphereCurve ribaucour_partner_curve(const SphereCurve& s, const ScalarFn& beta, const ScalarFn& gamma,
                                    const LieVec& hat_s0, double contact_tol = 1e-10);

struct RibaucourReport {
  std::vector<double> residuals;  // per sample
  double max_residual = 0.0;
  int worst = -1;
};

// span{s, s', hat_s} against span{hat_s, hat_s', s} per sample.
RibaucourReport verify_ribaucour(const SphereCurve& s, const SphereCurve& hat_s,
                                 double contact_tol = 1e-10);

// Channel surfaces f, hat_f enveloping s and hat_s (circular in theta).
struct RibaucourPair {
  const LegendreGrid* f = nullptr;
  const CurvatureData* cd = nullptr;
  const SphereCurve* s = nullptr;
  const LegendreGrid* hat_f = nullptr;
  const CurvatureData* hat_cd = nullptr;
  const SphereCurve* hat_s = nullptr;
};

struct CyclideCongruences {
  GridSpec spec;
  std::vector<Subspace> d1, hat_d1;     // per u-sample
  std::vector<Subspace> d2, hat_d2;     // per grid point
  std::vector<LieVec> s0;               // per grid point
  double intersection = 0.0;            // rank-1 defect of f cap hat_f
  double min_separation = 0.0;          // s0 against the four curvature spheres
  double coincidence1 = 0.0, coincidence2 = 0.0;  // D_i against hat D_i
  double duality1 = 0.0, duality2 = 0.0;          // D_i^perp against the s0 spans
  double constancy1 = 0.0, constancy2 = 0.0;      // D1 along theta, D2 along u
  std::vector<std::string> failures;
};

CyclideCongruences ribaucour_cyclides(const RibaucourPair& p, Exec exec = default_exec());

// Oriented contact of the D1 cyclides with the curvature spheres of both surfaces, and
// membership of the circular curvature lines in the cyclides.
struct CongruenceContact {
  double sphere_contact = 0.0;   // s1, hat s1 against the D1^perp family
  double tangency = 0.0;         // s0 against the D1 family
  double line_membership = 0.0;  // point spheres of both surfaces on the cyclide
};

CongruenceContact congruence_contact(const RibaucourPair& p, const CyclideCongruences& c,
                                     int n_samples = 32, Exec exec = default_exec());

struct DupinCyclide {
  Subspace d, dperp;
  std::string provenance;  // "from-three-spheres" | "from-splitting"
};

DupinCyclide dupin_from_spheres(const LieVec& a, const LieVec& b, const LieVec& c);
DupinCyclide dupin_from_splitting(const Subspace& d);

// max |(L(theta_j), L^perp(phi_k))| on an n x n sample of both families
double dupin_contact_residual(const DupinCyclide& c, int n = 32);

struct DarbouxPairStructure {
  std::vector<LieVec> sigma1, dsigma1, hat_sigma1, dhat_sigma1;
  std::vector<Mat6> eta_u;       // sigma_1 ^ hat_sigma_1'
  double normalisation = 0.0;    // max |(sigma_1, hat_sigma_1) + 1|
  double inclusion = 0.0;        // max |(hat_sigma_1', f)| relative, zero iff hat_sigma_1' in f^perp
  double parallel = 0.0;         // per unit length, trapezoidal
  double closedness = 0.0;
  double tol = 0.0;
  bool pass = false;
};

DarbouxPairStructure darboux_pair_structure(const LegendreGrid& f, const SphereCurve& s,
                                            const LegendreGrid& hat_f, const SphereCurve& hat_s,
                                            double tol = -1.0);

}  // namespace liesphere
