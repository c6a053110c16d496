#include "fixtures.hpp"

#include <doctest.h>

using namespace liesphere;

// The OpenMP kernels must reproduce the serial reference bit for bit.

namespace {

bool same(const LegendreGrid& a, const LegendreGrid& b) {
  for (int i = 0; i < a.n_u(); ++i)
    for (int j = 0; j < a.n_th(); ++j)
      if (a.sigma(i, j) != b.sigma(i, j) || a.tau(i, j) != b.tau(i, j)) return false;
  return true;
}

}  // namespace

TEST_CASE("envelope, curvature data and channel report") {
  const SphereCurve s = fx::helix_curve(48);
  const EnvelopeResult a = envelope(s, 24, {}, Exec::serial), b = envelope(s, 24, {}, Exec::parallel);
  CHECK(same(a.grid, b.grid));
  const CurvatureData ca = curvature_data(a.grid, {}, Exec::serial), cb = curvature_data(a.grid, {}, Exec::parallel);
  for (size_t k = 0; k < ca.pts.size(); ++k) {
    CHECK(ca.pts[k].s1 == cb.pts[k].s1);
    CHECK(ca.pts[k].dir2 == cb.pts[k].dir2);
  }
  const ValidationReport va = validate_legendre(a.grid, {}, Exec::serial), vb = validate_legendre(a.grid, {}, Exec::parallel);
  CHECK(va.contact == vb.contact);
  CHECK(va.immersion == vb.immersion);
  const ChannelReport ra = is_channel(a.grid, ca, {}, Exec::serial), rb = is_channel(a.grid, ca, {}, Exec::parallel);
  CHECK(ra.variation1 == rb.variation1);
  CHECK(ra.n2 == rb.n2);
}

TEST_CASE("transforms") {
  const fx::Channel c(fx::cylinder_curve(81), 16, Exec::serial);
  std::mt19937_64 rng(9);
  const LieVec phi0 = fx::random_phi0(rng, 0.3);
  const DarbouxResult a = darboux_transform(c.g, c.om, -0.5, phi0, {}, Exec::serial);
  const DarbouxResult b = darboux_transform(c.g, c.om, -0.5, phi0, {}, Exec::parallel);
  CHECK(same(a.hat_f, b.hat_f));
  const CalapsoResult ka = calapso_transform(c.g, c.om, 1.0, Exec::serial), kb = calapso_transform(c.g, c.om, 1.0, Exec::parallel);
  CHECK(same(ka.grid, kb.grid));
  CHECK(ka.q_residual == kb.q_residual);
  const FlatnessReport fa = flatness_check(c.om, {1, 2}, Exec::serial), fb = flatness_check(c.om, {1, 2}, Exec::parallel);
  CHECK(fa.defects == fb.defects);

  const CurvatureData hcd = curvature_data(a.hat_f);
  const RibaucourPair p{&c.g, &c.cd, &c.s, &a.hat_f, &hcd, &a.hat_s};
  const CyclideCongruences ya = ribaucour_cyclides(p, Exec::serial), yb = ribaucour_cyclides(p, Exec::parallel);
  CHECK(ya.coincidence1 == yb.coincidence1);
  CHECK(ya.duality2 == yb.duality2);
  const CongruenceContact xa = congruence_contact(p, ya, 16, Exec::serial), xb = congruence_contact(p, ya, 16, Exec::parallel);
  CHECK(xa.line_membership == xb.line_membership);
}

TEST_CASE("conformal kernels") {
  const CurveGrid g = CurveGrid::open(41, -1, 1);
  const ConformalCurve a = ConformalCurve::from_fn(presets::line({0, 0, 0}, {0, 0, 1}), g);
  const ConformalCurve b = ConformalCurve::from_fn(presets::line({2, 0, 0}, {0, 0, 1}), g);
  const CircleCongruenceReport x = circle_congruence_check(a, b, 16, -1, Exec::serial);
  const CircleCongruenceReport y = circle_congruence_check(a, b, 16, -1, Exec::parallel);
  CHECK(x.tangency == y.tangency);
  CHECK(same(tube(a, 0.5, 16, Exec::serial).grid, tube(a, 0.5, 16, Exec::parallel).grid));
}
