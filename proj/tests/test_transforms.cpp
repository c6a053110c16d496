#include "fixtures.hpp"

#include <doctest.h>

using namespace liesphere;

TEST_CASE("Omega_0 structure of the cylinder") {
  const fx::Channel c(fx::cylinder_curve(65), 32);
  CHECK(c.om.closedness < 1e-6);
  CHECK(c.om.bracket < 1e-12);
  CHECK(c.om.lift_membership < 1e-12);
  for (double q : c.om.q_uu) CHECK(q == doctest::Approx(-1.0).epsilon(1e-10));
  for (int i = 0; i < 65; i += 16) CHECK(c.om.eta_u(i).skew_defect() < 1e-12);
  CHECK(c.om.star.sign_t1 == -1);
}

TEST_CASE("omega0_form needs a circular direction") {
  const LegendreGrid g = fx::ellipsoid(24);
  const CurvatureData cd = curvature_data(g);
  const ChannelReport ch = is_channel(g, cd);
  const SphereCurve s = fx::cylinder_curve(24);
  CHECK_THROWS_AS(omega0_form(g, ch, special_lift_unit(s)), PreconditionError);
}

TEST_CASE("conserved quantity and its negative control") {
  const fx::Channel c(fx::cylinder_curve(129), 32);
  const ConservedReport r = conserved_quantity(c.om, basis(6), {-1, 1, 2, 3});
  CHECK(r.max_residual < 1e-8);
  const Omega0Structure unit = omega0_form(c.g, c.ch, special_lift_unit(c.s));
  CHECK_THROWS(conserved_quantity(unit, basis(6), {1.0}));
  double worst = 0.0;
  for (double l : {-1.0, 1.0, 2.0, 3.0}) worst = std::max(worst, conserved_residual(unit, basis(6), l));
  CHECK(worst >= 1e-3);
}

TEST_CASE("the flat family has trivial plaquette holonomy") {
  const fx::Channel c(fx::helix_curve(64), 32);
  const FlatnessReport r = flatness_check(c.om, {-1, 0, 1, 2});
  CHECK(r.max_defect < 1e-6);
}

TEST_CASE("rescaling the lift keeps eta's kernel structure") {
  const fx::Channel c(fx::cylinder_curve(41), 16);
  const SpecialLift l = rescale_lift(c.om.lift, [](double u) { return std::array<double, 2>{2.0 + u, 1.0}; }, c.s.grid());
  for (int i = 0; i < 41; i += 10) {
    CHECK((l.value[i] - (2.0 + c.s.grid().u(i)) * c.om.lift.value[i]).norm() < 1e-14);
    CHECK((l.deriv[i] - c.om.lift.value[i] - (2.0 + c.s.grid().u(i)) * c.om.lift.deriv[i]).norm() < 1e-12);
  }
}

TEST_CASE("Darboux transform of the cylinder") {
  const fx::Channel c(fx::cylinder_curve(201), 32);
  std::mt19937_64 rng(5);
  const LieVec phi0 = fx::random_phi0(rng, 0.4);
  const DarbouxResult d = darboux_transform(c.g, c.om, 1.0, phi0);
  CHECK(d.null_drift < 1e-10);
  CHECK(validate_legendre(d.hat_f).pass);
  const CurvatureData hcd = curvature_data(d.hat_f);
  CHECK(is_channel(d.hat_f, hcd).dir1_circular());
  CHECK(verify_ribaucour(c.s, d.hat_s).max_residual < 1e-6);
  CHECK(fx::max_theta_line_residual(d.hat_f) < 1e-8);
  // exact derivative of the parallel section
  for (size_t i = 0; i < d.phi.size(); i += 50) CHECK((d.dphi[i] + 1.0 * (c.om.eta_u(int(i))(d.phi[i]))).norm() < 1e-12);

  const RibaucourPair p{&c.g, &c.cd, &c.s, &d.hat_f, &hcd, &d.hat_s};
  const CyclideCongruences cy = ribaucour_cyclides(p);
  CHECK(cy.coincidence1 < 1e-6);
  CHECK(cy.constancy1 < 1e-6);
  CHECK(cy.duality1 < 1e-6);
  const CongruenceContact cc = congruence_contact(p, cy);
  CHECK(cc.sphere_contact < 1e-8);
  CHECK(cc.line_membership < 1e-8);
  CHECK(darboux_pair_structure(c.g, c.s, d.hat_f, d.hat_s).pass);
}

TEST_CASE("Darboux rejects initial spheres off the lightcone or in contact with f") {
  const fx::Channel c(fx::cylinder_curve(41), 16);
  CHECK_THROWS_AS(darboux_transform(c.g, c.om, 1.0, basis(1)), PreconditionError);
  CHECK_THROWS_AS(darboux_transform(c.g, c.om, 1.0, c.s.value(0)), PreconditionError);
}

TEST_CASE("m = 0 is rejected") {
  const fx::Channel c(fx::cylinder_curve(41), 16);
  std::mt19937_64 rng(2);
  CHECK_THROWS_AS(darboux_transform(c.g, c.om, 0.0, fx::random_phi0(rng, 1.0)), PreconditionError);
}

TEST_CASE("a generic pair of tubes is not a Darboux pair") {
  const fx::Channel a(fx::cylinder_curve(101), 16);
  const SphereCurve off = presets::sphere_curve(presets::line({3, 0, 0}, {0, 0.3, 1}), presets::polynomial_radius({0.5, 0.2}),
                                                CurveGrid::open(101, -1, 1));
  const LegendreGrid hf = envelope(off, 16).grid;
  const DarbouxPairStructure s = darboux_pair_structure(a.g, a.s, hf, off);
  CHECK_FALSE(s.pass);
  CHECK(s.inclusion > s.tol);
}

TEST_CASE("Calapso transforms of the cylinder") {
  const fx::Channel c(fx::cylinder_curve(201), 32);
  for (double l : {0.5, 2.0}) {
    const CalapsoResult r = calapso_transform(c.g, c.om, l);
    CHECK(r.gauge.ortho_defect < 1e-8);
    CHECK(r.q_residual < 1e-8);
    CHECK((r.gauge.tinv[0] - Mat6::Identity()).norm() == 0.0);
    const CurvatureData cdl = curvature_data(r.grid);
    CHECK(is_channel(r.grid, cdl).dir1_circular());
    CHECK(curvature_sphere_mapping(r, c.cd, cdl) < 1e-6);
  }
  const CalapsoResult zero = calapso_transform(c.g, c.om, 0.0);
  CHECK(zero.gauge.ortho_defect == 0.0);
}

TEST_CASE("Ribaucour criterion on point-sphere curves") {
  const CurveGrid g = CurveGrid::open(101, -1, 1);
  auto pts = [&](Vec3 p, Vec3 d) { return presets::sphere_curve(presets::line(p, d), presets::constant_radius(0), g); };
  const SphereCurve l1 = pts({0, 0, 0}, {0, 0, 1}), l2 = pts({2, 0, 0}, {0, 0, 1}), l3 = pts({2, 0, 0}, {0, 0, 2});
  CHECK(verify_ribaucour(l1, l2).max_residual < 1e-10);
  const RibaucourReport r = verify_ribaucour(l1, l3);
  for (int i = 0; i < g.n; ++i)
    if (std::abs(g.u(i)) >= 0.5) CHECK(r.residuals[i] >= 1e-2);
  CHECK(r.residuals[50] < 1e-10);  // u = 0: the two parametrisations agree to first order there
  CHECK_THROWS_AS(verify_ribaucour(l1, l1), PreconditionError);
}

TEST_CASE("partner curves pass the Ribaucour test and stay null") {
  const SphereCurve s = fx::helix_curve(121);
  for (double b : {0.5, 2.0}) {
    const SphereCurve p = ribaucour_partner_curve(
        s, [b](double u) { return b + 0.2 * std::sin(u); }, [](double) { return 0.1; }, point_lift(Vec3(2, 1, 0)).rep());
    CHECK(verify_ribaucour(s, p).max_residual <= 10 * s.grid().du * s.grid().du);
    CHECK(p.max_null_residual() < 1e-10);
  }
  CHECK_THROWS(ribaucour_partner_curve(s, [](double) { return 1.0; }, [](double) { return 0.0; }, s.value(0)));
}

TEST_CASE("Dupin cyclides from three spheres") {
  const DupinCyclide d = dupin_from_spheres(sphere_lift({2, 0, 0}, 1).rep(), sphere_lift({-2, 0, 0}, 1).rep(),
                                            sphere_lift({0, 2, 0}, 1).rep());
  CHECK(d.d.signature() == Signature{2, 1, 0});
  CHECK(d.dperp.signature() == Signature{2, 1, 0});
  CHECK(dupin_contact_residual(d) < 1e-10);
  CHECK(d.provenance == "from-three-spheres");
  const DupinCyclide e = dupin_from_splitting(d.dperp);
  CHECK(subspace_equal(e.dperp, d.d).equal);
  CHECK_THROWS(dupin_from_spheres(basis(1) + basis(5), basis(2) + basis(5), 2.0 * (basis(1) + basis(5))));
}
