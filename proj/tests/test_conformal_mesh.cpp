#include "fixtures.hpp"

#include "liesphere/mesh.hpp"

#include <doctest.h>

using namespace liesphere;

TEST_CASE("isotropy projection round trip") {
  const MinkowskiPoint q = isotropy_projection(sphere_lift({1, -2, 0.5}, -0.25));
  CHECK((q.c - Vec3(1, -2, 0.5)).norm() < 1e-14);
  CHECK(q.r == doctest::Approx(-0.25));
  CHECK(isotropy_lift(q).same_as(sphere_lift({1, -2, 0.5}, -0.25)));
  CHECK_THROWS_AS(isotropy_projection(plane_lift({1, 0, 0}, 0)), PreconditionError);
}

TEST_CASE("polarity maps e6 to p and is a Lie sphere transformation") {
  for (const LieVec& p : {LieVec(basis(6) + 0.3 * basis(1)), LieVec(-2.0 * basis(6)), LieVec(basis(5) + 0.2 * basis(6))}) {
    const Mat6 r = polarity_map(p);
    CHECK(orthogonality_defect(r) < 1e-13);
    CHECK(projective_distance(r * basis(6), p) < 1e-13);
  }
  CHECK(polarity_map(basis(6)).isIdentity());
  CHECK_THROWS_AS(polarity_map(basis(1)), PreconditionError);
}

TEST_CASE("conformal curve lifts are orthogonal to p") {
  const LieVec p = basis(6) + 0.3 * basis(1);
  const ConformalCurve c = ConformalCurve::from_fn(presets::helix(1, 0.5), CurveGrid::open(41, 0, 3), p);
  for (int i = 0; i < 41; ++i) CHECK(std::abs(inner(c.lift().value(i), c.p_vec())) < 1e-12 * c.lift().value(i).norm());
  CHECK(c.min_speed() > 1.0);
  CHECK_THROWS_AS(ConformalCurve::from_fn(presets::line({0, 0, 0}, {0, 0, 0}), CurveGrid::open(16, 0, 1)), PreconditionError);
}

TEST_CASE("tube around a circle is the torus") {
  const ConformalCurve c = ConformalCurve::from_fn(presets::circle({0, 0, 0}, 2), CurveGrid::closed(48));
  const TubeResult t = tube(c, 1.0, 48);
  CHECK(t.focal_margin == doctest::Approx(0.5));
  CHECK(validate_legendre(t.grid).pass);
  double e = 0.0;
  for (int i = 0; i < 48; ++i)
    for (int j = 0; j < 48; ++j) {
      const auto p = surface_point(t.grid, i, j);
      REQUIRE(p);
      e = std::max(e, std::abs(std::hypot(std::hypot(p->x(), p->y()) - 2.0, p->z()) - 1.0));
    }
  CHECK(e < 1e-12);
  CHECK_THROWS_AS(tube(c, 2.0, 16), PreconditionError);  // reaches the focal circle
  CHECK_THROWS_AS(tube(c, 0.0, 16), PreconditionError);
}

TEST_CASE("Ribaucour pairs of curves survive the tube construction") {
  const CurveGrid g = CurveGrid::open(81, -1, 1);
  const ConformalCurve a = ConformalCurve::from_fn(presets::line({0, 0, 0}, {0, 0, 1}), g);
  const ConformalCurve b = ConformalCurve::from_fn(presets::line({2, 0, 0}, {0, 0, 1}), g);
  const ConformalCurve m = ConformalCurve::from_fn(presets::line({2, 0, 0}, {0, 0, 2}), g);
  const double tol = 1e-8;
  for (double r : {0.3, 1.0}) {
    CHECK(verify_ribaucour(tube_curve(a, r), tube_curve(b, r)).max_residual < tol);
    CHECK(verify_ribaucour(tube_curve(a, r), tube_curve(m, r)).max_residual > tol);
  }
  CHECK(ribaucour_curve_check(a, b).max_residual < tol);
  CHECK(ribaucour_curve_check(a, m).max_residual > tol);
}

TEST_CASE("circle congruence of parallel lines") {
  const CurveGrid g = CurveGrid::open(41, -1, 1);
  const ConformalCurve a = ConformalCurve::from_fn(presets::line({0, 0, 0}, {0, 0, 1}), g);
  const ConformalCurve b = ConformalCurve::from_fn(presets::line({2, 0, 0}, {0, 0, 1}), g);
  const CircleCongruenceReport r = circle_congruence_check(a, b);
  CHECK(r.membership < 1e-8);
  CHECK(r.tangency < 1e-4);
  // the circles are tangent to both lines: radius 1 around (1, 0, u)
  for (double th : {0.0, 1.0, 2.5}) {
    const CircleSample s = circle_congruence(a, b, 20, th);
    REQUIRE(s.finite);
    CHECK((s.point - Vec3(1, 0, 0)).norm() == doctest::Approx(1.0).epsilon(1e-10));
  }
  const ConformalCurve m = ConformalCurve::from_fn(presets::line({2, 0, 0}, {0, 0, 2}), g);
  CHECK_THROWS_AS(circle_congruence_check(a, m), PreconditionError);
}

TEST_CASE("mesh layout and OBJ text") {
  const EnvelopeResult e = envelope(fx::cylinder_curve(5), 8);
  const MeshOutput m = mesh_of(e.grid);
  CHECK(m.vertices.size() == 40);
  CHECK(m.faces.size() == 2 * 4 * 8);  // open in u, periodic in theta
  CHECK(m.faces[0] == std::array<int, 3>{0, 8, 9});
  CHECK(m.faces[1] == std::array<int, 3>{0, 9, 1});
  const std::string t = obj_text(m);
  CHECK(t.rfind("v ", 0) == 0);
  CHECK(t.find("f 1 9 10\n") != std::string::npos);
  MeshOutput two = m;
  append(two, m);
  CHECK(two.faces.back()[0] >= 40);
}

TEST_CASE("mesh drops elements without a finite point") {
  const EnvelopeResult e = envelope(fx::cylinder_curve(5), 8);
  LegendreGrid g = e.grid;
  LieVec inf = LieVec::Zero();
  inf(3) = 1;
  inf(4) = -1;
  g.set(1, 2, plane_lift(Vec3(0, 0, 1), 0).rep(), inf);
  const MeshOutput m = mesh_of(g);
  CHECK(m.dropped_vertices == 1);
  CHECK(m.dropped_cells == 4);
  CHECK(m.vertices.size() == 39);
}

TEST_CASE("Dupin cyclide mesh of a torus") {
  const DupinCyclide d = dupin_from_spheres(sphere_lift({2, 0, 0}, 1).rep(), sphere_lift({-2, 0, 0}, 1).rep(),
                                            sphere_lift({0, 2, 0}, 1).rep());
  const MeshOutput m = mesh_of(d, 24);
  CHECK(m.vertices.size() == 24 * 24);
  CHECK(m.faces.size() == 2 * 24 * 24);
  double e = 0.0;
  for (const Vec3& v : m.vertices) e = std::max(e, std::abs(std::hypot(std::hypot(v.x(), v.y()) - 2.0, v.z()) - 1.0));
  CHECK(e < 1e-9);
}
