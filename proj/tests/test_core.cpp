#include "fixtures.hpp"

#include <doctest.h>

using namespace liesphere;

namespace {

// hexaspherical coordinates written out by hand
LieVec hand_lift(const Vec3& c, double r) {
  const double q = c.squaredNorm();
  LieVec v;
  v << c.x(), c.y(), c.z(), 0.5 * (1 - q + r * r), 0.5 * (1 + q - r * r), r;
  return v;
}

}  // namespace

TEST_CASE("metric has signature (4,2)") {
  const Mat6& g = metric();
  CHECK(g.diagonal().sum() == doctest::Approx(2.0));
  for (int k = 1; k <= 6; ++k) CHECK(inner(basis(k), basis(k)) == (k <= 4 ? 1.0 : -1.0));
  LieVec a = LieVec::Random(), b = LieVec::Random();
  CHECK(inner(a, b) == doctest::Approx(a.dot(g * b)));
}

TEST_CASE("sphere lift matches coordinates and is null") {
  const Vec3 c(0.3, -1.2, 2.0);
  const LiePoint p = sphere_lift(c, -0.7);
  CHECK((p.rep() - hand_lift(c, -0.7)).norm() < 1e-15);
  CHECK(null_residual(p.rep()) < 1e-15);
  CHECK(p.rep()(3) + p.rep()(4) == doctest::Approx(1.0));
}

TEST_CASE("projection recovers each kind") {
  SUBCASE("sphere") {
    const auto e = project_to_euclidean(sphere_lift({1, 2, 3}, -0.5).rep() * 3.7);
    const auto* s = std::get_if<Sphere>(&e);
    REQUIRE(s);
    CHECK((s->center - Vec3(1, 2, 3)).norm() < 1e-14);
    CHECK(s->radius == doctest::Approx(-0.5));
  }
  SUBCASE("point") {
    const auto e = project_to_euclidean(point_lift({-1, 0, 4}).rep());
    const auto* p = std::get_if<Point>(&e);
    REQUIRE(p);
    CHECK((p->position - Vec3(-1, 0, 4)).norm() < 1e-14);
  }
  SUBCASE("plane") {
    const auto e = project_to_euclidean(plane_lift(Vec3(0, 0.6, 0.8), 1.5).rep() * -2.0);
    const auto* p = std::get_if<Plane>(&e);
    REQUIRE(p);
    CHECK((p->normal - Vec3(0, 0.6, 0.8)).norm() < 1e-14);
    CHECK(p->offset == doctest::Approx(1.5));
  }
  SUBCASE("infinity") {
    LieVec v = LieVec::Zero();
    v(3) = 1;
    v(4) = -1;
    CHECK(std::holds_alternative<Infinity>(project_to_euclidean(v)));
  }
  SUBCASE("off the lightcone") { CHECK_THROWS_AS(project_to_euclidean(basis(1)), PreconditionError); }
}

TEST_CASE("LiePoint rejects non-null vectors") {
  CHECK_THROWS_AS(LiePoint(basis(1) + 0.1 * basis(5)), PreconditionError);
  CHECK_NOTHROW(LiePoint(basis(1) + basis(5)));
}

TEST_CASE("tangency identity on random pairs") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int k = 0; k < 200; ++k) {
    const Vec3 c1(u(rng), u(rng), u(rng)), c2(u(rng), u(rng), u(rng));
    const double r1 = u(rng), r2 = u(rng);
    const double lhs = inner(sphere_lift(c1, r1).rep(), sphere_lift(c2, r2).rep());
    const double rhs = -((c1 - c2).squaredNorm() - (r1 - r2) * (r1 - r2)) / 2;
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("sphere touches plane when c.n - d = r") {
  const Vec3 n(0, 0, 1);
  CHECK(std::abs(inner(sphere_lift({5, -2, 3}, 1.0).rep(), plane_lift(n, 2.0).rep())) < 1e-14);
  CHECK(std::abs(inner(sphere_lift({5, -2, 3}, -1.0).rep(), plane_lift(n, 2.0).rep())) > 0.5);
}

TEST_CASE("parallel transform shifts radii and lies in O(4,2)") {
  for (double a : {-1.3, 0.0, 0.4, 2.0}) {
    const Mat6 p = parallel_transform_matrix(a);
    CHECK(orthogonality_defect(p) < 1e-14);
    const LieVec v = p * sphere_lift({1, 0, -2}, 0.5).rep();
    const EuclideanSphere e = project_to_euclidean(v);
    const auto* s = std::get_if<Sphere>(&e);
    if (std::abs(0.5 + a) > 1e-12) {
      REQUIRE(s);
      CHECK(s->radius == doctest::Approx(0.5 + a));
      CHECK((s->center - Vec3(1, 0, -2)).norm() < 1e-13);
    }
  }
  const LieVec x = sphere_lift({0.2, 0.1, 0}, 0.3).rep();
  CHECK(projective_distance(parallel_transform(parallel_transform(x, 0.4), 0.7), parallel_transform(x, 1.1)) < 1e-12);
}

TEST_CASE("wedge is skew and acts as (a,c)b - (b,c)a") {
  const LieVec a = LieVec::Random(), b = LieVec::Random(), c = LieVec::Random();
  const SkewMap w = wedge(a, b);
  CHECK(w.skew_defect() < 1e-13);
  CHECK((w(c) - (inner(a, c) * b - inner(b, c) * a)).norm() < 1e-13);
  CHECK((wedge(a, b) + wedge(b, a)).norm() < 1e-14);
}

TEST_CASE("curly wedge is symmetric, the bracket of a u-form with itself vanishes") {
  const LieVec a = LieVec::Random(), b = LieVec::Random(), c = LieVec::Random(), d = LieVec::Random();
  CHECK((curly_wedge(a, b, c, d) - curly_wedge(c, d, a, b)).norm() < 1e-13);
  CHECK(curly_wedge(a, 2 * a, c, 2 * c).norm() < 1e-13);
  const SkewMap x = wedge(a, b), y = wedge(c, d);
  CHECK(form_bracket(x, SkewMap::zero(), x, SkewMap::zero()).norm() < 1e-14);
  CHECK((form_bracket(x, y, x, y)).skew_defect() < 1e-12);
}
