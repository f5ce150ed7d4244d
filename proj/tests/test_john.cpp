#include "doctest.h"

#include <cmath>

#include "complex_geom.hpp"
#include "errors.hpp"
#include "john.hpp"

using namespace slicing;

TEST_CASE("ellipsoids are their own sandwich") {
  Eigen::MatrixXd a(3, 3);
  a << 2, 0.3, 0, 0.3, 1, 0.1, 0, 0.1, 3;
  const StarBody e = StarBody::ellipsoid(a);
  const SandwichEllipsoid s = sandwich_ellipsoid(e);
  CHECK(s.ratio == 1.0);
  CHECK(s.certified);
  CHECK((s.shape - a).norm() <= 1e-15);
  CHECK(verify_sandwich(e, s).pass);
}

TEST_CASE("cube: circumscribed ball of radius sqrt(n)") {
  for (int n = 2; n <= 6; ++n) {
    const StarBody c = StarBody::cube(n);
    const SandwichEllipsoid s = sandwich_ellipsoid(c);
    CHECK(s.ratio == doctest::Approx(std::sqrt(n)).epsilon(1e-15));
    CHECK((s.shape - Eigen::MatrixXd::Identity(n, n) / n).norm() <= 1e-15);
    CHECK(verify_sandwich(c, s).pass);
  }
}

TEST_CASE("cross-polytope: unit ball outside, radius 1/sqrt(n) inside") {
  const StarBody l1 = StarBody::lp_ball(3, 1.0);
  const SandwichEllipsoid s = sandwich_ellipsoid(l1);
  CHECK(s.ratio == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK((s.shape - Eigen::MatrixXd::Identity(3, 3)).norm() <= 1e-15);
  const SandwichCheck chk = verify_sandwich(l1, s);
  CHECK(chk.pass);
  CHECK(chk.samples == 10000);
}

TEST_CASE("a deliberately wrong claim fails") {
  Eigen::MatrixXd a(2, 2);
  a << 1, 0, 0, 4;
  const SandwichCheck chk = verify_sandwich(StarBody::euclidean_ball(2), StarBody::ellipsoid(a), 1.0);
  CHECK_FALSE(chk.pass);
  CHECK(chk.max_violation > 0.1);
}

TEST_CASE("complex l1 ball after symmetrization") {
  const StarBody l = StarBody::complex_lp_ball(2, 1.0);
  const SandwichEllipsoid s = sandwich_ellipsoid(l);
  CHECK(s.ratio <= 2.0 + 1e-12);
  const StarBody kc = rtheta_symmetrize(s.outer());
  CHECK(verify_sandwich(l, kc, s.ratio).pass);
  // Extreme radial values: |z|_1 over unit vectors ranges over [1, sqrt(2)].
  CHECK(s.ratio == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("certified catalog bodies stay within sqrt(n)") {
  for (int n = 2; n <= 8; ++n) {
    for (const StarBody& b : {StarBody::euclidean_ball(n), StarBody::cube(n), StarBody::lp_ball(n, 1.0),
                              StarBody::lp_ball(n, 4.0), StarBody::lp_ball(n, 1.5)}) {
      const SandwichEllipsoid s = sandwich_ellipsoid(b);
      CAPTURE(b.label());
      CHECK(s.certified);
      CHECK(s.ratio <= std::sqrt(n) + 1e-12);
      CHECK(verify_sandwich(b, s).pass);
    }
  }
}

TEST_CASE("scaled bodies and slab polytopes") {
  const StarBody b = StarBody::scaled(StarBody::lp_ball(4, 1.0), 2.5);
  const SandwichEllipsoid s = sandwich_ellipsoid(b);
  CHECK(s.ratio == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(verify_sandwich(b, s).pass);
  Eigen::MatrixXd rows(3, 3);
  rows << 1, 0.5, 0, 0, 1, -0.3, 0.2, 0, 1;
  const StarBody p = StarBody::slab_polytope(rows);
  const SandwichEllipsoid sp = sandwich_ellipsoid(p);
  CHECK(sp.certified);
  CHECK(sp.ratio == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(verify_sandwich(p, sp).pass);
}

TEST_CASE("fallback for other convex bodies is uncertified but valid") {
  Eigen::MatrixXd rows(4, 2);
  rows << 1, 0, 0, 1, 1, 1, 1, -1;
  const StarBody octagon = StarBody::slab_polytope(rows);
  const SandwichEllipsoid s = sandwich_ellipsoid(octagon);
  CHECK_FALSE(s.certified);
  CHECK(verify_sandwich(octagon, s).pass);
}

TEST_CASE("non-convex bodies are rejected") {
  const StarBody star = StarBody::custom(
      2, [](std::span<const double> x) { return std::sqrt(std::sqrt(std::abs(x[0])) + std::sqrt(std::abs(x[1]))); },
      false, "star");
  CHECK_THROWS_AS(sandwich_ellipsoid(star), InputError);
}
