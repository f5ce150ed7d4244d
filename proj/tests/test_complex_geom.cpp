#include "doctest.h"

#include <cmath>
#include <numbers>

#include "complex_geom.hpp"
#include "errors.hpp"
#include "john.hpp"
#include "parallel.hpp"

using namespace slicing;

namespace {

std::vector<double> unit(int n, Rng& rng) {
  std::vector<double> x(n);
  double s = 0.0;
  for (double& c : x) {
    c = standard_normal(rng);
    s += c * c;
  }
  for (double& c : x) c /= std::sqrt(s);
  return x;
}

double projector_gap(const Subspace& a, const Subspace& b) { return (a.projector() - b.projector()).cwiseAbs().maxCoeff(); }

Eigen::MatrixXd diag(std::initializer_list<double> d) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(d.size()));
  int i = 0;
  for (double x : d) v(i++) = x;
  return v.asDiagonal();
}

}  // namespace

TEST_CASE("rotation of coordinate pairs") {
  const double x[] = {1, 0, 0, 0};
  const auto y = rtheta_apply(std::numbers::pi / 2, x);
  CHECK(std::abs(y[0]) < 1e-15);
  CHECK(y[1] == doctest::Approx(1.0));
  CHECK(y[2] == 0.0);
  CHECK(y[3] == 0.0);
  const double z[] = {0.3, -0.2, 1.5, 0.7};
  const auto id = rtheta_apply(0.0, z);
  for (int i = 0; i < 4; ++i) CHECK(id[i] == z[i]);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto u = unit(6, rng);
    const auto r = rtheta_apply(6.0 * uniform01(rng), u);
    double s = 0.0;
    for (double c : r) s += c * c;
    CHECK(std::abs(s - 1.0) < 1e-14);
  }
  CHECK_THROWS_AS(rtheta_apply(0.1, std::span<const double>(z, 3)), DimensionError);
}

TEST_CASE("invariance checks") {
  const InvarianceCheck ball = is_rtheta_invariant(StarBody::euclidean_ball(4));
  CHECK(ball.pass);
  CHECK(ball.max_deviation <= 1e-15);
  for (double p : {1.0, 2.0, 4.0}) CHECK(is_rtheta_invariant(StarBody::complex_lp_ball(2, p)).pass);
  const InvarianceCheck cube = is_rtheta_invariant(StarBody::cube(4));
  CHECK_FALSE(cube.pass);
  CHECK(cube.max_deviation > 0.1);
  // Witness: theta = pi/4 moves (1,0,0,0) to (1/sqrt2, 1/sqrt2, 0, 0).
  const double e1[] = {1, 0, 0, 0};
  CHECK(StarBody::cube(4).norm(rtheta_apply(std::numbers::pi / 4, e1)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(is_rtheta_invariant(Density::radial_gaussian(1.0), 4, 3.0).pass);
  CHECK_THROWS_AS(is_rtheta_invariant(StarBody::cube(3)), DimensionError);
}

TEST_CASE("complex hyperplanes") {
  const double xi[] = {1, 0, 0, 0};
  const Subspace h = complex_hyperplane_frame(xi);
  CHECK(h.sub_dim() == 2);
  CHECK(projector_gap(h, Subspace::coordinate(4, {2, 3})) <= 1e-12);
  Rng rng(3);
  for (int n = 2; n <= 4; ++n) {
    for (int t = 0; t < 20; ++t) {
      const auto x = unit(2 * n, rng);
      const Subspace hx = complex_hyperplane_frame(x);
      CHECK(hx.gram_deviation() <= 1e-12);
      const auto jx = rtheta_apply(std::numbers::pi / 2, x);
      const Eigen::Map<const Eigen::VectorXd> a(x.data(), 2 * n), b(jx.data(), 2 * n);
      CHECK((hx.frame().transpose() * a).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((hx.frame().transpose() * b).cwiseAbs().maxCoeff() <= 1e-12);
      const Subspace hr = complex_hyperplane_frame(rtheta_apply(2.0 * std::numbers::pi * uniform01(rng), x));
      CHECK(projector_gap(hx, hr) <= 1e-10);
    }
  }
}

TEST_CASE("R_theta symmetrization") {
  Rng rng(4);
  SUBCASE("invariant bodies are fixed") {
    for (const StarBody& b : {StarBody::euclidean_ball(4), StarBody::complex_lp_ball(2, 1.0),
                              StarBody::ellipsoid(diag({1, 1, 4, 4}))}) {
      const StarBody c = rtheta_symmetrize(b);
      CAPTURE(b.label());
      for (int i = 0; i < 200; ++i) {
        const auto x = unit(4, rng);
        CHECK(std::abs(c.norm(x) - b.norm(x)) <= 1e-10);
      }
    }
  }
  SUBCASE("non-invariant ellipsoid") {
    const StarBody e = StarBody::ellipsoid(diag({1, 4, 1, 9}));
    CHECK_FALSE(is_rtheta_invariant(e).pass);
    const StarBody c = rtheta_symmetrize(e);
    CHECK(c.theta_nodes() == 0);
    CHECK(is_rtheta_invariant(c).pass);
    // The closed form agrees with the trapezoid average on a fine grid.
    const StarBody grid = StarBody::rtheta_symmetrized(e, 512);
    for (int i = 0; i < 200; ++i) {
      const auto x = unit(4, rng);
      CHECK(std::abs(c.norm(x) - grid.norm(x)) <= 1e-12);
    }
    const StarBody twice = rtheta_symmetrize(c);
    for (int i = 0; i < 200; ++i) {
      const auto x = unit(4, rng);
      CHECK(std::abs(twice.norm(x) - c.norm(x)) <= 1e-10);
    }
  }
  SUBCASE("non-ellipsoid body uses the angular grid") {
    const StarBody c = rtheta_symmetrize(StarBody::cube(4));
    CHECK(c.theta_nodes() >= 64);
    CHECK(is_rtheta_invariant(c).pass);
  }
  SUBCASE("sandwich preservation") {
    // L = complex l1 ball is R_theta-invariant; its sandwich K satisfies
    // K/s within L within K, and so does the symmetrized K_c.
    const StarBody l = StarBody::complex_lp_ball(2, 1.0);
    const SandwichEllipsoid s = sandwich_ellipsoid(l);
    const StarBody kc = rtheta_symmetrize(s.outer());
    CHECK(verify_sandwich(l, kc, s.ratio).pass);
    CHECK(s.ratio <= std::sqrt(4.0) + 1e-12);
  }
  CHECK_THROWS_AS(rtheta_symmetrize(StarBody::cube(3)), DimensionError);
}
