#include "doctest.h"

#include <cmath>
#include <random>

#include "errors.hpp"
#include "geometry.hpp"
#include "parallel.hpp"
#include "subspace.hpp"

using namespace slicing;

namespace {

std::vector<double> v(std::initializer_list<double> x) { return std::vector<double>(x); }

std::vector<double> gaussian_vector(int n, Rng& rng) {
  std::vector<double> x(n);
  for (double& c : x) c = standard_normal(rng);
  return x;
}

std::vector<StarBody> catalog(int n) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = 1.0 + i % 3;
  a(0, 1) = a(1, 0) = 0.3;
  Eigen::MatrixXd rows = Eigen::MatrixXd::Identity(n, n);
  rows(0, 1) = 0.5;
  std::vector<StarBody> out = {StarBody::euclidean_ball(n), StarBody::ellipsoid(a), StarBody::cube(n),
                               StarBody::lp_ball(n, 1.0), StarBody::lp_ball(n, 4.0), StarBody::slab_polytope(rows),
                               StarBody::scaled(StarBody::lp_ball(n, 3.0), 0.7)};
  if (n % 2 == 0) {
    out.push_back(StarBody::complex_lp_ball(n / 2, 1.0));
    out.push_back(StarBody::complex_lp_ball(n / 2, 4.0));
  }
  return out;
}

}  // namespace

TEST_CASE("Minkowski functionals of simple bodies") {
  CHECK(StarBody::euclidean_ball(3).norm(v({2, 0, 0})) == doctest::Approx(2.0).epsilon(1e-15));
  Eigen::MatrixXd a(2, 2);
  a << 1, 0, 0, 4;
  CHECK(StarBody::ellipsoid(a).norm(v({0, 1})) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(StarBody::lp_ball(2, 1.0).norm(v({0.5, 0.5})) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(StarBody::cube(3).norm(v({0.2, -0.7, 0.1})) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(StarBody::complex_lp_ball(2, 1.0).norm(v({3, 4, 0, 1})) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(StarBody::complex_lp_ball(2, 2.0).norm(v({3, 4, 0, 0})) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("radial functions") {
  const auto theta4 = v({0.5, 0.5, 0.5, 0.5});
  CHECK(StarBody::euclidean_ball(4).radial(theta4) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(StarBody::scaled(StarBody::euclidean_ball(4), 3.0).radial(theta4) == doctest::Approx(3.0).epsilon(1e-15));
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(StarBody::lp_ball(2, 1.0).radial(v({s, s})) == doctest::Approx(s).epsilon(1e-15));
}

TEST_CASE("containment") {
  CHECK(StarBody::euclidean_ball(2).contains(v({0.5, 0.5})));
  CHECK_FALSE(StarBody::lp_ball(2, 1.0).contains(v({0.9, 0.9})));
  for (const StarBody& b : catalog(4)) CHECK(b.contains(v({0, 0, 0, 0})));
  CHECK(StarBody::cube(2).contains(v({1.0 + 1e-12, 0.0})));
  CHECK_FALSE(StarBody::cube(2).contains(v({1.0 + 1e-6, 0.0})));
}

TEST_CASE("catalog invariants on sampled points") {
  Rng rng(2024);
  for (int n : {2, 3, 4, 6}) {
    for (const StarBody& b : catalog(n)) {
      CAPTURE(b.label());
      for (int i = 0; i < 1000; ++i) {
        const auto x = gaussian_vector(n, rng);
        const double lambda = 4.0 * uniform01(rng) - 2.0;
        std::vector<double> lx(x), mx(x);
        for (int j = 0; j < n; ++j) {
          lx[j] *= lambda;
          mx[j] = -x[j];
        }
        const double nx = b.norm(x);
        REQUIRE(std::abs(b.norm(lx) - std::abs(lambda) * nx) <= 1e-12 * (1.0 + nx));
        REQUIRE(b.norm(mx) == nx);
        // Midpoint convexity: all catalog kinds here are convex.
        const auto y = gaussian_vector(n, rng);
        std::vector<double> mid(n);
        for (int j = 0; j < n; ++j) mid[j] = 0.5 * (x[j] + y[j]);
        REQUIRE(b.norm(mid) <= 0.5 * (nx + b.norm(y)) * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("containment order of scaled bodies") {
  Rng rng(5);
  const StarBody b = StarBody::lp_ball(3, 1.5);
  const StarBody small = StarBody::scaled(b, 0.8);
  for (int i = 0; i < 1000; ++i) {
    const auto x = gaussian_vector(3, rng);
    CHECK(b.norm(x) <= small.norm(x));
  }
}

TEST_CASE("support bounds enclose the body") {
  Rng rng(9);
  for (const StarBody& b : catalog(4)) {
    CAPTURE(b.label());
    for (int i = 0; i < 200; ++i) {
      auto u = gaussian_vector(4, rng);
      double nu = 0.0;
      for (double c : u) nu += c * c;
      for (double& c : u) c /= std::sqrt(nu);
      const auto th = gaussian_vector(4, rng);
      std::vector<double> t(th);
      double nt = 0.0;
      for (double c : t) nt += c * c;
      for (double& c : t) c /= std::sqrt(nt);
      const double r = b.radial(t);
      double dot = 0.0;
      for (int j = 0; j < 4; ++j) dot += r * t[j] * u[j];
      REQUIRE(dot <= b.support_bound(u) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("invalid bodies") {
  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1, 0, 0, -1;
  CHECK_THROWS_AS(StarBody::ellipsoid(indefinite), InputError);
  Eigen::MatrixXd asym(2, 2);
  asym << 1, 0.5, 0, 1;
  CHECK_THROWS_AS(StarBody::ellipsoid(asym), InputError);
  CHECK_THROWS_AS(StarBody::lp_ball(3, 0.5), InputError);
  CHECK_THROWS_AS(StarBody::euclidean_ball(0), InputError);
  Eigen::MatrixXd rank_deficient(2, 3);
  rank_deficient << 1, 0, 0, 0, 1, 0;
  CHECK_THROWS_AS(StarBody::slab_polytope(rank_deficient), InputError);
  CHECK_THROWS_AS(StarBody::scaled(StarBody::cube(2), -1.0), InputError);
  CHECK_THROWS_AS(StarBody::cube(3).norm(v({1, 2})), DimensionError);
}

TEST_CASE("densities") {
  const auto x = v({0.3, -1.2, 0.4});
  CHECK(Density::constant().eval(x) == 1.0);
  CHECK(Density::radial_gaussian(1.0).eval(v({0, 0, 0})) == doctest::Approx(1.0));
  CHECK(Density::radial_gaussian(1.0).eval(x) == doctest::Approx(std::exp(-0.5 * (0.09 + 1.44 + 0.16))));
  CHECK(Density::radial_polynomial({1.0, 0.0, 1.0}).eval(x) == doctest::Approx(1.0 + 0.09 + 1.44 + 0.16));
  CHECK(Density::radial_polynomial({1.0, 0.0, 1.0}).radial_value(2.0) == doctest::Approx(5.0));
  CHECK_THROWS_AS(Density::radial_polynomial({1.0, -1.0}), InputError);
  CHECK_THROWS_AS(Density::radial_gaussian(0.0), InputError);

  SUBCASE("indicator sum chi_K + g chi_L") {
    const StarBody k = StarBody::euclidean_ball(3);
    const StarBody l = StarBody::scaled(StarBody::cube(3), 2.0);
    const Density g = Density::radial_gaussian(1.0);
    const Density f = Density::indicator_sum({{k, 1.0, Density::constant()}, {l, 1.0, g}});
    CHECK(f.eval(v({5, 0, 0})) == 0.0);
    CHECK(f.eval(v({0.1, 0, 0})) == doctest::Approx(1.0 + std::exp(-0.005)));
    CHECK(f.eval(v({1.5, 0, 0})) == doctest::Approx(std::exp(-1.125)));
    const double theta[] = {1.0, 0.0, 0.0};
    RayProfile ray(f, theta);
    REQUIRE(ray.breakpoints().size() == 2);
    CHECK(ray.breakpoints()[0] == doctest::Approx(1.0));
    CHECK(ray.breakpoints()[1] == doctest::Approx(2.0));
    CHECK(ray(0.5) == doctest::Approx(1.0 + std::exp(-0.125)));
  }
}

TEST_CASE("subspaces") {
  const Subspace h = haar_sample(4, 2, 77);
  CHECK(h.ambient_dim() == 4);
  CHECK(h.sub_dim() == 2);
  CHECK(h.codim() == 2);
  CHECK(h.gram_deviation() <= 1e-10);
  const Subspace again = haar_sample(4, 2, 77);
  CHECK(again.frame() == h.frame());
  const Subspace other = haar_sample(4, 2, 78);
  CHECK(other.frame() != h.frame());
  Eigen::MatrixXd bad(3, 2);
  bad << 1, 1, 0, 0, 0, 0;
  CHECK_THROWS_AS(Subspace::from_frame(bad), InputError);
  const Subspace c = Subspace::coordinate(3, {0, 2});
  CHECK(c.projector()(1, 1) == 0.0);
  CHECK(c.projector()(2, 2) == 1.0);
}
