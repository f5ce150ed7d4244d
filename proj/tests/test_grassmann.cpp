#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "complex_geom.hpp"
#include "constants.hpp"
#include "errors.hpp"
#include "grassmann.hpp"
#include "sections.hpp"

using namespace slicing;

namespace {

SearchConfig small_search(int restarts = 6, int evals = 150) {
  SearchConfig s;
  s.restarts = restarts;
  s.evals = evals;
  return s;
}

Subspace hyperplane(const Eigen::VectorXd& normal) {
  const int n = static_cast<int>(normal.size());
  Eigen::MatrixXd basis(n, n);
  basis.col(0) = normal.normalized();
  int col = 1;
  for (int i = 0; i < n && col < n; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Unit(n, i);
    Eigen::MatrixXd trial = basis.leftCols(col);
    const Eigen::VectorXd r = e - trial * (trial.transpose() * e);
    if (r.norm() > 0.3) basis.col(col++) = r.normalized();
  }
  orthonormalize(basis);
  return Subspace::from_frame(basis.rightCols(n - 1));
}

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

}  // namespace

TEST_CASE("Haar lines have the uniform second moment") {
  const int trials = 10000;
  double sum = 0.0, sum2 = 0.0;
  for (int s = 0; s < trials; ++s) {
    const Subspace h = haar_sample(3, 2, static_cast<std::uint64_t>(s));
    const double c = h.frame()(0, 0) * h.frame()(0, 0);
    sum += c;
    sum2 += c * c;
  }
  const double mean = sum / trials;
  const double sd = std::sqrt((sum2 / trials - mean * mean) / trials);
  CHECK(std::abs(mean - 1.0 / 3.0) <= 3.0 * sd);
}

TEST_CASE("Haar samples are rotation invariant in distribution") {
  const int trials = 10000;
  const Eigen::Matrix3d q = Eigen::AngleAxisd(1.1, Eigen::Vector3d(1, -2, 0.5).normalized()).toRotationMatrix();
  std::vector<double> a, b;
  for (int s = 0; s < trials; ++s) {
    const Eigen::Vector3d u = haar_sample(3, 2, static_cast<std::uint64_t>(s)).frame().col(0);
    const Eigen::Vector3d w = haar_sample(3, 2, static_cast<std::uint64_t>(s + trials)).frame().col(0);
    a.push_back(std::pow(u(0), 2));
    b.push_back(std::pow((q * w)(0), 2));
  }
  // 1% critical value of the two-sample statistic for equal sizes m.
  const double critical = 1.628 * std::sqrt(2.0 / trials);
  CHECK(ks_statistic(a, b) < critical);
}

TEST_CASE("Haar frames") {
  CHECK(haar_sample(2, 1, 9).frame() == haar_sample(2, 1, 9).frame());
  const Subspace h = haar_sample(4, 2, 1);
  CHECK((h.frame().transpose() * h.frame() - Eigen::MatrixXd::Identity(2, 2)).norm() <= 1e-10);
  CHECK_THROWS_AS(haar_sample(3, 3, 0), InputError);
}

TEST_CASE("max section of the ball is flat") {
  const QuadratureSpec q;
  const MaxSectionResult r = max_section(StarBody::euclidean_ball(4), Density::constant(), 1, q, small_search());
  CHECK(r.best_value == doctest::Approx(ball_volume(3)).epsilon(1e-12));
  const auto [lo, hi] = std::minmax_element(r.restart_values.begin(), r.restart_values.end());
  CHECK(*hi - *lo <= 1e-10);
  CHECK(r.near_best.size() == r.restart_values.size());
}

TEST_CASE("square: longest central chord is the diagonal") {
  const MaxSectionResult r = max_section(StarBody::cube(2), Density::constant(), 1, QuadratureSpec{}, small_search());
  CHECK(r.best_value == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-4));
}

TEST_CASE("cube: maximal central section against a dense grid of normals") {
  const QuadratureSpec q;
  const StarBody cube = StarBody::cube(3);
  // Grid oracle over normals in one octant (the cube's symmetry group covers the rest).
  double grid_best = 0.0;
  const int steps = 60;
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; j <= steps; ++j) {
      const double t = 0.5 * std::numbers::pi * i / steps;
      const double p = 0.5 * std::numbers::pi * j / steps;
      const Eigen::Vector3d nrm(std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t));
      grid_best = std::max(grid_best, section_volume(cube, hyperplane(nrm), q).value);
    }
  }
  const MaxSectionResult r = max_section(cube, Density::constant(), 1, q, small_search(8, 200));
  CHECK(grid_best == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-4));
  CHECK(r.best_value >= grid_best * (1.0 - 1e-4));
  CHECK(r.best_value == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-4));
}

TEST_CASE("larger budgets never lose ground") {
  const QuadratureSpec q;
  const StarBody b = StarBody::lp_ball(4, 1.0);
  const MaxSectionResult a = max_section(b, Density::radial_gaussian(1.0), 2, q, small_search(3, 100));
  const MaxSectionResult c = max_section(b, Density::radial_gaussian(1.0), 2, q, small_search(6, 100));
  CHECK(c.best_value >= a.best_value);
  CHECK(c.best_of_first(3) == a.best_value);
}

TEST_CASE("k=1 search over frames agrees with a search over normals") {
  const QuadratureSpec q;
  const StarBody b = StarBody::lp_ball(4, 1.0);
  const MaxSectionResult frames = max_section(b, Density::constant(), 1, q, small_search(8, 200));
  const MaxSectionResult normals = maximize_over_directions(
      4,
      [&](std::span<const double> xi, const QuadratureSpec& qq) {
        return section_volume(b, hyperplane(Eigen::Map<const Eigen::VectorXd>(xi.data(), 4)), qq).value;
      },
      q, small_search(8, 200));
  CHECK(std::abs(frames.best_value - normals.best_value) <= q.rel_tol * frames.best_value);
}

TEST_CASE("complex sections") {
  const QuadratureSpec q;
  SUBCASE("complex euclidean ball has constant objective") {
    const MaxSectionResult r =
        max_complex_section(StarBody::complex_lp_ball(2, 2.0), Density::constant(), q, small_search(4, 60));
    CHECK(r.best_value == doctest::Approx(std::numbers::pi).epsilon(1e-12));
    for (double v : r.restart_values) CHECK(v == doctest::Approx(std::numbers::pi).epsilon(1e-12));
  }
  SUBCASE("complex l1 ball against a grid of directions") {
    const StarBody b = StarBody::complex_lp_ball(2, 1.0);
    // By R_theta invariance xi = (cos a, 0, sin a cos c, sin a sin c) covers all H_xi;
    // the body is also invariant under independent phase rotations, so c does not matter.
    double grid_best = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double a = 0.5 * std::numbers::pi * i / 2000;
      const double xi[] = {std::cos(a), 0.0, std::sin(a), 0.0};
      grid_best = std::max(grid_best, section_volume(b, complex_hyperplane_frame(xi), q).value);
    }
    const MaxSectionResult r = max_complex_section(b, Density::constant(), q, small_search(6, 150));
    CHECK(r.best_value >= grid_best * (1.0 - q.rel_tol));
    CHECK(r.best_value <= grid_best * (1.0 + q.rel_tol));
  }
  SUBCASE("objective is constant along R_theta orbits") {
    const StarBody b = StarBody::complex_lp_ball(3, 4.0);
    const double xi[] = {0.2, -0.5, 0.4, 0.1, -0.3, 0.6};
    const double base = section_measure(b, Density::radial_gaussian(1.0), complex_hyperplane_frame(xi), q).value;
    for (int t = 1; t < 8; ++t) {
      const auto rx = rtheta_apply(0.7 * t, xi);
      const double v = section_measure(b, Density::radial_gaussian(1.0), complex_hyperplane_frame(rx), q).value;
      CHECK(std::abs(v - base) <= 1e-10 * base);
    }
  }
}
