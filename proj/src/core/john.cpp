#include "john.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"

namespace slicing {

namespace {

std::vector<double> unit_direction(int n, Rng& rng) {
  std::vector<double> x(n);
  double len2 = 0.0;
  for (auto& v : x) {
    v = standard_normal(rng);
    len2 += v * v;
  }
  for (auto& v : x) v /= std::sqrt(len2);
  return x;
}

SandwichEllipsoid ball_sandwich(int n, int coords, double p) {
  SandwichEllipsoid s;
  s.certified = true;
  const double m = coords;
  if (p >= 2.0) {
    const double radius = std::pow(m, 0.5 - 1.0 / p);
    s.shape = Eigen::MatrixXd::Identity(n, n) / (radius * radius);
    s.ratio = radius;
  } else {
    s.shape = Eigen::MatrixXd::Identity(n, n);
    s.ratio = std::pow(m, 1.0 / p - 0.5);
  }
  return s;
}

SandwichEllipsoid inertia_fallback(const StarBody& body) {
  const int n = body.dim();
  Rng rng(derive_seed(0x10b5, static_cast<std::uint64_t>(n)));
  const int samples = 10000;
  std::vector<std::vector<double>> dirs;
  dirs.reserve(samples);
  Eigen::MatrixXd inertia = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < samples; ++i) {
    auto theta = unit_direction(n, rng);
    const double rho = body.radial(theta);
    Eigen::Map<const Eigen::VectorXd> t(theta.data(), n);
    inertia += rho * rho * t * t.transpose();
    dirs.push_back(std::move(theta));
  }
  inertia /= samples;
  const Eigen::MatrixXd base = inertia.inverse();
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& theta : dirs) {
    Eigen::Map<const Eigen::VectorXd> t(theta.data(), n);
    const double rho_e = 1.0 / std::sqrt(t.dot(base * t));
    const double q = body.radial(theta) / rho_e;
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  // Sampled extremes miss directions between samples; widen both sides by 1%.
  hi *= 1.01;
  lo /= 1.01;
  SandwichEllipsoid s;
  s.shape = 0.5 * (base + base.transpose()) / (hi * hi);
  s.ratio = hi / lo;
  s.certified = false;
  return s;
}

}  // namespace

SandwichEllipsoid sandwich_ellipsoid(const StarBody& body) {
  if (!body.is_convex()) {
    throw InputError("sandwich_ellipsoid: body " + body.label() + " is not convex");
  }
  const int n = body.dim();
  switch (body.kind()) {
    case BodyKind::EuclideanBall:
      return {Eigen::MatrixXd::Identity(n, n), 1.0, true};
    case BodyKind::Ellipsoid:
      return {body.matrix(), 1.0, true};
    case BodyKind::LpBall:
      return ball_sandwich(n, n, body.exponent());
    case BodyKind::ComplexLpBall:
      return ball_sandwich(n, body.complex_dim(), body.exponent());
    case BodyKind::SlabPolytope: {
      const Eigen::MatrixXd& a = body.matrix();
      if (a.rows() != n) return inertia_fallback(body);
      const double m = static_cast<double>(a.rows());
      return {a.transpose() * a / m, std::sqrt(m), true};
    }
    case BodyKind::Scaled: {
      SandwichEllipsoid s = sandwich_ellipsoid(body.inner());
      s.shape /= body.scale() * body.scale();
      return s;
    }
    case BodyKind::RThetaSymmetrized:
    case BodyKind::Custom:
      break;
  }
  return inertia_fallback(body);
}

SandwichCheck verify_sandwich(const StarBody& body, const StarBody& outer, double ratio, int samples, double tol,
                              std::uint64_t seed) {
  check_dim(static_cast<std::size_t>(outer.dim()), static_cast<std::size_t>(body.dim()), "verify_sandwich");
  Rng rng(derive_seed(seed, 0x5a4d));
  SandwichCheck out;
  out.samples = samples;
  for (int i = 0; i < samples; ++i) {
    const auto theta = unit_direction(body.dim(), rng);
    const double inner_rho = body.radial(theta);
    const double outer_rho = outer.radial(theta);
    out.max_violation = std::max({out.max_violation, inner_rho / outer_rho - 1.0, outer_rho / (ratio * inner_rho) - 1.0});
  }
  out.pass = out.max_violation <= tol;
  return out;
}

}  // namespace slicing
