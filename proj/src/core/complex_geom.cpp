#include "complex_geom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "parallel.hpp"

namespace slicing {

namespace {

void require_even(std::size_t dim, const char* what) {
  if (dim == 0 || dim % 2 != 0) {
    throw DimensionError(std::string(what) + ": ambient dimension must be even, got " + std::to_string(dim));
  }
}

std::vector<double> random_unit(int dim, Rng& rng) {
  std::vector<double> x(dim);
  double len2 = 0.0;
  for (auto& v : x) {
    v = standard_normal(rng);
    len2 += v * v;
  }
  for (auto& v : x) v /= std::sqrt(len2);
  return x;
}

}  // namespace

std::vector<double> rtheta_apply(double theta, std::span<const double> x) {
  require_even(x.size(), "rtheta_apply");
  const double c = std::cos(theta), s = std::sin(theta);
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); j += 2) {
    out[j] = c * x[j] - s * x[j + 1];
    out[j + 1] = s * x[j] + c * x[j + 1];
  }
  return out;
}

InvarianceCheck is_rtheta_invariant(const StarBody& body, int theta_grid, int samples, double tol,
                                    std::uint64_t seed) {
  require_even(static_cast<std::size_t>(body.dim()), "is_rtheta_invariant");
  Rng rng(derive_seed(seed, 0x7e7a));
  InvarianceCheck out;
  for (int s = 0; s < samples; ++s) {
    const auto x = random_unit(body.dim(), rng);
    const double base = body.norm(x);
    for (int t = 0; t < theta_grid; ++t) {
      const double theta = 2.0 * std::numbers::pi * (t + 0.5) / theta_grid;
      const double dev = std::abs(body.norm(rtheta_apply(theta, x)) - base) / base;
      out.max_deviation = std::max(out.max_deviation, dev);
    }
  }
  out.pass = out.max_deviation <= tol;
  return out;
}

InvarianceCheck is_rtheta_invariant(const Density& density, int dim, double max_radius, int theta_grid,
                                    int samples, double tol, std::uint64_t seed) {
  require_even(static_cast<std::size_t>(dim), "is_rtheta_invariant");
  Rng rng(derive_seed(seed, 0xde75));
  InvarianceCheck out;
  for (int s = 0; s < samples; ++s) {
    auto x = random_unit(dim, rng);
    const double r = max_radius * uniform01(rng);
    for (auto& v : x) v *= r;
    const double base = density.eval(x);
    for (int t = 0; t < theta_grid; ++t) {
      const double theta = 2.0 * std::numbers::pi * (t + 0.5) / theta_grid;
      const double dev = std::abs(density.eval(rtheta_apply(theta, x)) - base) / std::max(1.0, std::abs(base));
      out.max_deviation = std::max(out.max_deviation, dev);
    }
  }
  out.pass = out.max_deviation <= tol;
  return out;
}

Subspace complex_hyperplane_frame(std::span<const double> xi) {
  require_even(xi.size(), "complex_hyperplane_frame");
  const auto n2 = static_cast<Eigen::Index>(xi.size());
  Eigen::VectorXd u = Eigen::Map<const Eigen::VectorXd>(xi.data(), n2);
  const double len = u.norm();
  if (!(len > 0.0)) throw InputError("complex_hyperplane_frame: xi must be non-zero");
  u /= len;
  const auto turned = rtheta_apply(0.5 * std::numbers::pi, std::span<const double>(u.data(), xi.size()));

  Eigen::MatrixXd basis(n2, n2);
  basis.col(0) = u;
  basis.col(1) = Eigen::Map<const Eigen::VectorXd>(turned.data(), n2);
  std::vector<bool> used(static_cast<std::size_t>(n2), false);
  for (Eigen::Index filled = 2; filled < n2; ++filled) {
    // Largest residual after projecting out the current basis; lowest index wins ties.
    const auto current = basis.leftCols(filled);
    Eigen::Index best = -1;
    double best_norm = -1.0;
    Eigen::VectorXd best_vec;
    for (Eigen::Index i = 0; i < n2; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      Eigen::VectorXd e = Eigen::VectorXd::Unit(n2, i);
      e -= current * (current.transpose() * e);
      const double nrm = e.norm();
      if (nrm > best_norm + 1e-14) {
        best_norm = nrm;
        best = i;
        best_vec = e;
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    best_vec /= best_vec.norm();
    best_vec -= current * (current.transpose() * best_vec);
    basis.col(filled) = best_vec / best_vec.norm();
  }
  return Subspace::from_frame(basis.rightCols(n2 - 2));
}

StarBody rtheta_symmetrize(const StarBody& body, int theta_nodes) {
  require_even(static_cast<std::size_t>(body.dim()), "rtheta_symmetrize");
  if (theta_nodes < 4) throw InputError("rtheta_symmetrize: theta_nodes must be >= 4");
  if (body.kind() == BodyKind::Ellipsoid || body.kind() == BodyKind::EuclideanBall) {
    return StarBody::rtheta_symmetrized(body, 0);
  }
  if (body.kind() == BodyKind::Scaled) return StarBody::scaled(rtheta_symmetrize(body.inner(), theta_nodes), body.scale());
  const StarBody coarse = StarBody::rtheta_symmetrized(body, theta_nodes);
  const StarBody fine = StarBody::rtheta_symmetrized(body, 2 * theta_nodes);
  Rng rng(derive_seed(0x5eed, static_cast<std::uint64_t>(body.dim())));
  double worst = 0.0;
  for (int s = 0; s < 64; ++s) {
    const auto x = random_unit(body.dim(), rng);
    const double a = coarse.norm(x), b = fine.norm(x);
    worst = std::max(worst, std::abs(a - b) / b);
  }
  if (worst <= 1e-10 || theta_nodes >= 512) return coarse;
  return StarBody::rtheta_symmetrized(body, 512);
}

}  // namespace slicing
