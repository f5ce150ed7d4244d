#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>

#include "constants.hpp"
#include "errors.hpp"
#include "parallel.hpp"

namespace slicing {

std::string_view to_string(SphereScheme scheme) {
  switch (scheme) {
    case SphereScheme::Auto: return "auto";
    case SphereScheme::ProductGauss: return "product-gauss";
    case SphereScheme::CubedGauss: return "cubed-gauss";
    case SphereScheme::RandomizedQmc: return "randomized-qmc";
  }
  return "auto";
}

SphereScheme parse_scheme(std::string_view name) {
  if (name == "auto") return SphereScheme::Auto;
  if (name == "product-gauss") return SphereScheme::ProductGauss;
  if (name == "cubed-gauss") return SphereScheme::CubedGauss;
  if (name == "randomized-qmc") return SphereScheme::RandomizedQmc;
  throw InputError("unknown quadrature scheme '" + std::string(name) + "'");
}

void QuadratureSpec::validate() const {
  if (sphere_nodes < 2) throw InputError("quadrature: sphere_nodes must be >= 2");
  if (radial_nodes < 2) throw InputError("quadrature: radial_nodes must be >= 2");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw InputError("quadrature: rel_tol must lie in (0, 1)");
}

QuadratureSpec QuadratureSpec::halved(int m) const {
  QuadratureSpec h = *this;
  h.scheme = resolve_scheme(m, *this);
  h.sphere_nodes = std::max(2, sphere_nodes / 2);
  h.radial_nodes = std::max(2, radial_nodes / 2);
  return h;
}

namespace {

// Largest q >= 1 with count(q) <= budget.
template <class Count>
int largest_fitting(int budget, Count count) {
  int q = 1;
  while (count(q + 1) <= static_cast<double>(budget)) ++q;
  return q;
}

double cubed_count(int m, int q) { return 2.0 * m * std::pow(2.0 * q, m - 1); }
double product_count(int m, int q) { return 2.0 * std::pow(static_cast<double>(q), m - 1); }

void normalize_weights(SphericalRule& rule) {
  const double target = sphere_measure(rule.dim);
  const double sum = pairwise_sum(rule.weights);
  for (double& w : rule.weights) w *= target / sum;
}

SphericalRule two_point_rule() {
  SphericalRule r;
  r.dim = 1;
  r.nodes.resize(1, 2);
  r.nodes(0, 0) = 1.0;
  r.nodes(0, 1) = -1.0;
  r.weights = {1.0, 1.0};
  return r;
}

SphericalRule product_gauss_rule(int m, int budget) {
  const int q = m == 2 ? std::max(1, budget / 2) : largest_fitting(budget, [m](int q) { return product_count(m, q); });
  const int azimuth = 2 * q;
  // Start with the circle, then lift one dimension at a time.
  std::vector<std::vector<double>> pts;
  std::vector<double> wts;
  for (int j = 0; j < azimuth; ++j) {
    const double phi = 2.0 * std::numbers::pi * (j + 0.5) / azimuth;
    pts.push_back({std::cos(phi), std::sin(phi)});
    wts.push_back(2.0 * std::numbers::pi / azimuth);
  }
  for (int level = 3; level <= m; ++level) {
    const GaussRule g = gauss_jacobi_symmetric(q, 0.5 * (level - 3));
    std::vector<std::vector<double>> next;
    std::vector<double> next_w;
    next.reserve(pts.size() * g.x.size());
    for (std::size_t a = 0; a < g.x.size(); ++a) {
      const double t = g.x[a];
      const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
      for (std::size_t b = 0; b < pts.size(); ++b) {
        std::vector<double> p(pts[b].size() + 1);
        for (std::size_t i = 0; i < pts[b].size(); ++i) p[i] = s * pts[b][i];
        p.back() = t;
        next.push_back(std::move(p));
        next_w.push_back(g.w[a] * wts[b]);
      }
    }
    pts = std::move(next);
    wts = std::move(next_w);
  }
  SphericalRule r;
  r.dim = m;
  r.scheme = SphereScheme::ProductGauss;
  r.nodes.resize(m, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (int d = 0; d < m; ++d) r.nodes(d, static_cast<Eigen::Index>(i)) = pts[i][d];
  }
  r.weights = std::move(wts);
  normalize_weights(r);
  return r;
}

SphericalRule cubed_gauss_rule(int m, int budget) {
  const int q = largest_fitting(budget, [m](int q) { return cubed_count(m, q); });
  // One face coordinate: angles in [-pi/4, 0] and [0, pi/4], u = tan(angle).
  const GaussRule& g = gauss_legendre(q);
  std::vector<double> u, uw;
  const double half = 0.125 * std::numbers::pi;  // half-length of each angular piece
  for (int piece = 0; piece < 2; ++piece) {
    const double centre = piece == 0 ? -half : half;
    for (int i = 0; i < q; ++i) {
      const double a = centre + half * g.x[i];
      const double c = std::cos(a);
      u.push_back(std::tan(a));
      uw.push_back(half * g.w[i] / (c * c));
    }
  }
  const int per_dim = static_cast<int>(u.size());
  const int face_dims = m - 1;
  long face_size = 1;
  for (int i = 0; i < face_dims; ++i) face_size *= per_dim;
  const long total = 2L * m * face_size;

  SphericalRule r;
  r.dim = m;
  r.scheme = SphereScheme::CubedGauss;
  r.nodes.resize(m, total);
  r.weights.resize(static_cast<std::size_t>(total));
  std::vector<int> idx(face_dims);
  long col = 0;
  for (int axis = 0; axis < m; ++axis) {
    for (int sign = 1; sign >= -1; sign -= 2) {
      std::fill(idx.begin(), idx.end(), 0);
      for (long f = 0; f < face_size; ++f) {
        double len2 = 1.0, w = 1.0;
        for (int d = 0, k = 0; d < m; ++d) {
          double y;
          if (d == axis) {
            y = sign;
          } else {
            y = u[idx[k]];
            w *= uw[idx[k]];
            ++k;
          }
          r.nodes(d, col) = y;
          len2 += d == axis ? 0.0 : y * y;
        }
        const double len = std::sqrt(len2);
        r.nodes.col(col) /= len;
        r.weights[static_cast<std::size_t>(col)] = w * std::pow(len, -m);
        ++col;
        for (int k = 0; k < face_dims; ++k) {
          if (++idx[k] < per_dim) break;
          idx[k] = 0;
        }
      }
    }
  }
  normalize_weights(r);
  return r;
}

// Root of x^{d+1} = x + 1; the generalized golden ratio for Kronecker points.
double kronecker_base(int d) {
  double x = 2.0;
  for (int i = 0; i < 200; ++i) x = std::pow(1.0 + x, 1.0 / (d + 1));
  return x;
}

SphericalRule qmc_rule(int m, int budget, std::uint64_t seed) {
  const int pairs = std::max(1, budget / 2);
  const int gauss_pairs = (m + 1) / 2;
  const int d = 2 * gauss_pairs;
  const double phi = kronecker_base(d);
  std::vector<double> alpha(d), shift(d);
  Rng rng(derive_seed(seed, 0x9e5 + static_cast<std::uint64_t>(m)));
  for (int i = 0; i < d; ++i) {
    alpha[i] = std::fmod(1.0 / std::pow(phi, i + 1), 1.0);
    shift[i] = uniform01(rng);
  }
  SphericalRule r;
  r.dim = m;
  r.scheme = SphereScheme::RandomizedQmc;
  r.nodes.resize(m, 2 * pairs);
  std::vector<double> z(d);
  for (int p = 0; p < pairs; ++p) {
    for (int i = 0; i < gauss_pairs; ++i) {
      double u1 = std::fmod(shift[2 * i] + (p + 1) * alpha[2 * i], 1.0);
      const double u2 = std::fmod(shift[2 * i + 1] + (p + 1) * alpha[2 * i + 1], 1.0);
      u1 = std::max(u1, 1e-300);
      const double rad = std::sqrt(-2.0 * std::log(u1));
      z[2 * i] = rad * std::cos(2.0 * std::numbers::pi * u2);
      z[2 * i + 1] = rad * std::sin(2.0 * std::numbers::pi * u2);
    }
    double len2 = 0.0;
    for (int i = 0; i < m; ++i) len2 += z[i] * z[i];
    const double len = std::sqrt(len2);
    for (int i = 0; i < m; ++i) {
      r.nodes(i, p) = z[i] / len;
      r.nodes(i, pairs + p) = -z[i] / len;
    }
  }
  r.weights.assign(static_cast<std::size_t>(2 * pairs), sphere_measure(m) / (2.0 * pairs));
  return r;
}

}  // namespace

SphereScheme resolve_scheme(int m, const QuadratureSpec& spec) {
  if (spec.scheme != SphereScheme::Auto) return spec.scheme;
  if (m <= 6 && cubed_count(m, 3) <= spec.sphere_nodes) return SphereScheme::CubedGauss;
  return SphereScheme::RandomizedQmc;
}

std::shared_ptr<const SphericalRule> sphere_rule(int m, const QuadratureSpec& spec) {
  if (m < 1) throw InputError("sphere_rule: dimension must be >= 1");
  spec.validate();
  const SphereScheme scheme = resolve_scheme(m, spec);
  using Key = std::tuple<int, int, int, std::uint64_t>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const SphericalRule>> cache;
  const std::uint64_t seed = scheme == SphereScheme::RandomizedQmc ? spec.seed : 0;
  const Key key{m, spec.sphere_nodes, static_cast<int>(scheme), seed};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  std::shared_ptr<const SphericalRule> rule;
  if (m == 1) {
    auto r = two_point_rule();
    r.scheme = scheme;
    rule = std::make_shared<const SphericalRule>(std::move(r));
  } else if (scheme == SphereScheme::ProductGauss) {
    rule = std::make_shared<const SphericalRule>(product_gauss_rule(m, spec.sphere_nodes));
  } else if (scheme == SphereScheme::CubedGauss) {
    rule = std::make_shared<const SphericalRule>(cubed_gauss_rule(m, spec.sphere_nodes));
  } else {
    rule = std::make_shared<const SphericalRule>(qmc_rule(m, spec.sphere_nodes, spec.seed));
  }
  std::lock_guard lock(mutex);
  return cache.emplace(key, rule).first->second;
}

SphericalRule subsphere_rule(const Subspace& h, const QuadratureSpec& spec) {
  if (!(h.gram_deviation() <= 1e-10)) throw InputError("subsphere_rule: frame is not orthonormal");
  const auto base = sphere_rule(h.sub_dim(), spec);
  SphericalRule r;
  r.dim = h.ambient_dim();
  r.scheme = base->scheme;
  r.nodes = h.frame() * base->nodes;
  r.weights = base->weights;
  return r;
}

const GaussRule& gauss_legendre(int q) {
  if (q < 1) throw InputError("gauss_legendre: need at least one node");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[q];
  if (slot) return *slot;
  auto rule = std::make_unique<GaussRule>();
  rule->x.resize(q);
  rule->w.resize(q);
  for (int i = 0; i < (q + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= q; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= q; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = q * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule->x[i] = -x;
    rule->x[q - 1 - i] = x;
    rule->w[i] = w;
    rule->w[q - 1 - i] = w;
  }
  if (q % 2 == 1) rule->x[q / 2] = 0.0;
  slot = std::move(rule);
  return *slot;
}

GaussRule gauss_jacobi_symmetric(int q, double alpha) {
  if (q < 1) throw InputError("gauss_jacobi: need at least one node");
  if (!(alpha >= 0.0)) throw InputError("gauss_jacobi: alpha must be >= 0");
  if (alpha == 0.0) return gauss_legendre(q);
  // Golub-Welsch on the symmetric Jacobi matrix of the Gegenbauer weight.
  const double lambda = alpha + 0.5;
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(q, q);
  for (int k = 1; k < q; ++k) {
    const double beta = k * (k + 2.0 * lambda - 1.0) / (4.0 * (k + lambda) * (k + lambda - 1.0));
    jac(k, k - 1) = jac(k - 1, k) = std::sqrt(beta);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jac);
  const double mu0 = std::exp(0.5 * std::log(std::numbers::pi) + std::lgamma(alpha + 1.0) - std::lgamma(alpha + 1.5));
  GaussRule g;
  g.x.resize(q);
  g.w.resize(q);
  for (int i = 0; i < q; ++i) {
    g.x[i] = eig.eigenvalues()(i);
    const double v0 = eig.eigenvectors()(0, i);
    g.w[i] = mu0 * v0 * v0;
  }
  // Enforce exact symmetry of the node set.
  for (int i = 0; i < q / 2; ++i) {
    const double x = 0.5 * (g.x[q - 1 - i] - g.x[i]);
    const double w = 0.5 * (g.w[i] + g.w[q - 1 - i]);
    g.x[i] = -x;
    g.x[q - 1 - i] = x;
    g.w[i] = g.w[q - 1 - i] = w;
  }
  if (q % 2 == 1) g.x[q / 2] = 0.0;
  return g;
}

double radial_integral(const std::function<double(double)>& g, double upper, int power,
                       const QuadratureSpec& spec, std::span<const double> breakpoints) {
  if (!(upper > 0.0) || !std::isfinite(upper)) throw InputError("radial_integral: upper limit must be positive");
  if (power < 0) throw InputError("radial_integral: power must be >= 0");
  const GaussRule& rule = gauss_legendre(spec.radial_nodes);
  double total = 0.0;
  double lo = 0.0;
  auto piece = [&](double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double r = mid + half * rule.x[i];
      s += rule.w[i] * std::pow(r, power) * g(r);
    }
    return half * s;
  };
  for (double b : breakpoints) {
    if (b <= lo || b >= upper) continue;
    total += piece(lo, b);
    lo = b;
  }
  total += piece(lo, upper);
  return total;
}

double sphere_monomial_moment(std::span<const int> exponents) {
  double log_num = 0.0;
  int total = 0;
  for (int e : exponents) {
    if (e % 2 != 0) return 0.0;
    log_num += std::lgamma(0.5 * (e + 1));
    total += e;
  }
  return 2.0 * std::exp(log_num - std::lgamma(0.5 * (total + static_cast<double>(exponents.size()))));
}

}  // namespace slicing
