#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"

namespace slicing {

namespace {

// Half-widths of a box containing K cap span(frame), in frame coordinates.
std::vector<double> box_half_widths(const StarBody& body, const Eigen::MatrixXd& frame, std::uint64_t seed) {
  const int n = body.dim();
  const int m = static_cast<int>(frame.cols());
  std::vector<double> half(m, -1.0);
  bool known = true;
  for (int j = 0; j < m; ++j) {
    const Eigen::VectorXd col = frame.col(j);
    half[j] = body.support_bound(std::span<const double>(col.data(), n));
    if (!(half[j] > 0.0)) known = false;
  }
  if (known) return half;

  // No analytic bound: 1.01 * max sampled radial value.
  Rng rng(derive_seed(seed, 0xb0c5));
  double r_max = 0.0;
  std::vector<double> y(m);
  for (int i = 0; i < 4096; ++i) {
    double len2 = 0.0;
    for (auto& v : y) {
      v = standard_normal(rng);
      len2 += v * v;
    }
    Eigen::VectorXd theta = frame * Eigen::Map<const Eigen::VectorXd>(y.data(), m) / std::sqrt(len2);
    r_max = std::max(r_max, body.radial(std::span<const double>(theta.data(), n)));
  }
  if (!std::isfinite(r_max) || r_max <= 0.0) throw UnboundedBodyError("oracle: body " + body.label() + " is unbounded");
  std::fill(half.begin(), half.end(), 1.01 * r_max);
  return half;
}

McEstimate rejection_estimate(const StarBody& body, const Density& density, const Eigen::MatrixXd& frame,
                              long samples, std::uint64_t seed) {
  if (samples < 2) throw InputError("oracle: samples must be >= 2");
  const int n = body.dim();
  const int m = static_cast<int>(frame.cols());
  const auto half = box_half_widths(body, frame, seed);
  double box_volume = 1.0;
  for (double h : half) {
    if (!std::isfinite(h)) throw UnboundedBodyError("oracle: body " + body.label() + " is unbounded");
    box_volume *= 2.0 * h;
  }

  const long batches = (samples + kOracleBatch - 1) / kOracleBatch;
  std::vector<double> sums(batches), squares(batches);
  std::vector<long> hits(batches);
  parallel_for(static_cast<std::size_t>(batches), [&](std::size_t b) {
    Rng rng(derive_seed(seed, b));
    const long count = std::min(kOracleBatch, samples - static_cast<long>(b) * kOracleBatch);
    Eigen::VectorXd y(m), x(n);
    double s = 0.0, s2 = 0.0;
    long h = 0;
    for (long i = 0; i < count; ++i) {
      for (int j = 0; j < m; ++j) y[j] = (2.0 * uniform01(rng) - 1.0) * half[j];
      x.noalias() = frame * y;
      const std::span<const double> xs(x.data(), n);
      if (body.norm(xs) > 1.0) continue;
      const double v = density.eval(xs);
      s += v;
      s2 += v * v;
      ++h;
    }
    sums[b] = s;
    squares[b] = s2;
    hits[b] = h;
  });

  long accepted = 0;
  for (long h : hits) accepted += h;
  if (accepted == 0) throw UnboundedBodyError("oracle: no accepted samples for " + body.label());

  const double count = static_cast<double>(samples);
  const double mean_v = pairwise_sum(sums) / count;
  const double mean_v2 = pairwise_sum(squares) / count;
  const double var = std::max(0.0, mean_v2 - mean_v * mean_v) * count / (count - 1.0);
  McEstimate out;
  out.mean = box_volume * mean_v;
  out.std_error = box_volume * std::sqrt(var / count);
  out.samples = samples;
  out.seed = seed;
  return out;
}

}  // namespace

McEstimate mc_body_measure(const StarBody& body, const Density& density, long samples, std::uint64_t seed) {
  const int n = body.dim();
  return rejection_estimate(body, density, Eigen::MatrixXd::Identity(n, n), samples, seed);
}

McEstimate mc_section_measure(const StarBody& body, const Density& density, const Subspace& h, long samples,
                              std::uint64_t seed) {
  check_dim(static_cast<std::size_t>(h.ambient_dim()), static_cast<std::size_t>(body.dim()), "mc_section_measure");
  return rejection_estimate(body, density, h.frame(), samples, seed);
}

}  // namespace slicing
