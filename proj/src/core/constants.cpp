#include "constants.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace slicing {

double ball_volume(int n) {
  if (n < 1) throw InputError("ball_volume: dimension must be >= 1, got " + std::to_string(n));
  // lgamma keeps the evaluation finite well past n = 60.
  const double half = 0.5 * n;
  return std::exp(half * std::log(std::numbers::pi) - std::lgamma(half + 1.0));
}

double sphere_measure(int n) {
  if (n < 1) throw InputError("sphere_measure: dimension must be >= 1, got " + std::to_string(n));
  const double half = 0.5 * n;
  return 2.0 * std::exp(half * std::log(std::numbers::pi) - std::lgamma(half));
}

double c_nk(int n, int k) {
  if (n < 2 || k < 1 || k > n - 1) {
    throw InputError("c_nk: need 1 <= k <= n-1, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  const double exponent = static_cast<double>(n - k) / n;
  return std::pow(ball_volume(n), exponent) / ball_volume(n - k);
}

double d_n(int n) {
  if (n < 2) throw InputError("d_n: complex dimension must be >= 2, got " + std::to_string(n));
  const double exponent = static_cast<double>(n - 1) / n;
  return std::pow(ball_volume(2 * n), exponent) / ball_volume(2 * n - 2);
}

SlicingConstants real_constants(int n, int k) {
  SlicingConstants c;
  c.n = n;
  c.k = k;
  c.c_nk = c_nk(n, k);
  c.ball_vol_n = ball_volume(n);
  c.sphere_vol_n = sphere_measure(n);
  c.factor = static_cast<double>(n) / (n - k) * c.c_nk;
  return c;
}

SlicingConstants complex_constants(int n) {
  SlicingConstants c;
  c.n = n;
  c.k = 1;
  c.c_nk = d_n(n);
  c.ball_vol_n = ball_volume(2 * n);
  c.sphere_vol_n = sphere_measure(2 * n);
  c.factor = static_cast<double>(n) / (n - 1) * c.c_nk;
  return c;
}

}  // namespace slicing
