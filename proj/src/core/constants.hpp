#pragma once

namespace slicing {

/// Volume of the unit Euclidean ball in R^n, pi^{n/2} / Gamma(n/2 + 1).
double ball_volume(int n);

/// Surface measure of the unit sphere S^{n-1} in R^n (n >= 1; S^0 has measure 2).
double sphere_measure(int n);

/// c_{n,k} = |B_2^n|^{(n-k)/n} / |B_2^{n-k}| for 1 <= k <= n-1.
double c_nk(int n, int k);

/// d_n = |B_2^{2n}|^{(n-1)/n} / |B_2^{2n-2}| for complex dimension n >= 2.
double d_n(int n);

struct SlicingConstants {
  int n = 0;
  int k = 0;
  double ball_vol_n = 0.0;
  double sphere_vol_n = 0.0;
  double c_nk = 0.0;
  // Full constant in front of max-section * volume^{k/n} for the theorem the
  // constants were built for.
  double factor = 0.0;
};

// Constants for the real theorems. `factor` is n/(n-k) c_{n,k} (KM / stability);
// the slicing theorem multiplies it by n^{k/2}.
SlicingConstants real_constants(int n, int k);

// Complex dimension n, ambient R^{2n}. c_nk holds d_n and factor n/(n-1) d_n.
SlicingConstants complex_constants(int n);

}  // namespace slicing
