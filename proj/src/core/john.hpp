#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "geometry.hpp"

namespace slicing {

// Ellipsoid K = {x : x^T A x <= 1} with (1/ratio) K  subset L  subset K.
struct SandwichEllipsoid {
  Eigen::MatrixXd shape;
  double ratio = 1.0;
  // Closed-form construction (true) or sampled inertia fallback (false).
  bool certified = false;

  StarBody outer() const { return StarBody::ellipsoid(shape); }
};

// Closed forms for the convex catalog:
//   ellipsoid / ball            -> itself, ratio 1
//   lp-ball, p >= 2             -> ball of radius n^{1/2-1/p}, same ratio
//   lp-ball, 1 <= p < 2         -> unit ball, ratio n^{1/p-1/2}
//   complex-lp-ball             -> as lp-ball with n complex coordinates
//   slab-polytope, m = n rows   -> {|Ax|_2^2 <= m}, ratio sqrt(m)
//   scaled                      -> scaled sandwich of the inner body
// Other convex bodies get the uncertified inertia-ellipsoid fallback.
// Throws InputError for non-convex bodies.
SandwichEllipsoid sandwich_ellipsoid(const StarBody& body);

struct SandwichCheck {
  bool pass = false;
  // max over sampled theta of the relative violation of
  // rho_L <= rho_K <= ratio * rho_L
  double max_violation = 0.0;
  int samples = 0;
};

SandwichCheck verify_sandwich(const StarBody& body, const StarBody& outer, double ratio, int samples = 10000,
                              double tol = 1e-9, std::uint64_t seed = 11);

inline SandwichCheck verify_sandwich(const StarBody& body, const SandwichEllipsoid& e, int samples = 10000,
                                     double tol = 1e-9, std::uint64_t seed = 11) {
  return verify_sandwich(body, e.outer(), e.ratio, samples, tol, seed);
}

}  // namespace slicing
