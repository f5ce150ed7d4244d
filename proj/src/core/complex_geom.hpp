#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "geometry.hpp"
#include "subspace.hpp"

namespace slicing {

// C^n is identified with R^{2n} by z_j = x_{2j} + i x_{2j+1} (0-based).

// Rotates every coordinate pair (x_{2j}, x_{2j+1}) counterclockwise by theta.
std::vector<double> rtheta_apply(double theta, std::span<const double> x);

struct InvarianceCheck {
  bool pass = false;
  double max_deviation = 0.0;  // max |‖R_t x‖ - ‖x‖| over sampled unit x
};

InvarianceCheck is_rtheta_invariant(const StarBody& body, int theta_grid = 64, int samples = 256,
                                    double tol = 1e-8, std::uint64_t seed = 7);

// Same check for a density, sampled at radii up to max_radius.
InvarianceCheck is_rtheta_invariant(const Density& density, int dim, double max_radius, int theta_grid = 32,
                                    int samples = 256, double tol = 1e-8, std::uint64_t seed = 7);

// Real (2n-2)-dimensional subspace H_xi = {z : sum z_k conj(xi_k) = 0},
// the orthogonal complement of span{xi, R_{pi/2} xi}.
Subspace complex_hyperplane_frame(std::span<const double> xi);

// K_c with ||x||_{K_c}^{-2} = (1/2pi) int ||R_t x||_K^{-2} dt on a uniform
// grid of theta_nodes angles. If doubling the grid moves sampled values by
// more than 1e-10 the grid is raised to 512 nodes. Ellipsoids and balls get
// the exact closed form instead (theta_nodes() == 0).
StarBody rtheta_symmetrize(const StarBody& body, int theta_nodes = 64);

}  // namespace slicing
