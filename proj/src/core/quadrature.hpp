#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "subspace.hpp"

namespace slicing {

// Sphere discretization schemes.
//   product-gauss:   Gauss-Jacobi in the polar variables, trapezoid in the
//                    azimuth; exact for polynomials up to degree 2q-1.
//   cubed-gauss:     radial projection of the 2m faces of [-1,1]^m,
//                    equiangular Gauss-Legendre split at the face centre.
//                    Cell edges lie on the hyperplanes x_i = 0 and
//                    |x_i| = |x_j|, where coordinate polytopes have kinks.
//   randomized-qmc:  shifted Kronecker points, Gaussian-mapped to the
//                    sphere, antipodally paired, equal weights.
//   auto:            cubed-gauss while it fits >= 3 points per half-edge in
//                    the budget (and m <= 6), randomized-qmc otherwise.
enum class SphereScheme { Auto, ProductGauss, CubedGauss, RandomizedQmc };

std::string_view to_string(SphereScheme scheme);
SphereScheme parse_scheme(std::string_view name);

struct QuadratureSpec {
  int sphere_nodes = 4096;
  int radial_nodes = 64;
  std::uint64_t seed = 42;
  SphereScheme scheme = SphereScheme::Auto;
  double rel_tol = 1e-3;

  void validate() const;
  // Coarser companion rule for doubling-based error estimates. Keeps the
  // resolved scheme of the full rule for dimension m.
  QuadratureSpec halved(int m) const;
};

struct SphericalRule {
  int dim = 0;              // ambient dimension m of S^{m-1}
  SphereScheme scheme = SphereScheme::Auto;
  Eigen::MatrixXd nodes;    // m x N, unit columns
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  std::span<const double> node(std::size_t i) const {
    return {nodes.data() + i * nodes.rows(), static_cast<std::size_t>(nodes.rows())};
  }
};

SphereScheme resolve_scheme(int m, const QuadratureSpec& spec);

// Rule on S^{m-1}. Rules are cached; identical specs give identical rules.
std::shared_ptr<const SphericalRule> sphere_rule(int m, const QuadratureSpec& spec);

// Rule on S^{n-1} cap H: a sphere_rule on S^{dim H - 1} mapped through the frame.
SphericalRule subsphere_rule(const Subspace& h, const QuadratureSpec& spec);

struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

// q-point Gauss-Legendre on [-1, 1]. Cached.
const GaussRule& gauss_legendre(int q);
// q-point Gauss rule for the weight (1 - t^2)^alpha on [-1, 1], alpha >= 0.
GaussRule gauss_jacobi_symmetric(int q, double alpha);

// int_0^upper r^power g(r) dr, Gauss-Legendre with spec.radial_nodes points
// on each piece between consecutive breakpoints.
double radial_integral(const std::function<double(double)>& g, double upper, int power,
                       const QuadratureSpec& spec, std::span<const double> breakpoints = {});

// Closed-form moment of an even monomial on S^{m-1}:
// int prod theta_i^{e_i} = 2 prod Gamma((e_i+1)/2) / Gamma((sum e_i + m)/2).
double sphere_monomial_moment(std::span<const int> exponents);

}  // namespace slicing
