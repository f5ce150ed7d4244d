#pragma once

#include <functional>
#include <span>

#include "geometry.hpp"
#include "quadrature.hpp"
#include "subspace.hpp"

namespace slicing {

struct IntegralResult {
  double value = 0.0;
  // |I(spec) - I(spec halved)|
  double est_error = 0.0;
  std::size_t nodes_used = 0;
};

using SphereFunction = std::function<double(std::span<const double>)>;

// int_0^{rho_K(theta)} r^power f(r theta) dr; f == nullptr means f = 1.
double ray_moment(const StarBody& body, const Density* density, std::span<const double> theta, int power,
                  const QuadratureSpec& spec);

// sum_i w_i outer(rho_i) int_0^{rho_i} r^power f(r theta_i) dr over the
// rule's nodes, reduced in node order. outer == {} means 1.
double polar_integral(const SphericalRule& rule, const StarBody& body, const Density* density, int power,
                      const QuadratureSpec& spec, const std::function<double(double)>& outer = {});

// mu(K) = int_{S^{n-1}} int_0^{rho} r^{n-1} f(r theta) dr dtheta.
IntegralResult body_measure(const StarBody& body, const Density& density, const QuadratureSpec& spec);
// |K| = (1/n) int_{S^{n-1}} rho^n.
IntegralResult body_volume(const StarBody& body, const QuadratureSpec& spec);

// R_{n-k} g(H) = int_{S^{n-1} cap H} g.
double radon_transform(const SphereFunction& g, const Subspace& h, const QuadratureSpec& spec);

// mu(K cap H) = R_{n-k}( int_0^{rho} r^{n-k-1} f(r .) dr )(H).
IntegralResult section_measure(const StarBody& body, const Density& density, const Subspace& h,
                               const QuadratureSpec& spec);
// |K cap H| = (1/(n-k)) R_{n-k}(rho^{n-k})(H).
IntegralResult section_volume(const StarBody& body, const Subspace& h, const QuadratureSpec& spec);

// mu(K cap H) - |K cap H| evaluated node by node on one rule.
IntegralResult section_excess(const StarBody& body, const Density& density, const Subspace& h,
                              const QuadratureSpec& spec);

// Single evaluations without the error estimate; used inside searches.
double section_measure_value(const StarBody& body, const Density& density, const Subspace& h,
                             const QuadratureSpec& spec);
double section_excess_value(const StarBody& body, const Density& density, const Subspace& h,
                            const QuadratureSpec& spec);

// Complex spherical Radon transform: R_c g(xi) = int_{S^{2n-1} cap H_xi} g.
double complex_radon(const SphereFunction& g, std::span<const double> xi, const QuadratureSpec& spec);

}  // namespace slicing
