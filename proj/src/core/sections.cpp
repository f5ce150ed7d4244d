#include "sections.hpp"

#include <cmath>
#include <vector>

#include "complex_geom.hpp"
#include "errors.hpp"
#include "parallel.hpp"

namespace slicing {

double ray_moment(const StarBody& body, const Density* density, std::span<const double> theta, int power,
                  const QuadratureSpec& spec) {
  const double rho = body.radial(theta);
  const double closed = std::pow(rho, power + 1) / (power + 1);
  if (density == nullptr) return closed;
  if (density->is_constant()) return density->level() * closed;
  const RayProfile profile(*density, theta);
  return radial_integral([&](double r) { return profile(r); }, rho, power, spec, profile.breakpoints());
}

double polar_integral(const SphericalRule& rule, const StarBody& body, const Density* density, int power,
                      const QuadratureSpec& spec, const std::function<double(double)>& outer) {
  check_dim(static_cast<std::size_t>(rule.dim), static_cast<std::size_t>(body.dim()), "polar_integral");
  std::vector<double> terms(rule.size());
  parallel_for(rule.size(), [&](std::size_t i) {
    const auto theta = rule.node(i);
    double v = ray_moment(body, density, theta, power, spec);
    if (outer) v *= outer(body.radial(theta));
    terms[i] = rule.weights[i] * v;
  });
  return pairwise_sum(terms);
}

namespace {

void check_density(const StarBody& body, const Density& density) {
  if (density.dim() != 0) check_dim(density.dim(), body.dim(), "density");
}

template <class Eval>
IntegralResult with_estimate(int m, const QuadratureSpec& spec, Eval eval) {
  IntegralResult r;
  auto [value, nodes] = eval(spec);
  const auto coarse = eval(spec.halved(m));
  r.value = value;
  r.nodes_used = nodes;
  r.est_error = std::abs(value - coarse.first);
  return r;
}

}  // namespace

IntegralResult body_measure(const StarBody& body, const Density& density, const QuadratureSpec& spec) {
  check_density(body, density);
  const int n = body.dim();
  return with_estimate(n, spec, [&](const QuadratureSpec& s) {
    const auto rule = sphere_rule(n, s);
    return std::pair{polar_integral(*rule, body, &density, n - 1, s), rule->size()};
  });
}

IntegralResult body_volume(const StarBody& body, const QuadratureSpec& spec) {
  const int n = body.dim();
  return with_estimate(n, spec, [&](const QuadratureSpec& s) {
    const auto rule = sphere_rule(n, s);
    return std::pair{polar_integral(*rule, body, nullptr, n - 1, s), rule->size()};
  });
}

double radon_transform(const SphereFunction& g, const Subspace& h, const QuadratureSpec& spec) {
  const SphericalRule rule = subsphere_rule(h, spec);
  std::vector<double> terms(rule.size());
  parallel_for(rule.size(), [&](std::size_t i) { terms[i] = rule.weights[i] * g(rule.node(i)); });
  return pairwise_sum(terms);
}

namespace {

double section_sum(const StarBody& body, const Density* density, const Subspace& h, const QuadratureSpec& spec,
                   bool subtract_volume) {
  check_dim(static_cast<std::size_t>(h.ambient_dim()), static_cast<std::size_t>(body.dim()), "section");
  const SphericalRule rule = subsphere_rule(h, spec);
  const int power = h.sub_dim() - 1;
  std::vector<double> terms(rule.size());
  parallel_for(rule.size(), [&](std::size_t i) {
    const auto theta = rule.node(i);
    double v = ray_moment(body, density, theta, power, spec);
    if (subtract_volume) v -= ray_moment(body, nullptr, theta, power, spec);
    terms[i] = rule.weights[i] * v;
  });
  return pairwise_sum(terms);
}

}  // namespace

double section_measure_value(const StarBody& body, const Density& density, const Subspace& h,
                             const QuadratureSpec& spec) {
  check_density(body, density);
  return section_sum(body, &density, h, spec, false);
}

double section_excess_value(const StarBody& body, const Density& density, const Subspace& h,
                            const QuadratureSpec& spec) {
  check_density(body, density);
  return section_sum(body, &density, h, spec, true);
}

IntegralResult section_measure(const StarBody& body, const Density& density, const Subspace& h,
                               const QuadratureSpec& spec) {
  check_density(body, density);
  return with_estimate(h.sub_dim(), spec, [&](const QuadratureSpec& s) {
    return std::pair{section_sum(body, &density, h, s, false), sphere_rule(h.sub_dim(), s)->size()};
  });
}

IntegralResult section_volume(const StarBody& body, const Subspace& h, const QuadratureSpec& spec) {
  return with_estimate(h.sub_dim(), spec, [&](const QuadratureSpec& s) {
    return std::pair{section_sum(body, nullptr, h, s, false), sphere_rule(h.sub_dim(), s)->size()};
  });
}

IntegralResult section_excess(const StarBody& body, const Density& density, const Subspace& h,
                              const QuadratureSpec& spec) {
  check_density(body, density);
  return with_estimate(h.sub_dim(), spec, [&](const QuadratureSpec& s) {
    return std::pair{section_sum(body, &density, h, s, true), sphere_rule(h.sub_dim(), s)->size()};
  });
}

double complex_radon(const SphereFunction& g, std::span<const double> xi, const QuadratureSpec& spec) {
  return radon_transform(g, complex_hyperplane_frame(xi), spec);
}

}  // namespace slicing
