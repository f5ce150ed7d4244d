#include "grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "complex_geom.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "sections.hpp"

namespace slicing {

void SearchConfig::validate() const {
  if (restarts < 1) throw InputError("search: restarts must be >= 1");
  if (restart_offset < 0) throw InputError("search: restart_offset must be >= 0");
  if (evals < 1) throw InputError("search: evals must be >= 1");
  if (search_nodes < 2) throw InputError("search: search_nodes must be >= 2");
  if (!(initial_step > 0.0) || !(min_step > 0.0)) throw InputError("search: steps must be positive");
  if (patience < 1) throw InputError("search: patience must be >= 1");
}

double MaxSectionResult::best_of_first(int restarts) const {
  double best = -std::numeric_limits<double>::infinity();
  const auto count = std::min<std::size_t>(restart_values.size(), static_cast<std::size_t>(std::max(restarts, 0)));
  for (std::size_t i = 0; i < count; ++i) best = std::max(best, restart_values[i]);
  return best;
}

namespace {

QuadratureSpec coarse_spec(const QuadratureSpec& spec, const SearchConfig& search) {
  QuadratureSpec c = spec;
  c.sphere_nodes = std::min(spec.sphere_nodes, search.search_nodes);
  c.radial_nodes = std::min(spec.radial_nodes, 16);
  return c;
}

// Unit vector orthogonal to the columns of `basis`.
Eigen::VectorXd random_orthogonal(const Eigen::MatrixXd& basis, Rng& rng) {
  const auto n = basis.rows();
  for (;;) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = standard_normal(rng);
    v -= basis * (basis.transpose() * v);
    v -= basis * (basis.transpose() * v);
    const double len = v.norm();
    if (len > 1e-8) return v / len;
  }
}

struct RestartOutcome {
  Eigen::MatrixXd state;
  double full_value = 0.0;
  long evaluations = 0;
  std::vector<TracePoint> trace;
};

// Generic refinement loop. `state` is an n x m orthonormal frame; `eval`
// maps a state to the objective value.
template <class Eval>
RestartOutcome refine(Eigen::MatrixXd state, Eval eval, const SearchConfig& search, Rng& rng) {
  RestartOutcome out;
  double value = eval(state);
  out.evaluations = 1;
  out.trace.push_back({0, value});
  double step = search.initial_step;
  int rejections = 0;
  const auto cols = state.cols();
  while (out.evaluations < search.evals && step >= search.min_step) {
    const auto j = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(cols));
    const Eigen::VectorXd dir = random_orthogonal(state, rng);
    const double angle = step * standard_normal(rng);
    Eigen::MatrixXd candidate = state;
    candidate.col(j) = std::cos(angle) * state.col(j) + std::sin(angle) * dir;
    candidate.col(j).normalize();
    const double v = eval(candidate);
    ++out.evaluations;
    if (v > value) {
      value = v;
      state = std::move(candidate);
      rejections = 0;
      out.trace.push_back({static_cast<int>(out.evaluations), value});
    } else if (++rejections >= search.patience) {
      step *= 0.5;
      rejections = 0;
    }
  }
  out.state = std::move(state);
  return out;
}

MaxSectionResult collect(std::vector<RestartOutcome>& outcomes, double rel_tol) {
  MaxSectionResult result;
  std::size_t best = 0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    result.evaluations += outcomes[r].evaluations;
    result.restart_values.push_back(outcomes[r].full_value);
    if (outcomes[r].full_value > outcomes[best].full_value) best = r;
  }
  result.best_restart = static_cast<int>(best);
  result.best_value = outcomes[best].full_value;
  result.trace = std::move(outcomes[best].trace);
  for (double v : result.restart_values) {
    if (std::abs(result.best_value - v) <= rel_tol * std::abs(result.best_value)) result.near_best.push_back(v);
  }
  return result;
}

}  // namespace

MaxSectionResult maximize_over_grassmannian(int n, int k, const SubspaceObjective& objective,
                                            const QuadratureSpec& spec, const SearchConfig& search) {
  spec.validate();
  search.validate();
  const QuadratureSpec coarse = coarse_spec(spec, search);
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(search.restarts));
  parallel_for(outcomes.size(), [&](std::size_t r) {
    const std::uint64_t seed = search.seed + static_cast<std::uint64_t>(search.restart_offset) + r;
    Rng rng(derive_seed(seed, 0x10ca1));
    const Subspace start = haar_sample(n, k, seed);
    auto eval = [&](const Eigen::MatrixXd& frame) { return objective(Subspace::from_frame(frame), coarse); };
    outcomes[r] = refine(start.frame(), eval, search, rng);
    outcomes[r].full_value = objective(Subspace::from_frame(outcomes[r].state), spec);
  });
  MaxSectionResult result = collect(outcomes, spec.rel_tol);
  result.best_subspace = Subspace::from_frame(outcomes[static_cast<std::size_t>(result.best_restart)].state);
  return result;
}

MaxSectionResult maximize_over_directions(int dim, const DirectionObjective& objective, const QuadratureSpec& spec,
                                          const SearchConfig& search) {
  spec.validate();
  search.validate();
  if (dim < 2 || dim % 2 != 0) throw DimensionError("maximize_over_directions: dimension must be even and >= 2");
  const QuadratureSpec coarse = coarse_spec(spec, search);
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(search.restarts));
  parallel_for(outcomes.size(), [&](std::size_t r) {
    const std::uint64_t seed = search.seed + static_cast<std::uint64_t>(search.restart_offset) + r;
    Rng rng(derive_seed(seed, 0x10ca1));
    Rng start_rng(derive_seed(seed, 0x4a11));
    Eigen::MatrixXd xi(dim, 1);
    for (int i = 0; i < dim; ++i) xi(i, 0) = standard_normal(start_rng);
    xi.col(0).normalize();
    auto eval = [&](const Eigen::MatrixXd& x) {
      return objective(std::span<const double>(x.data(), static_cast<std::size_t>(dim)), coarse);
    };
    outcomes[r] = refine(xi, eval, search, rng);
    outcomes[r].full_value =
        objective(std::span<const double>(outcomes[r].state.data(), static_cast<std::size_t>(dim)), spec);
  });
  MaxSectionResult result = collect(outcomes, spec.rel_tol);
  const auto& best = outcomes[static_cast<std::size_t>(result.best_restart)].state;
  result.best_direction.assign(best.data(), best.data() + dim);
  result.best_subspace = complex_hyperplane_frame(result.best_direction);
  return result;
}

MaxSectionResult max_section(const StarBody& body, const Density& density, int k, const QuadratureSpec& spec,
                             const SearchConfig& search) {
  const int n = body.dim();
  if (k < 1 || k > n - 1) throw InputError("max_section: need 1 <= k <= n-1");
  return maximize_over_grassmannian(
      n, k, [&](const Subspace& h, const QuadratureSpec& s) { return section_measure_value(body, density, h, s); },
      spec, search);
}

MaxSectionResult max_complex_section(const StarBody& body, const Density& density, const QuadratureSpec& spec,
                                     const SearchConfig& search) {
  if (body.dim() % 2 != 0) throw DimensionError("max_complex_section: ambient dimension must be even");
  const auto inv = is_rtheta_invariant(body);
  if (!inv.pass) {
    throw InputError("max_complex_section: body is not R_theta-invariant (deviation " +
                     std::to_string(inv.max_deviation) + ")");
  }
  return maximize_over_directions(
      body.dim(),
      [&](std::span<const double> xi, const QuadratureSpec& s) {
        return section_measure_value(body, density, complex_hyperplane_frame(xi), s);
      },
      spec, search);
}

}  // namespace slicing
