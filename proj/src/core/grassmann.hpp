#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "geometry.hpp"
#include "quadrature.hpp"
#include "subspace.hpp"

namespace slicing {

struct SearchConfig {
  int restarts = 32;
  int evals = 500;            // evaluation budget per restart
  std::uint64_t seed = 42;    // restart r uses seed + r
  int search_nodes = 512;     // sphere nodes for the objective during local refinement
  double initial_step = 0.5;  // radians
  double min_step = 1e-4;
  int patience = 10;          // rejections before the step halves
  int restart_offset = 0;     // first restart index; lets a budget doubling reuse earlier restarts

  void validate() const;
};

struct TracePoint {
  int iteration = 0;
  double value = 0.0;
};

struct MaxSectionResult {
  Subspace best_subspace = Subspace::coordinate(1, {0});
  // Objective at best_subspace with the full quadrature spec.
  double best_value = 0.0;
  // Accepted improvements of the winning restart (coarse objective).
  std::vector<TracePoint> trace;
  long evaluations = 0;
  int best_restart = 0;
  // Full-spec value of each restart's final iterate, in restart order.
  std::vector<double> restart_values;
  // Restart values within rel_tol of the best.
  std::vector<double> near_best;
  // Complex searches: the maximizing xi.
  std::vector<double> best_direction;

  // Best value among the first `restarts` restarts.
  double best_of_first(int restarts) const;
};

using SubspaceObjective = std::function<double(const Subspace&, const QuadratureSpec&)>;
using DirectionObjective = std::function<double(std::span<const double>, const QuadratureSpec&)>;

// Multistart search over Gr_{n-k}: Haar starts, then Givens-rotation
// perturbations of one frame column towards a random orthogonal direction.
MaxSectionResult maximize_over_grassmannian(int n, int k, const SubspaceObjective& objective,
                                            const QuadratureSpec& spec, const SearchConfig& search);

// Same strategy over unit vectors xi in R^dim; best_subspace = H_xi.
MaxSectionResult maximize_over_directions(int dim, const DirectionObjective& objective,
                                          const QuadratureSpec& spec, const SearchConfig& search);

// max over H in Gr_{n-k} of mu(K cap H).
MaxSectionResult max_section(const StarBody& body, const Density& density, int k, const QuadratureSpec& spec,
                             const SearchConfig& search);

// max over xi in S^{2n-1} of mu(K cap H_xi); body must be R_theta-invariant.
MaxSectionResult max_complex_section(const StarBody& body, const Density& density, const QuadratureSpec& spec,
                                     const SearchConfig& search);

}  // namespace slicing
