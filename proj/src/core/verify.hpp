#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "constants.hpp"
#include "geometry.hpp"
#include "grassmann.hpp"
#include "quadrature.hpp"
#include "subspace.hpp"

namespace slicing {

enum class Theorem { StabilityReal, KM, SlicingReal, StabilityComplex, SlicingComplex };

// thm1 | km | thm2 | thm3 | thm4
std::string_view to_string(Theorem t);
Theorem parse_theorem(std::string_view name);
bool is_complex(Theorem t);

// One intermediate inequality lhs <= rhs of a replayed proof chain.
struct ProofStep {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;  // absolute slack allowed from quadrature/search error
  bool holds = false;
  std::string note;
};

struct VerificationReport {
  Theorem theorem = Theorem::StabilityReal;
  int n = 0;  // real dimension, or complex dimension for thm3/thm4
  int k = 0;  // codimension (1 for the complex theorems)
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  // Stability theorems: the measured epsilon. Slicing theorems: the max
  // section measure found by the search.
  double epsilon = 0.0;
  double est_error = 0.0;  // combined error estimate of ratio
  double margin = 0.0;
  bool pass = false;

  Eigen::MatrixXd witness_frame;         // frame of the maximizing section
  std::vector<double> witness_direction;  // complex theorems: maximizing xi
  SlicingConstants constants;
  double search_change = 0.0;  // max gained by the last budget doubling
  bool search_stable = false;
  int restarts_used = 0;
  std::uint64_t seed = 0;
  std::string body;
  std::string density;
  std::vector<ProofStep> proof_steps;
};

struct VerifyOptions {
  QuadratureSpec quadrature;
  SearchConfig search;
  bool proof_replay = true;
  int max_doublings = 2;
  int density_samples = 2000;  // points for the f >= 1 check
};

// Certified generalized k-intersection bodies: balls and ellipsoids (and
// scalings). Certified complex intersection bodies: balls in R^{2n},
// R_theta-invariant ellipsoids and R_theta-symmetrized ellipsoids.
bool certified_real(const StarBody& body);
bool certified_complex(const StarBody& body);

// int_K f <= |K| + n/(n-k) c_{n,k} |K|^{k/n} eps, eps = max_H (mu(K cap H) - |K cap H|).
VerificationReport check_stability_real(const StarBody& body, const Density& f, int k, const VerifyOptions& opt);
// mu(L) <= n/(n-k) c_{n,k} max_H mu(L cap H) |L|^{k/n}.
VerificationReport check_km(const StarBody& body, const Density& g, int k, const VerifyOptions& opt);
// mu(L) <= n^{k/2} n/(n-k) c_{n,k} max_H mu(L cap H) |L|^{k/n}, L convex.
VerificationReport check_slicing_real(const StarBody& body, const Density& g, int k, const VerifyOptions& opt);
// Complex analogue of the stability bound on R^{2n}, sections H_xi.
VerificationReport check_stability_complex(const StarBody& body, const Density& f, const VerifyOptions& opt);
// gamma(L) <= 2n n/(n-1) d_n max_xi gamma(L cap H_xi) |L|^{1/n}.
VerificationReport check_slicing_complex(const StarBody& body, const Density& g, const VerifyOptions& opt);

// Dispatch; k is ignored for the complex theorems.
VerificationReport verify(Theorem t, const StarBody& body, const Density& density, int k, const VerifyOptions& opt);

bool proof_holds(const VerificationReport& report);

}  // namespace slicing
