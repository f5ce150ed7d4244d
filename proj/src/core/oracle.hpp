#pragma once

#include <cstdint>

#include "geometry.hpp"
#include "subspace.hpp"

namespace slicing {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long samples = 0;
  std::uint64_t seed = 0;
};

// Points per batch; batch b draws from Rng(derive_seed(seed, b)), so the
// estimate depends only on (seed, samples).
inline constexpr long kOracleBatch = 1L << 15;

// int_K f by rejection sampling in a box around K.
McEstimate mc_body_measure(const StarBody& body, const Density& density, long samples, std::uint64_t seed);

// int_{K cap H} f, sampling in the box spanned by the frame of H.
McEstimate mc_section_measure(const StarBody& body, const Density& density, const Subspace& h, long samples,
                              std::uint64_t seed);

}  // namespace slicing
