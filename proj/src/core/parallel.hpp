#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>

namespace slicing {

// Runs body(i) for i in [0, count). Work is split into contiguous blocks over
// the hardware threads; nested calls from inside a worker run serially.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

// Pairwise summation in a fixed index order; the result does not depend on
// how the values were produced.
double pairwise_sum(std::span<const double> values);

// SplitMix64 finalizer, used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

using Rng = std::mt19937_64;

// Standard normal deviate from two uniforms (Box-Muller); avoids the
// implementation-defined std::normal_distribution so streams are portable.
double standard_normal(Rng& rng);
double uniform01(Rng& rng);

}  // namespace slicing
