#pragma once

#include <stdexcept>
#include <string>

namespace slicing {

// Invalid argument supplied by the caller (bad spec, out-of-range parameter).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

class DimensionError : public InputError {
 public:
  explicit DimensionError(const std::string& what) : InputError(what) {}
};

// Rejection sampling never accepted a point: the body is not bounded by the
// box it was given.
class UnboundedBodyError : public std::runtime_error {
 public:
  explicit UnboundedBodyError(const std::string& what) : std::runtime_error(what) {}
};

// Broken internal invariant (non-finite result, unreachable branch).
class InternalError : public std::runtime_error {
 public:
  explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

inline void check_dim(std::size_t got, std::size_t expected, const char* what) {
  if (got != expected) {
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(expected) +
                         ", got " + std::to_string(got));
  }
}

}  // namespace slicing
