#pragma once

#include <stdexcept>

namespace gheat {

/// Base class for all gheat errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: bad weights, unknown vertices, parse failures.
struct InputError : Error {
  using Error::Error;
};

/// A hypothesis of the inequality being checked does not hold (non-intrinsic
/// metric, zero jump size, support violation). Checkers refuse to run instead
/// of reporting a meaningless verdict.
struct HypothesisError : Error {
  using Error::Error;
};

}  // namespace gheat
