#pragma once

#include <stdexcept>
#include <string>

namespace nvgf {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shape or index disagreement between arguments.
struct DimensionError : Error {
  using Error::Error;
};

/// Numerical failure: non-finite values, solver non-convergence, degenerate input.
struct NumericalError : Error {
  using Error::Error;
};

/// Bad experiment configuration or malformed input file.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace nvgf
