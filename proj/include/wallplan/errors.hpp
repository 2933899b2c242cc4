#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wallplan {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Wall geometry that cannot be tiled (length/height not a legal multiple).
struct DimensionError : Error {
  using Error::Error;
};

/// Requested a bond pattern the generator does not implement.
struct UnsupportedBondError : Error {
  using Error::Error;
};

/// Malformed input file; message names the offending field.
struct ParseError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

/// Invalid run configuration (zero robots, unbounded horizon where a
/// finite one is required, ...).
struct ConfigError : Error {
  using Error::Error;
};

/// Problem instance admits no feasible plan. Carries the offending brick
/// ids when the cause is a bad pre-placed set.
struct InfeasibleError : Error {
  explicit InfeasibleError(const std::string& msg, std::vector<int> bricks = {})
      : Error(msg), offending_bricks(std::move(bricks)) {}
  std::vector<int> offending_bricks;
};

}  // namespace wallplan
