#pragma once

#include <stdexcept>
#include <string>

namespace arrowlab {

// Contract violations on inputs (bad grids, out-of-range points, invalid
// parameters). Maps to CLI exit code 1.
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class GridMismatch : public InvalidArgument {
  public:
    using InvalidArgument::InvalidArgument;
};

// A numerical procedure failed or an invariant check did not hold.
// Maps to CLI exit code 2.
class NumericalFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw InvalidArgument(msg);
}

} // namespace arrowlab
