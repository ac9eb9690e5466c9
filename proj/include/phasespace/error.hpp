#pragma once

#include <stdexcept>
#include <string>

namespace phasespace {

// Bad input: violated precondition, mismatched grids, malformed config.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical guard tripped: support leaves the grid, aliasing, a
// requested sampling that would silently lose accuracy.
class NumericalGuard : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidArgument(what);
}

inline void guard(bool cond, const std::string& what) {
  if (!cond) throw NumericalGuard(what);
}

}  // namespace phasespace
