#pragma once

#include <stdexcept>
#include <string>

namespace zsl {

/// Misuse of an API: wrong representation, mismatched grids, invalid
/// parameters.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A simulation produced non-finite values or blew up. Carries the
/// simulation time at which it was detected.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double t)
      : std::runtime_error(what + " (t = " + std::to_string(t) + ")"), time_(t) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zsl
