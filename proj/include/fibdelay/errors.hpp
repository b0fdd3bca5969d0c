#pragma once

#include <stdexcept>
#include <string>

namespace fibdelay {

/// Raised when a requested precision cannot support an exact answer.
/// The caller must retry with at least required_digits().
class InsufficientPrecision : public std::runtime_error {
 public:
  InsufficientPrecision(const std::string& what, int required_digits)
      : std::runtime_error(what), required_digits_(required_digits) {}

  int required_digits() const noexcept { return required_digits_; }

 private:
  int required_digits_;
};

/// Raised when an enumeration would exceed its configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative root refinement did not reach the certified residual.
/// Indicates a misconfigured precision context, never a user error.
class RefinementFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fibdelay
