#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace sfock {

/// A precondition on a parameter was violated (sigma outside (0,1], mismatched labels, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The Fock basis is too small for the requested tail tolerance or buffer.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, int required_dim)
      : std::runtime_error(what), required_dim_(required_dim) {}

  /// Smallest basis size known to satisfy the failed requirement, or 0 if unknown.
  [[nodiscard]] int required_dim() const noexcept { return required_dim_; }

 private:
  int required_dim_;
};

/// The weight function was evaluated at its singular point.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Two operator kernels were sampled on different coherent-state grids.
class GridMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

// Compact rendering of a real for error messages; std::to_string prints 1e-12 as 0.000000.
inline std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace detail

}  // namespace sfock
