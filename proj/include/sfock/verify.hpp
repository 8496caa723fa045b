#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sfock {

struct VerifyOptions {
  double tol = 1e-8;
  /// Restrict the grid to a single stretch / squeeze exponent.
  std::optional<double> sigma;
  std::optional<double> upsilon;
  std::uint64_t seed = 20240601;
  /// Basis size for operator-level checks.
  int dim = 96;
};

struct CheckResult {
  std::string name;
  /// The identity being checked, written out.
  std::string identity;
  /// Largest residual over the check's parameter grid.
  double residual = 0.0;
  int cases = 0;
  bool passed = false;
};

/// Runs every cross-module identity over a fixed grid. Deterministic for a given options value.
[[nodiscard]] std::vector<CheckResult> run_identity_suite(const VerifyOptions& options);

}  // namespace sfock
