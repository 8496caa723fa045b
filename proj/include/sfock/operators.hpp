#pragma once

#include <utility>

#include "sfock/fock_core.hpp"

namespace sfock {

/// Label of the stretched squeezing operator: xi = rho e^{i theta} and the
/// exponent upsilon. Caches r = rho^upsilon, cosh r and e^{i upsilon theta} sinh r.
class SqueezeLabel {
 public:
  SqueezeLabel(Complex xi, double upsilon);

  [[nodiscard]] Complex xi() const noexcept { return xi_; }
  [[nodiscard]] double upsilon() const noexcept { return upsilon_; }
  [[nodiscard]] double rho() const noexcept { return std::abs(xi_); }
  /// Principal argument of xi.
  [[nodiscard]] double theta() const noexcept { return theta_; }
  /// xi^upsilon on the principal branch.
  [[nodiscard]] Complex amplitude() const noexcept { return amplitude_; }
  /// rho^upsilon.
  [[nodiscard]] double squeeze_modulus() const noexcept { return std::abs(amplitude_); }
  [[nodiscard]] double cosh_term() const noexcept { return cosh_term_; }
  [[nodiscard]] Complex sinh_phase() const noexcept { return sinh_phase_; }

 private:
  Complex xi_;
  double upsilon_;
  double theta_;
  Complex amplitude_;
  double cosh_term_;
  Complex sinh_phase_;
};

/// Right-hand side of the displacement product rule
/// D_s(z1) D_s(z2) = phase_factor * D(combined_amplitude).
struct ProductDecomposition {
  Complex combined_amplitude;
  Complex phase_factor;
};

/// S^+ a S = u a - v a^+,  S^+ a^+ S = u a^+ - conj(v) a.
struct BogoliubovCoefficients {
  double u;
  Complex v;
};

struct NormalOrderedDisplacement {
  FockOperator op;
  /// False when the last series term did not drop below 1e-16.
  bool converged;
  /// Leading block on which the a-priori rounding bound stays below kNormalOrderTol.
  /// Beyond it the product cancels catastrophically and only the exponential route is usable.
  int stable_block;
};

inline constexpr double kNormalOrderTol = 1e-10;

/// Buffer policy for displacement: default_buffer(|w|).
[[nodiscard]] int displacement_buffer(const StretchLabel& label);

/// Buffer policy for squeezing: ceil(8 sinh^2 r) + 16.
[[nodiscard]] int squeezing_buffer(const SqueezeLabel& label);

/// exp(w a^+ - conj(w) a) on the truncated basis. Depends on the label only through w.
[[nodiscard]] FockOperator displacement(const StretchLabel& label, const TruncationConfig& cfg);

/// The ordinary displacement operator exp(alpha a^+ - conj(alpha) a).
[[nodiscard]] FockOperator standard_displacement(Complex alpha, const TruncationConfig& cfg);

/// exp(-|w|^2/2) exp(w a^+) exp(-conj(w) a) from the truncated power series.
/// The product is exact in exact arithmetic for every m, n < dim; see stable_block.
[[nodiscard]] NormalOrderedDisplacement displacement_normal_ordered(const StretchLabel& label,
                                                                    const TruncationConfig& cfg);

/// Closed-form <m|D_s|n> through associated Laguerre polynomials.
[[nodiscard]] Complex matrix_element(int m, int n, const StretchLabel& label);

/// Literal form sqrt(n!/m!) w^{m-n} e^{-x/2} L_n^{(m-n)}(x) with the negative
/// upper-index convention; undefined for w == 0 with m < n.
[[nodiscard]] Complex matrix_element_literal(int m, int n, const StretchLabel& label);

[[nodiscard]] ProductDecomposition multiplication_law(const StretchLabel& z1, const StretchLabel& z2);

/// exp(1/2 conj(xi^u) a^2 - 1/2 xi^u a^{+2}) on the truncated basis.
[[nodiscard]] FockOperator squeezing(const SqueezeLabel& label, const TruncationConfig& cfg);

[[nodiscard]] BogoliubovCoefficients bogoliubov(const SqueezeLabel& label);

}  // namespace sfock
