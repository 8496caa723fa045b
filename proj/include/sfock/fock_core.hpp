#pragma once

// Truncated Fock-space numerics shared by every other module: ladder matrices,
// principal-branch fractional powers, log-factorials, associated Laguerre
// polynomials and the truncation-block policy used by all identity checks.

#include <complex>

#include <Eigen/Dense>

#include "sfock/errors.hpp"

namespace sfock {

using Complex = std::complex<double>;

/// Amplitudes over the number states |0>, ..., |dim-1>.
using FockVector = Eigen::VectorXcd;

/// Dense operator in the number basis, element (m, n) = <m|A|n>.
using FockOperator = Eigen::MatrixXcd;

inline constexpr double kDefaultTailTol = 1e-12;

/// Basis size together with the probability mass we are willing to lose above it.
class TruncationConfig {
 public:
  explicit TruncationConfig(int dim, double tail_tol = kDefaultTailTol);

  /// Smallest config whose Poisson tail bound for `mean` is within `tail_tol`.
  static TruncationConfig for_mean(double mean, double tail_tol = kDefaultTailTol, int min_dim = 1);

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] double tail_tol() const noexcept { return tail_tol_; }

 private:
  int dim_;
  double tail_tol_;
};

/// Chernoff upper bound on P(X >= dim) for X ~ Poisson(mean).
[[nodiscard]] double poisson_tail_bound(double mean, int dim);

/// Smallest dim with poisson_tail_bound(mean, dim) <= tail_tol.
/// Throws TruncationError when no finite basis can meet tail_tol (tail_tol == 0 with mean > 0).
[[nodiscard]] int required_dim(double mean, double tail_tol);

/// |z|^s exp(i s Arg z) with Arg z in (-pi, pi]. Returns z unchanged for s == 1.
[[nodiscard]] Complex complex_power(Complex z, double s);

/// Label of a stretched coherent state: the complex parameter zeta, the stretch
/// exponent sigma and the cached canonical amplitude w = zeta^sigma.
///
/// Labels built with the two-argument constructor use the principal branch.
/// `on_covering` builds a label addressed by a phase outside (-pi, pi], as
/// required by covering-space angular sampling; there w = r^sigma e^{i sigma phi}
/// and zeta is the projection r e^{i phi}.
class StretchLabel {
 public:
  StretchLabel(Complex zeta, double sigma);

  static StretchLabel on_covering(double modulus, double phase, double sigma);

  [[nodiscard]] Complex zeta() const noexcept { return zeta_; }
  [[nodiscard]] double sigma() const noexcept { return sigma_; }
  [[nodiscard]] Complex w() const noexcept { return w_; }
  [[nodiscard]] Complex w_conj() const noexcept { return std::conj(w_); }
  /// |zeta|^{2 sigma} = |w|^2, the Poisson mean of the photon distribution.
  [[nodiscard]] double intensity() const noexcept { return std::norm(w_); }

 private:
  StretchLabel(Complex zeta, double sigma, Complex w) : zeta_(zeta), sigma_(sigma), w_(w) {}

  Complex zeta_;
  double sigma_;
  Complex w_;
};

/// Throws DomainError unless s is in (0, 1]. `what` names the parameter.
void require_unit_exponent(double s, const char* what);

struct LadderMatrices {
  FockOperator a;
  FockOperator adag;
  FockOperator num;
};

[[nodiscard]] LadderMatrices ladder_matrices(const TruncationConfig& cfg);

/// log(n!) from a cumulative table (lgamma beyond the table).
[[nodiscard]] double log_factorial(int n);

/// Associated Laguerre polynomial L_n^{(k)}(x) for k >= -n.
/// Non-negative k uses the three-term recurrence in n; negative k = -j is
/// mapped through L_n^{(-j)}(x) = (-x)^j (n-j)!/n! L_{n-j}^{(j)}(x).
[[nodiscard]] double laguerre_assoc(int n, int k, double x);

/// exp(-|w|^2/2) w^n / sqrt(n!), evaluated in log-polar form.
[[nodiscard]] Complex coherent_amplitude(Complex w, int n);

// --- truncation block policy -------------------------------------------------

/// Buffer ceil(4|w|) + 8 for an operator displacing by amplitude |w|.
[[nodiscard]] int default_buffer(double amplitude);

inline constexpr double kEdgeTol = 1e-7;
inline constexpr int kEdgeRows = 2;

/// Number of leading columns of `op` whose weight on the top `edge_rows` basis
/// states stays below `edge_tol`. Columns past this point feel the truncation.
[[nodiscard]] int edge_block(const FockOperator& op, double edge_tol = kEdgeTol, int edge_rows = kEdgeRows);

/// min(dim - buffer, edge_block(op)), clamped at 0.
[[nodiscard]] int identity_block(const FockOperator& op, int buffer);

/// Frobenius norm of the leading block x block submatrix.
[[nodiscard]] double block_residual(const FockOperator& m, int block);

/// Weight of `v` on its top `edge_rows` components.
[[nodiscard]] double edge_mass(const FockVector& v, int edge_rows = 4);

/// exp(G) for anti-Hermitian G, via the eigendecomposition of the Hermitian iG.
/// The result is unitary to roundoff regardless of truncation.
[[nodiscard]] FockOperator unitary_exp(const FockOperator& generator);

}  // namespace sfock
