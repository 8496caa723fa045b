#pragma once

// Integrals over the complex label plane: the weight function of the
// resolution of unity, its radial moments, covering-space angular averages,
// and the sampled coherent-state kernel behind the inner product and the
// vector/operator transformation and decomposition laws.

#include <memory>
#include <variant>
#include <vector>

#include "sfock/fock_core.hpp"

namespace sfock {

/// Angular average taken on the covering space, i.e. the Phi -> infinity limit.
struct AnalyticCovering {
  bool operator==(const AnalyticCovering&) const = default;
};

/// (1/2 Phi) * integral over [-Phi, Phi], sampled with `steps` midpoints.
struct FinitePhi {
  double phi_max = 0.0;
  int steps = 0;
  bool operator==(const FinitePhi&) const = default;
};

using AngularMode = std::variant<AnalyticCovering, FinitePhi>;

struct QuadratureSpec {
  /// Gauss-Laguerre order after the substitution u = r^{2 sigma}.
  int radial_nodes = 32;
  AngularMode angular = AnalyticCovering{};
  double sigma = 1.0;
  /// Equispaced samples of sigma*phi over one period (analytic-covering only).
  /// Zero means "use the Fock dimension", the smallest count that is exact.
  int angular_points = 0;
  /// Scale kernel weights by 1/pi, as in the printed inner-product formula.
  /// With the covering-space average this makes the inner product 1/pi times the Fock one.
  bool inverse_pi_prefactor = false;

  void validate() const;
  bool operator==(const QuadratureSpec&) const = default;
};

/// Nodes and weights with integral_0^inf e^{-u} f(u) du ~= sum weights_j f(u_j).
struct GaussLaguerreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  /// log(weights_j) + nodes_j, finite even where weights_j underflows.
  std::vector<double> log_scaled_weights;
};

inline constexpr int kMaxRadialNodes = 256;

[[nodiscard]] GaussLaguerreRule gauss_laguerre(int order);

/// W_sigma(|z|^2) = 2 sigma |z|^{2(sigma - 1)}. Singular at 0 for sigma < 1.
[[nodiscard]] double weight(double z_mod_sq, double sigma);

/// Radial node r_j with log weight such that integral_0^inf g(r) dr ~= sum e^{log_weight_j} g(r_j),
/// exact when g(r) = p(r^{2 sigma}) e^{-r^{2 sigma}} r^{2 sigma - 1} with deg p <= 2 nodes - 1.
struct RadialNode {
  double r;
  double log_weight;
};

[[nodiscard]] std::vector<RadialNode> radial_rule(double sigma, int nodes);

struct RadialCompleteness {
  double value;
  /// False when radial_nodes < n + 1.
  bool exact;
};

/// (1/n!) integral_0^inf r^{2 n sigma + 1} W_sigma(r^2) e^{-r^{2 sigma}} dr, which must equal 1.
[[nodiscard]] RadialCompleteness radial_completeness(int n, const QuadratureSpec& spec);

/// The same integral by the composite trapezoid rule in r on [0, r_max].
/// Throws DomainError when the integrand diverges at r = 0.
[[nodiscard]] double radial_completeness_trapezoid(int n, double sigma, double r_max, int steps);

/// Average of e^{i sigma (n - m) phi}: delta_{nm} on the covering space,
/// sin(x)/x with x = sigma (n - m) Phi for a finite window.
[[nodiscard]] Complex angular_average(int n, int m, double sigma, const QuadratureSpec& spec);

struct KernelSample {
  StretchLabel label;
  double weight;
};

/// Coherent states sampled on a radial x angular grid with positive weights,
/// sum_j weight_j |z_j><z_j| approximating the identity on the truncated basis.
class CoherentKernel {
 public:
  CoherentKernel(const QuadratureSpec& spec, int dim);

  [[nodiscard]] const QuadratureSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
  [[nodiscard]] const std::vector<KernelSample>& samples() const noexcept { return samples_; }
  [[nodiscard]] const Eigen::VectorXd& weights() const noexcept { return weights_; }
  /// dim x size(); column j holds the truncated state |z_j>.
  [[nodiscard]] const Eigen::MatrixXcd& states() const noexcept { return states_; }

  /// sum_j weight_j |z_j><z_j|.
  [[nodiscard]] FockOperator resolution() const;

  /// Wave function <z_j|psi> on every sample.
  [[nodiscard]] Eigen::VectorXcd represent(const FockVector& psi) const;

 private:
  QuadratureSpec spec_;
  int dim_;
  std::vector<KernelSample> samples_;
  Eigen::VectorXd weights_;
  Eigen::MatrixXcd states_;
};

/// <phi|psi> through the weighted kernel double sum.
[[nodiscard]] Complex inner_product(const FockVector& phi, const FockVector& psi, const QuadratureSpec& spec);

/// sum_j weight_j |z_j><z_j|psi>. Requires radial_nodes >= dim.
[[nodiscard]] FockVector reconstruct_vector(const FockVector& psi, const QuadratureSpec& spec);

/// Matrix elements <z_i|A|z_j> of an operator on a shared grid.
struct OperatorKernel {
  std::shared_ptr<const CoherentKernel> grid;
  Eigen::MatrixXcd values;
};

[[nodiscard]] OperatorKernel operator_kernel(const FockOperator& op, std::shared_ptr<const CoherentKernel> grid);

/// <z|A1 A2|z'> = sum_k <z|A1|z_k> weight_k <z_k|A2|z'>.
/// Throws GridMismatchError unless both kernels share a grid sampled with `spec`.
[[nodiscard]] OperatorKernel operator_kernel_compose(const OperatorKernel& first, const OperatorKernel& second,
                                                     const QuadratureSpec& spec);

/// A = sum_{i,j} weight_i weight_j |z_i><z_i|A|z_j><z_j|.
[[nodiscard]] FockOperator operator_from_kernel(const OperatorKernel& kernel);

}  // namespace sfock
