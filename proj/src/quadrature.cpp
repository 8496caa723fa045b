#include "sfock/quadrature.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

namespace sfock {

namespace {

// L_order(x) and L_{order-1}(x) by the three-term recurrence, in extended
// precision so Newton can pin the small nodes to full double accuracy.
std::pair<long double, long double> laguerre_pair(int order, long double x) {
  long double prev = 1.0L;
  long double cur = 1.0L - x;
  if (order == 1) return {cur, prev};
  for (int i = 1; i < order; ++i) {
    const long double next = ((2.0L * i + 1.0L - x) * cur - i * prev) / (i + 1.0L);
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

int angular_point_count(const QuadratureSpec& spec, int dim) {
  if (const auto* finite = std::get_if<FinitePhi>(&spec.angular)) return finite->steps;
  return spec.angular_points > 0 ? spec.angular_points : dim;
}

// Covering-space phase of angular sample k.
double angular_phase(const QuadratureSpec& spec, int k, int count) {
  if (const auto* finite = std::get_if<FinitePhi>(&spec.angular)) {
    const double width = 2.0 * finite->phi_max / count;
    return -finite->phi_max + (k + 0.5) * width;
  }
  // Equispaced in sigma*phi over one period of e^{i (n-m) sigma phi}.
  const double theta = -std::numbers::pi + 2.0 * std::numbers::pi * k / count;
  return theta / spec.sigma;
}

}  // namespace

void QuadratureSpec::validate() const {
  require_unit_exponent(sigma, "QuadratureSpec: sigma");
  if (radial_nodes < 1 || radial_nodes > kMaxRadialNodes) {
    throw DomainError("QuadratureSpec: radial_nodes must lie in [1, " + std::to_string(kMaxRadialNodes) + "]");
  }
  if (angular_points < 0) throw DomainError("QuadratureSpec: angular_points must be >= 0");
  if (const auto* finite = std::get_if<FinitePhi>(&angular)) {
    if (!(finite->phi_max > 0.0) || !std::isfinite(finite->phi_max)) {
      throw DomainError("QuadratureSpec: finite-phi window must be positive");
    }
    if (finite->steps < 1) throw DomainError("QuadratureSpec: finite-phi steps must be >= 1");
  }
}

GaussLaguerreRule gauss_laguerre(int order) {
  if (order < 1 || order > kMaxRadialNodes) {
    throw DomainError("gauss_laguerre: order must lie in [1, " + std::to_string(kMaxRadialNodes) + "]");
  }
  // Golub-Welsch starting values from the Jacobi matrix, then Newton polish.
  Eigen::VectorXd diag(order);
  Eigen::VectorXd sub(std::max(order - 1, 0));
  for (int i = 0; i < order; ++i) diag(i) = 2.0 * i + 1.0;
  for (int i = 0; i + 1 < order; ++i) sub(i) = i + 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

  GaussLaguerreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  rule.log_scaled_weights.resize(order);
  for (int j = 0; j < order; ++j) {
    long double x = solver.eigenvalues()(j);
    for (int iter = 0; iter < 10; ++iter) {
      const auto [value, lower] = laguerre_pair(order, x);
      const long double derivative = order * (value - lower) / x;
      const long double step = value / derivative;
      x -= step;
      if (std::abs(step) <= 1e-18L * x) break;
    }
    const long double lower = laguerre_pair(order, x).second;
    // w = x / (order^2 L_{order-1}(x)^2)
    const double log_w = static_cast<double>(std::log(x) - 2.0L * std::log(static_cast<long double>(order)) -
                                             2.0L * std::log(std::abs(lower)));
    rule.nodes[j] = static_cast<double>(x);
    rule.weights[j] = std::exp(log_w);
    rule.log_scaled_weights[j] = log_w + rule.nodes[j];
  }
  return rule;
}

double weight(double z_mod_sq, double sigma) {
  require_unit_exponent(sigma, "weight: sigma");
  if (z_mod_sq < 0.0 || !std::isfinite(z_mod_sq)) {
    throw DomainError("weight: |z|^2 must be finite and non-negative");
  }
  if (sigma == 1.0) return 2.0;
  if (z_mod_sq == 0.0) throw SingularityError("weight: W_sigma is singular at z = 0 for sigma < 1");
  return 2.0 * sigma * std::pow(z_mod_sq, sigma - 1.0);
}

std::vector<RadialNode> radial_rule(double sigma, int nodes) {
  require_unit_exponent(sigma, "radial_rule: sigma");
  const auto rule = gauss_laguerre(nodes);
  std::vector<RadialNode> out;
  out.reserve(nodes);
  for (int j = 0; j < nodes; ++j) {
    const double u = rule.nodes[j];
    const double log_r = std::log(u) / (2.0 * sigma);
    // dr = du / (2 sigma r^{2 sigma - 1})
    const double log_weight = rule.log_scaled_weights[j] - std::log(2.0 * sigma) - (2.0 * sigma - 1.0) * log_r;
    out.push_back({std::exp(log_r), log_weight});
  }
  return out;
}

RadialCompleteness radial_completeness(int n, const QuadratureSpec& spec) {
  spec.validate();
  if (n < 0) throw DomainError("radial_completeness: n must be >= 0");
  const double sigma = spec.sigma;
  double sum = 0.0;
  for (const auto& node : radial_rule(sigma, spec.radial_nodes)) {
    const double log_r = std::log(node.r);
    const double log_integrand = (2.0 * n * sigma + 1.0) * log_r + std::log(weight(node.r * node.r, sigma)) -
                                 std::pow(node.r, 2.0 * sigma) - log_factorial(n);
    sum += std::exp(node.log_weight + log_integrand);
  }
  return {sum, spec.radial_nodes >= n + 1};
}

double radial_completeness_trapezoid(int n, double sigma, double r_max, int steps) {
  require_unit_exponent(sigma, "radial_completeness_trapezoid: sigma");
  if (n < 0 || steps < 1 || !(r_max > 0.0)) {
    throw DomainError("radial_completeness_trapezoid: need n >= 0, steps >= 1, r_max > 0");
  }
  // Near the origin the integrand behaves like 2 sigma r^{2 n sigma + 2 sigma - 1} / n!.
  const double origin_power = 2.0 * n * sigma + 2.0 * sigma - 1.0;
  if (origin_power < 0.0) {
    throw DomainError("radial_completeness_trapezoid: integrand diverges at r = 0");
  }
  auto integrand = [&](double r) {
    if (r == 0.0) return origin_power == 0.0 ? 2.0 * sigma * std::exp(-log_factorial(n)) : 0.0;
    return std::pow(r, 2.0 * n * sigma + 1.0) * weight(r * r, sigma) * std::exp(-std::pow(r, 2.0 * sigma)) *
           std::exp(-log_factorial(n));
  };
  const double h = r_max / steps;
  double sum = 0.5 * (integrand(0.0) + integrand(r_max));
  for (int i = 1; i < steps; ++i) sum += integrand(i * h);
  return sum * h;
}

Complex angular_average(int n, int m, double sigma, const QuadratureSpec& spec) {
  require_unit_exponent(sigma, "angular_average: sigma");
  if (std::holds_alternative<AnalyticCovering>(spec.angular)) {
    return n == m ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
  }
  const auto& finite = std::get<FinitePhi>(spec.angular);
  const int gap = std::abs(n - m);
  if (finite.steps < 64 * (1 + gap)) {
    throw DomainError("angular_average: finite-phi mode needs steps >= 64 (1 + |n - m|)");
  }
  if (n == m) return {1.0, 0.0};
  const double x = sigma * (n - m) * finite.phi_max;
  return {std::sin(x) / x, 0.0};
}

CoherentKernel::CoherentKernel(const QuadratureSpec& spec, int dim) : spec_(spec), dim_(dim) {
  spec_.validate();
  if (dim < 1) throw DomainError("CoherentKernel: dim must be >= 1");
  const double sigma = spec_.sigma;
  const int count = angular_point_count(spec_, dim);
  const double scale = 1.0 / count / (spec_.inverse_pi_prefactor ? std::numbers::pi : 1.0);
  const auto radial = radial_rule(sigma, spec_.radial_nodes);

  samples_.reserve(radial.size() * count);
  for (const auto& node : radial) {
    // d^2 z W = r dr W(r^2) over the covering-space angular average.
    const double w = std::exp(node.log_weight) * node.r * weight(node.r * node.r, sigma) * scale;
    for (int k = 0; k < count; ++k) {
      samples_.push_back({StretchLabel::on_covering(node.r, angular_phase(spec_, k, count), sigma), w});
    }
  }

  const auto size = static_cast<Eigen::Index>(samples_.size());
  weights_.resize(size);
  states_.resize(dim, size);
  for (Eigen::Index j = 0; j < size; ++j) {
    weights_(j) = samples_[j].weight;
    const Complex amp = samples_[j].label.w();
    for (int n = 0; n < dim; ++n) states_(n, j) = coherent_amplitude(amp, n);
  }
}

FockOperator CoherentKernel::resolution() const {
  return states_ * weights_.asDiagonal() * states_.adjoint();
}

Eigen::VectorXcd CoherentKernel::represent(const FockVector& psi) const {
  if (psi.size() != dim_) throw DomainError("CoherentKernel::represent: dimension mismatch");
  return states_.adjoint() * psi;
}

Complex inner_product(const FockVector& phi, const FockVector& psi, const QuadratureSpec& spec) {
  if (phi.size() != psi.size()) throw DomainError("inner_product: vectors must share a dimension");
  const CoherentKernel kernel(spec, static_cast<int>(phi.size()));
  const Eigen::VectorXcd left = kernel.represent(phi);
  const Eigen::VectorXcd right = kernel.represent(psi);
  Complex sum{0.0, 0.0};
  for (Eigen::Index j = 0; j < left.size(); ++j) sum += std::conj(left(j)) * kernel.weights()(j) * right(j);
  return sum;
}

FockVector reconstruct_vector(const FockVector& psi, const QuadratureSpec& spec) {
  const int dim = static_cast<int>(psi.size());
  if (spec.radial_nodes < dim) {
    throw DomainError("reconstruct_vector: radial_nodes must be >= dim (" + std::to_string(dim) + ")");
  }
  const CoherentKernel kernel(spec, dim);
  return kernel.states() * (kernel.weights().asDiagonal() * kernel.represent(psi));
}

OperatorKernel operator_kernel(const FockOperator& op, std::shared_ptr<const CoherentKernel> grid) {
  if (!grid) throw DomainError("operator_kernel: null grid");
  if (op.rows() != grid->dim() || op.cols() != grid->dim()) {
    throw DomainError("operator_kernel: operator and grid dimensions differ");
  }
  Eigen::MatrixXcd values = grid->states().adjoint() * op * grid->states();
  return {std::move(grid), std::move(values)};
}

OperatorKernel operator_kernel_compose(const OperatorKernel& first, const OperatorKernel& second,
                                       const QuadratureSpec& spec) {
  if (!first.grid || !second.grid) throw GridMismatchError("operator_kernel_compose: null grid");
  const bool same = first.grid == second.grid ||
                    (first.grid->spec() == second.grid->spec() && first.grid->dim() == second.grid->dim());
  if (!same || !(first.grid->spec() == spec)) {
    throw GridMismatchError("operator_kernel_compose: kernels were sampled on different grids");
  }
  Eigen::MatrixXcd values = first.values * first.grid->weights().asDiagonal() * second.values;
  return {first.grid, std::move(values)};
}

FockOperator operator_from_kernel(const OperatorKernel& kernel) {
  if (!kernel.grid) throw DomainError("operator_from_kernel: null grid");
  const auto& grid = *kernel.grid;
  const Eigen::MatrixXcd weighted = grid.states() * grid.weights().asDiagonal();
  return weighted * kernel.values * weighted.adjoint();
}

}  // namespace sfock
