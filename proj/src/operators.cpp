#include "sfock/operators.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/SparseCore>

namespace sfock {

namespace {

void require_buffer(int dim, int buffer, const char* who) {
  if (dim <= buffer) {
    throw TruncationError(std::string(who) + ": dim " + std::to_string(dim) +
                              " does not exceed the truncation buffer " + std::to_string(buffer),
                          buffer + 1);
  }
}

FockOperator displacement_generator(Complex w, int dim) {
  const auto ladders = ladder_matrices(TruncationConfig(dim));
  return w * ladders.adag - std::conj(w) * ladders.a;
}

}  // namespace

SqueezeLabel::SqueezeLabel(Complex xi, double upsilon)
    : xi_(xi), upsilon_(upsilon), theta_(0.0), amplitude_(complex_power(xi, upsilon)) {
  if (xi != Complex(0.0, 0.0)) {
    theta_ = std::arg(xi);
    if (theta_ <= -std::numbers::pi) theta_ = std::numbers::pi;
  }
  const double r = std::abs(amplitude_);
  cosh_term_ = std::cosh(r);
  sinh_phase_ = std::polar(std::sinh(r), upsilon_ * theta_);
}

int displacement_buffer(const StretchLabel& label) { return default_buffer(std::abs(label.w())); }

int squeezing_buffer(const SqueezeLabel& label) {
  const double s = std::sinh(label.squeeze_modulus());
  return static_cast<int>(std::ceil(8.0 * s * s)) + 16;
}

FockOperator displacement(const StretchLabel& label, const TruncationConfig& cfg) {
  require_buffer(cfg.dim(), displacement_buffer(label), "displacement");
  return unitary_exp(displacement_generator(label.w(), cfg.dim()));
}

FockOperator standard_displacement(Complex alpha, const TruncationConfig& cfg) {
  return displacement(StretchLabel(alpha, 1.0), cfg);
}

NormalOrderedDisplacement displacement_normal_ordered(const StretchLabel& label,
                                                      const TruncationConfig& cfg) {
  require_buffer(cfg.dim(), displacement_buffer(label), "displacement_normal_ordered");
  const int dim = cfg.dim();
  const auto ladders = ladder_matrices(cfg);
  const Complex w = label.w();

  // Both factors are nilpotent on the truncated basis, so the series stop at dim - 1.
  auto series = [dim](const FockOperator& dense_step) {
    const Eigen::SparseMatrix<Complex> step = dense_step.sparseView();
    FockOperator sum = FockOperator::Identity(dim, dim);
    FockOperator term = FockOperator::Identity(dim, dim);
    double last = 1.0;
    for (int k = 1; k < dim; ++k) {
      term = FockOperator(term * step) / static_cast<double>(k);
      last = term.cwiseAbs().maxCoeff();
      sum += term;
    }
    return std::pair{sum, last};
  };

  const auto [raise, raise_last] = series(w * ladders.adag);
  const auto [lower, lower_last] = series(-std::conj(w) * ladders.a);
  const bool converged = dim == 1 || (raise_last < 1e-16 && lower_last < 1e-16);
  const double damping = std::exp(-0.5 * label.intensity());

  // Entry (m, n) is an alternating Laguerre sum; dim eps |R| |L| bounds its rounding error.
  const Eigen::MatrixXd bound = (dim * std::numeric_limits<double>::epsilon() * damping) *
                                (raise.cwiseAbs() * lower.cwiseAbs());
  int stable = 0;
  while (stable < dim && bound.row(stable).head(stable + 1).maxCoeff() <= kNormalOrderTol &&
         bound.col(stable).head(stable + 1).maxCoeff() <= kNormalOrderTol) {
    ++stable;
  }
  return {damping * raise * lower, converged, stable};
}

Complex matrix_element(int m, int n, const StretchLabel& label) {
  if (m < 0 || n < 0) throw DomainError("matrix_element: indices must be >= 0");
  const double x = label.intensity();
  const double damping = std::exp(-0.5 * x);
  if (m >= n) {
    const double ratio = std::exp(0.5 * (log_factorial(n) - log_factorial(m)));
    return ratio * std::pow(label.w(), m - n) * damping * laguerre_assoc(n, m - n, x);
  }
  // Negative upper index folded in: w^{m-n} (-x)^{n-m} = (-conj(w))^{n-m}.
  const double ratio = std::exp(0.5 * (log_factorial(m) - log_factorial(n)));
  return ratio * std::pow(-label.w_conj(), n - m) * damping * laguerre_assoc(m, n - m, x);
}

Complex matrix_element_literal(int m, int n, const StretchLabel& label) {
  if (m < 0 || n < 0) throw DomainError("matrix_element_literal: indices must be >= 0");
  const double x = label.intensity();
  const double ratio = std::exp(0.5 * (log_factorial(n) - log_factorial(m)));
  return ratio * std::pow(label.w(), m - n) * std::exp(-0.5 * x) * laguerre_assoc(n, m - n, x);
}

ProductDecomposition multiplication_law(const StretchLabel& z1, const StretchLabel& z2) {
  if (z1.sigma() != z2.sigma()) {
    throw DomainError("multiplication_law: labels must share the same sigma");
  }
  const Complex exponent = 0.5 * (z1.w() * z2.w_conj() - z1.w_conj() * z2.w());
  // The exponent is purely imaginary; drop the roundoff real part so the factor is a pure phase.
  return {z1.w() + z2.w(), std::polar(1.0, exponent.imag())};
}

FockOperator squeezing(const SqueezeLabel& label, const TruncationConfig& cfg) {
  require_buffer(cfg.dim(), squeezing_buffer(label), "squeezing");
  const auto ladders = ladder_matrices(cfg);
  const FockOperator a2 = ladders.a * ladders.a;
  const FockOperator adag2 = ladders.adag * ladders.adag;
  const Complex amp = label.amplitude();
  const FockOperator generator = 0.5 * std::conj(amp) * a2 - 0.5 * amp * adag2;
  return unitary_exp(generator);
}

BogoliubovCoefficients bogoliubov(const SqueezeLabel& label) {
  return {label.cosh_term(), label.sinh_phase()};
}

}  // namespace sfock
