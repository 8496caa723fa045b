#include "sfock/composite.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sfock {

namespace {

void require_same_sigma(const StretchLabel& alpha, const StretchLabel& zeta, const char* who) {
  if (alpha.sigma() != zeta.sigma()) {
    throw DomainError(std::string(who) + ": labels must share the same sigma");
  }
}

// A truncated unitary chain reflects whatever amplitude should have left the
// basis back onto its top levels, so edge mass flags an undersized basis.
void audit_edge(const FockVector& v, const TruncationConfig& cfg, const char* who) {
  const double mass = edge_mass(v);
  if (mass > cfg.tail_tol()) {
    throw TruncationError(std::string(who) + ": edge mass " + detail::short_number(mass) +
                              " exceeds tail tolerance; enlarge dim",
                          2 * cfg.dim());
  }
}

void require_index(int n, int dim, int buffer, const char* who) {
  if (n < 0) throw DomainError(std::string(who) + ": n must be >= 0");
  if (n >= dim - buffer) {
    throw TruncationError(std::string(who) + ": n = " + std::to_string(n) +
                              " is not below dim - buffer = " + std::to_string(dim - buffer),
                          n + buffer + 1);
  }
}

}  // namespace

FockVector squeezed_coherent(const CompositeLabel& label, const TruncationConfig& cfg) {
  if (label.n != 0) throw DomainError("squeezed_coherent: label.n must be 0");
  return squeezed_displaced_number(label, cfg);
}

SqueezedExpectations squeezed_expectations(const CompositeLabel& label) {
  const Complex w = label.displace.w();
  const double r = label.squeeze.squeeze_modulus();
  const double theta = label.squeeze.theta();
  const double upsilon = label.squeeze.upsilon();
  const double sc = std::sinh(r) * std::cosh(r);
  const double s = std::sinh(r);
  return {
      w,
      label.displace.intensity() - std::polar(sc, 2.0 * upsilon * theta),
      w * w - std::polar(sc, upsilon * theta),
      label.displace.intensity() + s * s,
  };
}

FockVector displaced_number(const StretchLabel& label, int n, const TruncationConfig& cfg) {
  require_index(n, cfg.dim(), displacement_buffer(label), "displaced_number");
  FockVector out(cfg.dim());
  for (int m = 0; m < cfg.dim(); ++m) out(m) = matrix_element(m, n, label);
  const double lost = 1.0 - out.squaredNorm();
  if (lost > cfg.tail_tol()) {
    throw TruncationError("displaced_number: probability " + detail::short_number(lost) +
                              " lies above the basis; enlarge dim",
                          2 * cfg.dim());
  }
  return out;
}

FockVector squeezed_displaced_number(const CompositeLabel& label, const TruncationConfig& cfg) {
  const int buffer = std::max(displacement_buffer(label.displace), squeezing_buffer(label.squeeze));
  require_index(label.n, cfg.dim(), buffer, "squeezed_displaced_number");
  const FockOperator squeeze = squeezing(label.squeeze, cfg);
  const FockVector out = displacement(label.displace, cfg) * squeeze.col(label.n);
  audit_edge(out, cfg, "squeezed_displaced_number");
  return out;
}

Complex modified_displacement_prefactor(const StretchLabel& alpha, const StretchLabel& zeta) {
  require_same_sigma(alpha, zeta, "modified_displacement_prefactor");
  const Complex exponent = alpha.w_conj() * zeta.w() - alpha.w() * zeta.w_conj();
  return std::polar(1.0, exponent.imag());
}

FockOperator modified_displacement(const StretchLabel& alpha, const StretchLabel& zeta,
                                   const TruncationConfig& cfg) {
  require_same_sigma(alpha, zeta, "modified_displacement");
  const int dim = cfg.dim();
  if (dim <= displacement_buffer(alpha)) {
    throw TruncationError("modified_displacement: dim does not exceed the truncation buffer",
                          displacement_buffer(alpha) + 1);
  }
  const auto ladders = ladder_matrices(cfg);
  const FockOperator identity = FockOperator::Identity(dim, dim);
  const FockOperator generator = alpha.w() * (ladders.adag - zeta.w_conj() * identity) -
                                 alpha.w_conj() * (ladders.a - zeta.w() * identity);
  return unitary_exp(generator);
}

FockVector modified_coherent(const StretchLabel& alpha, const StretchLabel& zeta,
                             const TruncationConfig& cfg) {
  require_same_sigma(alpha, zeta, "modified_coherent");
  // Up to a phase the result is the coherent state with amplitude w_alpha + w_zeta.
  const double shifted_mean = std::norm(alpha.w() + zeta.w());
  if (poisson_tail_bound(shifted_mean, cfg.dim()) > cfg.tail_tol()) {
    const int needed = required_dim(shifted_mean, cfg.tail_tol());
    throw TruncationError("modified_coherent: need dim >= " + std::to_string(needed), needed);
  }
  return modified_displacement(alpha, zeta, cfg) * make_state(zeta, cfg);
}

FockVector modified_coherent_expansion(const StretchLabel& alpha, const StretchLabel& zeta,
                                       const TruncationConfig& cfg) {
  require_same_sigma(alpha, zeta, "modified_coherent_expansion");
  const int dim = cfg.dim();
  const double x = alpha.intensity();
  const Complex wa = alpha.w();
  const Complex wz = zeta.w();
  const Complex scale = modified_displacement_prefactor(alpha, zeta) *
                        std::exp(-0.5 * (zeta.intensity() + alpha.intensity()));

  // w_z^n, kept in log-polar form so large n cannot overflow.
  auto zeta_power = [&](int n) -> Complex {
    if (n == 0) return {1.0, 0.0};
    if (wz == Complex(0.0, 0.0)) return {0.0, 0.0};
    return std::polar(std::exp(n * std::log(std::abs(wz))), n * std::arg(wz));
  };

  FockVector out = FockVector::Zero(dim);
  for (int m = 0; m < dim; ++m) {
    Complex sum{0.0, 0.0};
    for (int n = 0; n < dim; ++n) {
      Complex term;
      if (m >= n) {
        term = zeta_power(n) * std::exp(-0.5 * log_factorial(m)) * std::pow(wa, m - n) *
               laguerre_assoc(n, m - n, x);
      } else {
        // w_a^{m-n} L_n^{(m-n)}(x) = (-conj w_a)^{n-m} (m!/n!) L_m^{(n-m)}(x)
        term = zeta_power(n) * std::exp(0.5 * log_factorial(m) - log_factorial(n)) *
               std::pow(-std::conj(wa), n - m) * laguerre_assoc(m, n - m, x);
      }
      sum += term;
    }
    out(m) = scale * sum;
  }
  return out;
}

}  // namespace sfock
