#include "sfock/fock_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace sfock {

namespace {

constexpr int kLogFactorialTableSize = 1024;
constexpr int kMaxDim = 1 << 20;

const std::array<double, kLogFactorialTableSize>& log_factorial_table() {
  static const auto table = [] {
    std::array<double, kLogFactorialTableSize> t{};
    t[0] = 0.0;
    for (int k = 1; k < kLogFactorialTableSize; ++k) {
      t[k] = t[k - 1] + std::log(static_cast<double>(k));
    }
    return t;
  }();
  return table;
}

// L_n^{(k)}(x) for k >= 0.
double laguerre_nonneg(int n, int k, double x) {
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + k - x;
  for (int i = 1; i < n; ++i) {
    const double next = ((2.0 * i + 1.0 + k - x) * cur - (i + k) * prev) / (i + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

TruncationConfig::TruncationConfig(int dim, double tail_tol) : dim_(dim), tail_tol_(tail_tol) {
  if (dim < 1) {
    throw DomainError("TruncationConfig: dim must be >= 1, got " + std::to_string(dim));
  }
  if (!(tail_tol >= 0.0 && tail_tol < 1.0)) {
    throw DomainError("TruncationConfig: tail_tol must lie in [0, 1)");
  }
}

TruncationConfig TruncationConfig::for_mean(double mean, double tail_tol, int min_dim) {
  return TruncationConfig(std::max(min_dim, required_dim(mean, tail_tol)), tail_tol);
}

double poisson_tail_bound(double mean, int dim) {
  if (mean < 0.0 || !std::isfinite(mean)) {
    throw DomainError("poisson_tail_bound: mean must be finite and non-negative");
  }
  if (dim <= 0) return 1.0;
  if (mean == 0.0) return 0.0;
  const double k = dim;
  if (k <= mean) return 1.0;
  // P(X >= k) <= e^{-mean} (e mean / k)^k for k > mean.
  const double log_bound = -mean + k * (1.0 + std::log(mean) - std::log(k));
  return std::min(1.0, std::exp(log_bound));
}

int required_dim(double mean, double tail_tol) {
  if (mean == 0.0) return 1;
  if (!(tail_tol > 0.0)) {
    throw TruncationError("required_dim: a positive tail tolerance is needed for a non-vacuum state", 0);
  }
  int dim = std::max(1, static_cast<int>(std::ceil(mean)));
  while (poisson_tail_bound(mean, dim) > tail_tol) {
    if (dim >= kMaxDim) {
      throw TruncationError("required_dim: no basis below the size limit meets the tail tolerance", 0);
    }
    ++dim;
  }
  return dim;
}

void require_unit_exponent(double s, const char* what) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw DomainError(std::string(what) + " must lie in (0, 1], got " + detail::short_number(s));
  }
}

Complex complex_power(Complex z, double s) {
  require_unit_exponent(s, "complex_power: exponent");
  if (s == 1.0) return z;
  if (z == Complex(0.0, 0.0)) return {0.0, 0.0};
  double arg = std::arg(z);
  // std::arg returns -pi for a negative real with negative-zero imaginary part.
  if (arg <= -std::numbers::pi) arg = std::numbers::pi;
  return std::polar(std::pow(std::abs(z), s), s * arg);
}

StretchLabel::StretchLabel(Complex zeta, double sigma)
    : zeta_(zeta), sigma_(sigma), w_(complex_power(zeta, sigma)) {}

StretchLabel StretchLabel::on_covering(double modulus, double phase, double sigma) {
  require_unit_exponent(sigma, "StretchLabel: sigma");
  if (!(modulus >= 0.0) || !std::isfinite(phase)) {
    throw DomainError("StretchLabel::on_covering: modulus must be >= 0 and phase finite");
  }
  const Complex zeta = std::polar(modulus, phase);
  if (sigma == 1.0) return StretchLabel(zeta, sigma, zeta);
  return StretchLabel(zeta, sigma, std::polar(std::pow(modulus, sigma), sigma * phase));
}

LadderMatrices ladder_matrices(const TruncationConfig& cfg) {
  const int dim = cfg.dim();
  LadderMatrices out{FockOperator::Zero(dim, dim), FockOperator::Zero(dim, dim),
                     FockOperator::Zero(dim, dim)};
  for (int n = 1; n < dim; ++n) {
    const double root = std::sqrt(static_cast<double>(n));
    out.a(n - 1, n) = root;
    out.adag(n, n - 1) = root;
  }
  for (int n = 0; n < dim; ++n) out.num(n, n) = static_cast<double>(n);
  return out;
}

double log_factorial(int n) {
  if (n < 0) throw DomainError("log_factorial: negative argument");
  if (n < kLogFactorialTableSize) return log_factorial_table()[n];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double laguerre_assoc(int n, int k, double x) {
  if (n < 0) throw DomainError("laguerre_assoc: n must be >= 0");
  if (k < -n) {
    throw DomainError("laguerre_assoc: upper index k must satisfy k >= -n");
  }
  if (k >= 0) return laguerre_nonneg(n, k, x);
  const int j = -k;
  const double ratio = std::exp(log_factorial(n - j) - log_factorial(n));
  return std::pow(-x, j) * ratio * laguerre_nonneg(n - j, j, x);
}

Complex coherent_amplitude(Complex w, int n) {
  if (n < 0) throw DomainError("coherent_amplitude: n must be >= 0");
  const double modulus = std::abs(w);
  if (modulus == 0.0) return n == 0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
  const double log_mag = -0.5 * modulus * modulus + n * std::log(modulus) - 0.5 * log_factorial(n);
  return std::polar(std::exp(log_mag), n * std::arg(w));
}

int default_buffer(double amplitude) {
  return static_cast<int>(std::ceil(4.0 * std::abs(amplitude))) + 8;
}

int edge_block(const FockOperator& op, double edge_tol, int edge_rows) {
  const int dim = static_cast<int>(op.rows());
  if (edge_rows >= dim) return 0;
  int block = 0;
  for (int n = 0; n < op.cols(); ++n) {
    if (op.col(n).tail(edge_rows).norm() >= edge_tol) break;
    ++block;
  }
  return block;
}

int identity_block(const FockOperator& op, int buffer) {
  const int dim = static_cast<int>(op.rows());
  return std::max(0, std::min(dim - buffer, edge_block(op)));
}

double block_residual(const FockOperator& m, int block) {
  if (block <= 0) {
    throw TruncationError("block_residual: empty identity block, enlarge the basis", 0);
  }
  return m.topLeftCorner(block, block).norm();
}

double edge_mass(const FockVector& v, int edge_rows) {
  const auto rows = std::min<Eigen::Index>(edge_rows, v.size());
  return v.tail(rows).squaredNorm();
}

FockOperator unitary_exp(const FockOperator& generator) {
  const FockOperator hermitian = Complex(0.0, 1.0) * generator;
  const Eigen::SelfAdjointEigenSolver<FockOperator> solver(hermitian);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("unitary_exp: eigendecomposition failed");
  }
  const Eigen::VectorXcd phases =
      (Complex(0.0, -1.0) * solver.eigenvalues().cast<Complex>()).array().exp().matrix();
  const FockOperator& vecs = solver.eigenvectors();
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

}  // namespace sfock
