#include "sfock/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sfock {

namespace {

void require_admissible(const StretchLabel& label, const TruncationConfig& cfg) {
  const double mean = label.intensity();
  if (poisson_tail_bound(mean, cfg.dim()) > cfg.tail_tol()) {
    const int needed = required_dim(mean, cfg.tail_tol());
    throw TruncationError("dim " + std::to_string(cfg.dim()) + " leaves a Poisson tail above " +
                              detail::short_number(cfg.tail_tol()) + "; need dim >= " + std::to_string(needed),
                          needed);
  }
}

}  // namespace

FockVector make_state(const StretchLabel& label, const TruncationConfig& cfg) {
  require_admissible(label, cfg);
  FockVector out(cfg.dim());
  for (int n = 0; n < cfg.dim(); ++n) out(n) = coherent_amplitude(label.w(), n);
  return out;
}

double annihilation_residual(const StretchLabel& label, const TruncationConfig& cfg) {
  const FockVector psi = make_state(label, cfg);
  const int dim = cfg.dim();
  const int block = std::max(1, dim - default_buffer(std::abs(label.w())));
  // (a psi)_n = sqrt(n+1) psi_{n+1}, applied directly instead of through a dense matrix.
  double sum = 0.0;
  for (int n = 0; n < block; ++n) {
    const Complex lowered = n + 1 < dim ? std::sqrt(n + 1.0) * psi(n + 1) : Complex(0.0, 0.0);
    sum += std::norm(lowered - label.w() * psi(n));
  }
  return std::sqrt(sum);
}

double photon_pmf(const StretchLabel& label, int n) {
  if (n < 0) throw DomainError("photon_pmf: n must be >= 0");
  const double mean = label.intensity();
  if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(-mean + n * std::log(mean) - log_factorial(n));
}

std::optional<double> mandel_q(double mean, double second_moment) {
  if (mean == 0.0) return std::nullopt;
  return (second_moment - mean * mean) / mean - 1.0;
}

PhotonStats photon_stats(const StretchLabel& label) {
  const double mean = label.intensity();
  const double second = mean + mean * mean;
  return {mean, second, mandel_q(mean, second)};
}

PhotonStats photon_stats_from_pmf(std::span<const double> pmf) {
  double mean = 0.0;
  double second = 0.0;
  for (std::size_t n = 0; n < pmf.size(); ++n) {
    const double nd = static_cast<double>(n);
    mean += nd * pmf[n];
    second += nd * nd * pmf[n];
  }
  return {mean, second, mandel_q(mean, second)};
}

Eigen::VectorXd pmf_of(const FockVector& state) { return state.cwiseAbs2(); }

FockVector evolve(const FockVector& state, EvolutionPhase phase) {
  FockVector out(state.size());
  for (Eigen::Index n = 0; n < state.size(); ++n) {
    out(n) = std::polar(1.0, -static_cast<double>(n) * phase.omega_t) * state(n);
  }
  return out;
}

StretchLabel evolved_label(const StretchLabel& label, EvolutionPhase phase) {
  return {std::polar(1.0, -phase.omega_t / label.sigma()) * label.zeta(), label.sigma()};
}

StretchLabel evolved_covering_label(const StretchLabel& label, EvolutionPhase phase) {
  const double sigma = label.sigma();
  const double modulus = std::abs(label.zeta());
  // Phase of the covering point whose amplitude is exp(-i omega t) w.
  const double covering_phase = std::arg(label.w()) / sigma - phase.omega_t / sigma;
  return StretchLabel::on_covering(modulus, covering_phase, sigma);
}

bool label_map_exact(const StretchLabel& label, EvolutionPhase phase, double tol) {
  const Complex target = std::polar(1.0, -phase.omega_t) * label.w();
  const Complex mapped = evolved_label(label, phase).w();
  return std::abs(mapped - target) <= tol * std::max(1.0, std::abs(target));
}

Complex overlap(const StretchLabel& eta, const StretchLabel& zeta) {
  if (eta.sigma() != zeta.sigma()) {
    throw DomainError("overlap: labels must share the same sigma");
  }
  return std::exp(Complex(-0.5 * eta.intensity() - 0.5 * zeta.intensity(), 0.0) +
                  std::conj(eta.w()) * zeta.w());
}

}  // namespace sfock
