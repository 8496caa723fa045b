#pragma once

#include <optional>
#include <span>

#include "sfock/fock_core.hpp"

namespace sfock {

/// Photon-number moments and the Mandel parameter. `mandel_q` is empty when
/// the mean vanishes and Q = (<n^2> - <n>^2)/<n> - 1 is 0/0.
struct PhotonStats {
  double mean = 0.0;
  double second_moment = 0.0;
  std::optional<double> mandel_q;
};

/// Dimensionless omega * t of the free evolution exp(-i omega t a^+ a).
struct EvolutionPhase {
  double omega_t = 0.0;
};

/// Stretched coherent state amplitudes exp(-|w|^2/2) w^n / sqrt(n!).
/// Throws TruncationError (carrying the required dim) when the Poisson tail
/// above cfg.dim() may exceed cfg.tail_tol().
[[nodiscard]] FockVector make_state(const StretchLabel& label, const TruncationConfig& cfg);

/// || a|psi> - w|psi> || over the rows n < dim - default_buffer(|w|).
[[nodiscard]] double annihilation_residual(const StretchLabel& label, const TruncationConfig& cfg);

/// Poisson probability |w|^{2n} e^{-|w|^2} / n!.
[[nodiscard]] double photon_pmf(const StretchLabel& label, int n);

/// Closed-form moments: mean |w|^2, second moment |w|^2 + |w|^4.
[[nodiscard]] PhotonStats photon_stats(const StretchLabel& label);

/// Moments of a (truncated) photon distribution, Q from the same formula.
[[nodiscard]] PhotonStats photon_stats_from_pmf(std::span<const double> pmf);

[[nodiscard]] std::optional<double> mandel_q(double mean, double second_moment);

/// |amps_n|^2 for every component.
[[nodiscard]] Eigen::VectorXd pmf_of(const FockVector& state);

/// amps_n -> exp(-i n omega t) amps_n.
[[nodiscard]] FockVector evolve(const FockVector& state, EvolutionPhase phase);

/// Label map zeta -> exp(-i omega t / sigma) zeta under the principal branch.
/// Reproduces `evolve` only while label_map_exact() holds.
[[nodiscard]] StretchLabel evolved_label(const StretchLabel& label, EvolutionPhase phase);

/// Covering-space label with amplitude exp(-i omega t) w; always matches `evolve`.
[[nodiscard]] StretchLabel evolved_covering_label(const StretchLabel& label, EvolutionPhase phase);

/// True when evolved_label(label, phase).w() equals exp(-i omega t) w, i.e.
/// the rotated label stays on the principal sheet (or sigma times the winding is an integer).
[[nodiscard]] bool label_map_exact(const StretchLabel& label, EvolutionPhase phase, double tol = 1e-12);

/// Closed-form overlap exp(-|w_eta|^2/2 - |w_zeta|^2/2 + conj(w_eta) w_zeta).
[[nodiscard]] Complex overlap(const StretchLabel& eta, const StretchLabel& zeta);

}  // namespace sfock
