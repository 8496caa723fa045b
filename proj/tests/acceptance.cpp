// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "oracles.hpp"
#include "sfock/composite.hpp"
#include "sfock/quadrature.hpp"

using namespace sfock;
using std::numbers::pi;

namespace {

struct Tally {
  double worst = 0.0;
  bool ok = true;
  std::string note;

  // Records value and fails unless value < limit.
  void below(double value, double limit) {
    if (std::isnan(value)) value = INFINITY;
    worst = std::max(worst, value);
    if (!(value < limit)) ok = false;
  }
  void require(bool condition, const std::string& why) {
    if (!condition) {
      ok = false;
      note += (note.empty() ? "" : "; ") + why;
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double time_limit_s, const std::function<void(Tally&)>& body) {
  Tally t;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(t);
  } catch (const std::exception& e) {
    t.ok = false;
    t.note = std::string("exception: ") + e.what();
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit_s > 0.0 && seconds >= time_limit_s) {
    t.ok = false;
    t.note += (t.note.empty() ? "" : "; ") + std::string("exceeded time limit");
  }
  if (!t.ok) ++failures;
  std::printf("[%s] %2d %-40s worst=%.3e time=%.2fs%s%s\n", t.ok ? "PASS" : "FAIL", id, title, t.worst, seconds,
              t.note.empty() ? "" : "  ", t.note.c_str());
  std::fflush(stdout);
}

const double kSigmas[] = {0.25, 0.5, 0.75, 1.0};
const double kModuli[] = {0.5, 2.0, 4.0};

}  // namespace

int main() {
  criterion(1, "normalization", 1.0, [](Tally& t) {
    for (double s : kSigmas) {
      for (double r : kModuli) {
        for (double phase : {0.0, 2.3}) {
          const StretchLabel label(std::polar(r, phase), s);
          const double norm2 = make_state(label, TruncationConfig::for_mean(label.intensity())).squaredNorm();
          t.below(std::max(0.0, (1.0 - 1e-12) - norm2), 1e-300);
          t.require(norm2 <= 1.0 + 4e-16, "norm above 1");
        }
      }
    }
  });

  criterion(2, "eigenrelation", 0.0, [](Tally& t) {
    for (double s : kSigmas) {
      for (double r : kModuli) {
        for (double phase : {0.0, 2.3}) {
          t.below(annihilation_residual(StretchLabel(std::polar(r, phase), s), TruncationConfig(128)), 1e-10);
        }
      }
    }
  });

  criterion(3, "Poisson statistics", 0.0, [](Tally& t) {
    for (double s : kSigmas) {
      for (double r : kModuli) {
        const StretchLabel label(std::polar(r, -1.1), s);
        const auto closed = photon_stats(label);
        t.require(closed.mandel_q.has_value(), "closed-form Q missing");
        t.below(std::abs(closed.mandel_q.value_or(INFINITY)), 1e-10);
        const auto pmf = pmf_of(make_state(label, TruncationConfig(128)));
        const auto truncated = photon_stats_from_pmf({pmf.data(), static_cast<std::size_t>(pmf.size())});
        t.below(std::abs(truncated.mandel_q.value_or(INFINITY)), 1e-10);
      }
    }
  });

  criterion(4, "matrix elements vs exponential", 10.0, [](Tally& t) {
    const std::pair<double, Complex> pairs[] = {
        {0.25, {2.0, 0.0}}, {0.25, std::polar(3.0, 2.9)},   {0.5, std::polar(1.5, pi / 5)},
        {0.5, {-0.3, 1.7}}, {0.7, std::polar(1.5, pi / 5)}, {0.75, std::polar(2.5, -2.0)},
        {1.0, {1.2, 0.0}},  {1.0, std::polar(2.0, 3.0)},    {1.0, std::polar(0.8, -0.5)}};
    const TruncationConfig cfg(96);
    for (const auto& [s, z] : pairs) {
      const StretchLabel label(z, s);
      const FockOperator d = displacement(label, cfg);
      const oracle::Matrix pade = oracle::displacement(oracle::stretched(z, s), 96);
      for (int m = 0; m <= 12; ++m) {
        for (int n = 0; n <= 12; ++n) {
          const Complex closed = matrix_element(m, n, label);
          t.below(std::abs(closed - d(m, n)), 1e-8);
          t.below(std::abs(closed - pade(m, n)), 1e-8);
        }
      }
    }
  });

  criterion(5, "multiplication law", 0.0, [](Tally& t) {
    const TruncationConfig cfg(64);
    const std::pair<Complex, Complex> pairs[] = {{{1.0, 0.0}, {0.5, 0.0}},
                                                 {{0.0, 1.0}, {1.0, 0.0}},
                                                 {std::polar(1.3, 2.0), std::polar(0.7, -1.0)},
                                                 {std::polar(2.0, -2.8), std::polar(1.1, 0.4)},
                                                 {{-0.6, 0.9}, {0.8, 0.8}}};
    for (double s : {0.5, 1.0}) {
      for (const auto& [a, b] : pairs) {
        const StretchLabel z1(a, s);
        const StretchLabel z2(b, s);
        const auto law = multiplication_law(z1, z2);
        t.require(std::abs(std::abs(law.phase_factor) - 1.0) <= 1e-14, "phase modulus");
        const FockOperator lhs = displacement(z1, cfg) * displacement(z2, cfg);
        const oracle::Matrix rhs = oracle::displacement(law.combined_amplitude, 64);
        const int block = std::min(identity_block(lhs, displacement_buffer(z1) + displacement_buffer(z2)),
                                   identity_block(rhs, default_buffer(std::abs(law.combined_amplitude))));
        t.require(block > 0, "empty block");
        t.below(block_residual(lhs - law.phase_factor * rhs, block), 1e-8);
      }
    }
  });

  criterion(6, "unitarity and Bogoliubov", 0.0, [](Tally& t) {
    const TruncationConfig cfg(80);
    const auto l = ladder_matrices(cfg);
    const FockOperator id = FockOperator::Identity(80, 80);
    for (double s : kSigmas) {
      for (Complex z : {Complex(1.0, 0.0), std::polar(1.8, 2.2)}) {
        const StretchLabel label(z, s);
        const FockOperator d = displacement(label, cfg);
        t.below(block_residual(d.adjoint() * d - id, identity_block(d, displacement_buffer(label))), 1e-9);
      }
    }
    for (double u : {0.5, 0.8, 1.0}) {
      for (Complex xi : {std::polar(0.6, pi / 4), std::polar(0.35, -2.0), Complex(1.0, 0.0)}) {
        const SqueezeLabel label(xi, u);
        const auto [cu, v] = bogoliubov(label);
        t.require(std::abs(cu * cu - std::norm(v) - 1.0) <= 1e-12, "u^2 - |v|^2");
        const TruncationConfig big(label.squeeze_modulus() > 0.9 ? 160 : 80);
        const auto lb = ladder_matrices(big);
        const FockOperator s = squeezing(label, big);
        const int block = identity_block(s, squeezing_buffer(label));
        t.require(block > 0, "empty squeeze block");
        const FockOperator idb = FockOperator::Identity(big.dim(), big.dim());
        t.below(block_residual(s.adjoint() * s - idb, block), 1e-9);
        t.below(block_residual(s.adjoint() * lb.a * s - (cu * lb.a - v * lb.adag), block), 1e-8);
        t.below(block_residual(s.adjoint() * lb.adag * s - (cu * lb.adag - std::conj(v) * lb.a), block), 1e-8);
      }
    }
    (void)l;
  });

  criterion(7, "completeness and reconstruction", 0.0, [](Tally& t) {
    for (double s : kSigmas) {
      QuadratureSpec spec;
      spec.sigma = s;
      spec.radial_nodes = 21;
      for (int n = 0; n <= 20; ++n) t.below(std::abs(radial_completeness(n, spec).value - 1.0), 1e-12);
    }
    std::mt19937_64 rng(20240601);
    for (int k = 0; k < 20; ++k) {
      QuadratureSpec spec;
      spec.sigma = kSigmas[k % 4];
      spec.radial_nodes = 32;
      const oracle::Vector psi = oracle::random_unit_vector(32, rng);
      t.below((reconstruct_vector(psi, spec) - psi).norm(), 1e-9);
    }
  });

  criterion(8, "reduction to standard theory", 0.0, [](Tally& t) {
    const int dim = 96;
    const TruncationConfig cfg(dim);
    const auto a = oracle::annihilation(dim);
    const auto ad = oracle::creation(dim);
    for (Complex z : {Complex(0.7, 0.0), Complex(-1.2, 0.5), std::polar(2.0, -2.5)}) {
      const StretchLabel label(z, 1.0);
      const oracle::Vector coh = oracle::coherent(z, dim);
      t.below((make_state(label, cfg) - coh).norm(), 1e-10);
      t.below(oracle::max_abs(displacement(label, cfg) - oracle::displacement(z, dim)), 1e-10);
      t.below(std::abs(photon_stats(label).mean - std::norm(z)), 1e-10);
      t.below(std::abs(photon_stats(label).second_moment - std::norm(z) * (1.0 + std::norm(z))), 1e-10);
      for (int n = 0; n < 30; ++n) t.below(std::abs(photon_pmf(label, n) - oracle::poisson_pmf(std::norm(z), n)), 1e-10);
      const StretchLabel other({0.3, -0.4}, 1.0);
      const Complex standard_overlap =
          std::exp(-0.5 * std::norm(other.zeta()) - 0.5 * std::norm(z) + std::conj(other.zeta()) * z);
      t.below(std::abs(overlap(other, label) - standard_overlap), 1e-10);
      for (Complex xi : {std::polar(0.4, 1.0), Complex(0.25, 0.0)}) {
        const SqueezeLabel sq(xi, 1.0);
        const oracle::Matrix s_ref = oracle::squeezing(xi, dim);
        t.below(oracle::max_abs(squeezing(sq, cfg) - s_ref), 1e-10);
        const oracle::Vector state_ref = oracle::displacement(z, dim) * oracle::squeezed_vacuum(xi, dim);
        t.below((squeezed_coherent({label, sq, 0}, cfg) - state_ref).norm(), 1e-10);
        const double en_ref = std::norm(z) + std::pow(std::sinh(std::abs(xi)), 2);
        t.below(std::abs(squeezed_expectations({label, sq, 0}).en - en_ref), 1e-10);
        t.below(std::abs(squeezed_expectations({label, sq, 0}).en - state_ref.dot(ad * a * state_ref).real()), 1e-10);
      }
    }
    QuadratureSpec spec;
    spec.radial_nodes = 24;
    const oracle::Vector coh = oracle::coherent({0.6, 0.2}, 24);
    t.below((reconstruct_vector(coh, spec) - coh).norm(), 1e-10);
  });

  criterion(9, "composite expectations", 0.0, [](Tally& t) {
    const TruncationConfig cfg(128);
    const auto l = ladder_matrices(cfg);
    double max_gap = 0.0;
    int points = 0;
    for (double modulus : {0.5, 1.0, 2.0}) {
      for (double rho : {0.2, 0.4, 0.6}) {
        for (double upsilon : {0.5, 0.8, 1.0}) {
          const CompositeLabel label{StretchLabel(std::polar(modulus, 0.9), 0.5),
                                     SqueezeLabel(std::polar(rho, -1.2), upsilon), 0};
          const FockVector psi = squeezed_coherent(label, cfg);
          const auto closed = squeezed_expectations(label);
          t.below(std::abs(psi.dot(l.num * psi).real() - closed.en), 1e-7);
          t.below(std::abs(psi.dot(l.a * psi) - closed.ea), 1e-7);
          max_gap = std::max(max_gap, std::abs(closed.ea2_published - psi.dot(l.a * l.a * psi)));
          ++points;
        }
      }
    }
    t.require(points == 27, "grid size");
    char buf[96];
    std::snprintf(buf, sizeof buf, "published <a^2> off by up to %.3e (reported only)", max_gap);
    t.note = buf;
  });

  criterion(10, "displaced-number dual construction", 0.0, [](Tally& t) {
    const TruncationConfig cfg(96);
    const auto l = ladder_matrices(cfg);
    for (double s : {0.35, 0.6, 1.0}) {
      for (Complex z : {Complex(1.2, 0.0), std::polar(1.6, 2.5)}) {
        const StretchLabel label(z, s);
        const FockOperator shifted = l.adag - label.w_conj() * FockOperator::Identity(96, 96);
        FockVector power = make_state(label, cfg);
        for (int n = 0; n <= 5; ++n) {
          if (n > 0) power = shifted * power;
          const FockVector ref = power / std::sqrt(std::tgamma(n + 1.0));
          t.below((displaced_number(label, n, cfg) - ref).head(64).norm(), 1e-8);
        }
      }
    }
    for (double s : {0.5, 0.8, 1.0}) {
      for (const auto& [a, z] : {std::pair{Complex(1.0, 0.0), Complex(0.0, 0.8)},
                                 std::pair{std::polar(1.5, -2.0), std::polar(0.7, 1.2)}}) {
        const StretchLabel alpha(a, s);
        const StretchLabel zeta(z, s);
        t.below((modified_coherent(alpha, zeta, cfg) - modified_coherent_expansion(alpha, zeta, cfg)).norm(), 1e-7);
      }
    }
  });

  criterion(11, "verify command", 60.0, [](Tally& t) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run({"verify", "--tol", "1e-7", "--format", "csv"}, out, err);
    t.require(code == 0, "exit code " + std::to_string(code) + " " + err.str());
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
