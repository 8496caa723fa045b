#include "sfock/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "sfock/composite.hpp"
#include "sfock/quadrature.hpp"

namespace sfock {

namespace {

using std::numbers::pi;

struct Grid {
  std::vector<double> sigmas;
  std::vector<double> upsilons;
  std::vector<Complex> zetas;
  std::vector<Complex> xis;
};

Grid make_grid(const VerifyOptions& options) {
  Grid g;
  g.sigmas = options.sigma ? std::vector<double>{*options.sigma} : std::vector<double>{0.25, 0.5, 0.75, 1.0};
  g.upsilons = options.upsilon ? std::vector<double>{*options.upsilon} : std::vector<double>{0.5, 0.8, 1.0};
  g.zetas = {std::polar(0.8, pi / 5.0), std::polar(1.6, -2.0 * pi / 3.0), std::polar(2.5, 2.0)};
  g.xis = {std::polar(0.3, pi / 4.0), std::polar(0.5, -2.0)};
  return g;
}

// Worst residual over a check's cases; NaN counts as a failure.
class Worst {
 public:
  void add(double r) {
    ++cases_;
    if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
    value_ = std::max(value_, r);
  }
  [[nodiscard]] double value() const { return value_; }
  [[nodiscard]] int cases() const { return cases_; }

 private:
  double value_ = 0.0;
  int cases_ = 0;
};

FockOperator scalar(Complex c, int dim) { return c * FockOperator::Identity(dim, dim); }

}  // namespace

std::vector<CheckResult> run_identity_suite(const VerifyOptions& options) {
  const Grid grid = make_grid(options);
  const int dim = options.dim;
  const TruncationConfig cfg(dim);
  const auto ladders = ladder_matrices(cfg);
  std::vector<CheckResult> results;

  auto run = [&](std::string name, std::string identity, const std::function<void(Worst&)>& body) {
    Worst worst;
    try {
      body(worst);
    } catch (const std::exception&) {
      worst.add(std::numeric_limits<double>::infinity());
    }
    const bool passed = worst.cases() > 0 && worst.value() < options.tol;
    results.push_back({std::move(name), std::move(identity), worst.value(), worst.cases(), passed});
  };

  auto for_labels = [&](const std::function<void(const StretchLabel&)>& body) {
    for (double sigma : grid.sigmas) {
      for (Complex zeta : grid.zetas) body(StretchLabel(zeta, sigma));
    }
  };
  auto for_squeezes = [&](const std::function<void(const SqueezeLabel&)>& body) {
    for (double upsilon : grid.upsilons) {
      for (Complex xi : grid.xis) body(SqueezeLabel(xi, upsilon));
    }
  };

  run("normalization", "sum_n |<n|z>|^2 = 1", [&](Worst& w) {
    for_labels([&](const StretchLabel& label) {
      const auto state = make_state(label, TruncationConfig::for_mean(label.intensity()));
      w.add(std::abs(1.0 - state.squaredNorm()));
    });
  });

  run("eigenrelation", "a |z> = z^s |z>", [&](Worst& w) {
    for_labels([&](const StretchLabel& label) { w.add(annihilation_residual(label, TruncationConfig(128))); });
  });

  run("poisson-statistics", "Q = 0", [&](Worst& w) {
    for_labels([&](const StretchLabel& label) {
      w.add(std::abs(photon_stats(label).mandel_q.value()));
      const Eigen::VectorXd pmf = pmf_of(make_state(label, TruncationConfig(128)));
      w.add(std::abs(photon_stats_from_pmf({pmf.data(), static_cast<std::size_t>(pmf.size())}).mandel_q.value()));
    });
  });

  run("overlap", "<eta|z> = exp(-|eta^s|^2/2 - |z^s|^2/2 + conj(eta^s) z^s)", [&](Worst& w) {
    for (double sigma : grid.sigmas) {
      for (Complex a : grid.zetas) {
        for (Complex b : grid.zetas) {
          const StretchLabel eta(a, sigma);
          const StretchLabel zeta(b, sigma);
          const Complex closed = overlap(eta, zeta);
          const Complex direct = make_state(eta, cfg).dot(make_state(zeta, cfg));
          w.add(std::abs(closed - direct));
          w.add(std::abs(std::norm(closed) - std::exp(-std::norm(eta.w() - zeta.w()))));
        }
      }
    }
  });

  run("temporal-stability", "exp(-i wt n) |z> = |e^{-i wt/s} z>", [&](Worst& w) {
    for_labels([&](const StretchLabel& label) {
      for (double omega_t : {0.7, 2.0 * pi / 3.0, 5.0}) {
        const EvolutionPhase phase{omega_t};
        const FockVector evolved = evolve(make_state(label, cfg), phase);
        w.add((evolved - make_state(evolved_covering_label(label, phase), cfg)).norm());
      }
    });
  });

  run("unitarity-displacement", "D^+ D = I", [&](Worst& w) {
    for_labels([&](const StretchLabel& label) {
      const FockOperator d = displacement(label, cfg);
      const FockOperator r = d.adjoint() * d - FockOperator::Identity(dim, dim);
      w.add(block_residual(r, identity_block(d, displacement_buffer(label))));
    });
  });

  run("commutator", "[a, D] = z^s D", [&](Worst& w) {
    for_labels([&](const StretchLabel& label) {
      const FockOperator d = displacement(label, cfg);
      const FockOperator r = ladders.a * d - d * ladders.a - label.w() * d;
      w.add(block_residual(r, identity_block(d, displacement_buffer(label))));
    });
  });

  run("conjugation", "D^+ a D = a + z^s, D a D^+ = a - z^s", [&](Worst& w) {
    for_labels([&](const StretchLabel& label) {
      const FockOperator d = displacement(label, cfg);
      const int block = identity_block(d, displacement_buffer(label));
      w.add(block_residual(d.adjoint() * ladders.a * d - ladders.a - scalar(label.w(), dim), block));
      w.add(block_residual(d * ladders.a * d.adjoint() - ladders.a + scalar(label.w(), dim), block));
    });
  });

  run("normal-ordering", "D = e^{-|z|^{2s}/2} e^{z^s a^+} e^{-z^s* a}", [&](Worst& w) {
    for_labels([&](const StretchLabel& label) {
      const FockOperator d = displacement(label, cfg);
      const auto ordered = displacement_normal_ordered(label, cfg);
      if (!ordered.converged) w.add(std::numeric_limits<double>::infinity());
      const int block = std::min(identity_block(d, displacement_buffer(label)), ordered.stable_block);
      w.add(block_residual(ordered.op - d, block));
    });
  });

  run("matrix-element", "<m|D|n> = sqrt(n!/m!) z^{s(m-n)} e^{-x/2} L_n^{(m-n)}(x)", [&](Worst& w) {
    for_labels([&](const StretchLabel& label) {
      const FockOperator d = displacement(label, cfg);
      for (int m = 0; m <= 12; ++m) {
        for (int n = 0; n <= 12; ++n) w.add(std::abs(matrix_element(m, n, label) - d(m, n)));
      }
    });
  });

  run("multiplication-law", "D_s(z) D_s(y) = D(z^s + y^s) e^{(z^s y^s* - z^s* y^s)/2}", [&](Worst& w) {
    for (double sigma : grid.sigmas) {
      for (std::size_t i = 0; i < grid.zetas.size(); ++i) {
        const StretchLabel z1(grid.zetas[i], sigma);
        const StretchLabel z2(grid.zetas[(i + 1) % grid.zetas.size()], sigma);
        const auto law = multiplication_law(z1, z2);
        const FockOperator lhs = displacement(z1, cfg) * displacement(z2, cfg);
        const FockOperator rhs = standard_displacement(law.combined_amplitude, cfg);
        const int block = std::min(identity_block(lhs, displacement_buffer(z1) + displacement_buffer(z2)),
                                   identity_block(rhs, default_buffer(std::abs(law.combined_amplitude))));
        w.add(block_residual(lhs - law.phase_factor * rhs, block));
        w.add(std::abs(std::abs(law.phase_factor) - 1.0));
      }
    }
  });

  run("unitarity-squeezing", "S^+ S = I", [&](Worst& w) {
    for_squeezes([&](const SqueezeLabel& label) {
      const FockOperator s = squeezing(label, cfg);
      const FockOperator r = s.adjoint() * s - FockOperator::Identity(dim, dim);
      w.add(block_residual(r, identity_block(s, squeezing_buffer(label))));
    });
  });

  run("bogoliubov", "S^+ a S = u a - v a^+, S^+ a^+ S = u a^+ - v* a, u^2 - |v|^2 = 1", [&](Worst& w) {
    for_squeezes([&](const SqueezeLabel& label) {
      const FockOperator s = squeezing(label, cfg);
      const auto [u, v] = bogoliubov(label);
      const int block = identity_block(s, squeezing_buffer(label));
      w.add(block_residual(s.adjoint() * ladders.a * s - (u * ladders.a - v * ladders.adag), block));
      w.add(block_residual(s.adjoint() * ladders.adag * s - (u * ladders.adag - std::conj(v) * ladders.a), block));
      w.add(std::abs(u * u - std::norm(v) - 1.0));
    });
  });

  run("radial-completeness", "(1/n!) int r^{2ns+1} W_s(r^2) e^{-r^{2s}} dr = 1", [&](Worst& w) {
    for (double sigma : grid.sigmas) {
      QuadratureSpec spec;
      spec.sigma = sigma;
      spec.radial_nodes = 24;
      for (int n = 0; n <= 20; ++n) w.add(std::abs(radial_completeness(n, spec).value - 1.0));
    }
  });

  run("reproducing", "int d^2z |z> W_s <z|psi> = psi", [&](Worst& w) {
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal;
    constexpr int kDim = 24;
    for (double sigma : grid.sigmas) {
      QuadratureSpec spec;
      spec.sigma = sigma;
      spec.radial_nodes = kDim;
      for (int trial = 0; trial < 3; ++trial) {
        FockVector psi(kDim);
        FockVector phi(kDim);
        for (int n = 0; n < kDim; ++n) {
          psi(n) = {normal(rng), normal(rng)};
          phi(n) = {normal(rng), normal(rng)};
        }
        psi.normalize();
        phi.normalize();
        w.add((reconstruct_vector(psi, spec) - psi).norm());
        w.add(std::abs(inner_product(phi, psi, spec) - phi.dot(psi)));
      }
    }
  });

  run("reduction-lattice", "D_s S_u |n> specialises to D_s|n>, S_u|n>, D S, D_s S, D S_u", [&](Worst& w) {
    const TruncationConfig big(128);
    for (double sigma : grid.sigmas) {
      for (double upsilon : grid.upsilons) {
        const StretchLabel zeta(grid.zetas[0], sigma);
        const SqueezeLabel xi(grid.xis[0], upsilon);
        const SqueezeLabel no_squeeze({0.0, 0.0}, upsilon);
        const StretchLabel vacuum({0.0, 0.0}, sigma);
        for (int n = 0; n <= 3; ++n) {
          w.add((squeezed_displaced_number({zeta, no_squeeze, n}, big) - displaced_number(zeta, n, big)).norm());
          w.add((squeezed_displaced_number({vacuum, xi, n}, big) - squeezing(xi, big).col(n)).norm());
        }
        // sigma = 1 and upsilon = 1 members through the ordinary operators.
        const StretchLabel plain(grid.zetas[0], 1.0);
        const SqueezeLabel plain_xi(grid.xis[0], 1.0);
        const auto ladders_big = ladder_matrices(big);
        const FockOperator s_plain = unitary_exp(0.5 * std::conj(grid.xis[0]) * ladders_big.a * ladders_big.a -
                                                 0.5 * grid.xis[0] * ladders_big.adag * ladders_big.adag);
        const FockVector vac = FockVector::Unit(128, 0);
        w.add((squeezed_coherent({plain, plain_xi, 0}, big) -
               standard_displacement(grid.zetas[0], big) * s_plain * vac).norm());
        w.add((squeezed_coherent({plain, xi, 0}, big) -
               standard_displacement(grid.zetas[0], big) * squeezing(xi, big) * vac).norm());
        w.add((squeezed_coherent({zeta, plain_xi, 0}, big) - displacement(zeta, big) * s_plain * vac).norm());
      }
    }
  });

  run("displaced-number", "D_s|n> = (a^+ - z^s*)^n |z> / sqrt(n!)", [&](Worst& w) {
    for_labels([&](const StretchLabel& label) {
      const FockVector coherent = make_state(label, cfg);
      const FockOperator shifted = ladders.adag - scalar(label.w_conj(), dim);
      FockVector power = coherent;
      const int block = dim - displacement_buffer(label) - 8;
      for (int n = 0; n <= 5; ++n) {
        if (n > 0) power = shifted * power;
        const FockVector route = power * std::exp(-0.5 * log_factorial(n));
        w.add((displaced_number(label, n, cfg) - route).head(block).norm());
      }
    });
  });

  run("modified-coherent", "D_s(a, z)|z> = e^{a^s* z^s - a^s z^s*} D_s(a)|z>", [&](Worst& w) {
    for (double sigma : grid.sigmas) {
      const StretchLabel zeta({0.0, 0.8}, sigma);
      for (Complex a : grid.zetas) {
        const StretchLabel alpha(a, sigma);
        const FockVector op_route = modified_coherent(alpha, zeta, cfg);
        w.add((op_route - modified_coherent_expansion(alpha, zeta, cfg)).norm());
        const FockVector factored =
            modified_displacement_prefactor(alpha, zeta) * displacement(alpha, cfg) * make_state(zeta, cfg);
        w.add((op_route - factored).norm());
      }
    }
  });

  run("squeezed-expectations", "<a> = z^s, <a^+ a> = |z|^{2s} + sinh^2 r^u", [&](Worst& w) {
    const TruncationConfig big(128);
    const auto lad = ladder_matrices(big);
    for (double sigma : grid.sigmas) {
      for (double upsilon : grid.upsilons) {
        for (Complex z : grid.zetas) {
          const CompositeLabel label{StretchLabel(z, sigma), SqueezeLabel(grid.xis[0], upsilon), 0};
          const FockVector psi = squeezed_coherent(label, big);
          const auto closed = squeezed_expectations(label);
          w.add(std::abs(psi.dot(lad.a * psi) - closed.ea));
          w.add(std::abs(psi.dot(lad.num * psi).real() - closed.en));
          w.add(std::abs(psi.dot(lad.a * lad.a * psi) - closed.ea2_operator));
        }
      }
    }
  });

  return results;
}

}  // namespace sfock
