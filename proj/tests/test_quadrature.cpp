#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sfock/operators.hpp"
#include "sfock/quadrature.hpp"
#include "sfock/states.hpp"

using namespace sfock;
using std::numbers::pi;

namespace {

QuadratureSpec covering(double sigma, int nodes) {
  QuadratureSpec spec;
  spec.sigma = sigma;
  spec.radial_nodes = nodes;
  return spec;
}

}  // namespace

TEST_CASE("quadrature spec validation") {
  CHECK_THROWS_AS(covering(0.0, 4).validate(), DomainError);
  CHECK_THROWS_AS(covering(0.5, 0).validate(), DomainError);
  CHECK_THROWS_AS(covering(0.5, kMaxRadialNodes + 1).validate(), DomainError);
  QuadratureSpec finite = covering(0.5, 4);
  finite.angular = FinitePhi{-1.0, 100};
  CHECK_THROWS_AS(finite.validate(), DomainError);
  finite.angular = FinitePhi{10.0, 100};
  CHECK_NOTHROW(finite.validate());
}

TEST_CASE("Gauss-Laguerre rule") {
  const auto two = gauss_laguerre(2);
  CHECK(two.nodes[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-15));
  CHECK(two.nodes[1] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-15));
  CHECK(two.weights[0] == doctest::Approx((2.0 + std::sqrt(2.0)) / 4.0).epsilon(1e-14));
  CHECK(two.weights[1] == doctest::Approx((2.0 - std::sqrt(2.0)) / 4.0).epsilon(1e-14));

  for (int order : {1, 5, 20, 64, 160}) {
    const auto rule = gauss_laguerre(order);
    double total = 0.0;
    for (double w : rule.weights) {
      CHECK(w >= 0.0);
      total += w;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
    for (int j = 0; j < order; ++j) {
      CHECK(std::abs(std::assoc_laguerre(static_cast<unsigned>(order), 0u, rule.nodes[j])) <
            1e-9 * std::exp(rule.nodes[j] / 2.0));
    }
  }
  // Exact for u^k with k <= 2 order - 1: moments k!.
  const auto rule = gauss_laguerre(12);
  for (int k = 0; k < 24; ++k) {
    double sum = 0.0;
    for (int j = 0; j < 12; ++j) sum += rule.weights[j] * std::pow(rule.nodes[j], k);
    CHECK(sum == doctest::Approx(std::tgamma(k + 1.0)).epsilon(1e-11));
  }
  CHECK_THROWS_AS((void)gauss_laguerre(0), DomainError);
}

TEST_CASE("weight function") {
  CHECK(weight(0.0, 1.0) == 2.0);
  CHECK(weight(7.3, 1.0) == 2.0);
  CHECK(weight(4.0, 0.5) == doctest::Approx(0.5));
  CHECK(weight(16.0, 0.25) == doctest::Approx(0.0625));
  CHECK_THROWS_AS((void)weight(0.0, 0.5), SingularityError);
  CHECK_THROWS_AS((void)weight(-1.0, 0.5), DomainError);
  for (double s : {0.1, 0.25, 0.5, 0.75, 1.0}) {
    for (double x : {1e-12, 1e-3, 0.5, 3.0, 1e6}) CHECK(weight(x, s) > 0.0);
  }
}

TEST_CASE("radial completeness") {
  for (double s : {0.25, 0.3, 0.5, 0.75, 1.0}) {
    CHECK(std::abs(radial_completeness(0, covering(s, 1)).value - 1.0) < 1e-14);
  }
  const auto seven = radial_completeness(7, covering(0.3, 16));
  CHECK(seven.exact);
  CHECK(std::abs(seven.value - 1.0) < 1e-12);
  CHECK_FALSE(radial_completeness(20, covering(0.5, 8)).exact);

  for (double s : {0.25, 0.5, 0.75, 1.0}) {
    for (int n = 0; n <= 20; ++n) CHECK(std::abs(radial_completeness(n, covering(s, 21)).value - 1.0) < 1e-12);
  }

  SUBCASE("raw-r trapezoid validates the substitution") {
    CHECK(std::abs(radial_completeness_trapezoid(0, 1.0, 12.0, 20000) - 1.0) < 1e-6);
    CHECK(std::abs(radial_completeness_trapezoid(3, 0.5, 400.0, 400000) - 1.0) < 1e-4);
    CHECK_THROWS_AS((void)radial_completeness_trapezoid(0, 0.25, 10.0, 100), DomainError);
  }
}

TEST_CASE("angular average") {
  QuadratureSpec analytic;
  analytic.sigma = 0.5;
  CHECK(angular_average(3, 3, 0.5, analytic) == Complex(1.0, 0.0));
  CHECK(angular_average(3, 5, 0.5, analytic) == Complex(0.0, 0.0));

  QuadratureSpec finite;
  finite.angular = FinitePhi{7 * pi, 256};
  CHECK(angular_average(4, 4, 1.0, finite) == Complex(1.0, 0.0));
  CHECK(std::abs(angular_average(1, 0, 1.0, finite)) < 1e-15);
  finite.angular = FinitePhi{1e4, 256};
  CHECK(std::abs(angular_average(2, 0, 0.5, finite)) < 1e-4);
  finite.angular = FinitePhi{10.0, 64};
  CHECK_THROWS_AS((void)angular_average(3, 0, 0.5, finite), DomainError);

  SUBCASE("closed form against Simpson integration") {
    for (double phi_max : {3.0, 17.0, 60.0}) {
      finite.angular = FinitePhi{phi_max, 1024};
      for (int d : {1, 2, 5}) {
        const Complex ref = oracle::simpson_angular(0.35 * d, phi_max, 20000);
        CHECK(std::abs(angular_average(d, 0, 0.35, finite) - ref) < 1e-9);
      }
    }
  }
  SUBCASE("doubling ladder converges as 1/Phi") {
    double previous = 1.0;
    for (double phi_max = 10.3; phi_max < 1e5; phi_max *= 2.0) {
      finite.angular = FinitePhi{phi_max, 256};
      const double value = std::abs(angular_average(1, 0, 0.7, finite));
      CHECK(value <= 1.0 / (0.7 * phi_max));
      CHECK(value * 0.7 * phi_max <= 1.0);
      previous = value;
    }
    CHECK(previous < 1e-4);
  }
}

TEST_CASE("coherent kernel") {
  const CoherentKernel kernel(covering(0.5, 16), 16);
  CHECK(kernel.size() == 16u * 16u);
  for (double w : kernel.weights()) CHECK(w > 0.0);
  CHECK(oracle::max_abs(kernel.resolution() - FockOperator::Identity(16, 16)) < 1e-11);

  QuadratureSpec pi_spec = covering(0.5, 16);
  pi_spec.inverse_pi_prefactor = true;
  const CoherentKernel scaled(pi_spec, 16);
  CHECK(oracle::max_abs(scaled.resolution() - FockOperator::Identity(16, 16) / pi) < 1e-11);

  SUBCASE("finite-phi kernel only approximates the identity") {
    QuadratureSpec finite = covering(0.5, 16);
    finite.angular = FinitePhi{200.0, 4096};
    const CoherentKernel approx(finite, 8);
    const double off = oracle::max_abs(approx.resolution() - FockOperator::Identity(8, 8));
    CHECK(off < 0.05);
    CHECK(off > 1e-8);
  }
}

TEST_CASE("inner product and vector reconstruction") {
  const auto spec = covering(0.5, 32);
  const FockVector e0 = FockVector::Unit(32, 0);
  const FockVector e1 = FockVector::Unit(32, 1);
  CHECK(std::abs(inner_product(e0, e0, spec) - 1.0) < 1e-12);
  CHECK(std::abs(inner_product(e0, e1, spec)) < 1e-12);
  CHECK((reconstruct_vector(e0, spec) - e0).norm() < 1e-10);

  std::mt19937_64 rng(7);
  for (double s : {0.25, 0.5, 1.0}) {
    for (int trial = 0; trial < 4; ++trial) {
      const FockVector phi = oracle::random_unit_vector(32, rng);
      const FockVector psi = oracle::random_unit_vector(32, rng);
      CHECK(std::abs(inner_product(phi, psi, covering(s, 32)) - phi.dot(psi)) < 1e-10);
      CHECK((reconstruct_vector(psi, covering(s, 32)) - psi).norm() < 1e-9);
    }
  }

  const FockVector coh = make_state(StretchLabel({1.0, 0.0}, 0.5), TruncationConfig(32));
  CHECK((reconstruct_vector(coh, covering(0.5, 48)) - coh).norm() < 1e-9);

  QuadratureSpec pi_spec = spec;
  pi_spec.inverse_pi_prefactor = true;
  CHECK(std::abs(inner_product(e0, e0, pi_spec) - 1.0 / pi) < 1e-12);

  CHECK_THROWS_AS((void)reconstruct_vector(e0, covering(0.5, 8)), DomainError);
  CHECK_THROWS_AS((void)inner_product(e0, FockVector::Unit(8, 0), spec), DomainError);
}

TEST_CASE("operator kernels") {
  const int dim = 24;
  const auto spec = covering(0.5, 24);
  auto grid = std::make_shared<const CoherentKernel>(spec, dim);
  const auto l = ladder_matrices(TruncationConfig(dim));
  const FockOperator id = FockOperator::Identity(dim, dim);

  const auto id_kernel = operator_kernel(id, grid);
  const auto id_id = operator_kernel_compose(id_kernel, id_kernel, spec);
  CHECK(oracle::max_abs(id_id.values - id_kernel.values) < 1e-9);
  CHECK(oracle::max_abs(operator_from_kernel(id_id) - id) < 1e-9);

  const auto aa = operator_kernel_compose(operator_kernel(l.a, grid), operator_kernel(l.adag, grid), spec);
  CHECK(oracle::max_abs(operator_from_kernel(aa) - l.a * l.adag) < 1e-8);
  // a a^+ = n + I below the truncation edge.
  CHECK(oracle::max_abs((operator_from_kernel(aa) - l.num - id).topLeftCorner(dim - 1, dim - 1)) < 1e-8);

  const FockOperator d = displacement(StretchLabel(std::polar(0.6, 0.4), 0.5), TruncationConfig(dim));
  const auto ddag = operator_kernel_compose(operator_kernel(d, grid), operator_kernel(d.adjoint(), grid), spec);
  CHECK(oracle::max_abs(operator_from_kernel(ddag) - id) < 1e-8);

  SUBCASE("grid mismatch") {
    auto other = std::make_shared<const CoherentKernel>(covering(0.75, 24), dim);
    CHECK_THROWS_AS((void)operator_kernel_compose(id_kernel, operator_kernel(id, other), spec), GridMismatchError);
    CHECK_THROWS_AS((void)operator_kernel_compose(id_kernel, id_kernel, covering(0.75, 24)), GridMismatchError);
    CHECK_THROWS_AS((void)operator_kernel(FockOperator::Identity(5, 5), grid), DomainError);
  }
}
