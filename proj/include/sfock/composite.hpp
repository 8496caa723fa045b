#pragma once

#include "sfock/operators.hpp"
#include "sfock/states.hpp"

namespace sfock {

/// Parameters of the squeezed displaced families D_s(zeta) S_u(xi) |n>.
struct CompositeLabel {
  StretchLabel displace;
  SqueezeLabel squeeze;
  int n = 0;
};

/// Closed-form expectations in D_s(zeta) S_u(xi)|0>.
///
/// `ea2_published` is the published closed form |zeta|^{2s} - e^{2 i u theta} sinh r cosh r.
/// `ea2_operator` follows from conjugating a^2 through both operators:
/// w^2 - e^{i u theta} sinh r cosh r. The two differ unless zeta^s is real and
/// the squeeze phase vanishes; callers report both.
struct SqueezedExpectations {
  Complex ea;
  Complex ea2_published;
  Complex ea2_operator;
  double en;
};

/// D_s(zeta) S_u(xi) |0>. Requires label.n == 0.
[[nodiscard]] FockVector squeezed_coherent(const CompositeLabel& label, const TruncationConfig& cfg);

[[nodiscard]] SqueezedExpectations squeezed_expectations(const CompositeLabel& label);

/// D_s(zeta)|n> from the Laguerre closed form, column n of the displacement.
[[nodiscard]] FockVector displaced_number(const StretchLabel& label, int n, const TruncationConfig& cfg);

/// D_s(zeta) S_u(xi) |n>.
[[nodiscard]] FockVector squeezed_displaced_number(const CompositeLabel& label, const TruncationConfig& cfg);

/// exp(conj(w_alpha) w_zeta - w_alpha conj(w_zeta)), a pure phase.
[[nodiscard]] Complex modified_displacement_prefactor(const StretchLabel& alpha, const StretchLabel& zeta);

/// exp{w_a (a^+ - conj(w_z)) - conj(w_a) (a - w_z)}, exponentiated directly.
[[nodiscard]] FockOperator modified_displacement(const StretchLabel& alpha, const StretchLabel& zeta,
                                                 const TruncationConfig& cfg);

/// modified_displacement(alpha, zeta) applied to make_state(zeta).
[[nodiscard]] FockVector modified_coherent(const StretchLabel& alpha, const StretchLabel& zeta,
                                           const TruncationConfig& cfg);

/// Same state from the double number-state sum with coefficients
/// w_z^n / sqrt(m!) w_a^{m-n} L_n^{(m-n)}(|w_a|^2).
[[nodiscard]] FockVector modified_coherent_expansion(const StretchLabel& alpha, const StretchLabel& zeta,
                                                     const TruncationConfig& cfg);

}  // namespace sfock
