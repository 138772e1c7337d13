#pragma once

#include <utility>
#include <variant>

#include "trimer/model.hpp"
#include "trimer/rng.hpp"
#include "trimer/scenario.hpp"

namespace trimer {

/// One truncated Wigner draw for a single well. Averages of the draws
/// reproduce symmetrically ordered moments of the state.
///
///  - vacuum, coherent: mean + (x + i y) / 2 with x, y standard normal.
///  - squeezed: Gaussian quadrature offsets with the variances of
///    StateSpec::quadrature_variances, rotated onto the mean-field direction.
///  - fock: fixed-modulus ring sqrt(n + 1/2) e^{i theta}, theta uniform.
///    This large-n approximation reproduces <a^dag a> = n and <a> = 0.
Complex sample_wigner(const StateSpec& spec, RngStream& rng);

/// One positive-P draw (alpha, alpha_plus) for a single well. Averages of
/// alpha_plus^k alpha^m reproduce normally ordered moments.
///
/// Coherent and vacuum states are delta functions. Fock and squeezed states
/// use the canonical construction: mu is drawn from the state's Husimi Q
/// function and delta is a complex Gaussian with E|delta|^2 = 1, giving
/// alpha = mu + delta, alpha_plus = conj(mu - delta).
std::pair<Complex, Complex> sample_positive_p(const StateSpec& spec, RngStream& rng);

/// Draws every well independently with the Wigner sampler.
WignerField sample_wigner_field(const Scenario& scenario, RngStream& rng);
/// Draws every well independently with the positive-P sampler.
PPField sample_pp_field(const Scenario& scenario, RngStream& rng);

using InitialField = std::variant<WignerField, PPField>;
/// Representation-dispatched initial field.
InitialField sample_initial_fields(const Scenario& scenario, RngStream& rng);

}  // namespace trimer
