#include "trimer/sampling.hpp"

#include <cmath>
#include <numbers>

namespace trimer {

Complex sample_wigner(const StateSpec& spec, RngStream& rng) {
  switch (spec.kind) {
    case StateKind::vacuum:
    case StateKind::coherent: {
      const double x = rng.normal();
      const double y = rng.normal();
      return spec.mean_amplitude() + 0.5 * Complex(x, y);
    }
    case StateKind::squeezed: {
      const auto [var_x, var_y] = spec.quadrature_variances();
      const double x = std::sqrt(var_x) * rng.normal();
      const double y = std::sqrt(var_y) * rng.normal();
      return std::polar(1.0, spec.phase) * Complex(std::sqrt(spec.n) + 0.5 * x, 0.5 * y);
    }
    case StateKind::fock:
      return std::polar(std::sqrt(spec.n + 0.5), rng.angle());
  }
  return {};
}

std::pair<Complex, Complex> sample_positive_p(const StateSpec& spec, RngStream& rng) {
  Complex mu;
  switch (spec.kind) {
    case StateKind::vacuum:
      return {Complex{}, Complex{}};
    case StateKind::coherent: {
      const Complex a = spec.mean_amplitude();
      return {a, std::conj(a)};
    }
    case StateKind::fock: {
      // Q(mu) ~ |mu|^{2n} e^{-|mu|^2}: |mu|^2 is Gamma(n + 1, 1), phase uniform.
      const double modulus2 = rng.gamma(spec.n + 1.0);
      mu = std::polar(std::sqrt(modulus2), rng.angle());
      break;
    }
    case StateKind::squeezed: {
      // Q-function quadrature variances are the Wigner ones plus one.
      const auto [var_x, var_y] = spec.quadrature_variances();
      const double x = std::sqrt(var_x + 1.0) * rng.normal();
      const double y = std::sqrt(var_y + 1.0) * rng.normal();
      mu = std::polar(1.0, spec.phase) * Complex(std::sqrt(spec.n) + 0.5 * x, 0.5 * y);
      break;
    }
  }
  const Complex delta = std::numbers::sqrt2 / 2.0 * Complex(rng.normal(), rng.normal());
  return {mu + delta, std::conj(mu - delta)};
}

WignerField sample_wigner_field(const Scenario& scenario, RngStream& rng) {
  WignerField field;
  for (std::size_t i = 0; i < kWells; ++i) field.alpha[i] = sample_wigner(scenario.wells[i], rng);
  return field;
}

PPField sample_pp_field(const Scenario& scenario, RngStream& rng) {
  PPField field;
  for (std::size_t i = 0; i < kWells; ++i) {
    std::tie(field.alpha[i], field.alpha_plus[i]) = sample_positive_p(scenario.wells[i], rng);
  }
  return field;
}

InitialField sample_initial_fields(const Scenario& scenario, RngStream& rng) {
  if (scenario.representation == Representation::wigner) {
    return sample_wigner_field(scenario, rng);
  }
  return sample_pp_field(scenario, rng);
}

}  // namespace trimer
