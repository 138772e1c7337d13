#include "trimer/model.hpp"

#include <cmath>

#include <fmt/format.h>

namespace trimer {

void ModelParams::validate() const {
  if (!std::isfinite(chi) || chi < 0.0) {
    throw ConfigError(fmt::format("model.chi must be finite and >= 0, got {}", chi));
  }
  if (!std::isfinite(j_tunnel) || j_tunnel <= 0.0) {
    throw ConfigError(fmt::format("model.j must be finite and > 0, got {}", j_tunnel));
  }
}

std::string_view to_string(StateKind kind) {
  switch (kind) {
    case StateKind::fock: return "fock";
    case StateKind::coherent: return "coherent";
    case StateKind::squeezed: return "squeezed";
    case StateKind::vacuum: return "vacuum";
  }
  return "unknown";
}

StateKind parse_state_kind(std::string_view text) {
  if (text == "fock") return StateKind::fock;
  if (text == "coherent") return StateKind::coherent;
  if (text == "squeezed") return StateKind::squeezed;
  if (text == "vacuum") return StateKind::vacuum;
  throw ConfigError(fmt::format(
      "unknown state kind '{}' (expected fock, coherent, squeezed or vacuum)", text));
}

std::string_view to_string(SqueezeConvention convention) {
  return convention == SqueezeConvention::standard ? "standard" : "exp_r";
}

SqueezeConvention parse_squeeze_convention(std::string_view text) {
  if (text == "standard") return SqueezeConvention::standard;
  if (text == "exp_r") return SqueezeConvention::exp_r;
  throw ConfigError(
      fmt::format("unknown squeezing convention '{}' (expected standard or exp_r)", text));
}

std::pair<double, double> StateSpec::quadrature_variances() const {
  if (kind != StateKind::squeezed) return {1.0, 1.0};
  const double exponent = squeezing == SqueezeConvention::standard ? 2.0 * r : r;
  return {std::exp(-exponent), std::exp(exponent)};
}

Complex StateSpec::mean_amplitude() const {
  switch (kind) {
    case StateKind::coherent:
    case StateKind::squeezed:
      return std::polar(std::sqrt(n), phase);
    case StateKind::fock:
    case StateKind::vacuum:
      break;
  }
  return {0.0, 0.0};
}

void StateSpec::validate() const {
  if (!std::isfinite(n) || n < 0.0) {
    throw ConfigError(fmt::format("{} state needs finite n >= 0, got {}", to_string(kind), n));
  }
  if (!std::isfinite(phase)) {
    throw ConfigError(fmt::format("{} state has non-finite phase", to_string(kind)));
  }
  if (!std::isfinite(r)) {
    throw ConfigError(fmt::format("{} state has non-finite squeezing r", to_string(kind)));
  }
  if (kind == StateKind::fock && n != std::floor(n)) {
    throw ConfigError(fmt::format("fock state needs an integer n, got {}", n));
  }
  if (kind == StateKind::vacuum && n != 0.0) {
    throw ConfigError(fmt::format("vacuum state must have n = 0, got {}", n));
  }
}

double classical_energy(const WignerField& field, const ModelParams& params) {
  const auto& a = field.alpha;
  double interaction = 0.0;
  for (const auto& ai : a) {
    const double ni = abs2(ai);
    interaction += ni * ni;
  }
  // a1* a2 + a2* a1 = 2 Re(a1* a2)
  const double hopping = 2.0 * (std::conj(a[0]) * a[1]).real() +
                         2.0 * (std::conj(a[1]) * a[2]).real();
  return params.chi * interaction - params.j_tunnel * hopping;
}

double total_number(const WignerField& field) {
  double total = 0.0;
  for (const auto& ai : field.alpha) total += abs2(ai);
  return total;
}

double total_number(const PPField& field) {
  double total = 0.0;
  for (std::size_t i = 0; i < kWells; ++i) {
    total += (field.alpha_plus[i] * field.alpha[i]).real();
  }
  return total;
}

namespace {
bool finite(const Amplitudes& a) {
  for (const auto& z : a) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}
}  // namespace

bool is_finite(const WignerField& field) { return finite(field.alpha); }
bool is_finite(const PPField& field) { return finite(field.alpha) && finite(field.alpha_plus); }

}  // namespace trimer
