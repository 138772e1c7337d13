#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace trimer {

using Complex = std::complex<double>;

/// Number of wells in the inline chain. The model is only defined for three.
inline constexpr std::size_t kWells = 3;

using Amplitudes = std::array<Complex, kWells>;

/// |z|^2. std::norm goes through hypot in libstdc++ without -ffast-math.
inline double abs2(Complex z) { return z.real() * z.real() + z.imag() * z.imag(); }

/// Raised for invalid user input: malformed configs, out-of-range parameters,
/// unreadable files. Maps to CLI exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a run cannot produce a usable result (every trajectory
/// diverged, too few samples). Maps to CLI exit status 1.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters of the three-well Bose-Hubbard Hamiltonian with hbar = 1.
///
///   H = chi * sum_i a_i^dag^2 a_i^2 - J (a1^dag a2 + a2^dag a1 + a2^dag a3 + a3^dag a2)
///
/// Time is always reported as the scaled product J*t.
struct ModelParams {
  double chi = 0.0;
  double j_tunnel = 1.0;

  void validate() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

enum class StateKind { fock, coherent, squeezed, vacuum };

std::string_view to_string(StateKind kind);
/// Throws ConfigError naming the offending kind.
StateKind parse_state_kind(std::string_view text);

/// How the squeezing parameter r maps onto quadrature variances.
///   standard: Var(X) = e^{-2r}, Var(Y) = e^{+2r} (squeeze operator S(r)).
///   exp_r:    Var(X) = e^{-r},  Var(Y) = e^{+r}.
enum class SqueezeConvention { standard, exp_r };

std::string_view to_string(SqueezeConvention convention);
SqueezeConvention parse_squeeze_convention(std::string_view text);

/// Initial quantum state of a single well.
///
/// Coherent and squeezed states have mean amplitude sqrt(n) e^{i phase}.
/// Quadratures X = a + a^dag, Y = -i(a - a^dag) are measured along the
/// mean-field direction, so the squeezed quadrature is always the amplitude
/// one. n is the squared mean amplitude, not <a^dag a>, for squeezed states.
struct StateSpec {
  StateKind kind = StateKind::vacuum;
  double n = 0.0;
  double phase = 0.0;
  double r = 0.0;
  SqueezeConvention squeezing = SqueezeConvention::standard;

  static StateSpec fock(double n) { return {StateKind::fock, n, 0.0, 0.0}; }
  static StateSpec coherent(double n, double phase = 0.0) {
    return {StateKind::coherent, n, phase, 0.0};
  }
  static StateSpec squeezed(double n, double r, double phase = 0.0,
                            SqueezeConvention squeezing = SqueezeConvention::standard) {
    return {StateKind::squeezed, n, phase, r, squeezing};
  }
  static StateSpec vacuum() { return {}; }

  Complex mean_amplitude() const;
  /// Symmetric-ordered variances (Var X, Var Y) of the state; 1 for
  /// coherent and vacuum states.
  std::pair<double, double> quadrature_variances() const;
  void validate() const;

  friend bool operator==(const StateSpec&, const StateSpec&) = default;
};

/// Truncated Wigner phase-space point: one complex amplitude per well.
struct WignerField {
  Amplitudes alpha{};
};

/// Positive-P phase-space point. alpha_plus is independent of alpha and is
/// not in general its complex conjugate.
struct PPField {
  Amplitudes alpha{};
  Amplitudes alpha_plus{};
};

/// Mean-field energy chi sum|a_i|^4 - J (a1* a2 + a2* a1 + a2* a3 + a3* a2).
/// Conserved by the truncated Wigner flow.
double classical_energy(const WignerField& field, const ModelParams& params);

/// Sum |a_i|^2.
double total_number(const WignerField& field);
/// Re sum a_i^+ a_i.
double total_number(const PPField& field);

bool is_finite(const WignerField& field);
bool is_finite(const PPField& field);

}  // namespace trimer
