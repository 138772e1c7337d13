#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "trimer/model.hpp"

namespace trimer {

enum class Representation { wigner, positive_p };

/// Positive-P integrator. semi_implicit is the production scheme;
/// euler (Euler-Maruyama) exists for cross-checks.
enum class PPScheme { semi_implicit, euler };

std::string_view to_string(Representation representation);
Representation parse_representation(std::string_view text);
std::string_view to_string(PPScheme scheme);
PPScheme parse_pp_scheme(std::string_view text);

/// A complete experiment: model, per-well initial states, integration grid,
/// ensemble size and the snapshot times at which number distributions are
/// collected. All times are scaled times J*t.
struct Scenario {
  ModelParams params;
  std::array<StateSpec, kWells> wells{};
  Representation representation = Representation::wigner;
  PPScheme pp_scheme = PPScheme::semi_implicit;
  double t_final = 2.0;
  double dt = 1e-3;
  std::uint64_t n_traj = 1000;
  std::uint64_t seed = 1;
  /// Moments are recorded every sample_stride steps (and at the last step).
  std::uint64_t sample_stride = 10;
  std::vector<double> measure_times;
  double bin_width = 1.0;

  /// Throws ConfigError on the first violated invariant.
  void validate() const;
  /// Number of integration steps; t_final must be a whole multiple of dt.
  std::uint64_t n_steps() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parses the YAML scenario format documented in docs/scenario-format.md and
/// validates the result. Missing optional keys take their documented defaults.
Scenario parse_scenario(std::string_view config_text);
Scenario load_scenario(const std::filesystem::path& path);

/// Emits text that parse_scenario maps back to an identical Scenario.
std::string serialize_scenario(const Scenario& scenario);

}  // namespace trimer
