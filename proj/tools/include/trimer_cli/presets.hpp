#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "trimer/scenario.hpp"

namespace trimer::cli {

/// One ensemble of a preset and the artifact it produces.
struct PresetRun {
  std::string label;
  Scenario scenario;
  /// Output file names relative to the output directory; empty when the
  /// run does not produce that artifact.
  std::string moments_file;
  std::string distribution_file;
};

/// Bhattacharyya comparison of the middle-well distributions of two runs.
struct PresetComparison {
  std::string label;
  std::string first;   // run label
  std::string second;  // run label
  double chi = 0.0;
  double n_atoms = 0.0;
  double published_b = std::numeric_limits<double>::quiet_NaN();
  double published_d = std::numeric_limits<double>::quiet_NaN();
};

struct Preset {
  std::string name;
  std::string description;
  /// Trajectory count of the published figure or table; runs use
  /// reference_trajectories * scale.
  std::uint64_t reference_trajectories = 0;
  std::vector<PresetRun> runs;
  std::vector<PresetComparison> comparisons;
  /// Which published values summary.csv reports: "B", "D", "BD" or "peak".
  std::string summary_kind;

  /// Every file cmd_reproduce writes for this preset.
  std::vector<std::string> manifest() const;
  const PresetRun& run(std::string_view label) const;
};

std::vector<std::string> preset_names();

/// Builds a preset with n_traj = max(2, round(reference_trajectories * scale)).
/// Throws ConfigError for an unknown name or a non-positive scale.
Preset make_preset(std::string_view name, double scale = 0.1, std::uint64_t seed = 1);

/// Interaction strength and outer-well atom number of the three published
/// parameter regimes: (1e-2, 20), (1e-3, 100), (1e-4, 1000).
struct Regime {
  double chi;
  double n_atoms;
  std::string tag;
};
const std::vector<Regime>& regimes();

/// Scaled time of first maximum transfer used for every distribution.
inline constexpr double kSnapshotTime = 1.11;
/// Squeezing parameter of the squeezed-state runs.
inline constexpr double kSqueezing = 0.5;

}  // namespace trimer::cli
