#include "trimer_cli/presets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace trimer::cli {

namespace {

struct TableEntry {
  std::string pair;
  std::array<double, 3> b;
  std::array<double, 3> d;
};

// Published coefficient and distance tables, columns chi = 1e-2, 1e-3, 1e-4.
const std::vector<TableEntry>& published_tables() {
  static const std::vector<TableEntry> table = {
      {"FC", {0.531, 0.403, 0.287}, {0.633, 0.909, 1.25}},
      {"FS", {0.484, 0.364, 0.259}, {0.726, 1.01, 1.35}},
      {"CS", {0.947, 0.942, 0.939}, {0.055, 0.060, 0.063}},
  };
  return table;
}

StateSpec outer_state(char code, double n) {
  switch (code) {
    case 'F':
      return StateSpec::fock(n);
    case 'C':
      return StateSpec::coherent(n);
    case 'S':
      return StateSpec::squeezed(n, kSqueezing);
    default:
      return StateSpec::vacuum();
  }
}

std::string_view state_name(char code) {
  switch (code) {
    case 'F':
      return "fock";
    case 'C':
      return "coherent";
    case 'S':
      return "squeezed";
    default:
      return "phase";
  }
}

Scenario base_scenario(double chi, std::uint64_t n_traj, std::uint64_t seed) {
  Scenario s;
  s.params.chi = chi;
  s.n_traj = n_traj;
  s.seed = seed;
  return s;
}

// Wigner run ending at the snapshot time with one distribution there.
PresetRun distribution_run(const Regime& regime, char code, std::uint64_t n_traj,
                           std::uint64_t seed) {
  PresetRun run;
  run.label = fmt::format("{}_{}", regime.tag, state_name(code));
  run.scenario = base_scenario(regime.chi, n_traj, seed);
  if (code == 'P') {
    run.scenario.wells = {StateSpec::coherent(regime.n_atoms), StateSpec::vacuum(),
                          StateSpec::coherent(regime.n_atoms, std::numbers::pi / 2.0)};
  } else {
    const auto outer = outer_state(code, regime.n_atoms);
    run.scenario.wells = {outer, StateSpec::vacuum(), outer};
  }
  run.scenario.t_final = kSnapshotTime;
  run.scenario.measure_times = {kSnapshotTime};
  run.scenario.sample_stride = 10;
  run.distribution_file = run.label + "_N2.csv";
  return run;
}

std::uint64_t scaled_count(std::uint64_t reference, double scale) {
  const double n = std::round(static_cast<double>(reference) * scale);
  return std::max<std::uint64_t>(2, static_cast<std::uint64_t>(n));
}

void add_regime(Preset& preset, std::size_t column, std::uint64_t n_traj, std::uint64_t seed) {
  const Regime& regime = regimes()[column];
  for (char code : {'F', 'C', 'S'}) {
    preset.runs.push_back(distribution_run(regime, code, n_traj, seed + preset.runs.size()));
  }
  for (const auto& entry : published_tables()) {
    PresetComparison c;
    c.label = fmt::format("{}_{}", entry.pair, regime.tag);
    c.first = fmt::format("{}_{}", regime.tag, state_name(entry.pair[0]));
    c.second = fmt::format("{}_{}", regime.tag, state_name(entry.pair[1]));
    c.chi = regime.chi;
    c.n_atoms = regime.n_atoms;
    c.published_b = entry.b[column];
    c.published_d = entry.d[column];
    preset.comparisons.push_back(std::move(c));
  }
}

}  // namespace

const std::vector<Regime>& regimes() {
  static const std::vector<Regime> r = {
      {1e-2, 20.0, "chi1e-2"}, {1e-3, 100.0, "chi1e-3"}, {1e-4, 1000.0, "chi1e-4"}};
  return r;
}

std::vector<std::string> preset_names() {
  return {"fig1", "fig2", "fig3", "fig4", "table_b", "table_d"};
}

std::vector<std::string> Preset::manifest() const {
  std::vector<std::string> files;
  for (const auto& run : runs) {
    if (!run.moments_file.empty()) files.push_back(run.moments_file);
    if (!run.distribution_file.empty()) files.push_back(run.distribution_file);
  }
  if (!comparisons.empty()) files.emplace_back("comparison.csv");
  files.emplace_back("summary.csv");
  return files;
}

const PresetRun& Preset::run(std::string_view label) const {
  for (const auto& r : runs) {
    if (r.label == label) return r;
  }
  throw ConfigError(fmt::format("preset {} has no run '{}'", name, label));
}

Preset make_preset(std::string_view name, double scale, std::uint64_t seed) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw ConfigError(fmt::format("scale must be positive, got {}", scale));
  }
  Preset p;
  p.name = std::string(name);

  if (name == "fig1") {
    p.description = "middle-well number vs Jt, positive-P, chi=1e-4, N=1000";
    p.reference_trajectories = 1'000'000;
    p.summary_kind = "peak";
    const Regime& regime = regimes()[2];
    for (char code : {'F', 'C', 'S'}) {
      PresetRun run;
      run.label = fmt::format("{}_{}", regime.tag, state_name(code));
      run.scenario = base_scenario(regime.chi, scaled_count(p.reference_trajectories, scale),
                                   seed + p.runs.size());
      const auto outer = outer_state(code, regime.n_atoms);
      run.scenario.wells = {outer, StateSpec::vacuum(), outer};
      run.scenario.representation = Representation::positive_p;
      run.scenario.t_final = 2.0;
      run.moments_file = run.label + "_moments.csv";
      p.runs.push_back(std::move(run));
    }
    return p;
  }

  p.reference_trajectories = 10'000'000;
  const std::uint64_t n_traj = scaled_count(p.reference_trajectories, scale);
  if (name == "fig2" || name == "fig3") {
    const std::size_t column = name == "fig2" ? 1 : 2;
    p.description = fmt::format("P(N2) at Jt={} for Fock, coherent, squeezed; {}", kSnapshotTime,
                                regimes()[column].tag);
    p.summary_kind = "BD";
    add_regime(p, column, n_traj, seed);
  } else if (name == "fig4") {
    p.description = "P(N2) at Jt=1.11, Fock vs coherent with pi/2 phase difference; chi1e-3";
    p.summary_kind = "BD";
    const Regime& regime = regimes()[1];
    p.runs.push_back(distribution_run(regime, 'F', n_traj, seed));
    p.runs.push_back(distribution_run(regime, 'P', n_traj, seed + 1));
    PresetComparison c;
    c.label = fmt::format("Fphi_{}", regime.tag);
    c.first = p.runs[0].label;
    c.second = p.runs[1].label;
    c.chi = regime.chi;
    c.n_atoms = regime.n_atoms;
    c.published_b = 0.407;
    c.published_d = 0.899;
    p.comparisons.push_back(std::move(c));
  } else if (name == "table_b" || name == "table_d") {
    p.description = name == "table_b" ? "Bhattacharyya coefficients, all regimes"
                                      : "Bhattacharyya distances, all regimes";
    p.summary_kind = name == "table_b" ? "B" : "D";
    for (std::size_t column = 0; column < regimes().size(); ++column) {
      add_regime(p, column, n_traj, seed);
    }
  } else {
    throw ConfigError(fmt::format("unknown preset '{}' (valid presets: {})", name,
                                  fmt::join(preset_names(), ", ")));
  }
  return p;
}

}  // namespace trimer::cli
