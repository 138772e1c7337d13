#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trimer/csv.hpp"
#include "trimer/scenario.hpp"
#include "trimer/statistics.hpp"
#include "trimer_cli/presets.hpp"

namespace trimer::cli {

/// CLI exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Flags override values from the config file.
struct SimulateOptions {
  std::filesystem::path config;
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> n_traj;
  std::optional<std::uint64_t> seed;
  std::optional<double> dt;
  std::optional<Representation> representation;
};

struct CompareOptions {
  std::filesystem::path first;
  std::filesystem::path second;
  std::filesystem::path out_dir = ".";
};

struct ReproduceOptions {
  std::string preset;
  std::filesystem::path out_dir = ".";
  double scale = 0.1;
};

/// Writes moments.csv, scenario.yaml and dist_N2_t<time>.csv per measure
/// time (middle-well distribution); prints a run summary to out.
int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);
/// Prints B (with a bootstrap error when both sample counts are known) and D,
/// and writes comparison.csv.
int cmd_compare(const CompareOptions& options, std::ostream& out, std::ostream& err);
/// Runs every ensemble of a preset and writes its manifest.
int cmd_reproduce(const ReproduceOptions& options, std::ostream& out, std::ostream& err);

/// Applies the command-line overrides and re-validates.
Scenario apply_overrides(Scenario scenario, const SimulateOptions& options);

/// B with bootstrap error (NaN when either sample count is unknown) and D.
ComparisonRow compare_distributions(const std::string& label, const NumberDistribution& first,
                                    const NumberDistribution& second,
                                    std::size_t resamples = 200);

/// Distribution of well (1-based) at snapshot m of an ensemble.
NumberDistribution snapshot_distribution(const EnsembleResult& result, std::size_t snapshot,
                                         int well, double bin_width);

struct ReproduceReport {
  Preset preset;
  std::vector<ComparisonRow> comparisons;
  /// Per run, in preset order.
  std::vector<MomentSeries> moments;
  std::vector<std::uint64_t> discarded;
};

/// Runs a preset and writes all manifest files to out_dir. Progress goes to log.
ReproduceReport reproduce(const Preset& preset, const std::filesystem::path& out_dir,
                          std::ostream& log);

/// Parses argv and dispatches to a command; returns the exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trimer::cli
