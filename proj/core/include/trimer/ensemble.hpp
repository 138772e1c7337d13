#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "trimer/model.hpp"
#include "trimer/scenario.hpp"

namespace trimer {

/// Streaming mean/variance (Welford), mergeable with Chan's pairwise update.
struct RunningMoments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x);
  void merge(const RunningMoments& other);
  /// Unbiased sample variance; 0 for fewer than two samples.
  double variance() const;
  double standard_error() const;
};

/// Integration grid derived from a scenario.
struct TimeGrid {
  double dt = 0.0;
  std::uint64_t n_steps = 0;
  std::uint64_t sample_stride = 1;

  static TimeGrid from(const Scenario& scenario);
  double time(std::uint64_t step) const { return static_cast<double>(step) * dt; }
  bool records(std::uint64_t step) const {
    return step % sample_stride == 0 || step == n_steps;
  }
  /// Nearest grid step to scaled time t.
  std::uint64_t step_at(double t) const;
};

/// Raw per-trajectory number estimators at one measure time, in trajectory
/// index order (discarded trajectories omitted).
struct Snapshot {
  double time = 0.0;
  std::uint64_t step = 0;
  std::array<std::vector<double>, kWells> samples;
};

struct EnsembleResult {
  /// Index of the total-number channel in each moments row.
  static constexpr std::size_t kTotal = kWells;

  Representation representation = Representation::wigner;
  std::vector<double> times;
  /// moments[k][i]: number estimator of well i (or kTotal) at times[k].
  std::vector<std::array<RunningMoments, kWells + 1>> moments;
  std::vector<Snapshot> snapshots;
  std::uint64_t completed = 0;
  std::uint64_t discarded = 0;

  double discard_fraction() const;
  /// False when more than 0.1% of trajectories were discarded.
  bool reliable() const { return discard_fraction() <= 1e-3; }
};

struct EnsembleOptions {
  /// Worker threads; 0 selects default_thread_count().
  unsigned threads = 0;
};

/// TRIMER_THREADS if set to a positive integer, otherwise the hardware
/// concurrency.
unsigned default_thread_count();

/// Trajectories are integrated in fixed chunks of this many indices and
/// reduced in chunk order, which makes results independent of thread count.
inline constexpr std::uint64_t kChunkSize = 1024;

/// Divergence guard: a trajectory is discarded once sum |alpha|^2 (+ |alpha^+|^2
/// for positive-P) exceeds this factor times its initial total number, or
/// becomes non-finite.
inline constexpr double kGuardFactor = 1e4;

/// Runs scenario.n_traj independent trajectories, trajectory i drawing from
/// RngStream(seed, i). Number estimators are |alpha_i|^2 - 1/2 (Wigner) and
/// Re alpha_i^+ alpha_i (positive-P). Throws NumericalError if every
/// trajectory diverges.
EnsembleResult run_ensemble(const Scenario& scenario, const EnsembleOptions& options = {});

}  // namespace trimer
