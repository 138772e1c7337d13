#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "trimer/ensemble.hpp"
#include "trimer/model.hpp"

namespace trimer {

/// Binned atom-number distribution P(n) for one well at one time.
///
/// Bin k is centred on k * bin_width and covers
/// [(k - 1/2) bin_width, (k + 1/2) bin_width); with the default unit width
/// the centres are the integers 0, 1, 2, ... Weights are stored unnormalised
/// (raw counts when built from samples) so that disjoint ensembles merge
/// exactly; probability() normalises on access.
class NumberDistribution {
 public:
  NumberDistribution() = default;
  NumberDistribution(double bin_width, std::vector<double> weights,
                     std::uint64_t sample_count = 0);

  /// Distribution from explicit probabilities (no sample count).
  static NumberDistribution from_probabilities(std::vector<double> probabilities,
                                               double bin_width = 1.0);

  double bin_width() const { return bin_width_; }
  std::size_t size() const { return weights_.size(); }
  double center(std::size_t bin) const { return static_cast<double>(bin) * bin_width_; }
  double probability(std::size_t bin) const;
  std::vector<double> probabilities() const;
  const std::vector<double>& weights() const { return weights_; }
  double total_weight() const { return total_; }

  /// Number of trajectories binned; 0 when unknown.
  std::uint64_t sample_count() const { return sample_count_; }
  /// Samples that fell below -bin_width/2 and were clamped into bin 0.
  std::uint64_t clamped() const { return clamped_; }
  double clamp_fraction() const;

  double mean() const;
  double variance() const;

  int well = 0;       // 1-based well index; 0 when unspecified
  double time = 0.0;  // scaled time of the snapshot

  void set_clamped(std::uint64_t clamped) { clamped_ = clamped; }

 private:
  double bin_width_ = 1.0;
  std::vector<double> weights_;
  double total_ = 0.0;
  std::uint64_t sample_count_ = 0;
  std::uint64_t clamped_ = 0;
};

/// Histograms per-trajectory number estimators (Wigner estimators already
/// carry the -1/2 ordering correction). Throws ConfigError on empty input,
/// non-finite samples or a non-positive width.
NumberDistribution bin_distribution(std::span<const double> samples, double bin_width = 1.0);

/// Combines distributions built from disjoint sample sets.
NumberDistribution merge(const NumberDistribution& a, const NumberDistribution& b);

/// B = sum_n sqrt(P1(n) P2(n)) over the union of both bin ranges. Throws
/// ConfigError when the bin widths differ.
double bhattacharyya_coefficient(const NumberDistribution& p1, const NumberDistribution& p2);

/// D = -ln B; +infinity for disjoint supports.
double bhattacharyya_distance(const NumberDistribution& p1, const NumberDistribution& p2);
double distance_from_coefficient(double coefficient);

struct BootstrapEstimate {
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t resamples = 0;
};

/// Nonparametric bootstrap of B over trajectories. Resampling n trajectories
/// with replacement is equivalent to a multinomial draw of the bin counts,
/// which is what is sampled here. Requires both sample counts to be known.
BootstrapEstimate bootstrap_coefficient(const NumberDistribution& p1,
                                        const NumberDistribution& p2,
                                        std::size_t resamples = 200, std::uint64_t seed = 1);

/// Per-well number moments on the recorded time grid.
struct MomentSeries {
  std::vector<double> times;
  std::array<std::vector<double>, kWells> mean;
  std::array<std::vector<double>, kWells> variance;
  std::array<std::vector<double>, kWells> standard_error;
  std::uint64_t sample_count = 0;
};

/// Converts ensemble accumulators to means, variances and standard errors.
/// The representation's ordering correction was already applied by the
/// ensemble's number estimator and is not applied again. Throws
/// NumericalError with fewer than two completed trajectories.
MomentSeries moment_series(const EnsembleResult& result);

}  // namespace trimer
