#include "trimer/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "trimer/rng.hpp"

namespace trimer {

NumberDistribution::NumberDistribution(double bin_width, std::vector<double> weights,
                                       std::uint64_t sample_count)
    : bin_width_(bin_width), weights_(std::move(weights)), sample_count_(sample_count) {
  if (!(bin_width_ > 0.0) || !std::isfinite(bin_width_)) {
    throw ConfigError(fmt::format("bin width must be positive, got {}", bin_width_));
  }
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("distribution weights must be >= 0");
  }
  total_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (!(total_ > 0.0)) throw ConfigError("distribution has zero total weight");
}

NumberDistribution NumberDistribution::from_probabilities(std::vector<double> probabilities,
                                                          double bin_width) {
  return {bin_width, std::move(probabilities), 0};
}

double NumberDistribution::probability(std::size_t bin) const {
  return bin < weights_.size() ? weights_[bin] / total_ : 0.0;
}

std::vector<double> NumberDistribution::probabilities() const {
  std::vector<double> p(weights_.size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = weights_[k] / total_;
  return p;
}

double NumberDistribution::clamp_fraction() const {
  return sample_count_ > 0 ? static_cast<double>(clamped_) / static_cast<double>(sample_count_)
                           : 0.0;
}

double NumberDistribution::mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < weights_.size(); ++k) m += center(k) * weights_[k];
  return m / total_;
}

double NumberDistribution::variance() const {
  const double m = mean();
  double v = 0.0;
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    const double d = center(k) - m;
    v += d * d * weights_[k];
  }
  return v / total_;
}

NumberDistribution bin_distribution(std::span<const double> samples, double bin_width) {
  if (samples.empty()) throw ConfigError("cannot bin an empty sample set");
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
    throw ConfigError(fmt::format("bin width must be positive, got {}", bin_width));
  }
  std::vector<double> counts;
  std::uint64_t clamped = 0;
  for (double x : samples) {
    if (!std::isfinite(x)) throw ConfigError("cannot bin a non-finite sample");
    double k = std::floor(x / bin_width + 0.5);
    if (k < 0.0) {
      ++clamped;
      k = 0.0;
    }
    const auto bin = static_cast<std::size_t>(k);
    if (bin >= counts.size()) counts.resize(bin + 1, 0.0);
    counts[bin] += 1.0;
  }
  NumberDistribution dist(bin_width, std::move(counts), samples.size());
  dist.set_clamped(clamped);
  return dist;
}

namespace {
void require_same_width(const NumberDistribution& a, const NumberDistribution& b) {
  if (a.bin_width() != b.bin_width()) {
    throw ConfigError(
        fmt::format("bin width mismatch: {} vs {}", a.bin_width(), b.bin_width()));
  }
}
}  // namespace

NumberDistribution merge(const NumberDistribution& a, const NumberDistribution& b) {
  require_same_width(a, b);
  std::vector<double> weights(std::max(a.size(), b.size()), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) weights[k] += a.weights()[k];
  for (std::size_t k = 0; k < b.size(); ++k) weights[k] += b.weights()[k];
  NumberDistribution out(a.bin_width(), std::move(weights), a.sample_count() + b.sample_count());
  out.set_clamped(a.clamped() + b.clamped());
  out.well = a.well;
  out.time = a.time;
  return out;
}

double bhattacharyya_coefficient(const NumberDistribution& p1, const NumberDistribution& p2) {
  require_same_width(p1, p2);
  // Bins beyond either extent carry an implicit zero and contribute nothing.
  const std::size_t overlap = std::min(p1.size(), p2.size());
  double b = 0.0;
  for (std::size_t k = 0; k < overlap; ++k) b += std::sqrt(p1.probability(k) * p2.probability(k));
  return std::min(b, 1.0);
}

double distance_from_coefficient(double coefficient) {
  if (coefficient <= 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(coefficient);
}

double bhattacharyya_distance(const NumberDistribution& p1, const NumberDistribution& p2) {
  return distance_from_coefficient(bhattacharyya_coefficient(p1, p2));
}

namespace {
NumberDistribution multinomial_resample(const NumberDistribution& dist, RngStream& rng) {
  const std::uint64_t n = dist.sample_count();
  std::vector<double> counts(dist.size(), 0.0);
  std::size_t last = dist.size();
  while (last > 0 && dist.weights()[last - 1] == 0.0) --last;
  std::uint64_t remaining = n;
  double remaining_p = 1.0;
  for (std::size_t k = 0; k < last && remaining > 0; ++k) {
    const double p = dist.probability(k);
    if (p <= 0.0) continue;
    std::uint64_t c = remaining;
    if (k + 1 < last) {
      const double q = remaining_p > 0.0 ? std::clamp(p / remaining_p, 0.0, 1.0) : 1.0;
      c = std::binomial_distribution<std::uint64_t>(remaining, q)(rng.engine());
    }
    counts[k] = static_cast<double>(c);
    remaining -= c;
    remaining_p -= p;
  }
  return {dist.bin_width(), std::move(counts), n};
}
}  // namespace

BootstrapEstimate bootstrap_coefficient(const NumberDistribution& p1,
                                        const NumberDistribution& p2, std::size_t resamples,
                                        std::uint64_t seed) {
  require_same_width(p1, p2);
  if (p1.sample_count() == 0 || p2.sample_count() == 0) {
    throw ConfigError("bootstrap needs distributions with known sample counts");
  }
  if (resamples < 2) throw ConfigError("bootstrap needs at least two resamples");
  RunningMoments moments;
  for (std::size_t r = 0; r < resamples; ++r) {
    RngStream rng(seed, r);
    const auto q1 = multinomial_resample(p1, rng);
    const auto q2 = multinomial_resample(p2, rng);
    moments.add(bhattacharyya_coefficient(q1, q2));
  }
  return {moments.mean, std::sqrt(moments.variance()), resamples};
}

MomentSeries moment_series(const EnsembleResult& result) {
  if (result.completed < 2) {
    throw NumericalError(fmt::format("moment series needs at least 2 completed trajectories, got {}",
                                     result.completed));
  }
  MomentSeries series;
  series.times = result.times;
  series.sample_count = result.completed;
  for (std::size_t i = 0; i < kWells; ++i) {
    series.mean[i].reserve(result.times.size());
    for (const auto& row : result.moments) {
      series.mean[i].push_back(row[i].mean);
      series.variance[i].push_back(row[i].variance());
      series.standard_error[i].push_back(row[i].standard_error());
    }
  }
  return series;
}

}  // namespace trimer
