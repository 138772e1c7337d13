#pragma once

#include <cstdint>
#include <random>

namespace trimer {

/// Random stream for one trajectory (or one bootstrap resample).
///
/// The engine state is a pure function of (seed, index), so a trajectory
/// draws the same variates no matter which worker thread integrates it.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t index);

  /// Standard normal variate.
  double normal() { return normal_(engine_); }
  /// Uniform variate on [0, 1).
  double uniform() { return uniform_(engine_); }
  /// Uniform angle on [0, 2 pi).
  double angle();
  /// Gamma(shape, scale = 1) variate.
  double gamma(double shape);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace trimer
