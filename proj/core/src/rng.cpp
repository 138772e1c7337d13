#include "trimer/rng.hpp"

#include <numbers>

namespace trimer {

namespace {
// splitmix64 finaliser
std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// std::seed_seq costs ~15 us per engine, which dominates short trajectories.
std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(mix(mix(seed + 0x9e3779b97f4a7c15ULL) ^ index));
}
}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t index)
    : engine_(make_engine(seed, index)) {}

double RngStream::angle() { return 2.0 * std::numbers::pi * uniform(); }

double RngStream::gamma(double shape) {
  std::gamma_distribution<double> dist(shape, 1.0);
  return dist(engine_);
}

}  // namespace trimer
