#include "trimer/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include <fmt/format.h>

#include "trimer/dynamics.hpp"
#include "trimer/rng.hpp"
#include "trimer/sampling.hpp"

namespace trimer {

void RunningMoments::add(double x) {
  ++count;
  const double delta = x - mean;
  mean += delta / static_cast<double>(count);
  m2 += delta * (x - mean);
}

void RunningMoments::merge(const RunningMoments& other) {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count);
  const double nb = static_cast<double>(other.count);
  const double n = na + nb;
  const double delta = other.mean - mean;
  mean += delta * nb / n;
  m2 += other.m2 + delta * delta * na * nb / n;
  count += other.count;
}

double RunningMoments::variance() const {
  return count > 1 ? std::max(0.0, m2 / static_cast<double>(count - 1)) : 0.0;
}

double RunningMoments::standard_error() const {
  return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
}

TimeGrid TimeGrid::from(const Scenario& scenario) {
  return {scenario.dt, scenario.n_steps(), scenario.sample_stride};
}

std::uint64_t TimeGrid::step_at(double t) const {
  const auto step = static_cast<std::uint64_t>(std::llround(t / dt));
  return std::min(step, n_steps);
}

double EnsembleResult::discard_fraction() const {
  const auto total = completed + discarded;
  return total > 0 ? static_cast<double>(discarded) / static_cast<double>(total) : 0.0;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("TRIMER_THREADS")) {
    try {
      const long value = std::stol(env);
      if (value > 0) return static_cast<unsigned>(value);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct ChunkResult {
  std::vector<std::array<RunningMoments, kWells + 1>> moments;
  std::vector<std::array<std::vector<double>, kWells>> snapshots;
  std::uint64_t completed = 0;
  std::uint64_t discarded = 0;
};

// Per-trajectory scratch: estimator rows are only committed to the chunk
// accumulators if the trajectory survives to the end.
struct TrajectoryBuffer {
  std::vector<std::array<double, kWells + 1>> recorded;
  std::vector<std::array<double, kWells>> snapped;
};

std::array<double, kWells + 1> estimators(const WignerField& f) {
  std::array<double, kWells + 1> out{};
  double total = 0.0;
  for (std::size_t i = 0; i < kWells; ++i) {
    out[i] = abs2(f.alpha[i]) - 0.5;
    total += out[i];
  }
  out[kWells] = total;
  return out;
}

std::array<double, kWells + 1> estimators(const PPField& f) {
  std::array<double, kWells + 1> out{};
  double total = 0.0;
  for (std::size_t i = 0; i < kWells; ++i) {
    out[i] = (f.alpha_plus[i] * f.alpha[i]).real();
    total += out[i];
  }
  out[kWells] = total;
  return out;
}

class Runner {
 public:
  explicit Runner(const Scenario& scenario) : scenario_(scenario), grid_(TimeGrid::from(scenario)) {
    for (std::uint64_t k = 0; k <= grid_.n_steps; ++k) {
      if (grid_.records(k)) record_steps_.push_back(k);
    }
    for (double t : scenario.measure_times) snapshot_steps_.push_back(grid_.step_at(t));
  }

  const TimeGrid& grid() const { return grid_; }
  const std::vector<std::uint64_t>& record_steps() const { return record_steps_; }
  const std::vector<std::uint64_t>& snapshot_steps() const { return snapshot_steps_; }

  ChunkResult run_chunk(std::uint64_t begin, std::uint64_t end) const {
    ChunkResult chunk;
    chunk.moments.resize(record_steps_.size());
    chunk.snapshots.resize(snapshot_steps_.size());
    std::vector<TrajectoryBuffer> buffers(kBatchLanes);
    for (auto& b : buffers) {
      b.recorded.resize(record_steps_.size());
      b.snapped.resize(snapshot_steps_.size());
    }
    std::array<bool, kBatchLanes> ok{};

    if (scenario_.representation == Representation::wigner) {
      for (std::uint64_t first = begin; first < end; first += kBatchLanes) {
        const auto lanes = static_cast<std::size_t>(std::min<std::uint64_t>(kBatchLanes, end - first));
        run_wigner_batch(first, lanes, buffers, ok);
        for (std::size_t l = 0; l < lanes; ++l) commit(ok[l], buffers[l], chunk);
      }
    } else {
      for (std::uint64_t index = begin; index < end; ++index) {
        commit(run_positive_p(index, buffers[0]), buffers[0], chunk);
      }
    }
    return chunk;
  }

 private:
  template <typename Field>
  void observe(std::uint64_t step, const Field& field, std::size_t& next_record,
               TrajectoryBuffer& buffer) const {
    if (next_record < record_steps_.size() && record_steps_[next_record] == step) {
      buffer.recorded[next_record++] = estimators(field);
    }
    for (std::size_t m = 0; m < snapshot_steps_.size(); ++m) {
      if (snapshot_steps_[m] == step) {
        const auto e = estimators(field);
        std::copy_n(e.begin(), kWells, buffer.snapped[m].begin());
      }
    }
  }

  void commit(bool ok, const TrajectoryBuffer& buffer, ChunkResult& chunk) const {
    if (!ok) {
      ++chunk.discarded;
      return;
    }
    ++chunk.completed;
    for (std::size_t k = 0; k < record_steps_.size(); ++k) {
      for (std::size_t i = 0; i <= kWells; ++i) chunk.moments[k][i].add(buffer.recorded[k][i]);
    }
    for (std::size_t m = 0; m < snapshot_steps_.size(); ++m) {
      for (std::size_t i = 0; i < kWells; ++i) chunk.snapshots[m][i].push_back(buffer.snapped[m][i]);
    }
  }

  // Integrates `lanes` consecutive trajectories in lockstep. Unused lanes of
  // a partial batch carry zero fields and are never committed.
  void run_wigner_batch(std::uint64_t first, std::size_t lanes,
                        std::vector<TrajectoryBuffer>& buffers,
                        std::array<bool, kBatchLanes>& ok) const {
    WignerBatch batch;
    std::array<double, kBatchLanes> guard{};
    for (std::size_t l = 0; l < lanes; ++l) {
      RngStream rng(scenario_.seed, first + l);
      const WignerField field = sample_wigner_field(scenario_, rng);
      batch.set(l, field);
      guard[l] = kGuardFactor * std::max(total_number(field), 1.0);
      ok[l] = true;
    }
    std::size_t next_record = 0;
    for (std::uint64_t step = 0;; ++step) {
      const bool record = next_record < record_steps_.size() && record_steps_[next_record] == step;
      const bool snap = std::find(snapshot_steps_.begin(), snapshot_steps_.end(), step) !=
                        snapshot_steps_.end();
      if (record || snap) {
        for (std::size_t l = 0; l < lanes; ++l) {
          const WignerField field = batch.get(l);
          const double n = total_number(field);
          if (!std::isfinite(n) || n > guard[l]) ok[l] = false;
          std::size_t cursor = next_record;
          observe(step, field, cursor, buffers[l]);
        }
        if (record) ++next_record;
      }
      if (step == grid_.n_steps) break;
      wigner_step(batch, scenario_.params, grid_.dt);
    }
  }

  bool run_positive_p(std::uint64_t index, TrajectoryBuffer& buffer) const {
    RngStream rng(scenario_.seed, index);
    PPField field = sample_pp_field(scenario_, rng);
    const double guard = kGuardFactor * std::max(std::abs(total_number(field)), 1.0);
    std::size_t next_record = 0;
    for (std::uint64_t step = 0;; ++step) {
      observe(step, field, next_record, buffer);
      if (step == grid_.n_steps) break;
      field = pp_step(field, scenario_.params, grid_.dt, rng, scenario_.pp_scheme);
      const double magnitude = pp_magnitude(field);
      if (!std::isfinite(magnitude) || magnitude > guard) return false;
    }
    return true;
  }

  const Scenario& scenario_;
  TimeGrid grid_;
  std::vector<std::uint64_t> record_steps_;
  std::vector<std::uint64_t> snapshot_steps_;
};

}  // namespace

EnsembleResult run_ensemble(const Scenario& scenario, const EnsembleOptions& options) {
  scenario.validate();
  const Runner runner(scenario);

  const std::uint64_t n_chunks = (scenario.n_traj + kChunkSize - 1) / kChunkSize;
  std::vector<ChunkResult> chunks(n_chunks);
  const unsigned requested = options.threads > 0 ? options.threads : default_thread_count();
  const auto n_workers =
      static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, requested), n_chunks));

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (std::uint64_t c = next++; c < n_chunks; c = next++) {
        const std::uint64_t begin = c * kChunkSize;
        const std::uint64_t end = std::min(begin + kChunkSize, scenario.n_traj);
        chunks[c] = runner.run_chunk(begin, end);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (n_workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) workers.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  EnsembleResult result;
  result.representation = scenario.representation;
  for (auto step : runner.record_steps()) result.times.push_back(runner.grid().time(step));
  result.moments.resize(runner.record_steps().size());
  for (std::size_t m = 0; m < runner.snapshot_steps().size(); ++m) {
    Snapshot snap;
    snap.step = runner.snapshot_steps()[m];
    snap.time = runner.grid().time(snap.step);
    result.snapshots.push_back(std::move(snap));
  }
  for (auto& snap : result.snapshots) {
    for (auto& s : snap.samples) s.reserve(scenario.n_traj);
  }

  for (auto& chunk : chunks) {
    result.completed += chunk.completed;
    result.discarded += chunk.discarded;
    for (std::size_t k = 0; k < result.moments.size(); ++k) {
      for (std::size_t i = 0; i <= kWells; ++i) result.moments[k][i].merge(chunk.moments[k][i]);
    }
    for (std::size_t m = 0; m < result.snapshots.size(); ++m) {
      for (std::size_t i = 0; i < kWells; ++i) {
        auto& dst = result.snapshots[m].samples[i];
        dst.insert(dst.end(), chunk.snapshots[m][i].begin(), chunk.snapshots[m][i].end());
      }
    }
    chunk = ChunkResult{};
  }

  if (result.completed == 0) {
    throw NumericalError(fmt::format("all {} trajectories diverged", scenario.n_traj));
  }
  return result;
}

}  // namespace trimer
