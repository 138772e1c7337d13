#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "trimer/ensemble.hpp"
#include "trimer/statistics.hpp"

using namespace trimer;

namespace {

Scenario outer_wells(StateSpec left, StateSpec right, double chi, std::uint64_t n_traj) {
  Scenario s;
  s.params.chi = chi;
  s.wells = {left, StateSpec::vacuum(), right};
  s.n_traj = n_traj;
  return s;
}

void expect_identical(const EnsembleResult& a, const EnsembleResult& b) {
  ASSERT_EQ(a.completed, b.completed);
  ASSERT_EQ(a.discarded, b.discarded);
  ASSERT_EQ(a.times, b.times);
  ASSERT_EQ(a.moments.size(), b.moments.size());
  for (std::size_t k = 0; k < a.moments.size(); ++k) {
    for (std::size_t i = 0; i <= kWells; ++i) {
      EXPECT_EQ(a.moments[k][i].mean, b.moments[k][i].mean);
      EXPECT_EQ(a.moments[k][i].m2, b.moments[k][i].m2);
    }
  }
  ASSERT_EQ(a.snapshots.size(), b.snapshots.size());
  for (std::size_t m = 0; m < a.snapshots.size(); ++m) {
    for (std::size_t i = 0; i < kWells; ++i) {
      EXPECT_EQ(a.snapshots[m].samples[i], b.snapshots[m].samples[i]);
    }
  }
}

}  // namespace

TEST(RunningMoments, MergeMatchesSequential) {
  RunningMoments all, left, right;
  for (int i = 0; i < 1000; ++i) {
    const double x = std::sin(0.1 * i) * 50.0 + i;
    all.add(x);
    (i < 377 ? left : right).add(x);
  }
  left.merge(right);
  EXPECT_EQ(left.count, all.count);
  EXPECT_NEAR(left.mean, all.mean, 1e-10 * std::abs(all.mean));
  EXPECT_NEAR(left.variance(), all.variance(), 1e-9 * all.variance());
}

TEST(TimeGrid, RecordsStrideAndLastStep) {
  const TimeGrid g{1e-3, 1005, 10};
  EXPECT_TRUE(g.records(0));
  EXPECT_TRUE(g.records(1000));
  EXPECT_FALSE(g.records(1001));
  EXPECT_TRUE(g.records(1005));
  EXPECT_EQ(g.step_at(1.11), 1005u);
  EXPECT_EQ(g.step_at(0.5), 500u);
}

TEST(RunEnsemble, LinearLimitFollowsRabiCurve) {
  const double n = 1000.0;
  auto s = outer_wells(StateSpec::coherent(n), StateSpec::coherent(n), 0.0, 3000);
  s.measure_times = {1.11};
  const auto series = moment_series(run_ensemble(s));
  ASSERT_EQ(series.times.size(), 201u);
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    const double expected = oracle::linear_middle_number(n, series.times[k]);
    EXPECT_LE(std::abs(series.mean[1][k] - expected), 5.0 * series.standard_error[1][k] + 1e-9)
        << "t=" << series.times[k];
  }
}

TEST(RunEnsemble, PiPhaseDifferenceSuppressesTunnelling) {
  auto s = outer_wells(StateSpec::coherent(100), StateSpec::coherent(100, std::numbers::pi), 0.0,
                       1000);
  const auto series = moment_series(run_ensemble(s));
  for (double m : series.mean[1]) EXPECT_LT(m, 1.0);
}

TEST(RunEnsemble, ThreadCountDoesNotChangeResults) {
  for (auto rep : {Representation::wigner, Representation::positive_p}) {
    auto s = outer_wells(StateSpec::fock(50), StateSpec::squeezed(40, 0.5), 1e-2, 2500);
    s.representation = rep;
    s.t_final = 0.5;
    s.measure_times = {0.25, 0.5};
    const auto one = run_ensemble(s, {1});
    const auto three = run_ensemble(s, {3});
    expect_identical(one, three);
  }
}

TEST(RunEnsemble, SnapshotsHoldOneEstimatorPerTrajectory) {
  auto s = outer_wells(StateSpec::fock(20), StateSpec::fock(20), 1e-2, 1500);
  s.t_final = 0.2;
  s.measure_times = {0.0, 0.1, 0.2};
  const auto r = run_ensemble(s);
  EXPECT_EQ(r.completed + r.discarded, s.n_traj);
  ASSERT_EQ(r.snapshots.size(), 3u);
  EXPECT_EQ(r.snapshots[1].step, 100u);
  for (const auto& snap : r.snapshots) {
    for (const auto& w : snap.samples) EXPECT_EQ(w.size(), r.completed);
  }
  // Wigner estimator at t = 0 for a Fock ring is exactly n.
  for (double x : r.snapshots[0].samples[0]) EXPECT_NEAR(x, 20.0, 1e-12);
}

TEST(RunEnsemble, MirrorSymmetry) {
  const auto left = StateSpec::fock(60), right = StateSpec::coherent(40, 0.4);
  auto s = outer_wells(left, right, 1e-2, 4000);
  s.t_final = 1.2;
  auto m = outer_wells(right, left, 1e-2, 4000);
  m.t_final = 1.2;
  m.seed = 99;
  const auto a = moment_series(run_ensemble(s));
  const auto b = moment_series(run_ensemble(m));
  for (std::size_t k = 0; k < a.times.size(); k += 10) {
    auto close = [&](std::size_t i, std::size_t j) {
      const double err = std::hypot(a.standard_error[i][k], b.standard_error[j][k]);
      EXPECT_LE(std::abs(a.mean[i][k] - b.mean[j][k]), 5.0 * err + 1e-9) << "t=" << a.times[k];
    };
    close(0, 2);
    close(2, 0);
    close(1, 1);
  }
}

TEST(RunEnsemble, PositivePConservesMeanNumber) {
  auto s = outer_wells(StateSpec::fock(100), StateSpec::fock(100), 1e-3, 3000);
  s.representation = Representation::positive_p;
  s.t_final = 1.2;
  const auto r = run_ensemble(s);
  EXPECT_EQ(r.discarded, 0u);
  for (const auto& row : r.moments) {
    const auto& total = row[EnsembleResult::kTotal];
    EXPECT_LE(std::abs(total.mean - 200.0), 3.0 * total.standard_error() + 1e-9);
  }
}

Scenario strongly_nonlinear(double chi) {
  auto s = outer_wells(StateSpec::fock(5), StateSpec::fock(5), chi, 200);
  s.representation = Representation::positive_p;
  s.pp_scheme = PPScheme::euler;
  s.dt = 1e-2;
  s.t_final = 4.0;
  return s;
}

TEST(RunEnsemble, DivergentTrajectoriesAreCountedAndFlagged) {
  const auto s = strongly_nonlinear(0.2);
  const auto r = run_ensemble(s);
  EXPECT_EQ(r.completed + r.discarded, s.n_traj);
  EXPECT_GT(r.discarded, 0u);
  EXPECT_GT(r.completed, 0u);
  EXPECT_FALSE(r.reliable());
  for (const auto& row : r.moments) {
    for (const auto& m : row) EXPECT_TRUE(std::isfinite(m.mean));
  }
}

TEST(RunEnsemble, AllDivergedIsNumericalError) {
  EXPECT_THROW(run_ensemble(strongly_nonlinear(5.0)), NumericalError);
}

TEST(RunEnsemble, InvalidScenarioThrows) {
  auto s = outer_wells(StateSpec::fock(5), StateSpec::fock(5), 0.0, 0);
  EXPECT_THROW(run_ensemble(s), ConfigError);
}

TEST(DefaultThreadCount, ReadsEnvironment) {
  ::setenv("TRIMER_THREADS", "3", 1);
  EXPECT_EQ(default_thread_count(), 3u);
  ::setenv("TRIMER_THREADS", "zero", 1);
  EXPECT_GE(default_thread_count(), 1u);
  ::unsetenv("TRIMER_THREADS");
}
