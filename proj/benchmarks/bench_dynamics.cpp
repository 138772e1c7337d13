#include <benchmark/benchmark.h>

#include "trimer/dynamics.hpp"
#include "trimer/ensemble.hpp"
#include "trimer/sampling.hpp"
#include "trimer/statistics.hpp"

namespace {

using namespace trimer;

Scenario fock_scenario(Representation rep, std::uint64_t n_traj) {
  Scenario s;
  s.params.chi = 1e-3;
  s.wells = {StateSpec::fock(100), StateSpec::vacuum(), StateSpec::fock(100)};
  s.representation = rep;
  s.n_traj = n_traj;
  s.t_final = 0.2;
  return s;
}

void BM_WignerStepScalar(benchmark::State& state) {
  const auto s = fock_scenario(Representation::wigner, 1);
  RngStream rng(1, 0);
  WignerField f = sample_wigner_field(s, rng);
  for (auto _ : state) {
    f = wigner_step(f, s.params, 1e-3);
    benchmark::DoNotOptimize(f);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_WignerStepScalar);

void BM_WignerStepBatch(benchmark::State& state) {
  const auto s = fock_scenario(Representation::wigner, 1);
  WignerBatch batch;
  for (std::size_t l = 0; l < kBatchLanes; ++l) {
    RngStream rng(1, l);
    batch.set(l, sample_wigner_field(s, rng));
  }
  for (auto _ : state) {
    wigner_step(batch, s.params, 1e-3);
    benchmark::DoNotOptimize(batch);
  }
  state.SetItemsProcessed(state.iterations() * kBatchLanes);
}
BENCHMARK(BM_WignerStepBatch);

void BM_PPStep(benchmark::State& state) {
  const auto s = fock_scenario(Representation::positive_p, 1);
  const auto scheme = state.range(0) == 0 ? PPScheme::semi_implicit : PPScheme::euler;
  RngStream rng(1, 0);
  PPField f = sample_pp_field(s, rng);
  for (auto _ : state) {
    f = pp_step(f, s.params, 1e-3, rng, scheme);
    benchmark::DoNotOptimize(f);
  }
  state.SetItemsProcessed(state.iterations());
  state.SetLabel(state.range(0) == 0 ? "semi_implicit" : "euler");
}
BENCHMARK(BM_PPStep)->Arg(0)->Arg(1);

void BM_Ensemble(benchmark::State& state) {
  const auto rep = state.range(0) == 0 ? Representation::wigner : Representation::positive_p;
  const auto s = fock_scenario(rep, 2048);
  for (auto _ : state) {
    auto result = run_ensemble(s);
    benchmark::DoNotOptimize(result);
  }
  state.SetItemsProcessed(state.iterations() * s.n_traj);
  state.SetLabel(std::string(to_string(rep)));
}
BENCHMARK(BM_Ensemble)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Bhattacharyya(benchmark::State& state) {
  std::vector<double> a(100000), b(100000);
  RngStream rng(3, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = 100.0 + 10.0 * rng.normal();
    b[i] = 100.0 + 20.0 * rng.normal();
  }
  const auto p = bin_distribution(a, 1.0);
  const auto q = bin_distribution(b, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(bhattacharyya_coefficient(p, q));
}
BENCHMARK(BM_Bhattacharyya);

}  // namespace

BENCHMARK_MAIN();
