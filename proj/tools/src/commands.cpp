#include "trimer_cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "trimer/ensemble.hpp"

namespace trimer::cli {

namespace fs = std::filesystem;

namespace {

constexpr int kMiddleWell = 2;

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const NumericalError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitRuntime;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitRuntime;
  }
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::runtime_error(fmt::format("cannot create output directory {}", dir.string()));
  }
}

CsvMetadata run_metadata(const Scenario& s, const EnsembleResult& r) {
  return {{"representation", std::string(to_string(s.representation))},
          {"chi", fmt::format("{}", s.params.chi)},
          {"j", fmt::format("{}", s.params.j_tunnel)},
          {"dt", fmt::format("{}", s.dt)},
          {"seed", fmt::format("{}", s.seed)},
          {"n_traj", fmt::format("{}", s.n_traj)},
          {"completed", fmt::format("{}", r.completed)},
          {"discarded", fmt::format("{}", r.discarded)}};
}

void warn_if_unreliable(const EnsembleResult& r, std::ostream& err) {
  if (!r.reliable()) {
    fmt::print(err, "warning: {} of {} trajectories discarded ({:.3g}%); results are unreliable\n",
               r.discarded, r.completed + r.discarded, 100.0 * r.discard_fraction());
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string csv_label(std::string text) {
  for (char& c : text) {
    if (c == ',' || c == '\n' || c == '\r') c = '_';
  }
  return text;
}

}  // namespace

Scenario apply_overrides(Scenario scenario, const SimulateOptions& options) {
  if (options.n_traj) scenario.n_traj = *options.n_traj;
  if (options.seed) scenario.seed = *options.seed;
  if (options.dt) scenario.dt = *options.dt;
  if (options.representation) scenario.representation = *options.representation;
  scenario.validate();
  return scenario;
}

NumberDistribution snapshot_distribution(const EnsembleResult& result, std::size_t snapshot,
                                         int well, double bin_width) {
  const auto& snap = result.snapshots.at(snapshot);
  auto dist = bin_distribution(snap.samples.at(static_cast<std::size_t>(well - 1)), bin_width);
  dist.well = well;
  dist.time = snap.time;
  return dist;
}

ComparisonRow compare_distributions(const std::string& label, const NumberDistribution& first,
                                    const NumberDistribution& second, std::size_t resamples) {
  ComparisonRow row;
  row.pair_label = csv_label(label);
  row.coefficient = bhattacharyya_coefficient(first, second);
  row.distance = distance_from_coefficient(row.coefficient);
  row.coefficient_error = std::numeric_limits<double>::quiet_NaN();
  if (first.sample_count() > 0 && second.sample_count() > 0) {
    row.coefficient_error = bootstrap_coefficient(first, second, resamples).stddev;
  }
  return row;
}

int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario scenario = apply_overrides(load_scenario(options.config), options);
    ensure_directory(options.out_dir);

    const auto start = std::chrono::steady_clock::now();
    const EnsembleResult result = run_ensemble(scenario);
    const double wall = seconds_since(start);

    const auto meta = run_metadata(scenario, result);
    std::vector<fs::path> written;
    written.push_back(options.out_dir / "moments.csv");
    write_moments_csv(written.back(), MomentTable::from(moment_series(result)), meta);
    for (std::size_t m = 0; m < result.snapshots.size(); ++m) {
      const auto dist = snapshot_distribution(result, m, kMiddleWell, scenario.bin_width);
      written.push_back(options.out_dir / fmt::format("dist_N2_t{:.6g}.csv", dist.time));
      write_distribution_csv(written.back(), dist, meta);
    }
    written.push_back(options.out_dir / "scenario.yaml");
    std::ofstream(written.back(), std::ios::binary) << serialize_scenario(scenario);

    fmt::print(out, "representation: {}\n", to_string(scenario.representation));
    fmt::print(out, "trajectories:   {} completed, {} discarded ({:.3g}%)\n", result.completed,
               result.discarded, 100.0 * result.discard_fraction());
    fmt::print(out, "seed:           {}\n", scenario.seed);
    fmt::print(out, "threads:        {}\n", default_thread_count());
    fmt::print(out, "wall time:      {:.2f} s\n", wall);
    for (const auto& path : written) fmt::print(out, "wrote {}\n", path.string());
    warn_if_unreliable(result, err);
    return kExitOk;
  });
}

int cmd_compare(const CompareOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto first = read_distribution_csv(options.first);
    const auto second = read_distribution_csv(options.second);
    const std::string label =
        options.first.stem().string() + ":" + options.second.stem().string();
    const ComparisonRow row = compare_distributions(label, first, second);

    ensure_directory(options.out_dir);
    const auto path = options.out_dir / "comparison.csv";
    write_comparison_csv(path, {row});

    if (std::isnan(row.coefficient_error)) {
      fmt::print(out, "B = {:.6f} (no bootstrap error: sample counts unknown)\n", row.coefficient);
    } else {
      fmt::print(out, "B = {:.6f} +- {:.6f} (bootstrap, 200 resamples)\n", row.coefficient,
                 row.coefficient_error);
    }
    fmt::print(out, "D = {:.6f}\n", row.distance);
    fmt::print(out, "wrote {}\n", path.string());
    return kExitOk;
  });
}

ReproduceReport reproduce(const Preset& preset, const fs::path& out_dir, std::ostream& log) {
  ensure_directory(out_dir);
  ReproduceReport report;
  report.preset = preset;
  std::vector<NumberDistribution> distributions;
  std::vector<std::string> labels;

  for (const auto& run : preset.runs) {
    const auto start = std::chrono::steady_clock::now();
    const EnsembleResult result = run_ensemble(run.scenario);
    fmt::print(log, "  {:<20} {} trajectories, {} discarded, {:.1f} s\n", run.label,
               result.completed, result.discarded, seconds_since(start));
    warn_if_unreliable(result, log);

    auto meta = run_metadata(run.scenario, result);
    meta.insert(meta.begin(), {"run", run.label});
    report.moments.push_back(moment_series(result));
    report.discarded.push_back(result.discarded);
    if (!run.moments_file.empty()) {
      write_moments_csv(out_dir / run.moments_file, MomentTable::from(report.moments.back()),
                        meta);
    }
    if (!run.distribution_file.empty()) {
      auto dist = snapshot_distribution(result, 0, kMiddleWell, run.scenario.bin_width);
      write_distribution_csv(out_dir / run.distribution_file, dist, meta);
      distributions.push_back(std::move(dist));
      labels.push_back(run.label);
    }
  }

  auto find = [&](const std::string& label) -> const NumberDistribution& {
    for (std::size_t k = 0; k < labels.size(); ++k) {
      if (labels[k] == label) return distributions[k];
    }
    throw std::logic_error("preset comparison refers to a run without a distribution");
  };
  for (const auto& c : preset.comparisons) {
    report.comparisons.push_back(compare_distributions(c.label, find(c.first), find(c.second)));
  }
  if (!preset.comparisons.empty()) write_comparison_csv(out_dir / "comparison.csv", report.comparisons);

  std::ofstream summary(out_dir / "summary.csv", std::ios::binary);
  if (!summary) throw std::runtime_error("cannot write summary.csv");
  summary << "quantity,label,chi,N,trajectories,computed,error,published\n";
  const std::uint64_t n_traj = preset.runs.front().scenario.n_traj;
  for (std::size_t k = 0; k < preset.comparisons.size(); ++k) {
    const auto& c = preset.comparisons[k];
    const auto& row = report.comparisons[k];
    const bool want_b = preset.summary_kind.find('B') != std::string::npos;
    const bool want_d = preset.summary_kind.find('D') != std::string::npos;
    if (want_b) {
      fmt::print(summary, "B,{},{},{},{},{},{},{}\n", c.label, c.chi, c.n_atoms, n_traj,
                 row.coefficient, row.coefficient_error, c.published_b);
    }
    if (want_d) {
      // First-order propagation of the bootstrap error through -ln B.
      fmt::print(summary, "D,{},{},{},{},{},{},{}\n", c.label, c.chi, c.n_atoms, n_traj,
                 row.distance, row.coefficient_error / row.coefficient, c.published_d);
    }
  }
  if (preset.summary_kind == "peak") {
    for (std::size_t r = 0; r < preset.runs.size(); ++r) {
      const auto& series = report.moments[r];
      const auto& n2 = series.mean[kMiddleWell - 1];
      std::size_t best = 0;
      for (std::size_t k = 1; k < n2.size(); ++k) {
        if (n2[k] > n2[best]) best = k;
      }
      const auto& s = preset.runs[r].scenario;
      fmt::print(summary, "N2_peak,{},{},{},{},{},{},nan\n", preset.runs[r].label, s.params.chi,
                 s.wells[0].n, s.n_traj, n2[best], series.standard_error[kMiddleWell - 1][best]);
      fmt::print(summary, "N2_peak_time,{},{},{},{},{},{},nan\n", preset.runs[r].label,
                 s.params.chi, s.wells[0].n, s.n_traj, series.times[best],
                 s.dt * static_cast<double>(s.sample_stride));
    }
  }
  return report;
}

int cmd_reproduce(const ReproduceOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Preset preset = make_preset(options.preset, options.scale);
    const std::uint64_t n_traj = preset.runs.front().scenario.n_traj;
    fmt::print(out, "preset {}: {}\n", preset.name, preset.description);
    fmt::print(out, "trajectories per run: {} (scale {} of the published {})\n", n_traj,
               options.scale, preset.reference_trajectories);
    const auto start = std::chrono::steady_clock::now();
    const auto report = reproduce(preset, options.out_dir, out);

    if (!report.comparisons.empty()) {
      fmt::print(out, "\n{:<14} {:>9} {:>9} {:>9} {:>9} {:>9}\n", "pair", "B", "B_err",
                 "B_ref", "D", "D_ref");
      for (std::size_t k = 0; k < report.comparisons.size(); ++k) {
        const auto& row = report.comparisons[k];
        const auto& c = preset.comparisons[k];
        fmt::print(out, "{:<14} {:>9.4f} {:>9.4f} {:>9.3f} {:>9.4f} {:>9.3f}\n", row.pair_label,
                   row.coefficient, row.coefficient_error, c.published_b, row.distance,
                   c.published_d);
      }
    }
    fmt::print(out, "\nwall time: {:.1f} s\n", seconds_since(start));
    for (const auto& file : preset.manifest()) {
      fmt::print(out, "wrote {}\n", (options.out_dir / file).string());
    }
    return kExitOk;
  });
}

}  // namespace trimer::cli
