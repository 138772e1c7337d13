#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "trimer_cli/commands.hpp"

namespace trimer::cli {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Three-well Bose-Hubbard phase-space simulator (truncated Wigner, positive-P).\n"
               "Worker threads default to $TRIMER_THREADS, else the hardware concurrency.",
               "trimer"};
  app.require_subcommand(1, 1);

  SimulateOptions sim;
  std::uint64_t n_traj = 0;
  std::uint64_t seed = 0;
  double dt = 0.0;
  std::string representation;
  auto* simulate = app.add_subcommand("simulate", "Run one scenario file");
  simulate->add_option("config", sim.config, "Scenario YAML file")->required();
  simulate->add_option("--out", sim.out_dir, "Output directory (default .)");
  auto* n_traj_opt = simulate->add_option("--n-traj", n_traj, "Number of trajectories");
  auto* seed_opt = simulate->add_option("--seed", seed, "Master seed");
  auto* dt_opt = simulate->add_option("--dt", dt, "Time step in scaled time");
  auto* rep_opt = simulate->add_option("--representation", representation, "wigner|positive_p");

  CompareOptions cmp;
  auto* compare = app.add_subcommand("compare", "Bhattacharyya comparison of two distribution CSVs");
  compare->add_option("a", cmp.first, "First distribution CSV")->required();
  compare->add_option("b", cmp.second, "Second distribution CSV")->required();
  compare->add_option("--out", cmp.out_dir, "Output directory (default .)");

  ReproduceOptions rep;
  auto* reproduce_cmd = app.add_subcommand("reproduce", "Regenerate a published figure or table");
  reproduce_cmd->add_option("preset", rep.preset, "fig1|fig2|fig3|fig4|table_b|table_d")
      ->required();
  reproduce_cmd->add_option("--out", rep.out_dir, "Output directory (default .)");
  reproduce_cmd->add_option("--scale", rep.scale, "Fraction of the published trajectory count")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    fmt::print(err, "error: {}\n{}", e.what(), app.help());
    return kExitUsage;
  }

  if (*simulate) {
    try {
      if (*n_traj_opt) sim.n_traj = n_traj;
      if (*seed_opt) sim.seed = seed;
      if (*dt_opt) sim.dt = dt;
      if (*rep_opt) sim.representation = parse_representation(representation);
    } catch (const ConfigError& e) {
      fmt::print(err, "error: {}\n", e.what());
      return kExitUsage;
    }
    return cmd_simulate(sim, out, err);
  }
  if (*compare) return cmd_compare(cmp, out, err);
  return cmd_reproduce(rep, out, err);
}

}  // namespace trimer::cli
