#include "trimer/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <yaml-cpp/yaml.h>

namespace trimer {

std::string_view to_string(Representation representation) {
  return representation == Representation::wigner ? "wigner" : "positive_p";
}

Representation parse_representation(std::string_view text) {
  if (text == "wigner") return Representation::wigner;
  if (text == "positive_p") return Representation::positive_p;
  throw ConfigError(
      fmt::format("unknown representation '{}' (expected wigner or positive_p)", text));
}

std::string_view to_string(PPScheme scheme) {
  return scheme == PPScheme::semi_implicit ? "semi_implicit" : "euler";
}

PPScheme parse_pp_scheme(std::string_view text) {
  if (text == "semi_implicit") return PPScheme::semi_implicit;
  if (text == "euler") return PPScheme::euler;
  throw ConfigError(
      fmt::format("unknown positive-P scheme '{}' (expected semi_implicit or euler)", text));
}

void Scenario::validate() const {
  params.validate();
  for (const auto& w : wells) w.validate();
  if (!std::isfinite(t_final) || t_final <= 0.0) {
    throw ConfigError(fmt::format("run.t_final must be > 0, got {}", t_final));
  }
  if (!std::isfinite(dt) || dt <= 0.0 || dt > t_final) {
    throw ConfigError(fmt::format("run.dt must satisfy 0 < dt <= t_final, got {}", dt));
  }
  const double steps = std::round(t_final / dt);
  if (std::abs(steps * dt - t_final) > 1e-9 * std::max(1.0, t_final)) {
    throw ConfigError(
        fmt::format("run.t_final ({}) is not a whole number of steps of dt ({})", t_final, dt));
  }
  if (n_traj < 1) throw ConfigError("run.n_traj must be >= 1");
  if (sample_stride < 1) throw ConfigError("run.sample_stride must be >= 1");
  for (double t : measure_times) {
    if (!std::isfinite(t) || t < 0.0 || t > t_final + 1e-12) {
      throw ConfigError(fmt::format("measure time {} outside [0, {}]", t, t_final));
    }
  }
  if (!std::isfinite(bin_width) || bin_width <= 0.0) {
    throw ConfigError(fmt::format("measure.bin_width must be > 0, got {}", bin_width));
  }
}

std::uint64_t Scenario::n_steps() const {
  return static_cast<std::uint64_t>(std::llround(t_final / dt));
}

namespace {

void reject_unknown_keys(const YAML::Node& node, std::string_view section,
                         const std::set<std::string>& known) {
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!known.contains(key)) {
      throw ConfigError(fmt::format("unknown key '{}{}{}'", section,
                                    section.empty() ? "" : ".", key));
    }
  }
}

double as_double(const YAML::Node& node, std::string_view key) {
  try {
    return node.as<double>();
  } catch (const YAML::Exception&) {
    throw ConfigError(fmt::format("{}: expected a number, got '{}'", key, node.Scalar()));
  }
}

std::uint64_t as_count(const YAML::Node& node, std::string_view key) {
  const double value = as_double(node, key);
  if (value < 0.0 || value != std::floor(value) || value > 9.007199254740992e15) {
    throw ConfigError(fmt::format("{}: expected a non-negative integer, got '{}'", key,
                                  node.Scalar()));
  }
  return static_cast<std::uint64_t>(value);
}

// Accepts plain numbers and the forms "pi", "-pi/2", "3*pi/4".
double as_angle(const YAML::Node& node, std::string_view key) {
  const std::string text = node.Scalar();
  const auto pos = text.find("pi");
  if (pos == std::string::npos) return as_double(node, key);

  auto fail = [&] {
    return ConfigError(fmt::format("{}: cannot parse angle '{}'", key, text));
  };
  double coeff = 1.0;
  std::string head = text.substr(0, pos);
  if (head == "-") {
    coeff = -1.0;
  } else if (!head.empty()) {
    if (head.back() != '*') throw fail();
    head.pop_back();
    auto [p, ec] = std::from_chars(head.data(), head.data() + head.size(), coeff);
    if (ec != std::errc{} || p != head.data() + head.size()) throw fail();
  }
  double denom = 1.0;
  std::string tail = text.substr(pos + 2);
  if (!tail.empty()) {
    if (tail.front() != '/') throw fail();
    auto [p, ec] = std::from_chars(tail.data() + 1, tail.data() + tail.size(), denom);
    if (ec != std::errc{} || p != tail.data() + tail.size() || denom == 0.0) throw fail();
  }
  return coeff * std::numbers::pi / denom;
}

StateSpec parse_well(const YAML::Node& node, std::size_t index) {
  const auto section = fmt::format("wells[{}]", index + 1);
  if (!node.IsMap()) throw ConfigError(fmt::format("{} must be a mapping", section));
  reject_unknown_keys(node, section, {"kind", "n", "phase", "r", "squeezing"});
  if (!node["kind"]) throw ConfigError(fmt::format("{}.kind is required", section));

  StateSpec spec;
  spec.kind = parse_state_kind(node["kind"].as<std::string>());
  if (node["n"]) spec.n = as_double(node["n"], section + ".n");
  if (node["phase"]) spec.phase = as_angle(node["phase"], section + ".phase");
  if (node["r"]) spec.r = as_double(node["r"], section + ".r");
  if (node["squeezing"]) {
    spec.squeezing = parse_squeeze_convention(node["squeezing"].as<std::string>());
  }
  if (spec.kind != StateKind::vacuum && !node["n"]) {
    throw ConfigError(fmt::format("{}.n is required for {} states", section,
                                  to_string(spec.kind)));
  }
  return spec;
}

Scenario from_yaml(const YAML::Node& root) {
  if (!root.IsMap()) throw ConfigError("scenario must be a YAML mapping");
  reject_unknown_keys(root, "", {"model", "wells", "run", "measure"});

  Scenario s;
  const auto model = root["model"];
  if (!model || !model.IsMap()) throw ConfigError("missing 'model' section");
  reject_unknown_keys(model, "model", {"chi", "j"});
  if (!model["chi"]) throw ConfigError("model.chi is required");
  s.params.chi = as_double(model["chi"], "model.chi");
  if (model["j"]) s.params.j_tunnel = as_double(model["j"], "model.j");

  const auto wells = root["wells"];
  if (!wells || !wells.IsSequence() || wells.size() == 0) {
    throw ConfigError("'wells' must list the three well states");
  }
  if (wells.size() != kWells) {
    throw ConfigError(fmt::format("'wells' must have exactly {} entries, got {}", kWells,
                                  wells.size()));
  }
  for (std::size_t i = 0; i < kWells; ++i) s.wells[i] = parse_well(wells[i], i);

  if (const auto run = root["run"]) {
    if (!run.IsMap()) throw ConfigError("'run' must be a mapping");
    reject_unknown_keys(run, "run",
                        {"representation", "scheme", "t_final", "dt", "n_traj", "seed",
                         "sample_stride"});
    if (run["representation"]) {
      s.representation = parse_representation(run["representation"].as<std::string>());
    }
    if (run["scheme"]) s.pp_scheme = parse_pp_scheme(run["scheme"].as<std::string>());
    if (run["t_final"]) s.t_final = as_double(run["t_final"], "run.t_final");
    if (run["dt"]) s.dt = as_double(run["dt"], "run.dt");
    if (run["n_traj"]) s.n_traj = as_count(run["n_traj"], "run.n_traj");
    if (run["seed"]) {
      try {
        s.seed = run["seed"].as<std::uint64_t>();
      } catch (const YAML::Exception&) {
        throw ConfigError(fmt::format("run.seed: expected an unsigned 64-bit integer, got '{}'",
                                      run["seed"].Scalar()));
      }
    }
    if (run["sample_stride"]) s.sample_stride = as_count(run["sample_stride"], "run.sample_stride");
  }

  if (const auto measure = root["measure"]) {
    if (!measure.IsMap()) throw ConfigError("'measure' must be a mapping");
    reject_unknown_keys(measure, "measure", {"times", "bin_width"});
    if (const auto times = measure["times"]) {
      if (times.IsScalar()) {
        s.measure_times.push_back(as_double(times, "measure.times"));
      } else if (times.IsSequence()) {
        for (const auto& t : times) s.measure_times.push_back(as_double(t, "measure.times"));
      } else {
        throw ConfigError("measure.times must be a number or a list of numbers");
      }
    }
    if (measure["bin_width"]) s.bin_width = as_double(measure["bin_width"], "measure.bin_width");
  }

  s.validate();
  return s;
}

}  // namespace

Scenario parse_scenario(std::string_view config_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(config_text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(fmt::format("malformed scenario: {}", e.what()));
  }
  try {
    return from_yaml(root);
  } catch (const YAML::Exception& e) {
    throw ConfigError(fmt::format("malformed scenario: {}", e.what()));
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("file not found: {}", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_scenario(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::string serialize_scenario(const Scenario& s) {
  // fmt's "{}" for double is the shortest round-trip representation.
  std::string out;
  auto it = std::back_inserter(out);
  fmt::format_to(it, "model:\n  chi: {}\n  j: {}\n", s.params.chi, s.params.j_tunnel);
  fmt::format_to(it, "wells:\n");
  for (const auto& w : s.wells) {
    fmt::format_to(it, "  - {{kind: {}, n: {}, phase: {}, r: {}, squeezing: {}}}\n",
                   to_string(w.kind), w.n, w.phase, w.r, to_string(w.squeezing));
  }
  fmt::format_to(it,
                 "run:\n  representation: {}\n  scheme: {}\n  t_final: {}\n  dt: {}\n"
                 "  n_traj: {}\n  seed: {}\n  sample_stride: {}\n",
                 to_string(s.representation), to_string(s.pp_scheme), s.t_final, s.dt, s.n_traj,
                 s.seed, s.sample_stride);
  fmt::format_to(it, "measure:\n  times: [{}]\n  bin_width: {}\n",
                 fmt::join(s.measure_times, ", "), s.bin_width);
  return out;
}

}  // namespace trimer
