#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "trimer/model.hpp"
#include "trimer/scenario.hpp"

using namespace trimer;

namespace {

constexpr const char* kMinimal = R"(
model:
  chi: 1.0e-3
wells:
  - {kind: fock, n: 100}
  - {kind: vacuum}
  - {kind: fock, n: 100}
)";

WignerField random_field(std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 10.0);
  WignerField f;
  for (auto& a : f.alpha) a = {normal(gen), normal(gen)};
  return f;
}

}  // namespace

TEST(ParseScenario, MinimalConfigFillsDefaults) {
  const Scenario s = parse_scenario(kMinimal);
  EXPECT_EQ(s.params.chi, 1e-3);
  EXPECT_EQ(s.params.j_tunnel, 1.0);
  EXPECT_EQ(s.dt, 1e-3);
  EXPECT_EQ(s.representation, Representation::wigner);
  EXPECT_EQ(s.wells[0], StateSpec::fock(100));
  EXPECT_EQ(s.wells[1], StateSpec::vacuum());
  EXPECT_EQ(s.wells[2].phase, 0.0);
  EXPECT_EQ(s.bin_width, 1.0);
}

TEST(ParseScenario, NegativeChiRejected) {
  EXPECT_THROW(parse_scenario("model: {chi: -0.1}\nwells: [{kind: vacuum}, {kind: vacuum}, "
                              "{kind: vacuum}]\n"),
               ConfigError);
}

TEST(ParseScenario, UnknownKindIsNamed) {
  try {
    parse_scenario("model: {chi: 0}\nwells: [{kind: thermal, n: 3}, {kind: vacuum}, "
                   "{kind: vacuum}]\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("thermal"), std::string::npos) << e.what();
  }
}

TEST(ParseScenario, RejectsInvalidInput) {
  const char* cases[] = {
      "model: {chi: 0}\nwells: []\n",
      "model: {chi: 0}\n",
      "model: {chi: 0}\nwells: [{kind: vacuum}, {kind: vacuum}]\n",
      "model: {chi: 0}\nwells: [{kind: fock, n: 2.5}, {kind: vacuum}, {kind: vacuum}]\n",
      "model: {chi: 0}\nwells: [{kind: fock}, {kind: vacuum}, {kind: vacuum}]\n",
      "model: {chi: 0, j: 0}\nwells: [{kind: vacuum}, {kind: vacuum}, {kind: vacuum}]\n",
      "model: {chi: 0, colour: red}\nwells: [{kind: vacuum}, {kind: vacuum}, {kind: vacuum}]\n",
      "model: {chi: 0}\nwells: [{kind: vacuum}, {kind: vacuum}, {kind: vacuum}]\n"
      "run: {dt: 0.3, t_final: 1.0}\n",
      "model: {chi: 0}\nwells: [{kind: vacuum}, {kind: vacuum}, {kind: vacuum}]\n"
      "run: {n_traj: 0}\n",
      "model: {chi: 0}\nwells: [{kind: vacuum}, {kind: vacuum}, {kind: vacuum}]\n"
      "measure: {times: [3.0]}\n",
      "model: {chi: 0}\nwells: [{kind: vacuum}, {kind: vacuum}, {kind: vacuum}]\n"
      "run: {representation: husimi}\n",
      "model: {chi: [1, 2]}\nwells: [{kind: vacuum}, {kind: vacuum}, {kind: vacuum}]\n",
      "model: {chi: 0\n",
      "model: {chi: 0}\nwells: [{kind: vacuum, n: 1}, {kind: vacuum}, {kind: vacuum}]\n",
  };
  for (const char* text : cases) {
    EXPECT_THROW(parse_scenario(text), ConfigError) << text;
  }
}

TEST(ParseScenario, PhaseExpressions) {
  const Scenario s = parse_scenario(
      "model: {chi: 0}\n"
      "wells:\n"
      "  - {kind: coherent, n: 4, phase: pi}\n"
      "  - {kind: coherent, n: 4, phase: -pi/2}\n"
      "  - {kind: squeezed, n: 4, r: 0.5, phase: 3*pi/4, squeezing: exp_r}\n");
  EXPECT_DOUBLE_EQ(s.wells[0].phase, std::numbers::pi);
  EXPECT_DOUBLE_EQ(s.wells[1].phase, -std::numbers::pi / 2.0);
  EXPECT_DOUBLE_EQ(s.wells[2].phase, 0.75 * std::numbers::pi);
  EXPECT_EQ(s.wells[2].squeezing, SqueezeConvention::exp_r);
}

TEST(ParseScenario, MeasureTimesAcceptScalar) {
  const Scenario s = parse_scenario(std::string(kMinimal) + "measure: {times: 1.11}\n");
  ASSERT_EQ(s.measure_times.size(), 1u);
  EXPECT_EQ(s.measure_times[0], 1.11);
}

TEST(ParseScenario, SerializeRoundTripIsIdentity) {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const StateKind kinds[] = {StateKind::fock, StateKind::coherent, StateKind::squeezed,
                             StateKind::vacuum};
  for (int trial = 0; trial < 200; ++trial) {
    Scenario s;
    s.params.chi = u(gen) * 0.1;
    s.params.j_tunnel = 0.1 + u(gen);
    for (auto& w : s.wells) {
      const StateKind kind = kinds[gen() % 4];
      switch (kind) {
        case StateKind::fock:
          w = StateSpec::fock(static_cast<double>(gen() % 2000));
          break;
        case StateKind::coherent:
          w = StateSpec::coherent(1000.0 * u(gen), 6.0 * u(gen) - 3.0);
          break;
        case StateKind::squeezed:
          w = StateSpec::squeezed(1000.0 * u(gen), 2.0 * u(gen), u(gen),
                                  gen() % 2 ? SqueezeConvention::standard
                                            : SqueezeConvention::exp_r);
          break;
        case StateKind::vacuum:
          w = StateSpec::vacuum();
          break;
      }
    }
    s.representation = gen() % 2 ? Representation::wigner : Representation::positive_p;
    s.pp_scheme = gen() % 2 ? PPScheme::semi_implicit : PPScheme::euler;
    s.dt = 1e-3 * (1 + gen() % 4);
    s.t_final = s.dt * static_cast<double>(1 + gen() % 3000);
    s.n_traj = 1 + gen() % 100000;
    s.seed = gen();
    s.sample_stride = 1 + gen() % 50;
    s.measure_times = {s.t_final * u(gen), s.t_final};
    s.bin_width = 0.25 + u(gen);
    const Scenario back = parse_scenario(serialize_scenario(s));
    EXPECT_EQ(back, s) << serialize_scenario(s);
  }
}

TEST(ParseScenario, ShippedScenariosParse) {
  int count = 0;
  for (const auto& entry :
       std::filesystem::directory_iterator(std::filesystem::path(TRIMER_SOURCE_DIR) / "scenarios")) {
    if (entry.path().extension() != ".yaml") continue;
    EXPECT_NO_THROW(load_scenario(entry.path())) << entry.path();
    ++count;
  }
  EXPECT_GE(count, 10);
}

TEST(LoadScenario, MissingFileIsConfigError) {
  try {
    load_scenario("/nonexistent/scenario.yaml");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("file not found"), std::string::npos);
  }
}

TEST(ClassicalEnergy, Examples) {
  const ModelParams linear{0.0, 1.0};
  EXPECT_EQ(classical_energy(WignerField{}, linear), 0.0);
  const double n = 100.0;
  const ModelParams kerr{1e-3, 1.0};
  EXPECT_NEAR(classical_energy(WignerField{{std::sqrt(n), 0.0, std::sqrt(n)}}, kerr), 20.0, 1e-12);
  EXPECT_NEAR(classical_energy(WignerField{{1.0, 1.0, 0.0}}, linear), -2.0, 1e-15);
}

TEST(TotalNumber, Examples) {
  EXPECT_NEAR(total_number(WignerField{{std::sqrt(1000.5), 0.0, std::sqrt(1000.5)}}), 2001.0,
              1e-12);
  const double n = 50.0;
  PPField pp;
  pp.alpha = {std::sqrt(n), 0.0, std::sqrt(n)};
  pp.alpha_plus = {std::sqrt(n), 0.0, std::sqrt(n)};
  EXPECT_NEAR(total_number(pp), 2.0 * n, 1e-12);
  EXPECT_EQ(total_number(WignerField{}), 0.0);
  EXPECT_EQ(total_number(PPField{}), 0.0);
}

TEST(ClassicalEnergy, GlobalPhaseInvariance) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const ModelParams params{1e-3, 1.0};
  for (int trial = 0; trial < 1000; ++trial) {
    const WignerField f = random_field(gen);
    WignerField g = f;
    const Complex rot = std::polar(1.0, angle(gen));
    for (auto& a : g.alpha) a *= rot;
    const double e = classical_energy(f, params);
    EXPECT_LE(std::abs(classical_energy(g, params) - e), 1e-12 * std::max(1.0, std::abs(e)));
    const double n = total_number(f);
    EXPECT_LE(std::abs(total_number(g) - n), 1e-12 * n);
  }
}

TEST(StateSpec, Validation) {
  EXPECT_NO_THROW(StateSpec::fock(3).validate());
  EXPECT_THROW(StateSpec::fock(-1).validate(), ConfigError);
  EXPECT_THROW(StateSpec::fock(2.5).validate(), ConfigError);
  EXPECT_THROW(StateSpec::coherent(-1).validate(), ConfigError);
  EXPECT_THROW(StateSpec::squeezed(10, std::nan("")).validate(), ConfigError);
  EXPECT_THROW((ModelParams{-1e-3, 1.0}.validate()), ConfigError);
  EXPECT_THROW((ModelParams{0.0, 0.0}.validate()), ConfigError);
}

TEST(StateSpec, MeanAmplitudeAndVariances) {
  const auto c = StateSpec::coherent(4.0, std::numbers::pi / 2.0);
  EXPECT_NEAR(std::abs(c.mean_amplitude() - Complex(0.0, 2.0)), 0.0, 1e-15);
  const auto [sx, sy] = StateSpec::squeezed(4.0, 0.5).quadrature_variances();
  EXPECT_DOUBLE_EQ(sx, std::exp(-1.0));
  EXPECT_DOUBLE_EQ(sy, std::exp(1.0));
  const auto [ex, ey] =
      StateSpec::squeezed(4.0, 0.5, 0.0, SqueezeConvention::exp_r).quadrature_variances();
  EXPECT_DOUBLE_EQ(ex, std::exp(-0.5));
  EXPECT_DOUBLE_EQ(ey, std::exp(0.5));
}
