#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "trimer/dynamics.hpp"

using namespace trimer;

namespace {

WignerField integrate(WignerField f, const ModelParams& p, double dt, double t_final) {
  const auto steps = static_cast<long>(std::llround(t_final / dt));
  for (long k = 0; k < steps; ++k) f = wigner_step(f, p, dt);
  return f;
}

double max_error(const Amplitudes& a, const Amplitudes& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < kWells; ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

const Amplitudes kGeneric = {Complex(3.0, 1.0), Complex(-0.5, 2.0), Complex(1.5, -2.5)};

}  // namespace

TEST(WignerRhs, Examples) {
  const auto d = wigner_rhs(WignerField{{1.0, 0.0, 0.0}}, ModelParams{0.0, 1.0});
  EXPECT_EQ(d[0], Complex{});
  EXPECT_EQ(d[1], Complex(0.0, 1.0));
  EXPECT_EQ(d[2], Complex{});

  const double n = 100.0, chi = 1e-3;
  const auto k = wigner_rhs(WignerField{{std::sqrt(n), 0.0, 0.0}}, ModelParams{chi, 0.0});
  EXPECT_NEAR(std::abs(k[0] - Complex(0.0, -2.0 * chi * n * std::sqrt(n))), 0.0, 1e-15);
  EXPECT_EQ(k[1], Complex{});

  const Complex a(0.3, -1.2);
  for (double c : {0.0, 1e-3, 0.5}) {
    const auto s = wigner_rhs(WignerField{{a, 0.0, -a}}, ModelParams{c, 1.0});
    EXPECT_EQ(s[1], Complex{});
  }
}

TEST(WignerStep, LinearLimitMatchesClosedForm) {
  const ModelParams p{0.0, 1.0};
  const auto f = integrate(WignerField{kGeneric}, p, 1e-3, 1.0);
  EXPECT_LE(max_error(f.alpha, oracle::linear_solution(kGeneric, 1.0, 1.0)), 1e-10);

  const ModelParams slow{0.0, 0.7};
  const auto g = integrate(WignerField{kGeneric}, slow, 1e-3, 2.0);
  EXPECT_LE(max_error(g.alpha, oracle::linear_solution(kGeneric, 0.7, 2.0)), 1e-10);
}

TEST(WignerStep, FourthOrderConvergence) {
  const ModelParams p{0.0, 1.0};
  const auto exact = oracle::linear_solution(kGeneric, 1.0, 1.0);
  const double e1 = max_error(integrate(WignerField{kGeneric}, p, 0.1, 1.0).alpha, exact);
  const double e2 = max_error(integrate(WignerField{kGeneric}, p, 0.05, 1.0).alpha, exact);
  EXPECT_GT(e1 / e2, 14.0);
  EXPECT_LT(e1 / e2, 18.0);
}

TEST(WignerStep, SingleWellKerrRotation) {
  const double chi = 1e-3, n = 100.0;
  const ModelParams p{chi, 0.0};
  const Complex a0 = std::polar(std::sqrt(n), 0.3);
  const auto f = integrate(WignerField{{a0, 0.0, 0.0}}, p, 1e-3, 1.0);
  EXPECT_LE(std::abs(std::abs(f.alpha[0]) - std::sqrt(n)), 1e-12 * std::sqrt(n));
  const double advance = std::arg(f.alpha[0] / a0);
  EXPECT_NEAR(advance, -2.0 * chi * n * 1.0, 1e-8);
}

TEST(WignerStep, ConservesNumberAndEnergy) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> normal(0.0, 7.0);
  for (double chi : {1e-2, 1e-3, 1e-4}) {
    const ModelParams p{chi, 1.0};
    for (int trial = 0; trial < 20; ++trial) {
      WignerField f;
      for (auto& a : f.alpha) a = {normal(gen), normal(gen)};
      const double n0 = total_number(f), e0 = classical_energy(f, p);
      const auto g = integrate(f, p, 1e-3, 2.0);
      EXPECT_LT(std::abs(total_number(g) - n0) / n0, 1e-6);
      EXPECT_LT(std::abs(classical_energy(g, p) - e0) / std::abs(e0), 1e-6);
    }
  }
}

TEST(WignerStep, BatchMatchesScalarBitwise) {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> normal(0.0, 10.0);
  const ModelParams p{1e-3, 1.0};
  WignerBatch batch;
  std::array<WignerField, kBatchLanes> scalar;
  for (std::size_t l = 0; l < kBatchLanes; ++l) {
    for (auto& a : scalar[l].alpha) a = {normal(gen), normal(gen)};
    batch.set(l, scalar[l]);
  }
  for (int k = 0; k < 500; ++k) {
    wigner_step(batch, p, 1e-3);
    for (auto& f : scalar) f = wigner_step(f, p, 1e-3);
  }
  for (std::size_t l = 0; l < kBatchLanes; ++l) {
    const auto b = batch.get(l);
    for (std::size_t i = 0; i < kWells; ++i) {
      EXPECT_EQ(b.alpha[i], scalar[l].alpha[i]) << "lane " << l << " well " << i;
    }
  }
}

TEST(PPStep, LinearLimitIsNoiselessAndConjugate) {
  const ModelParams p{0.0, 1.0};
  for (auto scheme : {PPScheme::semi_implicit, PPScheme::euler}) {
    PPField f;
    f.alpha = kGeneric;
    for (std::size_t i = 0; i < kWells; ++i) f.alpha_plus[i] = std::conj(kGeneric[i]);
    RngStream rng(1, 0);
    for (int k = 0; k < 1000; ++k) f = pp_step(f, p, 1e-3, rng, scheme);
    for (std::size_t i = 0; i < kWells; ++i) {
      EXPECT_LE(std::abs(f.alpha_plus[i] - std::conj(f.alpha[i])), 1e-10);
    }
    const double err = max_error(f.alpha, oracle::linear_solution(kGeneric, 1.0, 1.0));
    // Midpoint is second order, Euler first order.
    EXPECT_LT(err, scheme == PPScheme::semi_implicit ? 1e-5 : 1e-2) << to_string(scheme);
  }
}

TEST(PPStep, MidpointIsSecondOrderInLinearLimit) {
  const ModelParams p{0.0, 1.0};
  const auto exact = oracle::linear_solution(kGeneric, 1.0, 1.0);
  auto run = [&](double dt) {
    PPField f;
    f.alpha = kGeneric;
    const PPIncrements zero{};
    for (long k = 0; k < std::llround(1.0 / dt); ++k) f = pp_step(f, p, dt, zero);
    return max_error(f.alpha, exact);
  };
  const double ratio = run(0.02) / run(0.01);
  EXPECT_GT(ratio, 3.5);
  EXPECT_LT(ratio, 4.5);
}

TEST(PPStep, RngAndIncrementOverloadsAgree) {
  const ModelParams p{1e-2, 1.0};
  PPField f;
  f.alpha = kGeneric;
  for (std::size_t i = 0; i < kWells; ++i) f.alpha_plus[i] = std::conj(kGeneric[i]);
  RngStream a(3, 1), b(3, 1);
  PPIncrements dw;
  for (auto& w : dw) w = std::sqrt(1e-3) * b.normal();
  const auto x = pp_step(f, p, 1e-3, a);
  const auto y = pp_step(f, p, 1e-3, dw);
  for (std::size_t i = 0; i < kWells; ++i) {
    EXPECT_EQ(x.alpha[i], y.alpha[i]);
    EXPECT_EQ(x.alpha_plus[i], y.alpha_plus[i]);
  }
}

TEST(PPStep, DeterministicForFixedSeed) {
  const ModelParams p{1e-2, 1.0};
  auto run = [&] {
    PPField f;
    f.alpha = kGeneric;
    for (std::size_t i = 0; i < kWells; ++i) f.alpha_plus[i] = std::conj(kGeneric[i]);
    RngStream rng(17, 2);
    for (int k = 0; k < 1000; ++k) f = pp_step(f, p, 1e-3, rng);
    return f;
  };
  const auto a = run(), b = run();
  for (std::size_t i = 0; i < kWells; ++i) {
    EXPECT_EQ(a.alpha[i], b.alpha[i]);
    EXPECT_EQ(a.alpha_plus[i], b.alpha_plus[i]);
  }
}

// Single Kerr mode (J = 0): the exact coherent-state mean field decays as
// a0 exp(N(e^{-2i chi t} - 1)). This checks the Ito interpretation of the
// noise, which the mean-field flow alone would miss.
TEST(PPStep, KerrCoherentMeanMatchesExactSolution) {
  const double chi = 0.05, n = 20.0, t = 1.0, dt = 2e-3;
  const ModelParams p{chi, 0.0};
  const Complex a0 = std::sqrt(n);
  const Complex exact = oracle::kerr_coherent_mean(a0, chi, t);
  for (auto scheme : {PPScheme::semi_implicit, PPScheme::euler}) {
    std::vector<double> re, im;
    for (std::uint64_t traj = 0; traj < 4000; ++traj) {
      RngStream rng(23, traj);
      PPField f;
      f.alpha[0] = a0;
      f.alpha_plus[0] = std::conj(a0);
      for (long k = 0; k < std::llround(t / dt); ++k) f = pp_step(f, p, dt, rng, scheme);
      re.push_back(f.alpha[0].real());
      im.push_back(f.alpha[0].imag());
    }
    const auto r = oracle::mean_error(re), i = oracle::mean_error(im);
    EXPECT_LE(std::abs(r.mean - exact.real()), 5.0 * r.error) << to_string(scheme);
    EXPECT_LE(std::abs(i.mean - exact.imag()), 5.0 * i.error) << to_string(scheme);
    // The mean-field rotation alone would leave |<a>| = sqrt(n).
    EXPECT_LT(std::hypot(r.mean, i.mean), std::sqrt(n) - 5.0 * std::hypot(r.error, i.error));
  }
}
