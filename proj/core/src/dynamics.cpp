#include "trimer/dynamics.hpp"

#include <cmath>
#include <numbers>

namespace trimer {

namespace {

// Written out in real arithmetic; std::complex operator* carries
// NaN-recovery branches that dominate the inner loop.
inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

inline Complex times_i(Complex z) { return {-z.imag(), z.real()}; }

Amplitudes axpy(const Amplitudes& x, double h, const Amplitudes& k) {
  Amplitudes out;
  for (std::size_t i = 0; i < kWells; ++i) out[i] = x[i] + h * k[i];
  return out;
}

Amplitudes rhs(const Amplitudes& a, double chi, double j) {
  Amplitudes d;
  for (std::size_t i = 0; i < kWells; ++i) d[i] = times_i((-2.0 * chi * abs2(a[i])) * a[i]);
  d[0] += times_i(j * a[1]);
  d[1] += times_i(j * (a[0] + a[2]));
  d[2] += times_i(j * a[1]);
  return d;
}

}  // namespace

Amplitudes wigner_rhs(const WignerField& field, const ModelParams& params) {
  return rhs(field.alpha, params.chi, params.j_tunnel);
}

WignerField wigner_step(const WignerField& field, const ModelParams& params, double dt) {
  const double chi = params.chi;
  const double j = params.j_tunnel;
  const auto& a = field.alpha;
  const auto k1 = rhs(a, chi, j);
  const auto k2 = rhs(axpy(a, 0.5 * dt, k1), chi, j);
  const auto k3 = rhs(axpy(a, 0.5 * dt, k2), chi, j);
  const auto k4 = rhs(axpy(a, dt, k3), chi, j);
  WignerField out;
  for (std::size_t i = 0; i < kWells; ++i) {
    out.alpha[i] = a[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

void WignerBatch::set(std::size_t lane, const WignerField& field) {
  for (std::size_t i = 0; i < kWells; ++i) {
    re[i][lane] = field.alpha[i].real();
    im[i][lane] = field.alpha[i].imag();
  }
}

WignerField WignerBatch::get(std::size_t lane) const {
  WignerField field;
  for (std::size_t i = 0; i < kWells; ++i) field.alpha[i] = {re[i][lane], im[i][lane]};
  return field;
}

namespace {

using Lanes = std::array<double, kBatchLanes>;
using BatchAmps = std::array<Lanes, kWells>;

// Mirrors rhs() above operation for operation.
void batch_rhs(const BatchAmps& re, const BatchAmps& im, double chi, double j, BatchAmps& dre,
               BatchAmps& dim) {
  for (std::size_t i = 0; i < kWells; ++i) {
    for (std::size_t l = 0; l < kBatchLanes; ++l) {
      const double s = -2.0 * chi * (re[i][l] * re[i][l] + im[i][l] * im[i][l]);
      dre[i][l] = -(s * im[i][l]);
      dim[i][l] = s * re[i][l];
    }
  }
  for (std::size_t l = 0; l < kBatchLanes; ++l) {
    dre[0][l] += -(j * im[1][l]);
    dim[0][l] += j * re[1][l];
    dre[1][l] += -(j * (im[0][l] + im[2][l]));
    dim[1][l] += j * (re[0][l] + re[2][l]);
    dre[2][l] += -(j * im[1][l]);
    dim[2][l] += j * re[1][l];
  }
}

void batch_axpy(const BatchAmps& x, double h, const BatchAmps& k, BatchAmps& out) {
  for (std::size_t i = 0; i < kWells; ++i) {
    for (std::size_t l = 0; l < kBatchLanes; ++l) out[i][l] = x[i][l] + h * k[i][l];
  }
}

}  // namespace

void wigner_step(WignerBatch& batch, const ModelParams& params, double dt) {
  const double chi = params.chi;
  const double j = params.j_tunnel;
  BatchAmps k1r, k1i, k2r, k2i, k3r, k3i, k4r, k4i, tr, ti;
  batch_rhs(batch.re, batch.im, chi, j, k1r, k1i);
  batch_axpy(batch.re, 0.5 * dt, k1r, tr);
  batch_axpy(batch.im, 0.5 * dt, k1i, ti);
  batch_rhs(tr, ti, chi, j, k2r, k2i);
  batch_axpy(batch.re, 0.5 * dt, k2r, tr);
  batch_axpy(batch.im, 0.5 * dt, k2i, ti);
  batch_rhs(tr, ti, chi, j, k3r, k3i);
  batch_axpy(batch.re, dt, k3r, tr);
  batch_axpy(batch.im, dt, k3i, ti);
  batch_rhs(tr, ti, chi, j, k4r, k4i);
  const double h = dt / 6.0;
  for (std::size_t i = 0; i < kWells; ++i) {
    for (std::size_t l = 0; l < kBatchLanes; ++l) {
      batch.re[i][l] += h * (k1r[i][l] + 2.0 * k2r[i][l] + 2.0 * k3r[i][l] + k4r[i][l]);
      batch.im[i][l] += h * (k1i[i][l] + 2.0 * k2i[i][l] + 2.0 * k3i[i][l] + k4i[i][l]);
    }
  }
}

PPField pp_drift(const PPField& field, const ModelParams& params) {
  const double chi = params.chi;
  const double j = params.j_tunnel;
  const auto& a = field.alpha;
  const auto& b = field.alpha_plus;
  PPField d;
  for (std::size_t i = 0; i < kWells; ++i) {
    d.alpha[i] = times_i(-2.0 * chi * mul(b[i], mul(a[i], a[i])));
    d.alpha_plus[i] = times_i(2.0 * chi * mul(mul(b[i], b[i]), a[i]));
  }
  d.alpha[0] += times_i(j * a[1]);
  d.alpha[1] += times_i(j * (a[0] + a[2]));
  d.alpha[2] += times_i(j * a[1]);
  d.alpha_plus[0] -= times_i(j * b[1]);
  d.alpha_plus[1] -= times_i(j * (b[0] + b[2]));
  d.alpha_plus[2] -= times_i(j * b[1]);
  return d;
}

double pp_magnitude(const PPField& field) {
  double total = 0.0;
  for (std::size_t i = 0; i < kWells; ++i) {
    total += abs2(field.alpha[i]) + abs2(field.alpha_plus[i]);
  }
  return total;
}

PPField pp_step(const PPField& field, const ModelParams& params, double dt, RngStream& rng,
                PPScheme scheme) {
  const double sqrt_dt = std::sqrt(dt);
  PPIncrements dw;
  for (auto& w : dw) w = sqrt_dt * rng.normal();
  return pp_step(field, params, dt, dw, scheme);
}

PPField pp_step(const PPField& field, const ModelParams& params, double dt,
                const PPIncrements& dw, PPScheme scheme) {
  const double chi = params.chi;
  const auto& a0 = field.alpha;
  const auto& b0 = field.alpha_plus;

  if (scheme == PPScheme::euler) {
    const PPField d = pp_drift(field, params);
    PPField out;
    for (std::size_t i = 0; i < kWells; ++i) {
      const Complex noise_a = std::sqrt(Complex(0.0, -2.0 * chi) * mul(a0[i], a0[i]));
      const Complex noise_b = std::sqrt(Complex(0.0, 2.0 * chi) * mul(b0[i], b0[i]));
      out.alpha[i] = a0[i] + dt * d.alpha[i] + dw[2 * i] * noise_a;
      out.alpha_plus[i] = b0[i] + dt * d.alpha_plus[i] + dw[2 * i + 1] * noise_b;
    }
    return out;
  }

  // sqrt(-2i chi a^2) = +-c a with c = sqrt(-2i chi); the sign only flips the
  // Gaussian increment, so the analytic branch c a is used throughout.
  const Complex c_minus = std::sqrt(2.0 * chi) * std::polar(1.0, -std::numbers::pi / 4.0);
  const Complex c_plus = std::conj(c_minus);

  PPField mid = field;
  for (int iter = 0; iter < 3; ++iter) {
    const PPField d = pp_drift(mid, params);
    PPField next;
    for (std::size_t i = 0; i < kWells; ++i) {
      const Complex drift_a = d.alpha[i] + times_i(chi * mid.alpha[i]);
      const Complex drift_b = d.alpha_plus[i] - times_i(chi * mid.alpha_plus[i]);
      next.alpha[i] =
          a0[i] + (0.5 * dt) * drift_a + (0.5 * dw[2 * i]) * mul(c_minus, mid.alpha[i]);
      next.alpha_plus[i] =
          b0[i] + (0.5 * dt) * drift_b + (0.5 * dw[2 * i + 1]) * mul(c_plus, mid.alpha_plus[i]);
    }
    mid = next;
  }
  PPField out;
  for (std::size_t i = 0; i < kWells; ++i) {
    out.alpha[i] = 2.0 * mid.alpha[i] - a0[i];
    out.alpha_plus[i] = 2.0 * mid.alpha_plus[i] - b0[i];
  }
  return out;
}

}  // namespace trimer
