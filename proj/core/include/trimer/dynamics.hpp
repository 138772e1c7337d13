#pragma once

#include "trimer/model.hpp"
#include "trimer/rng.hpp"
#include "trimer/scenario.hpp"

namespace trimer {

/// Mean-field flow sampled by the truncated Wigner method:
///
///   da1/dt = -2i chi |a1|^2 a1 + iJ a2
///   da2/dt = -2i chi |a2|^2 a2 + iJ (a1 + a3)
///   da3/dt = -2i chi |a3|^2 a3 + iJ a2
///
/// The middle well couples to both neighbours; this is the only form that
/// follows from the Hamiltonian and conserves sum |a_i|^2.
Amplitudes wigner_rhs(const WignerField& field, const ModelParams& params);

/// One classical fourth-order Runge-Kutta step.
WignerField wigner_step(const WignerField& field, const ModelParams& params, double dt);

/// Lanes in a WignerBatch.
inline constexpr std::size_t kBatchLanes = 8;

/// Structure-of-arrays block of Wigner trajectories advanced in lockstep.
/// re[i][l], im[i][l] hold well i of lane l.
struct WignerBatch {
  std::array<std::array<double, kBatchLanes>, kWells> re{};
  std::array<std::array<double, kBatchLanes>, kWells> im{};

  void set(std::size_t lane, const WignerField& field);
  WignerField get(std::size_t lane) const;
};

/// wigner_step applied to every lane; the arithmetic is the same operation
/// sequence, so each lane tracks the scalar integrator.
void wigner_step(WignerBatch& batch, const ModelParams& params, double dt);

/// Ito drift of the positive-P equations, returned as (d alpha, d alpha_plus).
PPField pp_drift(const PPField& field, const ModelParams& params);

/// Advances the positive-P Ito SDEs by one step, consuming six standard
/// normals from rng (one per real noise eta_1..eta_6, in the order
/// alpha_1, alpha_1^+, alpha_2, ...).
///
/// semi_implicit: iterated midpoint (three fixed-point passes). The midpoint
/// rule converges to the Stratonovich solution, so it integrates the
/// Stratonovich-equivalent drift (Ito drift - B dB/2, i.e. +i chi alpha and
/// -i chi alpha^+) with the noise coefficient evaluated at the midpoint. The
/// combination reproduces the Ito process.
///
/// euler: Euler-Maruyama on the Ito form, noise coefficient
/// sqrt(-+2i chi alpha^2) (principal root) evaluated at the step start.
PPField pp_step(const PPField& field, const ModelParams& params, double dt, RngStream& rng,
                PPScheme scheme = PPScheme::semi_implicit);

/// Wiener increments for one positive-P step, ordered as in pp_step.
using PPIncrements = std::array<double, 2 * kWells>;

/// pp_step with caller-supplied increments dW_j (variance dt each). Lets a
/// refinement study feed the same Brownian path to a coarse and a fine grid.
PPField pp_step(const PPField& field, const ModelParams& params, double dt,
                const PPIncrements& dw, PPScheme scheme = PPScheme::semi_implicit);

/// Sum |alpha|^2 + |alpha^+|^2, the quantity watched by the divergence guard.
double pp_magnitude(const PPField& field);

}  // namespace trimer
