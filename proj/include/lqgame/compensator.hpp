#pragma once

// Predictive compensation for Player 1. Player 1 observes du_{k-1}, forms
// the one-step prediction z_k = rho du_{k-1}, and plays
//
//   u1_k = -K1_k x_k - L_k z_k.
//
// The gains minimise, stage by stage and with the uncompensated moments held
// fixed, the quadratic
//
//   J_k(L) = tr(L' R1 L Psi_k) + 2 tr(L' R1 K1_k Gamma_k),
//   Psi_k = rho^2 Phi_{k-1},  Gamma_k = C_k,
//
// whose minimiser is L*_k = -(1/rho^2) K1_k C_k Phi_{k-1}^+.

#include <vector>

#include "lqgame/deviation.hpp"
#include "lqgame/game.hpp"
#include "lqgame/moments.hpp"

namespace lqgame {

/// Relative singular-value cutoff used when inverting Phi_{k-1}.
inline constexpr double kPhiPinvCutoff = 1e-12;

struct CompensatorGains {
  std::vector<Matrix> L;  // N entries, m1 x m2; L[0] = 0
  std::vector<Matrix> frozen_C;
  std::vector<Matrix> frozen_Phi;
  double rho = 0.0;

  /// All-zero gains (the nominal Nash policy for Player 1).
  static CompensatorGains zero(std::size_t N, Eigen::Index m1, Eigen::Index m2,
                               double rho);
};

/// `moments` must be the uncompensated-loop moments for the same params.
CompensatorGains optimal_gains(const GameSpec& spec, const NashSolution& nash,
                               const MomentSeries& moments,
                               const Ar1Params& params);

/// J_k(L). Stage 0 is identically zero (z_0 = 0).
double stage_objective(const Matrix& L, std::size_t k, const GameSpec& spec,
                       const NashSolution& nash, const MomentSeries& moments,
                       const Ar1Params& params);

/// Sum over stages of J_k(L_k): the change in E[J1] predicted under frozen
/// moments (non-positive for the optimal gains).
double frozen_cost_change(const CompensatorGains& gains, const GameSpec& spec,
                          const NashSolution& nash,
                          const MomentSeries& moments,
                          const Ar1Params& params);

/// -K1_k x_k - L_k rho prev_dev, where prev_dev = du_{k-1} (zero at k = 0).
Vector apply_policy(const NashSolution& nash, const CompensatorGains& gains,
                    const Vector& x, const Vector& prev_dev, std::size_t k);

struct ExpectedCosts {
  double J1 = 0.0;
  double J2 = 0.0;
};

/// Exact E[J1], E[J2] of the loop driven by the AR(1) deviation with Player 1
/// using `gains`, from the game's x0. Propagates the second-moment matrix of
/// the augmented state (x_k, du_k, du_{k-1}); no sampling and no frozen
/// approximation. Pass zero gains for the uncompensated loop.
ExpectedCosts exact_expected_costs(const GameSpec& spec,
                                   const NashSolution& nash,
                                   const CompensatorGains& gains,
                                   const Ar1Params& params);

}  // namespace lqgame
