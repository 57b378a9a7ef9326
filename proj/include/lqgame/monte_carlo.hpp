#pragma once

// Paired Monte Carlo evaluation of the nominal Nash policy against the
// predictive compensator. Each trial samples one AR(1) deviation path and
// drives both closed loops with it (common random numbers), so the per-trial
// cost difference isolates the effect of the compensator.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lqgame/compensator.hpp"
#include "lqgame/deviation.hpp"
#include "lqgame/game.hpp"
#include "lqgame/moments.hpp"

namespace lqgame {

struct TrialResult {
  double J1_compensated = 0.0;
  double J1_uncompensated = 0.0;
  double J2_compensated = 0.0;
  std::uint64_t deviation_path_seed = 0;
  // Seed of the path that drove the compensated loop; equal to the one above
  // for a valid pairing.
  std::uint64_t compensated_path_seed = 0;
  std::vector<Vector> dx_path;  // uncompensated x_k - x*_k, N+1 entries

  bool operator==(const TrialResult&) const = default;
};

/// Both loops start at spec.x0 and see the same deviation path.
TrialResult run_trial(const GameSpec& spec, const NashSolution& nash,
                      const CompensatorGains& gains, const Ar1Params& params,
                      std::uint64_t seed);

struct EnsembleStats {
  std::size_t M = 0;
  std::uint64_t base_seed = 0;
  double mean_J1_comp = 0.0;
  double mean_J1_uncomp = 0.0;
  double mean_J2_comp = 0.0;
  // mean(J1_uncomp - J1_comp): positive when the compensator helps.
  double mean_reduction = 0.0;
  // mean(J1_comp - J1_uncomp): the same statistic with the opposite sign.
  double mean_comp_minus_uncomp = 0.0;
  // 1.96 * sample std of the paired differences / sqrt(M); NaN when M = 1.
  double reduction_halfwidth = 0.0;
  bool halfwidth_defined = false;
  std::vector<Matrix> empirical_Sigma;  // (1/M) sum dx dx'
  std::vector<Vector> empirical_mean_dx;
  // Componentwise sample standard deviation of dx_k (zero when M = 1).
  std::vector<Vector> empirical_std_dx;
};

struct EnsembleOptions {
  unsigned threads = 1;
  // Keep the first `keep_paths` trials' dx paths (for plotting).
  std::size_t keep_paths = 0;
};

struct EnsembleRun {
  EnsembleStats stats;
  std::vector<TrialResult> kept_trials;
};

/// Trial m uses seed rng::derive_seed(base_seed, m); aggregation is in trial
/// order, so the result does not depend on the thread count.
EnsembleRun run_ensemble(const GameSpec& spec, const NashSolution& nash,
                         const CompensatorGains& gains,
                         const Ar1Params& params, std::size_t M,
                         std::uint64_t base_seed,
                         const EnsembleOptions& options = {});

struct SweepCell {
  double rho = 0.0;
  double sigma0 = 0.0;
  EnsembleStats stats;
  BoundCertificate certificate;
  MomentSeries moments;
  // Sum_k J_k(L*_k): cost change predicted under frozen moments.
  double frozen_predicted_change = 0.0;
};

/// One ensemble per (rho, sigma0) cell, rho-major order. The Nash solution is
/// computed once; every cell reuses the same trial seeds. Errors raised inside
/// a cell are rethrown as SweepCellError carrying the cell coordinates.
std::vector<SweepCell> sweep(const GameSpec& spec,
                             const std::vector<double>& rho_grid,
                             const std::vector<double>& sigma0_grid,
                             std::size_t M, std::uint64_t base_seed,
                             unsigned threads = 1);

}  // namespace lqgame
