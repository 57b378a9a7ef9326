#include "lqgame/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "lqgame/errors.hpp"
#include "lqgame/rng.hpp"

namespace lqgame {

namespace {

constexpr double kZ95 = 1.959963984540054;

// x_{k+1} = A x + B1 u1 + B2 (-K2 x + du_k), u1 from the (possibly zero)
// compensator gains. The recorded u2 is the input actually applied.
Trajectory simulate_loop(const GameSpec& spec, const NashSolution& nash,
                         const CompensatorGains& gains,
                         const DeviationPath& path) {
  const std::size_t N = spec.N;
  Trajectory t;
  t.states.reserve(N + 1);
  t.u1.reserve(N);
  t.u2.reserve(N);
  t.states.push_back(spec.x0);
  const Vector zero_dev = Vector::Zero(spec.m2());
  for (std::size_t k = 0; k < N; ++k) {
    const Vector& x = t.states.back();
    const Vector& prev = k == 0 ? zero_dev : path.values[k - 1];
    Vector u1 = apply_policy(nash, gains, x, prev, k);
    Vector u2 = -(nash.K2[k] * x) + path.values[k];
    Vector next = spec.A * x + spec.B1 * u1 + spec.B2 * u2;
    t.u1.push_back(std::move(u1));
    t.u2.push_back(std::move(u2));
    t.states.push_back(std::move(next));
  }
  return t;
}

void check_inputs(const GameSpec& spec, const NashSolution& nash,
                  const CompensatorGains& gains, const Ar1Params& params) {
  if (nash.horizon() != spec.N || gains.L.size() != spec.N) {
    throw DimensionMismatch("Nash solution / gains do not cover the horizon");
  }
  if (params.channels() != spec.m2()) {
    throw DimensionMismatch("deviation channel count does not match B2");
  }
  if (gains.rho != params.rho()) {
    throw InvalidParams("gains were computed for rho=" +
                        std::to_string(gains.rho) + ", run uses rho=" +
                        std::to_string(params.rho()));
  }
}

}  // namespace

TrialResult run_trial(const GameSpec& spec, const NashSolution& nash,
                      const CompensatorGains& gains, const Ar1Params& params,
                      std::uint64_t seed) {
  check_inputs(spec, nash, gains, params);
  const DeviationPath path = sample_path(params, spec.N, seed);
  const CompensatorGains none =
      CompensatorGains::zero(spec.N, spec.m1(), spec.m2(), params.rho());

  const Trajectory uncomp = simulate_loop(spec, nash, none, path);
  const Trajectory comp = simulate_loop(spec, nash, gains, path);
  const Trajectory nominal = nominal_rollout(spec, nash);

  TrialResult r;
  r.deviation_path_seed = path.seed;
  r.compensated_path_seed = path.seed;
  r.J1_uncompensated = evaluate_cost(uncomp, spec, Player::kOne);
  r.J1_compensated = evaluate_cost(comp, spec, Player::kOne);
  r.J2_compensated = evaluate_cost(comp, spec, Player::kTwo);
  r.dx_path.reserve(spec.N + 1);
  for (std::size_t k = 0; k <= spec.N; ++k) {
    r.dx_path.push_back(uncomp.states[k] - nominal.states[k]);
  }
  return r;
}

EnsembleRun run_ensemble(const GameSpec& spec, const NashSolution& nash,
                         const CompensatorGains& gains,
                         const Ar1Params& params, std::size_t M,
                         std::uint64_t base_seed,
                         const EnsembleOptions& options) {
  if (M < 1) throw InvalidParams("trial count M must be >= 1");
  check_inputs(spec, nash, gains, params);

  std::vector<TrialResult> trials(M);
  const unsigned threads =
      std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(M)));
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      trials[m] = run_trial(spec, nash, gains, params, rng::derive_seed(base_seed, m));
    }
  };
  if (threads == 1) {
    work(0, M);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = M * t / threads;
      const std::size_t end = M * (t + 1) / threads;
      pool.emplace_back([&, t, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    pool.clear();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Sequential, trial-ordered aggregation.
  const std::size_t N = spec.N;
  const Eigen::Index n = spec.n();
  EnsembleRun run;
  EnsembleStats& s = run.stats;
  s.M = M;
  s.base_seed = base_seed;
  s.empirical_Sigma.assign(N + 1, Matrix::Zero(n, n));
  s.empirical_mean_dx.assign(N + 1, Vector::Zero(n));
  std::vector<Vector> sum_sq(N + 1, Vector::Zero(n));
  double sum_diff = 0.0;
  for (const TrialResult& t : trials) {
    if (t.deviation_path_seed != t.compensated_path_seed) {
      throw InvalidParams("unpaired trial: compensated and uncompensated loops "
                          "used different deviation paths");
    }
    s.mean_J1_comp += t.J1_compensated;
    s.mean_J1_uncomp += t.J1_uncompensated;
    s.mean_J2_comp += t.J2_compensated;
    sum_diff += t.J1_uncompensated - t.J1_compensated;
    for (std::size_t k = 0; k <= N; ++k) {
      const Vector& dx = t.dx_path[k];
      s.empirical_Sigma[k] += dx * dx.transpose();
      s.empirical_mean_dx[k] += dx;
    }
  }
  const double inv_m = 1.0 / static_cast<double>(M);
  s.mean_J1_comp *= inv_m;
  s.mean_J1_uncomp *= inv_m;
  s.mean_J2_comp *= inv_m;
  s.mean_reduction = sum_diff * inv_m;
  s.mean_comp_minus_uncomp = -s.mean_reduction;
  for (std::size_t k = 0; k <= N; ++k) {
    s.empirical_Sigma[k] = symmetrize(s.empirical_Sigma[k] * inv_m);
    s.empirical_mean_dx[k] *= inv_m;
  }

  // Second pass for centred statistics.
  double ss_diff = 0.0;
  for (const TrialResult& t : trials) {
    const double d = (t.J1_uncompensated - t.J1_compensated) - s.mean_reduction;
    ss_diff += d * d;
    for (std::size_t k = 0; k <= N; ++k) {
      sum_sq[k] += (t.dx_path[k] - s.empirical_mean_dx[k]).cwiseAbs2();
    }
  }
  s.empirical_std_dx.resize(N + 1);
  if (M > 1) {
    const double denom = static_cast<double>(M - 1);
    s.reduction_halfwidth =
        kZ95 * std::sqrt(ss_diff / denom) / std::sqrt(static_cast<double>(M));
    s.halfwidth_defined = true;
    for (std::size_t k = 0; k <= N; ++k) {
      s.empirical_std_dx[k] = (sum_sq[k] / denom).cwiseSqrt();
    }
  } else {
    s.reduction_halfwidth = std::numeric_limits<double>::quiet_NaN();
    s.halfwidth_defined = false;
    for (std::size_t k = 0; k <= N; ++k) s.empirical_std_dx[k] = Vector::Zero(n);
  }

  const std::size_t keep = std::min(options.keep_paths, M);
  run.kept_trials.assign(trials.begin(), trials.begin() + static_cast<std::ptrdiff_t>(keep));
  return run;
}

std::vector<SweepCell> sweep(const GameSpec& spec,
                             const std::vector<double>& rho_grid,
                             const std::vector<double>& sigma0_grid,
                             std::size_t M, std::uint64_t base_seed,
                             unsigned threads) {
  if (rho_grid.empty() || sigma0_grid.empty()) {
    throw InvalidParams("sweep grids must be non-empty");
  }
  const NashSolution nash = solve_feedback_nash(spec);

  std::vector<SweepCell> cells;
  cells.reserve(rho_grid.size() * sigma0_grid.size());
  for (double rho : rho_grid) {
    for (double s0 : sigma0_grid) {
      try {
        const Ar1Params params(rho, s0, spec.m2());
        SweepCell cell;
        cell.rho = rho;
        cell.sigma0 = s0;
        cell.moments = propagate_moments(spec, nash, params);
        const CompensatorGains gains =
            optimal_gains(spec, nash, cell.moments, params);
        cell.frozen_predicted_change =
            frozen_cost_change(gains, spec, nash, cell.moments, params);
        cell.certificate = bound_certificate(spec, nash, params, cell.moments);
        cell.stats = run_ensemble(spec, nash, gains, params, M, base_seed,
                                  {.threads = threads, .keep_paths = 0})
                         .stats;
        cells.push_back(std::move(cell));
      } catch (const Error& e) {
        throw SweepCellError(rho, s0, e.what());
      }
    }
  }
  return cells;
}

}  // namespace lqgame
