#include "lqgame/commands.hpp"

#include <string>
#include <vector>

#include "lqgame/compensator.hpp"
#include "lqgame/csv.hpp"
#include "lqgame/deviation.hpp"
#include "lqgame/game.hpp"
#include "lqgame/moments.hpp"
#include "lqgame/monte_carlo.hpp"

namespace lqgame {

namespace fs = std::filesystem;

namespace {

// Rho values scanned for the absolute level of max_k tr(Sigma_k) in Table 1.
const std::vector<double> kTable1RhoScan = {0.0,  0.1, 0.2,  0.3,  0.4,
                                            0.5,  0.6, 0.7,  0.8,  0.85,
                                            0.9,  0.92, 0.93, 0.94, 0.95,
                                            0.97, 0.99};

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

void write_matrix_rows(CsvWriter& csv, std::size_t stage, const char* name,
                       const Matrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      csv.row({stage, name, static_cast<long>(r), static_cast<long>(c),
               m(r, c)});
    }
  }
}

double scalar_param(const ParamValues& p, const char* path) {
  if (p.is_grid || p.values.size() != 1) {
    throw ConfigValidationError(path, "a scalar value is required");
  }
  return p.values.front();
}

Ar1Params make_params(double rho, double sigma0, Eigen::Index channels,
                      const std::string& path) {
  try {
    return Ar1Params(rho, sigma0, channels);
  } catch (const InvalidParams& e) {
    throw ConfigValidationError(path, e.what());
  }
}

}  // namespace

void cmd_nash(const RunConfig& config, const fs::path& out_dir) {
  const GameSpec& spec = config.game;
  const NashSolution nash = solve_feedback_nash(spec);
  const DiagnosticsReport diag = check_assumptions(spec, nash);
  ensure_directory(out_dir);

  CsvWriter gains(out_dir / "gains.csv",
                  {"stage", "matrix_name", "row", "col", "value"});
  for (std::size_t k = 0; k < nash.horizon(); ++k) {
    write_matrix_rows(gains, k, "K1", nash.K1[k]);
    write_matrix_rows(gains, k, "K2", nash.K2[k]);
  }
  gains.close();

  CsvWriter riccati(out_dir / "riccati.csv",
                    {"stage", "matrix_name", "row", "col", "value"});
  for (std::size_t k = 0; k <= nash.horizon(); ++k) {
    write_matrix_rows(riccati, k, "P1", nash.P1[k]);
    write_matrix_rows(riccati, k, "P2", nash.P2[k]);
  }
  riccati.close();

  const Trajectory traj = nominal_rollout(spec, nash);
  CsvWriter nominal(out_dir / "nominal.csv",
                    {"k", "signal", "component", "value"});
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    for (Eigen::Index i = 0; i < traj.states[k].size(); ++i) {
      nominal.row({k, "x", static_cast<long>(i), traj.states[k](i)});
    }
    if (k < traj.u1.size()) {
      for (Eigen::Index i = 0; i < traj.u1[k].size(); ++i) {
        nominal.row({k, "u1", static_cast<long>(i), traj.u1[k](i)});
      }
      for (Eigen::Index i = 0; i < traj.u2[k].size(); ++i) {
        nominal.row({k, "u2", static_cast<long>(i), traj.u2[k](i)});
      }
    }
  }
  nominal.close();

  KeyValueWriter kv(out_dir / "diagnostics.txt");
  kv.put("horizon", nash.horizon());
  kv.put("max_spectral_radius", nash.max_spectral_radius);
  kv.put("schur_stable", diag.schur_stable);
  kv.put("beta_max_spectral_norm", diag.beta);
  kv.put("beta_below_one", diag.beta_below_one);
  kv.put("min_stage_solve_conditioning", nash.min_stage_solve_conditioning);
  kv.put("min_invertibility_margin", diag.min_invertibility_margin);
  kv.put("stage_matrices_invertible", diag.stage_matrices_invertible);
  kv.put("controllability_rank", static_cast<long>(diag.controllability_rank));
  kv.put("controllable", diag.controllable);
  kv.put("nominal_cost_J1", evaluate_cost(traj, spec, Player::kOne));
  kv.put("nominal_cost_J2", evaluate_cost(traj, spec, Player::kTwo));
  kv.put("value_x0_P1_x0", spec.x0.dot(nash.P1[0] * spec.x0));
  kv.put("value_x0_P2_x0", spec.x0.dot(nash.P2[0] * spec.x0));
  kv.close();
}

void cmd_moments(const RunConfig& config, const fs::path& out_dir) {
  const GameSpec& spec = config.game;
  const double rho = scalar_param(config.ar1.rho, "ar1.rho");
  const std::vector<double>& sigma0s = config.ar1.sigma0.values;
  if (sigma0s.empty()) {
    throw ConfigValidationError("ar1.sigma0_grid", "must not be empty");
  }
  for (std::size_t i = 1; i < sigma0s.size(); ++i) {
    if (!(sigma0s[i] > sigma0s[i - 1])) {
      throw ConfigValidationError(
          "ar1.sigma0_grid[" + std::to_string(i) + "]",
          "grid must be strictly ascending");
    }
  }
  const Ar1Params params =
      make_params(rho, sigma0s.front(), spec.m2(), "ar1");

  const NashSolution nash = solve_feedback_nash(spec);
  const MomentSeries moments = propagate_moments(spec, nash, params);
  const BoundCertificate cert =
      bound_certificate(spec, nash, params, moments);
  const std::vector<ScalingRow> table =
      quadratic_scaling_table(spec, nash, rho, sigma0s);
  ensure_directory(out_dir);

  CsvWriter mcsv(out_dir / "moments.csv",
                 {"k", "trace_Sigma", "spectral_norm_Sigma", "frobenius_C"});
  for (std::size_t k = 0; k < moments.Sigma.size(); ++k) {
    mcsv.row({k, moments.trace_Sigma[k], spectral_norm(moments.Sigma[k]),
              moments.C[k].norm()});
  }
  mcsv.close();

  CsvWriter t1(out_dir / "table1.csv",
               {"sigma0", "max_trace_Sigma", "ratio_to_baseline"});
  for (const ScalingRow& row : table) {
    t1.row({row.sigma0, row.max_trace_Sigma, row.ratio_to_first});
  }
  t1.close();

  CsvWriter scan(out_dir / "table1_rho_scan.csv",
                 {"rho", "sigma0", "max_trace_Sigma"});
  for (double r : kTable1RhoScan) {
    const Ar1Params p(r, sigma0s.front(), spec.m2());
    scan.row({r, sigma0s.front(), propagate_moments(spec, nash, p).max_trace()});
  }
  scan.close();

  KeyValueWriter kv(out_dir / "bounds.txt");
  kv.put("rho", rho);
  kv.put("sigma0", params.sigma0());
  kv.put("c", cert.c);
  kv.put("beta", cert.beta);
  kv.put("certificate_valid", cert.valid);
  if (!cert.reason.empty()) kv.put("reason", CsvField(cert.reason));
  kv.put("C1", cert.C1);
  kv.put("C2", cert.C2);
  kv.put("bound_C2_sigma0_sq", cert.bound);
  kv.put("observed_sup_spectral_norm_Sigma", cert.observed_sup_norm);
  kv.put("observed_sup_trace_Sigma", cert.observed_sup_trace);
  kv.put("bound_holds", cert.bound_holds);
  kv.close();
}

void cmd_sweep(const RunConfig& config, const fs::path& out_dir) {
  GameSpec spec = config.game;
  spec.x0 = Vector::Zero(spec.n());
  const std::size_t M = config.mc.trials;
  const std::uint64_t seed = config.mc.base_seed;
  const unsigned threads = config.mc.threads;

  const Ar1Params trace_params = make_params(
      config.mc.trace_rho, config.mc.trace_sigma0, spec.m2(), "mc");

  const std::vector<SweepCell> cells =
      sweep(spec, config.ar1.rho.values, config.ar1.sigma0.values, M, seed,
            threads);

  const NashSolution nash = solve_feedback_nash(spec);
  const MomentSeries trace_moments =
      propagate_moments(spec, nash, trace_params);
  const CompensatorGains trace_gains =
      optimal_gains(spec, nash, trace_moments, trace_params);
  EnsembleOptions opts;
  opts.threads = threads;
  opts.keep_paths = config.mc.deltax_trials;
  const EnsembleRun trace_run =
      run_ensemble(spec, nash, trace_gains, trace_params, M, seed, opts);
  ensure_directory(out_dir);

  CsvWriter sw(out_dir / "sweep.csv",
               {"rho", "sigma0", "mean_J1_uncomp", "mean_J1_comp", "reduction",
                "halfwidth", "M", "base_seed"});
  for (const SweepCell& cell : cells) {
    sw.row({cell.rho, cell.sigma0, cell.stats.mean_J1_uncomp,
            cell.stats.mean_J1_comp, cell.stats.mean_reduction,
            cell.stats.reduction_halfwidth, cell.stats.M,
            cell.stats.base_seed});
  }
  sw.close();

  CsvWriter analysis(
      out_dir / "sweep_analysis.csv",
      {"rho", "sigma0", "exact_J1_uncomp", "exact_J1_comp", "exact_reduction",
       "frozen_predicted_change", "max_trace_Sigma", "sup_spectral_norm_Sigma",
       "beta", "C2", "bound", "bound_holds"});
  for (const SweepCell& cell : cells) {
    const Ar1Params p(cell.rho, cell.sigma0, spec.m2());
    const CompensatorGains gains =
        optimal_gains(spec, nash, cell.moments, p);
    const ExpectedCosts comp = exact_expected_costs(spec, nash, gains, p);
    const ExpectedCosts uncomp = exact_expected_costs(
        spec, nash,
        CompensatorGains::zero(nash.horizon(), spec.m1(), spec.m2(), cell.rho),
        p);
    analysis.row({cell.rho, cell.sigma0, uncomp.J1, comp.J1,
                  uncomp.J1 - comp.J1, cell.frozen_predicted_change,
                  cell.moments.max_trace(), cell.certificate.observed_sup_norm,
                  cell.certificate.beta, cell.certificate.C2,
                  cell.certificate.bound,
                  cell.certificate.bound_holds});
  }
  analysis.close();

  CsvWriter st(out_dir / "sigma_trace.csv",
               {"k", "analytic_trace", "mc_trace"});
  for (std::size_t k = 0; k < trace_moments.Sigma.size(); ++k) {
    st.row({k, trace_moments.trace_Sigma[k],
            trace_run.stats.empirical_Sigma[k].trace()});
  }
  st.close();

  CsvWriter dx(out_dir / "deltax_samples.csv",
               {"trial", "k", "component", "value"});
  for (std::size_t t = 0; t < trace_run.kept_trials.size(); ++t) {
    const std::vector<Vector>& path = trace_run.kept_trials[t].dx_path;
    for (std::size_t k = 0; k < path.size(); ++k) {
      for (Eigen::Index i = 0; i < path[k].size(); ++i) {
        dx.row({t, k, static_cast<long>(i), path[k](i)});
      }
    }
  }
  dx.close();
}

}  // namespace lqgame
