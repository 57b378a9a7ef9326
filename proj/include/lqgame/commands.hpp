#pragma once

// File-producing entry points behind the `nash`, `moments` and `sweep`
// subcommands. Each writes into an existing or newly created directory and
// throws the library's error types; mapping to exit codes is left to main().
//
// Output schemas (header row first, numbers in shortest round-trip form):
//   nash:    gains.csv, riccati.csv   stage,matrix_name,row,col,value
//            nominal.csv              k,signal,component,value
//            diagnostics.txt          key: value
//   moments: moments.csv              k,trace_Sigma,spectral_norm_Sigma,frobenius_C
//            table1.csv               sigma0,max_trace_Sigma,ratio_to_baseline
//            table1_rho_scan.csv      rho,sigma0,max_trace_Sigma
//            bounds.txt               key: value
//   sweep:   sweep.csv                rho,sigma0,mean_J1_uncomp,mean_J1_comp,
//                                     reduction,halfwidth,M,base_seed
//            sigma_trace.csv          k,analytic_trace,mc_trace
//            deltax_samples.csv       trial,k,component,value
//            sweep_analysis.csv       per-cell exact costs and bound data

#include <filesystem>

#include "lqgame/config.hpp"

namespace lqgame {

/// "reduction" in sweep.csv is mean(J1_uncomp - J1_comp).
void cmd_nash(const RunConfig& config, const std::filesystem::path& out_dir);
void cmd_moments(const RunConfig& config, const std::filesystem::path& out_dir);
void cmd_sweep(const RunConfig& config, const std::filesystem::path& out_dir);

}  // namespace lqgame
