#pragma once

// Exact second moments of the deviation state dx_k = x_k - x*_k of the
// uncompensated loop, dx_{k+1} = Acl_k dx_k + B2 du_k, dx_0 = 0:
//
//   Sigma_{k+1} = Acl Sigma_k Acl' + B2 Phi_k B2' + Acl C_k B2' + B2 C_k' Acl'
//   C_{k+1}     = rho Acl C_k + rho B2 Phi_k
//
// plus a norm bound sup_k ||Sigma_k||_2 <= C2 sigma0^2 certified from the
// closed-loop contraction rate.

#include <string>
#include <vector>

#include "lqgame/deviation.hpp"
#include "lqgame/game.hpp"

namespace lqgame {

struct MomentSeries {
  std::vector<Matrix> Sigma;  // N+1, n x n
  std::vector<Matrix> C;      // N+1, n x m2
  std::vector<Matrix> Phi;    // N+1, m2 x m2
  std::vector<double> trace_Sigma;

  std::size_t horizon() const { return Sigma.empty() ? 0 : Sigma.size() - 1; }
  double max_trace() const;
  double max_spectral_norm() const;
};

MomentSeries propagate_moments(const GameSpec& spec, const NashSolution& nash,
                               const Ar1Params& params);

struct ScalingRow {
  double sigma0 = 0.0;
  double max_trace_Sigma = 0.0;
  double ratio_to_first = 0.0;
};

/// max_k tr(Sigma_k) for each sigma0, relative to the first entry.
/// `sigma0_list` must be non-empty, positive and strictly ascending.
std::vector<ScalingRow> quadratic_scaling_table(
    const GameSpec& spec, const NashSolution& nash, double rho,
    const std::vector<double>& sigma0_list);

struct BoundConstants {
  double C1 = 0.0;
  double C2 = 0.0;
};

/// C1 = 2 c beta rho / (1 - beta rho),  C2 = (1 + C1) ||B2||^2 / (1 - beta^2).
/// Requires 0 <= beta < 1, c >= 1, 0 <= rho < 1.
BoundConstants bound_constants(double beta, double c, double rho,
                               double b2_norm);

struct BoundCertificate {
  double c = 1.0;
  double beta = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  bool valid = false;
  std::string reason;
  double observed_sup_norm = 0.0;   // sup_k ||Sigma_k||_2
  double observed_sup_trace = 0.0;  // sup_k tr(Sigma_k)
  double bound = 0.0;               // C2 * sigma0^2 (when valid)
  bool bound_holds = false;
};

/// Uses beta = max_k ||Acl_k||_2 and c = 1; products of closed-loop matrices
/// then contract by beta per factor through submultiplicativity.
BoundCertificate bound_certificate(const GameSpec& spec,
                                   const NashSolution& nash,
                                   const Ar1Params& params,
                                   const MomentSeries& moments);

}  // namespace lqgame
