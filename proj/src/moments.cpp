#include "lqgame/moments.hpp"

#include <algorithm>
#include <string>

#include "lqgame/errors.hpp"

namespace lqgame {

double MomentSeries::max_trace() const {
  return trace_Sigma.empty()
             ? 0.0
             : *std::max_element(trace_Sigma.begin(), trace_Sigma.end());
}

double MomentSeries::max_spectral_norm() const {
  double out = 0.0;
  for (const Matrix& s : Sigma) out = std::max(out, spectral_norm(s));
  return out;
}

MomentSeries propagate_moments(const GameSpec& spec, const NashSolution& nash,
                               const Ar1Params& params) {
  const std::size_t N = nash.horizon();
  const Eigen::Index n = spec.n();
  const Eigen::Index m2 = spec.m2();
  if (params.channels() != m2) {
    throw DimensionMismatch("deviation has " +
                            std::to_string(params.channels()) +
                            " channels, B2 has " + std::to_string(m2));
  }
  if (N == 0 || nash.Acl.front().rows() != n || spec.B2.rows() != n) {
    throw DimensionMismatch("Nash solution does not match the game");
  }

  const Matrix& B2 = spec.B2;
  const double rho = params.rho();

  MomentSeries out;
  out.Sigma.reserve(N + 1);
  out.C.reserve(N + 1);
  out.Phi.reserve(N + 1);
  out.Sigma.push_back(Matrix::Zero(n, n));
  out.C.push_back(Matrix::Zero(n, m2));
  for (std::size_t k = 0; k <= N; ++k) out.Phi.push_back(phi_marginal(params, k));

  for (std::size_t k = 0; k < N; ++k) {
    const Matrix& Acl = nash.Acl[k];
    const Matrix& S = out.Sigma[k];
    const Matrix& C = out.C[k];
    const Matrix& Phi = out.Phi[k];
    const Matrix cross = Acl * C * B2.transpose();
    out.Sigma.push_back(symmetrize(Acl * S * Acl.transpose() +
                                   B2 * Phi * B2.transpose() + cross +
                                   cross.transpose()));
    out.C.push_back(rho * (Acl * C) + rho * (B2 * Phi));
  }
  out.trace_Sigma.reserve(N + 1);
  for (const Matrix& s : out.Sigma) out.trace_Sigma.push_back(s.trace());
  return out;
}

std::vector<ScalingRow> quadratic_scaling_table(
    const GameSpec& spec, const NashSolution& nash, double rho,
    const std::vector<double>& sigma0_list) {
  if (sigma0_list.empty()) throw InvalidParams("sigma0 list is empty");
  for (std::size_t i = 1; i < sigma0_list.size(); ++i) {
    if (!(sigma0_list[i] > sigma0_list[i - 1])) {
      throw InvalidParams("sigma0 list must be strictly ascending");
    }
  }
  std::vector<ScalingRow> rows;
  rows.reserve(sigma0_list.size());
  for (double s0 : sigma0_list) {
    const Ar1Params params(rho, s0, spec.m2());
    const MomentSeries mom = propagate_moments(spec, nash, params);
    rows.push_back({s0, mom.max_trace(), 0.0});
  }
  const double base = rows.front().max_trace_Sigma;
  for (ScalingRow& r : rows) {
    r.ratio_to_first = base > 0.0 ? r.max_trace_Sigma / base : 0.0;
  }
  rows.front().ratio_to_first = 1.0;
  return rows;
}

BoundConstants bound_constants(double beta, double c, double rho,
                               double b2_norm) {
  if (!(beta >= 0.0 && beta < 1.0)) throw InvalidParams("beta must be in [0, 1)");
  if (!(c >= 1.0)) throw InvalidParams("c must be >= 1");
  if (!(rho >= 0.0 && rho < 1.0)) throw InvalidParams("rho must be in [0, 1)");
  BoundConstants out;
  out.C1 = 2.0 * c * beta * rho / (1.0 - beta * rho);
  out.C2 = (1.0 + out.C1) * b2_norm * b2_norm / (1.0 - beta * beta);
  return out;
}

BoundCertificate bound_certificate(const GameSpec& spec,
                                   const NashSolution& nash,
                                   const Ar1Params& params,
                                   const MomentSeries& moments) {
  BoundCertificate cert;
  cert.c = 1.0;
  for (const Matrix& Acl : nash.Acl) cert.beta = std::max(cert.beta, spectral_norm(Acl));
  cert.observed_sup_norm = moments.max_spectral_norm();
  cert.observed_sup_trace = moments.max_trace();

  if (!(cert.beta < 1.0)) {
    cert.valid = false;
    cert.reason = "beta = max_k ||Acl_k||_2 = " + std::to_string(cert.beta) +
                  " is not below 1";
    return cert;
  }
  const BoundConstants k =
      bound_constants(cert.beta, cert.c, params.rho(), spectral_norm(spec.B2));
  cert.C1 = k.C1;
  cert.C2 = k.C2;
  cert.valid = true;
  cert.bound = cert.C2 * params.sigma0() * params.sigma0();
  cert.bound_holds = true;
  for (const Matrix& s : moments.Sigma) {
    if (!(spectral_norm(s) <= cert.bound)) cert.bound_holds = false;
  }
  if (!cert.bound_holds) cert.reason = "sup_k ||Sigma_k||_2 exceeds C2 sigma0^2";
  return cert;
}

}  // namespace lqgame
