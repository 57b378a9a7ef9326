#include "lqgame/compensator.hpp"

#include <string>

#include "lqgame/errors.hpp"

namespace lqgame {

namespace {

void check_stage_inputs(std::size_t k, const NashSolution& nash,
                        const MomentSeries& moments) {
  if (k >= nash.horizon()) {
    throw DimensionMismatch("stage " + std::to_string(k) +
                            " outside horizon " + std::to_string(nash.horizon()));
  }
  if (moments.horizon() < nash.horizon()) {
    throw DimensionMismatch("moment series shorter than the Nash horizon");
  }
}

}  // namespace

CompensatorGains CompensatorGains::zero(std::size_t N, Eigen::Index m1,
                                        Eigen::Index m2, double rho) {
  CompensatorGains g;
  g.L.assign(N, Matrix::Zero(m1, m2));
  g.rho = rho;
  return g;
}

CompensatorGains optimal_gains(const GameSpec& spec, const NashSolution& nash,
                               const MomentSeries& moments,
                               const Ar1Params& params) {
  const std::size_t N = nash.horizon();
  if (moments.horizon() < N) {
    throw DimensionMismatch("moment series shorter than the Nash horizon");
  }
  if (params.channels() != spec.m2() || moments.C.front().cols() != spec.m2()) {
    throw DimensionMismatch("deviation channel count does not match B2");
  }
  const double rho = params.rho();
  CompensatorGains g = CompensatorGains::zero(N, spec.m1(), spec.m2(), rho);
  g.frozen_C = moments.C;
  g.frozen_Phi = moments.Phi;
  if (rho == 0.0) return g;

  const double inv_rho2 = 1.0 / (rho * rho);
  for (std::size_t k = 1; k < N; ++k) {
    g.L[k] = -inv_rho2 * nash.K1[k] * moments.C[k] *
             pseudo_inverse(moments.Phi[k - 1], kPhiPinvCutoff);
  }
  return g;
}

double stage_objective(const Matrix& L, std::size_t k, const GameSpec& spec,
                       const NashSolution& nash, const MomentSeries& moments,
                       const Ar1Params& params) {
  check_stage_inputs(k, nash, moments);
  if (L.rows() != spec.m1() || L.cols() != spec.m2()) {
    throw DimensionMismatch("L must be m1 x m2");
  }
  if (k == 0) return 0.0;
  const double rho = params.rho();
  const Matrix Psi = (rho * rho) * moments.Phi[k - 1];
  const Matrix& Gamma = moments.C[k];
  const Matrix LtR = L.transpose() * spec.R1;
  return (LtR * L * Psi).trace() + 2.0 * (LtR * nash.K1[k] * Gamma).trace();
}

double frozen_cost_change(const CompensatorGains& gains, const GameSpec& spec,
                          const NashSolution& nash,
                          const MomentSeries& moments,
                          const Ar1Params& params) {
  double total = 0.0;
  for (std::size_t k = 0; k < gains.L.size(); ++k) {
    total += stage_objective(gains.L[k], k, spec, nash, moments, params);
  }
  return total;
}

Vector apply_policy(const NashSolution& nash, const CompensatorGains& gains,
                    const Vector& x, const Vector& prev_dev, std::size_t k) {
  if (k >= nash.horizon() || k >= gains.L.size()) {
    throw DimensionMismatch("stage " + std::to_string(k) + " outside horizon");
  }
  const Matrix& K1 = nash.K1[k];
  const Matrix& L = gains.L[k];
  if (x.size() != K1.cols() || prev_dev.size() != L.cols() ||
      L.rows() != K1.rows()) {
    throw DimensionMismatch("policy input sizes do not match the gains");
  }
  return -(K1 * x) - L * (gains.rho * prev_dev);
}

ExpectedCosts exact_expected_costs(const GameSpec& spec,
                                   const NashSolution& nash,
                                   const CompensatorGains& gains,
                                   const Ar1Params& params) {
  const std::size_t N = nash.horizon();
  const Eigen::Index n = spec.n();
  const Eigen::Index m2 = spec.m2();
  if (gains.L.size() != N || params.channels() != m2) {
    throw DimensionMismatch("gains / deviation do not match the game");
  }
  const double rho = params.rho();
  const double sw2 = params.sigma_w() * params.sigma_w();
  const Eigen::Index d = n + 2 * m2;

  // xi_k = (x_k, du_k, du_{k-1});  S = E[xi xi'] (non-central).
  Matrix S = Matrix::Zero(d, d);
  S.topLeftCorner(n, n) = spec.x0 * spec.x0.transpose();

  Matrix noise = Matrix::Zero(d, d);
  noise.block(n, n, m2, m2) = sw2 * Matrix::Identity(m2, m2);

  ExpectedCosts out;
  Matrix T = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < N; ++k) {
    Matrix U1 = Matrix::Zero(spec.m1(), d);
    U1.leftCols(n) = -nash.K1[k];
    U1.rightCols(m2) = -rho * gains.L[k];
    Matrix U2 = Matrix::Zero(m2, d);
    U2.leftCols(n) = -nash.K2[k];
    U2.middleCols(n, m2) = Matrix::Identity(m2, m2);

    const Matrix Sxx = S.topLeftCorner(n, n);
    out.J1 += (spec.Q1 * Sxx).trace() + (U1.transpose() * spec.R1 * U1 * S).trace();
    out.J2 += (spec.Q2 * Sxx).trace() + (U2.transpose() * spec.R2 * U2 * S).trace();

    // x_{k+1} = A x + B1 u1 + B2 u2; du_{k+1} = rho du_k + sw w; shift du_k.
    T.setZero();
    T.topRows(n) = spec.B1 * U1 + spec.B2 * U2;
    T.topLeftCorner(n, n) += spec.A;
    T.block(n, n, m2, m2) = rho * Matrix::Identity(m2, m2);
    T.block(n + m2, n, m2, m2) = Matrix::Identity(m2, m2);
    S = symmetrize(T * S * T.transpose() + noise);
  }
  const Matrix SxxN = S.topLeftCorner(n, n);
  out.J1 += (spec.Q1N * SxxN).trace();
  out.J2 += (spec.Q2N * SxxN).trace();
  return out;
}

}  // namespace lqgame
