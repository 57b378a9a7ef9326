#include "lqgame/game.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "lqgame/errors.hpp"

namespace lqgame {

namespace {

void require_shape(const Matrix& m, Eigen::Index rows, Eigen::Index cols,
                   const char* name) {
  if (m.rows() != rows || m.cols() != cols) {
    throw DimensionMismatch(std::string(name) + " is " +
                            std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", expected " +
                            std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void require_psd(const Matrix& m, const char* name) {
  if (!is_symmetric_psd(m)) {
    throw IndefiniteWeight(std::string(name) +
                           " must be symmetric positive semidefinite");
  }
}

void require_pd(const Matrix& m, const char* name) {
  if (!is_symmetric_pd(m)) {
    throw IndefiniteWeight(std::string(name) +
                           " must be symmetric positive definite");
  }
}

Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

void GameSpec::validate() const {
  if (N < 1) throw InvalidParams("horizon N must be >= 1");
  const Eigen::Index nx = A.rows();
  if (nx < 1) throw DimensionMismatch("A must be non-empty");
  require_shape(A, nx, nx, "A");
  if (B1.rows() != nx) require_shape(B1, nx, B1.cols(), "B1");
  if (B2.rows() != nx) require_shape(B2, nx, B2.cols(), "B2");
  if (B1.cols() < 1 || B2.cols() < 1) {
    throw DimensionMismatch("B1 and B2 need at least one input column");
  }
  require_shape(Q1, nx, nx, "Q1");
  require_shape(Q2, nx, nx, "Q2");
  require_shape(Q1N, nx, nx, "Q1N");
  require_shape(Q2N, nx, nx, "Q2N");
  require_shape(R1, m1(), m1(), "R1");
  require_shape(R2, m2(), m2(), "R2");
  if (x0.size() != nx) {
    throw DimensionMismatch("x0 has " + std::to_string(x0.size()) +
                            " entries, expected " + std::to_string(nx));
  }
  require_psd(Q1, "Q1");
  require_psd(Q2, "Q2");
  require_psd(Q1N, "Q1N");
  require_psd(Q2N, "Q2N");
  require_pd(R1, "R1");
  require_pd(R2, "R2");
}

GameSpec benchmark_game() {
  GameSpec g;
  g.A = from_rows({{0.7484, 0.2386, 0.0703},
                   {0.2386, 0.6585, 0.2795},
                   {0.0703, 0.2795, 0.4471}});
  g.B1 = from_rows({{0.3561, 0.0820, 0.0905},
                    {0.0820, 0.3496, 0.2702},
                    {0.0905, 0.2702, 0.3838}});
  g.B2 = from_rows({{0.2748, 0.0950, 0.0965},
                    {0.0950, 0.3439, 0.2671},
                    {0.0965, 0.2671, 0.3797}});
  g.Q1 = from_rows({{50, 5, 2}, {5, 10, 3}, {2, 3, 1}});
  g.Q2 = g.Q1;
  g.Q1N = g.Q1;
  g.Q2N = g.Q1;
  g.R1 = from_rows({{15.0, 2.25, 0.0}, {2.25, 7.5, 0.0}, {0.0, 0.0, 3.0}});
  g.R2 = g.R1;
  g.N = 9;
  g.x0 = Vector::Ones(3);
  return g;
}

NashSolution solve_feedback_nash(const GameSpec& spec) {
  spec.validate();
  const std::size_t N = spec.N;
  const Eigen::Index n = spec.n();
  const Eigen::Index m1 = spec.m1();
  const Eigen::Index m2 = spec.m2();

  NashSolution sol;
  sol.K1.resize(N);
  sol.K2.resize(N);
  sol.Acl.resize(N);
  sol.P1.resize(N + 1);
  sol.P2.resize(N + 1);
  sol.P1[N] = spec.Q1N;
  sol.P2[N] = spec.Q2N;
  sol.min_stage_solve_conditioning = 1.0;

  Matrix S(m1 + m2, m1 + m2);
  Matrix Y(m1 + m2, n);
  for (std::size_t k = N; k-- > 0;) {
    const Matrix& P1n = sol.P1[k + 1];
    const Matrix& P2n = sol.P2[k + 1];
    const Matrix B1tP1 = spec.B1.transpose() * P1n;
    const Matrix B2tP2 = spec.B2.transpose() * P2n;

    S.topLeftCorner(m1, m1) = spec.R1 + B1tP1 * spec.B1;
    S.topRightCorner(m1, m2) = B1tP1 * spec.B2;
    S.bottomLeftCorner(m2, m1) = B2tP2 * spec.B1;
    S.bottomRightCorner(m2, m2) = spec.R2 + B2tP2 * spec.B2;
    Y.topRows(m1) = B1tP1 * spec.A;
    Y.bottomRows(m2) = B2tP2 * spec.A;

    const double rcond = reciprocal_condition(S);
    sol.min_stage_solve_conditioning =
        std::min(sol.min_stage_solve_conditioning, rcond);
    if (!(rcond >= kStageConditioningFloor)) throw SingularStageSystem(k, rcond);

    const Matrix K = S.fullPivLu().solve(Y);
    sol.K1[k] = K.topRows(m1);
    sol.K2[k] = K.bottomRows(m2);
    sol.Acl[k] = spec.A - spec.B1 * sol.K1[k] - spec.B2 * sol.K2[k];

    const Matrix& Acl = sol.Acl[k];
    sol.P1[k] = symmetrize(spec.Q1 + sol.K1[k].transpose() * spec.R1 * sol.K1[k] +
                           Acl.transpose() * P1n * Acl);
    sol.P2[k] = symmetrize(spec.Q2 + sol.K2[k].transpose() * spec.R2 * sol.K2[k] +
                           Acl.transpose() * P2n * Acl);
  }

  for (const Matrix& Acl : sol.Acl) {
    sol.max_spectral_radius = std::max(sol.max_spectral_radius, spectral_radius(Acl));
    sol.max_spectral_norm = std::max(sol.max_spectral_norm, spectral_norm(Acl));
  }
  return sol;
}

Trajectory nominal_rollout(const GameSpec& spec, const NashSolution& nash) {
  if (nash.horizon() != spec.N) {
    throw DimensionMismatch("Nash solution covers " +
                            std::to_string(nash.horizon()) +
                            " stages, spec horizon is " + std::to_string(spec.N));
  }
  if (spec.x0.size() != spec.n()) throw DimensionMismatch("x0 size != n");

  Trajectory traj;
  traj.states.reserve(spec.N + 1);
  traj.u1.reserve(spec.N);
  traj.u2.reserve(spec.N);
  traj.states.push_back(spec.x0);
  for (std::size_t k = 0; k < spec.N; ++k) {
    const Vector& x = traj.states.back();
    traj.u1.push_back(-nash.K1[k] * x);
    traj.u2.push_back(-nash.K2[k] * x);
    traj.states.push_back(nash.Acl[k] * x);
  }
  return traj;
}

double evaluate_cost(const Trajectory& traj, const GameSpec& spec,
                     Player player) {
  const std::size_t N = spec.N;
  if (traj.states.size() != N + 1 || traj.u1.size() != N || traj.u2.size() != N) {
    throw DimensionMismatch("trajectory length does not match horizon " +
                            std::to_string(N));
  }
  const Matrix& Q = spec.Q(player);
  const Matrix& R = spec.R(player);
  const std::vector<Vector>& u = player == Player::kOne ? traj.u1 : traj.u2;

  double cost = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    const Vector& x = traj.states[k];
    if (x.size() != spec.n() || u[k].size() != R.rows()) {
      throw DimensionMismatch("trajectory entry size mismatch at stage " +
                              std::to_string(k));
    }
    cost += x.dot(Q * x) + u[k].dot(R * u[k]);
  }
  const Vector& xN = traj.states[N];
  if (xN.size() != spec.n()) throw DimensionMismatch("terminal state size mismatch");
  cost += xN.dot(spec.QN(player) * xN);
  // PSD weights: anything below zero is round-off.
  return std::max(cost, 0.0);
}

DiagnosticsReport check_assumptions(const GameSpec& spec,
                                    const NashSolution& nash) {
  DiagnosticsReport rep;
  const Eigen::Index n = spec.n();
  const Matrix I = Matrix::Identity(n, n);

  const Matrix G1 = spec.B1 * spec.R1.llt().solve(spec.B1.transpose());
  const Matrix G2 = spec.B2 * spec.R2.llt().solve(spec.B2.transpose());
  rep.min_invertibility_margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < nash.P1.size(); ++k) {
    Matrix M = Matrix::Zero(3 * n, 3 * n);
    M.block(0, 0, n, n) = I;
    M.block(0, n, n, n) = G1;
    M.block(0, 2 * n, n, n) = G2;
    M.block(n, 0, n, n) = nash.P1[k];
    M.block(n, n, n, n) = -I;
    M.block(2 * n, 0, n, n) = nash.P2[k];
    M.block(2 * n, 2 * n, n, n) = -I;
    const double margin = min_singular_value(M);
    rep.stage_invertibility_margin.push_back(margin);
    rep.min_invertibility_margin = std::min(rep.min_invertibility_margin, margin);
  }
  rep.stage_matrices_invertible =
      !rep.stage_invertibility_margin.empty() &&
      rep.min_invertibility_margin > kStageConditioningFloor;

  // Kalman controllability matrix of (A, [B1 B2]).
  const Eigen::Index m = spec.m1() + spec.m2();
  Matrix Bbar(n, m);
  Bbar << spec.B1, spec.B2;
  Matrix ctrb(n, n * m);
  Matrix block = Bbar;
  for (Eigen::Index i = 0; i < n; ++i) {
    ctrb.middleCols(i * m, m) = block;
    block = spec.A * block;
  }
  rep.controllability_rank = numerical_rank(ctrb);
  rep.controllable = rep.controllability_rank == n;

  for (const Matrix& Acl : nash.Acl) {
    rep.beta = std::max(rep.beta, spectral_norm(Acl));
    rep.max_spectral_radius = std::max(rep.max_spectral_radius, spectral_radius(Acl));
  }
  rep.beta_below_one = rep.beta < 1.0;
  rep.schur_stable = rep.max_spectral_radius < 1.0;
  rep.min_stage_solve_conditioning = nash.min_stage_solve_conditioning;
  return rep;
}

}  // namespace lqgame
