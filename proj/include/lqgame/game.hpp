#pragma once

// Finite-horizon, discrete-time, two-player LQ game:
//
//   x_{k+1} = A x_k + B1 u1_k + B2 u2_k,          k = 0 .. N-1
//   J_i     = sum_k (x_k' Qi x_k + ui_k' Ri ui_k) + x_N' QiN x_N
//
// and its feedback Nash equilibrium u_i = -Ki_k x_k.

#include <cstddef>
#include <vector>

#include "lqgame/linalg.hpp"

namespace lqgame {

enum class Player { kOne = 1, kTwo = 2 };

struct GameSpec {
  Matrix A;
  Matrix B1;
  Matrix B2;
  Matrix Q1;
  Matrix Q2;
  Matrix Q1N;
  Matrix Q2N;
  Matrix R1;
  Matrix R2;
  std::size_t N = 1;
  Vector x0;

  Eigen::Index n() const { return A.rows(); }
  Eigen::Index m1() const { return B1.cols(); }
  Eigen::Index m2() const { return B2.cols(); }

  const Matrix& Q(Player p) const { return p == Player::kOne ? Q1 : Q2; }
  const Matrix& QN(Player p) const { return p == Player::kOne ? Q1N : Q2N; }
  const Matrix& R(Player p) const { return p == Player::kOne ? R1 : R2; }

  /// Throws DimensionMismatch, IndefiniteWeight or InvalidParams.
  void validate() const;
};

/// The 3-state, 3+3-input benchmark game (N = 9). x0 = (1, 1, 1) is an
/// illustrative choice for nominal rollouts; deviation experiments reset it
/// to zero.
GameSpec benchmark_game();

struct NashSolution {
  std::vector<Matrix> K1;  // N entries, m1 x n
  std::vector<Matrix> K2;  // N entries, m2 x n
  std::vector<Matrix> P1;  // N+1 entries, P1[N] = Q1N
  std::vector<Matrix> P2;  // N+1 entries, P2[N] = Q2N
  std::vector<Matrix> Acl;  // N entries

  double max_spectral_radius = 0.0;
  double max_spectral_norm = 0.0;
  // Smallest reciprocal condition number over the per-stage gain systems.
  double min_stage_solve_conditioning = 0.0;

  std::size_t horizon() const { return K1.size(); }
};

/// Reciprocal-condition floor below which a stage system counts as singular.
inline constexpr double kStageConditioningFloor = 1e-12;

/// Backward coupled Riccati recursion. Per stage, with Pi' = Pi[k+1]:
///
///   [R1 + B1'P1'B1   B1'P1'B2     ] [K1]   [B1'P1'A]
///   [B2'P2'B1        R2 + B2'P2'B2] [K2] = [B2'P2'A]
///
///   Pi[k] = Qi + Ki'Ri Ki + Acl' Pi' Acl     (then symmetrized)
///
/// Throws SingularStageSystem when the stage matrix has rcond below
/// kStageConditioningFloor, plus anything GameSpec::validate throws.
NashSolution solve_feedback_nash(const GameSpec& spec);

struct Trajectory {
  std::vector<Vector> states;  // N+1
  std::vector<Vector> u1;      // N
  std::vector<Vector> u2;      // N
};

/// x_{k+1} = Acl_k x_k, ui_k = -Ki_k x_k, starting at spec.x0.
Trajectory nominal_rollout(const GameSpec& spec, const NashSolution& nash);

/// Quadratic cost of `player` along `traj`.
double evaluate_cost(const Trajectory& traj, const GameSpec& spec,
                     Player player);

struct DiagnosticsReport {
  // Smallest singular value of the 3n x 3n matrix
  //   [I  B1 R1^-1 B1'  B2 R2^-1 B2'; P1_k  -I  0; P2_k  0  -I]
  // for k = 0..N.
  std::vector<double> stage_invertibility_margin;
  double min_invertibility_margin = 0.0;
  bool stage_matrices_invertible = false;

  Eigen::Index controllability_rank = 0;
  bool controllable = false;

  double beta = 0.0;  // max_k ||Acl_k||_2
  bool beta_below_one = false;

  double max_spectral_radius = 0.0;
  bool schur_stable = false;

  double min_stage_solve_conditioning = 0.0;
};

/// Report-only; never throws for well-formed inputs.
DiagnosticsReport check_assumptions(const GameSpec& spec,
                                    const NashSolution& nash);

}  // namespace lqgame
