#include <cmath>
#include <random>

#include "doctest.h"
#include "lqgame/compensator.hpp"
#include "lqgame/errors.hpp"
#include "oracles.hpp"

using lqgame::Ar1Params;
using lqgame::GameSpec;
using lqgame::Matrix;
using lqgame::Vector;

namespace {

struct Setup {
  GameSpec spec;
  lqgame::NashSolution nash;
  Ar1Params params;
  lqgame::MomentSeries moments;
  lqgame::CompensatorGains gains;

  Setup(double rho, double s0, GameSpec g = lqgame::benchmark_game())
      : spec(std::move(g)),
        nash(lqgame::solve_feedback_nash(spec)),
        params(rho, s0, spec.m2()),
        moments(lqgame::propagate_moments(spec, nash, params)),
        gains(lqgame::optimal_gains(spec, nash, moments, params)) {}

  double J(const Matrix& L, std::size_t k) const {
    return lqgame::stage_objective(L, k, spec, nash, moments, params);
  }
};

}  // namespace

TEST_CASE("white noise yields zero gains and a zero objective") {
  const Setup s(0.0, 0.06);
  REQUIRE(s.gains.L.size() == 9);
  for (const Matrix& L : s.gains.L) CHECK(L.isZero(0.0));
  std::mt19937_64 gen(1);
  for (std::size_t k = 0; k < 9; ++k)
    CHECK(s.J(oracle::random_matrix(gen, 3, 3), k) == 0.0);
}

TEST_CASE("first two stages carry no compensation") {
  for (double rho : {0.2, 0.5, 0.9}) {
    const Setup s(rho, 0.06);
    CHECK(s.gains.L[0].isZero(0.0));
    CHECK(s.gains.L[1].isZero(0.0));
    CHECK_FALSE(s.gains.L[2].isZero(0.0));
  }
}

TEST_CASE("zero correlation with the state gives zero gains") {
  const Setup s(0.5, 1e-300);
  for (std::size_t k = 0; k < 9; ++k) {
    CHECK(s.moments.C[k].isZero(0.0));
    CHECK(s.gains.L[k].isZero(0.0));
  }
}

TEST_CASE("objective vanishes at L = 0 and is non-positive at L*") {
  const Setup s(0.5, 0.06);
  for (std::size_t k = 0; k < 9; ++k) {
    CHECK(s.J(Matrix::Zero(3, 3), k) == 0.0);
    CHECK(s.J(s.gains.L[k], k) <= 0.0);
  }
  CHECK(s.J(s.gains.L[4], 4) < 0.0);
  double sum = 0.0;
  for (std::size_t k = 0; k < 9; ++k) sum += s.J(s.gains.L[k], k);
  CHECK(lqgame::frozen_cost_change(s.gains, s.spec, s.nash, s.moments,
                                   s.params) == doctest::Approx(sum));
}

TEST_CASE("closed form matches a numerical minimiser of the stage objective") {
  const Setup s(0.5, 0.06);
  for (std::size_t k = 2; k < 9; ++k) {
    const Matrix Lnum =
        oracle::gradient_descent([&](const Matrix& L) { return s.J(L, k); }, 3,
                                 3);
    CHECK_MESSAGE((Lnum - s.gains.L[k]).cwiseAbs().maxCoeff() < 1e-6,
                  "stage " << k);
  }
}

TEST_CASE("L* beats random gains by exactly the completed square") {
  const Setup s(0.5, 0.06);
  std::mt19937_64 gen(123);
  std::uniform_real_distribution<double> scale(1e-3, 3.0);
  for (std::size_t k = 2; k < 9; ++k) {
    const Matrix& Ls = s.gains.L[k];
    const double Js = s.J(Ls, k);
    const Matrix Psi = 0.25 * s.moments.Phi[k - 1];
    for (int t = 0; t < 1000; ++t) {
      const Matrix L = Ls + oracle::random_matrix(gen, 3, 3, scale(gen));
      const double Jl = s.J(L, k);
      const Matrix D = L - Ls;
      const double gap = (D.transpose() * s.spec.R1 * D * Psi).trace();
      CHECK(Jl >= Js);
      CHECK(gap >= 0.0);
      CHECK(std::abs((Jl - Js) - gap) <= 1e-9 * (std::abs(Jl) + std::abs(Js)));
    }
  }
}

TEST_CASE("normal equation holds on the support of Phi") {
  const Setup s(0.7, 0.3);
  for (std::size_t k = 1; k < 9; ++k) {
    const Matrix& Phi = s.moments.Phi[k - 1];
    const Matrix lhs = s.gains.L[k] * Phi;
    const Matrix rhs = -(1.0 / 0.49) * s.nash.K1[k] * s.moments.C[k] *
                       lqgame::support_projector(Phi);
    CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
  }
}

TEST_CASE("apply_policy") {
  const Setup s(0.5, 0.06);
  std::mt19937_64 gen(9);
  const Vector x = oracle::random_matrix(gen, 3, 1);
  const Vector dev = oracle::random_matrix(gen, 3, 1);

  SUBCASE("zero gains reduce to the Nash feedback") {
    const auto zero = lqgame::CompensatorGains::zero(9, 3, 3, 0.5);
    for (std::size_t k = 0; k < 9; ++k)
      CHECK(lqgame::apply_policy(s.nash, zero, x, dev, k) ==
            Vector(-(s.nash.K1[k] * x)));
  }
  SUBCASE("linear in the previous deviation") {
    const Vector e1 = Vector::Unit(3, 0);
    const Vector u =
        lqgame::apply_policy(s.nash, s.gains, Vector::Zero(3), e1, 5);
    CHECK((u + 0.5 * s.gains.L[5].col(0)).norm() < 1e-15);
  }
  SUBCASE("compact form") {
    for (std::size_t k = 1; k < 9; ++k) {
      const Vector compact =
          -s.nash.K1[k] *
          (x - (1.0 / 0.5) * s.moments.C[k] *
                   lqgame::pseudo_inverse(s.moments.Phi[k - 1]) * dev);
      CHECK((lqgame::apply_policy(s.nash, s.gains, x, dev, k) - compact)
                .norm() < 1e-10);
    }
  }
  SUBCASE("out-of-range stage") {
    CHECK_THROWS_AS(lqgame::apply_policy(s.nash, s.gains, x, dev, 9),
                    lqgame::DimensionMismatch);
  }
}

TEST_CASE("exact expected cost of the uncompensated loop") {
  SUBCASE("no deviation gives the nominal value") {
    const Setup s(0.5, 1e-300);
    const auto zero = lqgame::CompensatorGains::zero(9, 3, 3, 0.5);
    const auto c = lqgame::exact_expected_costs(s.spec, s.nash, zero, s.params);
    const Vector& x0 = s.spec.x0;
    CHECK(c.J1 == doctest::Approx(x0.dot(s.nash.P1[0] * x0)).epsilon(1e-12));
    CHECK(c.J2 == doctest::Approx(x0.dot(s.nash.P2[0] * x0)).epsilon(1e-12));
  }
  SUBCASE("zero start agrees with the deviation moments") {
    GameSpec g = lqgame::benchmark_game();
    g.x0 = Vector::Zero(3);
    const Setup s(0.6, 0.08, g);
    const auto zero = lqgame::CompensatorGains::zero(9, 3, 3, 0.6);
    const auto c = lqgame::exact_expected_costs(s.spec, s.nash, zero, s.params);
    double J1 = 0.0;
    for (std::size_t k = 0; k < 9; ++k) {
      const Matrix W = g.Q1 + s.nash.K1[k].transpose() * g.R1 * s.nash.K1[k];
      J1 += (W * s.moments.Sigma[k]).trace();
    }
    J1 += (g.Q1N * s.moments.Sigma[9]).trace();
    CHECK(c.J1 == doctest::Approx(J1).epsilon(1e-12));
  }
}
