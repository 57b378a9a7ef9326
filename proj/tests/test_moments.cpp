#include <cmath>
#include <random>

#include "doctest.h"
#include "lqgame/errors.hpp"
#include "lqgame/moments.hpp"
#include "oracles.hpp"

using lqgame::Ar1Params;
using lqgame::GameSpec;
using lqgame::Matrix;

namespace {

struct Bench {
  GameSpec spec = lqgame::benchmark_game();
  lqgame::NashSolution nash = lqgame::solve_feedback_nash(spec);
};

const Bench& bench() {
  static const Bench b;
  return b;
}

}  // namespace

TEST_CASE("series shapes and initial conditions") {
  const auto& b = bench();
  const auto mom =
      lqgame::propagate_moments(b.spec, b.nash, Ar1Params(0.5, 0.06, 3));
  CHECK(mom.horizon() == 9);
  CHECK(mom.Sigma.size() == 10);
  CHECK(mom.C.size() == 10);
  CHECK(mom.Phi.size() == 10);
  CHECK(mom.Sigma[0].isZero(0.0));
  CHECK(mom.C[0].isZero(0.0));
  // du_0 = 0, so nothing reaches the state before stage 2.
  CHECK(mom.Sigma[1].isZero(0.0));
  CHECK(mom.C[1].isZero(0.0));
  CHECK(mom.Sigma[2].trace() > 0.0);
}

TEST_CASE("recursion matches the explicit expansion of dx_k") {
  const auto& b = bench();
  for (double rho : {0.0, 0.3, 0.5, 0.9}) {
    const double s0 = 0.06;
    const auto mom =
        lqgame::propagate_moments(b.spec, b.nash, Ar1Params(rho, s0, 3));
    for (std::size_t k = 0; k <= 9; ++k) {
      const Matrix ref =
          oracle::sigma_by_expansion(b.spec, b.nash.Acl, rho, s0, k);
      CHECK((mom.Sigma[k] - ref).norm() <= 1e-12 * (1.0 + ref.norm()));
    }
  }
  std::mt19937_64 gen(17);
  for (int i = 0; i < 5; ++i) {
    const GameSpec g = oracle::random_game(gen, 1 + i % 3, 2, 1 + i % 2, 7);
    const auto nash = lqgame::solve_feedback_nash(g);
    const auto mom =
        lqgame::propagate_moments(g, nash, Ar1Params(0.7, 0.4, g.m2()));
    for (std::size_t k = 0; k <= g.N; ++k) {
      const Matrix ref = oracle::sigma_by_expansion(g, nash.Acl, 0.7, 0.4, k);
      CHECK((mom.Sigma[k] - ref).norm() <= 1e-12 * (1.0 + ref.norm()));
    }
  }
}

TEST_CASE("no excitation gives zero moments") {
  const auto& b = bench();
  const auto mom =
      lqgame::propagate_moments(b.spec, b.nash, Ar1Params(0.5, 1e-300, 3));
  for (std::size_t k = 0; k <= 9; ++k) {
    CHECK(mom.Sigma[k].isZero(0.0));
    CHECK(mom.C[k].isZero(0.0));
  }
}

TEST_CASE("white noise reduces to the memoryless Lyapunov recursion") {
  const auto& b = bench();
  const double s0 = 0.2;
  const auto mom =
      lqgame::propagate_moments(b.spec, b.nash, Ar1Params(0.0, s0, 3));
  for (const Matrix& C : mom.C) CHECK(C.isZero(0.0));
  const Matrix& B2 = b.spec.B2;
  for (std::size_t k = 1; k < 9; ++k) {
    const Matrix& A = b.nash.Acl[k];
    const Matrix next = A * mom.Sigma[k] * A.transpose() +
                        s0 * s0 * B2 * B2.transpose();
    CHECK((mom.Sigma[k + 1] - next).norm() < 1e-15);
  }
}

TEST_CASE("Sigma is symmetric PSD at every stage") {
  const auto& b = bench();
  for (double rho : {0.0, 0.5, 0.95}) {
    const auto mom =
        lqgame::propagate_moments(b.spec, b.nash, Ar1Params(rho, 0.5, 3));
    for (const Matrix& S : mom.Sigma) {
      CHECK(S == S.transpose());
      CHECK(lqgame::is_symmetric_psd(S));
    }
  }
}

TEST_CASE("channel count must match B2") {
  const auto& b = bench();
  CHECK_THROWS_AS(
      lqgame::propagate_moments(b.spec, b.nash, Ar1Params(0.5, 0.1, 2)),
      lqgame::DimensionMismatch);
}

TEST_CASE("doubling sigma0 quadruples Sigma and C exactly") {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> U(0.0, 0.95);
  for (int i = 0; i < 10; ++i) {
    const GameSpec g = oracle::random_stable_game(gen, 1 + i % 3, 1 + i % 2, 2, 9);
    const auto nash = lqgame::solve_feedback_nash(g);
    const double rho = U(gen);
    const double s0 = 0.01 + U(gen);
    const auto a = lqgame::propagate_moments(g, nash, Ar1Params(rho, s0, 2));
    const auto b = lqgame::propagate_moments(g, nash, Ar1Params(rho, 2 * s0, 2));
    for (std::size_t k = 0; k <= g.N; ++k) {
      for (Eigen::Index r = 0; r < g.n(); ++r) {
        for (Eigen::Index c = 0; c < g.n(); ++c) {
          CHECK(std::abs(b.Sigma[k](r, c) - 4 * a.Sigma[k](r, c)) <=
                1e-12 * std::abs(4 * a.Sigma[k](r, c)));
        }
        for (Eigen::Index c = 0; c < 2; ++c) {
          CHECK(std::abs(b.C[k](r, c) - 4 * a.C[k](r, c)) <=
                1e-12 * std::abs(4 * a.C[k](r, c)));
        }
      }
    }
  }
}

TEST_CASE("scaling table") {
  const auto& b = bench();
  SUBCASE("ratios are 1, 4, 9, 16 for any rho") {
    for (double rho : {0.0, 0.5, 0.93}) {
      const auto rows = lqgame::quadratic_scaling_table(
          b.spec, b.nash, rho, {0.15, 0.30, 0.45, 0.60});
      REQUIRE(rows.size() == 4);
      const double expect[] = {1.0, 4.0, 9.0, 16.0};
      for (int i = 0; i < 4; ++i)
        CHECK(std::abs(rows[i].ratio_to_first - expect[i]) <= 1e-10);
    }
  }
  SUBCASE("single entry") {
    const auto rows =
        lqgame::quadratic_scaling_table(b.spec, b.nash, 0.5, {0.15});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].ratio_to_first == 1.0);
  }
  SUBCASE("bad lists") {
    CHECK_THROWS_AS(lqgame::quadratic_scaling_table(b.spec, b.nash, 0.5, {}),
                    lqgame::InvalidParams);
    CHECK_THROWS_AS(
        lqgame::quadratic_scaling_table(b.spec, b.nash, 0.5, {0.3, 0.15}),
        lqgame::InvalidParams);
  }
}

TEST_CASE("max trace grows with rho up to 0.8") {
  const auto& b = bench();
  double prev = 0.0;
  for (double rho : {0.0, 0.2, 0.4, 0.6, 0.8}) {
    const double t =
        lqgame::propagate_moments(b.spec, b.nash, Ar1Params(rho, 0.06, 3))
            .max_trace();
    CHECK(t >= prev);
    prev = t;
  }
}

TEST_CASE("max trace falls again at rho = 0.9 over a 9-stage horizon") {
  // With du_0 = 0 the marginal variance ramps up as 1 - rho^(2k), which at
  // rho = 0.9 outweighs the extra persistence within nine stages. Checked
  // against the explicit expansion so the drop is not a recursion artefact.
  const auto& b = bench();
  auto max_trace_ref = [&](double rho) {
    double m = 0.0;
    for (std::size_t k = 0; k <= 9; ++k)
      m = std::max(m, oracle::sigma_by_expansion(b.spec, b.nash.Acl, rho, 0.06,
                                                 k)
                          .trace());
    return m;
  };
  const double t2 = max_trace_ref(0.2);
  const double t8 = max_trace_ref(0.8);
  const double t9 = max_trace_ref(0.9);
  CHECK(t9 < t8);
  CHECK(t9 < t2);
  CHECK(lqgame::propagate_moments(b.spec, b.nash, Ar1Params(0.9, 0.06, 3))
            .max_trace() == doctest::Approx(t9).epsilon(1e-12));
}

TEST_CASE("bound constants") {
  const auto k = lqgame::bound_constants(0.5, 1.0, 0.8, 1.0);
  CHECK(k.C1 == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(k.C2 == doctest::Approx(28.0 / 9.0).epsilon(1e-15));

  const auto z = lqgame::bound_constants(0.6, 1.0, 0.0, 2.0);
  CHECK(z.C1 == 0.0);
  CHECK(z.C2 == doctest::Approx(4.0 / 0.64));

  CHECK_THROWS_AS(lqgame::bound_constants(1.0, 1.0, 0.5, 1.0),
                  lqgame::InvalidParams);
  CHECK_THROWS_AS(lqgame::bound_constants(0.5, 0.5, 0.5, 1.0),
                  lqgame::InvalidParams);
  CHECK_THROWS_AS(lqgame::bound_constants(0.5, 1.0, 1.0, 1.0),
                  lqgame::InvalidParams);
}

TEST_CASE("bound certificate on the benchmark") {
  const auto& b = bench();
  for (double rho : {0.0, 0.2, 0.5, 0.8, 0.9, 0.99}) {
    for (double s0 : {0.02, 0.06, 0.6}) {
      const Ar1Params p(rho, s0, 3);
      const auto mom = lqgame::propagate_moments(b.spec, b.nash, p);
      const auto cert = lqgame::bound_certificate(b.spec, b.nash, p, mom);
      CHECK(cert.valid);
      CHECK(cert.bound_holds);
      CHECK(cert.beta == doctest::Approx(b.nash.max_spectral_norm));
      CHECK(cert.bound == doctest::Approx(cert.C2 * s0 * s0));
      CHECK(cert.observed_sup_norm <= cert.bound);
    }
  }
  const Ar1Params p0(0.0, 0.1, 3);
  const auto cert0 = lqgame::bound_certificate(
      b.spec, b.nash, p0, lqgame::propagate_moments(b.spec, b.nash, p0));
  const double bn = lqgame::spectral_norm(b.spec.B2);
  CHECK(cert0.C1 == 0.0);
  CHECK(cert0.C2 ==
        doctest::Approx(bn * bn / (1.0 - cert0.beta * cert0.beta)));
}

TEST_CASE("bound certificate is reported invalid when beta >= 1") {
  GameSpec g;
  g.A = 1.5 * Matrix::Identity(2, 2);
  g.B1 = Matrix::Identity(2, 1);
  g.B2 = Matrix::Identity(2, 1);
  g.Q1 = Matrix::Zero(2, 2);
  g.Q2 = g.Q1;
  g.Q1N = g.Q1;
  g.Q2N = g.Q1;
  g.R1 = Matrix::Identity(1, 1);
  g.R2 = g.R1;
  g.N = 4;
  g.x0 = lqgame::Vector::Zero(2);
  const auto nash = lqgame::solve_feedback_nash(g);
  const Ar1Params p(0.5, 0.1, 1);
  const auto cert = lqgame::bound_certificate(
      g, nash, p, lqgame::propagate_moments(g, nash, p));
  CHECK_FALSE(cert.valid);
  CHECK_FALSE(cert.bound_holds);
  CHECK(cert.beta == doctest::Approx(1.5));
  CHECK_FALSE(cert.reason.empty());
}
