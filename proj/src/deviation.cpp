#include "lqgame/deviation.hpp"

#include <cmath>
#include <string>

#include "lqgame/errors.hpp"
#include "lqgame/rng.hpp"

namespace lqgame {

Ar1Params::Ar1Params(double rho, double sigma0, Eigen::Index channels)
    : rho_(rho), sigma0_(sigma0), channels_(channels) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw InvalidParams("rho must lie in [0, 1), got " + std::to_string(rho));
  }
  if (!(sigma0 > 0.0) || !std::isfinite(sigma0)) {
    throw InvalidParams("sigma0 must be positive and finite, got " +
                        std::to_string(sigma0));
  }
  if (channels < 1) throw InvalidParams("channel count must be >= 1");
}

double Ar1Params::sigma_w() const {
  return std::sqrt(1.0 - rho_ * rho_) * sigma0_;
}

DeviationPath sample_path(const Ar1Params& params, std::size_t N,
                          std::uint64_t seed) {
  if (N < 1) throw InvalidParams("horizon must be >= 1");
  const Eigen::Index m = params.channels();
  const double rho = params.rho();
  const double sw = params.sigma_w();
  const rng::CounterRng gen(seed);

  DeviationPath path;
  path.seed = seed;
  path.values.reserve(N);
  path.values.push_back(Vector::Zero(m));
  for (std::size_t k = 1; k < N; ++k) {
    Vector next(m);
    const std::uint64_t base = static_cast<std::uint64_t>(k - 1) *
                               static_cast<std::uint64_t>(m);
    for (Eigen::Index j = 0; j < m; ++j) {
      next(j) = rho * path.values.back()(j) +
                sw * gen.normal(base + static_cast<std::uint64_t>(j));
    }
    path.values.push_back(std::move(next));
  }
  return path;
}

Matrix phi_marginal(const Ar1Params& params, std::size_t k) {
  const double s2 = params.sigma0() * params.sigma0();
  const double decay = std::pow(params.rho(), 2.0 * static_cast<double>(k));
  const Eigen::Index m = params.channels();
  return (s2 * (1.0 - decay)) * Matrix::Identity(m, m);
}

Matrix phi_cross(const Ar1Params& params, std::size_t k, std::size_t l) {
  if (k < l) return phi_cross(params, l, k).transpose();
  return std::pow(params.rho(), static_cast<double>(k - l)) *
         phi_marginal(params, l);
}

}  // namespace lqgame
