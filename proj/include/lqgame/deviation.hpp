#pragma once

// AR(1) (first-order Gauss-Markov) execution deviation of Player 2:
//
//   du_0 = 0,   du_k = rho * du_{k-1} + sigma_w * w_k,   w_k ~ N(0, I)
//
// with sigma_w = sqrt(1 - rho^2) * sigma0, so Var(du_k) -> sigma0^2 I.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lqgame/linalg.hpp"

namespace lqgame {

class Ar1Params {
 public:
  /// Throws InvalidParams unless 0 <= rho < 1, sigma0 > 0 (finite) and
  /// channels >= 1.
  Ar1Params(double rho, double sigma0, Eigen::Index channels);

  double rho() const { return rho_; }
  double sigma0() const { return sigma0_; }
  Eigen::Index channels() const { return channels_; }
  double sigma_w() const;

  bool operator==(const Ar1Params&) const = default;

 private:
  double rho_;
  double sigma0_;
  Eigen::Index channels_;
};

struct DeviationPath {
  std::vector<Vector> values;  // du_0 .. du_{N-1}
  std::uint64_t seed = 0;
};

/// Innovation w_k channel j is normal number (k - 1) * channels + j of the
/// stream `seed`; identical seeds give bit-identical paths.
DeviationPath sample_path(const Ar1Params& params, std::size_t N,
                          std::uint64_t seed);

/// Phi_k = E[du_k du_k'] = sigma0^2 (1 - rho^(2k)) I.
Matrix phi_marginal(const Ar1Params& params, std::size_t k);

/// Phi_{k,l} = E[du_k du_l'] = rho^(k-l) Phi_l for k >= l, transpose otherwise.
Matrix phi_cross(const Ar1Params& params, std::size_t k, std::size_t l);

}  // namespace lqgame
