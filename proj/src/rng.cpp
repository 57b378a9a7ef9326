#include "lqgame/rng.hpp"

#include <cmath>
#include <numbers>

namespace lqgame::rng {

double CounterRng::uniform(std::uint64_t counter) const {
  // (bits >> 11) is in [0, 2^53); shifting by one lands in (0, 1].
  return (static_cast<double>(bits(counter) >> 11) + 1.0) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t index) const {
  const std::uint64_t pair = index >> 1;
  const double u1 = uniform(2 * pair);
  const double u2 = uniform(2 * pair + 1);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return (index & 1U) == 0 ? radius * std::cos(angle) : radius * std::sin(angle);
}

}  // namespace lqgame::rng
