#pragma once

#include <cstdint>

#include "injrad/vec.hpp"

namespace injrad {

/// Counter-based generator: every draw is a pure function of
/// (seed, index, lane), so results do not depend on evaluation order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t index, std::uint64_t lane) const;

  /// Uniform in the open interval (0, 1).
  double uniform(std::uint64_t index, std::uint64_t lane) const;

  /// Standard normal via Box-Muller on lanes (2*lane, 2*lane+1).
  double normal(std::uint64_t index, std::uint64_t lane) const;

  /// Uniform direction on S^{n-1}.
  Point direction(std::uint64_t index, std::size_t n) const;

  /// Uniform point in the unit ball B^n.
  Point in_ball(std::uint64_t index, std::size_t n) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace injrad
