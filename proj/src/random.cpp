#include "injrad/random.hpp"

#include <cmath>
#include <numbers>

namespace injrad {

namespace {

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t index, std::uint64_t lane) const {
  return splitmix(splitmix(splitmix(seed_) ^ index) ^ (lane * 0xd1b54a32d192ed03ULL));
}

double CounterRng::uniform(std::uint64_t index, std::uint64_t lane) const {
  // 53 random bits, shifted off zero by half an ulp.
  return (static_cast<double>(bits(index, lane) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t index, std::uint64_t lane) const {
  const double u1 = uniform(index, 2 * (lane / 2));
  const double u2 = uniform(index, 2 * (lane / 2) + 1);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return (lane % 2 == 0) ? radius * std::cos(angle) : radius * std::sin(angle);
}

Point CounterRng::direction(std::uint64_t index, std::size_t n) const {
  Point p(n);
  for (int attempt = 0;; ++attempt) {
    for (std::size_t i = 0; i < n; ++i) p[i] = normal(index, i + 1024 * attempt);
    const double len = norm(p);
    if (len > 1e-300) {
      for (double& v : p) v /= len;
      return p;
    }
  }
}

Point CounterRng::in_ball(std::uint64_t index, std::size_t n) const {
  Point p = direction(index, n);
  const double radius = std::pow(uniform(index, 1u << 20), 1.0 / static_cast<double>(n));
  for (double& v : p) v *= radius;
  return p;
}

}  // namespace injrad
