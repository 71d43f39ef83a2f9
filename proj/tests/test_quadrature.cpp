#include <doctest.h>

#include <cmath>
#include <numbers>

#include "injrad/errors.hpp"
#include "injrad/quadrature.hpp"
#include "oracles.hpp"

using namespace injrad;

TEST_CASE("adaptive matches Simpson on smooth integrands") {
  const quad::Settings s;
  auto f = [](double x) { return std::exp(-x * x) * std::cos(3 * x); };
  CHECK(quad::adaptive(f, -1.0, 2.0, s).value ==
        doctest::Approx(oracle::simpson(f, -1.0, 2.0)).epsilon(1e-10));
  auto g = [](double x) { return 1.0 / (1.0 + x * x); };
  CHECK(quad::adaptive(g, 0.0, 1.0, s).value == doctest::Approx(std::numbers::pi / 4).epsilon(1e-12));
}

TEST_CASE("adaptive copes with an integrable endpoint singularity") {
  const quad::Settings s{1e-10, 1e-9, 4000};
  auto f = [](double x) { return 1.0 / std::sqrt(x); };
  CHECK(quad::adaptive(f, 0.0, 1.0, s).value == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("non-finite samples raise NumericError") {
  auto f = [](double x) { return x < 0.5 ? 1.0 : NAN; };
  CHECK_THROWS_AS(quad::adaptive(f, 0.0, 1.0, {}), NumericError);
}

TEST_CASE("tail integrals converge or report divergence") {
  const quad::Settings s;
  auto conv = [](double v) { return std::pow(v, -3.0); };
  const auto c = quad::tail(conv, 1.0, +1, 1.0, s);
  CHECK_FALSE(c.diverged);
  CHECK(c.value == doctest::Approx(0.5).epsilon(1e-8));

  auto slow = [](double v) { return 1.0 / v; };
  CHECK(quad::tail(slow, 1.0, +1, 1.0, s).diverged);

  auto left = [](double u) { return std::exp(u); };
  const auto l = quad::tail(left, 0.0, -1, 1.0, s);
  CHECK_FALSE(l.diverged);
  CHECK(l.value == doctest::Approx(1.0).epsilon(1e-8));
}
