#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "injrad/errors.hpp"
#include "injrad/geometry.hpp"
#include "injrad/random.hpp"
#include "oracles.hpp"

using namespace injrad;

namespace {

// Stereographic lift to the sphere of diameter 1 touching R^n at the origin.
std::vector<double> lift(const ExtendedPoint& x, int n) {
  std::vector<double> y(n + 1, 0.0);
  if (x.is_infinite()) {
    y[n] = 1.0;
    return y;
  }
  double s = 0.0;
  for (double v : x.finite()) s += v * v;
  for (int i = 0; i < n; ++i) y[i] = x.finite()[i] / (1.0 + s);
  y[n] = s / (1.0 + s);
  return y;
}

double lifted_distance(const ExtendedPoint& a, const ExtendedPoint& b, int n) {
  const auto ya = lift(a, n), yb = lift(b, n);
  double s = 0.0;
  for (int i = 0; i <= n; ++i) s += (ya[i] - yb[i]) * (ya[i] - yb[i]);
  return std::sqrt(s);
}

bool inside(const Point& c, double t, const Point& x) { return distance(c, x) < t; }

}  // namespace

TEST_CASE("sphere areas and ball volumes") {
  for (int n = 2; n <= 5; ++n) {
    const auto c = constants(n);
    CHECK(c.omega == doctest::Approx(oracle::sphere_area(n)).epsilon(1e-14));
    CHECK(c.volume == doctest::Approx(c.omega / n).epsilon(1e-14));
  }
  CHECK_THROWS_AS(constants(1), DimensionError);
}

TEST_CASE("chordal distance agrees with the stereographic lift") {
  const CounterRng rng(3);
  for (int n = 2; n <= 4; ++n) {
    for (std::uint64_t i = 0; i < 50; ++i) {
      Point a = scale(rng.in_ball(2 * i, n), 4.0);
      Point b = scale(rng.in_ball(2 * i + 1, n), 0.5);
      CHECK(chordal_distance(a, b) == doctest::Approx(lifted_distance(a, b, n)).epsilon(1e-12));
      CHECK(chordal_distance(a, ExtendedPoint::infinity()) ==
            doctest::Approx(lifted_distance(a, ExtendedPoint::infinity(), n)).epsilon(1e-12));
    }
  }
  CHECK(chordal_distance(ExtendedPoint::infinity(), ExtendedPoint::infinity()) == 0.0);
  CHECK(chordal_distance(Point{0.0, 0.0}, ExtendedPoint::infinity()) == doctest::Approx(1.0));
}

TEST_CASE("chordal diameter") {
  std::vector<ExtendedPoint> pts{Point{0.0, 0.0}, Point{1.0, 0.0}, ExtendedPoint::infinity()};
  CHECK(chordal_diameter(pts) == doctest::Approx(1.0));
  std::vector<ExtendedPoint> none;
  CHECK_THROWS_AS(chordal_diameter(none), ArgumentError);
}

TEST_CASE("ring modulus closed form and log additivity") {
  for (int n = 2; n <= 4; ++n) {
    const double w = oracle::sphere_area(n);
    const auto m = ring_modulus(make_annulus(Point(n, 0.0), 0.1, 0.7), n);
    CHECK(m.value == doctest::Approx(w * std::pow(std::log(7.0), 1.0 - n)).epsilon(1e-13));
    auto logw = [&](double r1, double r2) {
      return std::pow(ring_modulus(make_annulus(Point(n, 0.0), r1, r2), n).value / w, 1.0 / (1 - n));
    };
    CHECK(logw(0.05, 0.9) == doctest::Approx(logw(0.05, 0.3) + logw(0.3, 0.9)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(make_annulus(Point{0.0, 0.0}, 0.5, 0.5), ArgumentError);
}

TEST_CASE("kor certificate for the antipodal pair") {
  const Point p{-0.5, 0.0, 0.0}, a{1.0, 0.0, 0.0}, b{-1.0, 0.0, 0.0};
  const auto cert = kor_verify(p, a, b, 1.0, 256);
  CHECK(cert.all_pass);
  REQUIRE(cert.t_samples.size() == 256);
  const Point o(3, 0.0);
  for (std::size_t i = 0; i < cert.t_samples.size(); ++i) {
    const double t = cert.t_samples[i];
    CHECK(t > 0.5);
    CHECK(t < std::sqrt(3.0) / 2);
    const bool first = inside(p, t, o) && inside(p, t, b) && !inside(p, t, a);
    const bool second = inside(p, t, a) && inside(p, t, b) && !inside(p, t, o);
    CHECK((first || second));
  }
}

TEST_CASE("kor point found for random pairs") {
  const CounterRng rng(11);
  int passed = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const double r = 0.5 + rng.uniform(i, 9);
    const Point a = scale(rng.direction(2 * i, 3), r), b = scale(rng.direction(2 * i + 1, 3), r);
    try {
      const Point p = kor_point(a, b, r, 64);
      CHECK(norm(p) < r);
      passed += kor_verify(p, a, b, r, 64).all_pass ? 1 : 0;
    } catch (const NoCertificateError&) {
    }
  }
  CHECK(passed >= 19);
}
