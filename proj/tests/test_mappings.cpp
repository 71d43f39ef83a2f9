#include <doctest.h>

#include <cmath>
#include <numbers>

#include "injrad/errors.hpp"
#include "injrad/mappings.hpp"
#include "injrad/random.hpp"

using namespace injrad;

namespace {

const RadialStretch& stretch_of(const MapSpec& f) { return std::get<RadialStretch>(f.kind); }

}  // namespace

TEST_CASE("stretch from Q = 1 is the identity") {
  const Config cfg;
  const CounterRng rng(17);
  for (int n : {2, 3, 4}) {
    const auto f = radial_stretch_from_q(QField::constant(1.0, n), n, cfg);
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
      const Point x = rng.in_ball(i, n);
      worst = std::max(worst, distance(map_eval(f, x), x));
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("stretch profiles in closed form") {
  const Config cfg;
  const auto c = stretch_of(radial_stretch_from_q(QField::constant(8.0, 4), 4, cfg));
  for (double r : {1e-4, 0.01, 0.3, 0.9}) CHECK(c.rho(r) == doctest::Approx(std::pow(r, 0.5)).epsilon(1e-13));

  // q0 = log^2(1/r), n = 3: rho = log(1/top) / log(1/r)
  const auto lp = stretch_of(radial_stretch_from_q(QField::log_power(1.0, 2.0, 3), 3, cfg));
  const double top = lp.upper();
  CHECK(top == doctest::Approx(cfg.r_max));
  for (double r : {1e-9, 1e-4, 0.01, 0.3, 0.9}) {
    CHECK(lp.rho(r) == doctest::Approx(std::log(1.0 / top) / std::log(1.0 / r)).epsilon(1e-9));
    CHECK(lp.inverse(lp.rho(r)) == doctest::Approx(r).epsilon(1e-9));
  }

  // q0 = r, n = 3: log rho = -2 (r^{-1/2} - 1)
  const auto pw = stretch_of(radial_stretch_from_q(QField::radial_power(1.0, 3), 3, cfg));
  for (double r : {0.01, 0.2, 0.7}) {
    CHECK(pw.log_rho(std::log(r)) == doctest::Approx(-2.0 * (1.0 / std::sqrt(r) - 1.0)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(radial_stretch_from_q(QField::constant(0.0, 3), 3, cfg), ConstructionError);
}

TEST_CASE("stretch rho is increasing") {
  const Config cfg;
  const auto s = stretch_of(radial_stretch_from_q(parse_qspec("trunc:0.25,0.3,logpow:1,4", 3), 3, cfg,
                                                  std::exp(-1.0)));
  double prev = 0.0;
  for (double r : log_grid(1e-8, std::exp(-1.0), 200)) {
    const double v = s.rho(r);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("ring modulus equality for stretches built from Q") {
  const Config cfg;
  for (int n : {2, 3, 4}) {
    for (const char* spec : {"const:1", "const:8", "logpow:1,2", "powr:1"}) {
      const auto q = parse_qspec(spec, n);
      const auto f = radial_stretch_from_q(q, n, cfg);
      for (auto [r1, r2] : {std::pair{0.02, 0.5}, std::pair{0.1, 0.9}, std::pair{0.3, 0.4}}) {
        const auto rc = verify_ring_inequality(f, q, r1, r2, n, cfg);
        CHECK(rc.passed);
        CHECK(rc.relative_gap < 1e-6);
      }
    }
  }
}

TEST_CASE("ring inequality fails for a stretch that is too strong") {
  const Config cfg;
  const auto q = QField::constant(1.0, 3);
  const auto f = radial_stretch_from_q(QField::constant(4.0, 3), 3, cfg);
  CHECK_FALSE(verify_ring_inequality(f, q, 0.1, 0.5, 3, cfg).passed);
  const auto w = winding_map(3, standard_axis(3, 0.0), 3);
  CHECK_THROWS_AS(verify_ring_inequality(w, q, 0.1, 0.5, 3, cfg), UnsupportedMapError);
}

TEST_CASE("winding identifies points a 2 pi / k turn apart") {
  const int k = 3;
  const auto f = winding_map(k, standard_axis(3, 0.2), 3);
  const double a = 0.7, rad = 0.15;
  const Point x1{0.2 + rad * std::cos(a), rad * std::sin(a), 0.05};
  const Point x2{0.2 + rad * std::cos(a + 2 * std::numbers::pi / k), rad * std::sin(a + 2 * std::numbers::pi / k), 0.05};
  CHECK(distance(map_eval(f, x1), map_eval(f, x2)) < 1e-12);
  CHECK(distortion_estimate(f, Point{0.4, 0.1, 0.0}) == doctest::Approx(9.0).epsilon(1e-5));
  CHECK(distortion_estimate(winding_map(2, standard_axis(4, 0.1), 4), Point{0.3, 0.2, 0.1, 0.0}) ==
        doctest::Approx(8.0).epsilon(1e-5));
  CHECK_THROWS_AS(winding_map(1, standard_axis(3, 0.0), 3), ArgumentError);
}

TEST_CASE("planar exponential witnesses shrink") {
  const Config cfg;
  for (int m : {7, 20, 100}) {
    const auto f = exp2d_map(m);
    const auto w = noninjectivity_witness(f, 1.0, cfg);
    REQUIRE(w.has_value());
    CHECK(std::abs(w->containment_radius - 2 * std::numbers::pi / m) < 1e-12);
    CHECK(distance(map_eval(f, w->x1), map_eval(f, w->x2)) < 1e-9);
    CHECK(distance(w->x1, w->x2) > 0.0);
  }
}

TEST_CASE("witness for a winding after a stretch") {
  const Config cfg;
  const auto s = radial_stretch_from_q(QField::constant(4.0, 3), 3, cfg);
  const auto f = compose({winding_map(4, standard_axis(3, 0.3), 3), s});
  const auto w = noninjectivity_witness(f, 0.9, cfg);
  REQUIRE(w.has_value());
  CHECK(w->image_gap < 1e-9);
  CHECK(distance(map_eval(f, w->x1), map_eval(f, w->x2)) < 1e-9);
  CHECK(w->containment_radius < 0.9);
  CHECK_FALSE(noninjectivity_witness(radial_stretch_from_q(QField::constant(1.0, 3), 3, cfg), 0.5, cfg));
}

TEST_CASE("equicontinuity probe") {
  Config cfg;
  cfg.probe_samples = 64;
  const Point x0(3, 0.0);
  const std::vector<double> radii{0.05, 0.1, 0.2, 0.4};
  // identity: the chordal sup at radius s is s / sqrt(1 + s^2)
  const std::vector<MapSpec> id{radial_stretch_from_q(QField::constant(1.0, 3), 3, cfg)};
  const auto t = equicontinuity_probe(id, x0, radii, cfg);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    CHECK(t.raw[i] == doctest::Approx(radii[i] / std::hypot(1.0, radii[i])).epsilon(1e-9));
  }

  const std::vector<MapSpec> fam{radial_stretch_from_q(QField::constant(4.0, 3), 3, cfg),
                                 winding_map(3, standard_axis(3, 0.5), 3)};
  const auto p = equicontinuity_probe(fam, x0, radii, cfg);
  for (std::size_t i = 1; i < radii.size(); ++i) CHECK(p.modulus[i] >= p.modulus[i - 1]);
  CHECK(p.modulus.front() == doctest::Approx(std::sqrt(0.05) / std::sqrt(1.05)).epsilon(1e-6));
  CHECK_THROWS_AS(equicontinuity_probe(fam, x0, std::vector<double>{0.2, 0.1}, cfg), ArgumentError);
}

TEST_CASE("map spec parsing") {
  const Config cfg;
  CHECK(std::holds_alternative<RadialStretch>(parse_mapspec("stretch:logpow:1,2", 3, cfg).kind));
  CHECK(std::holds_alternative<WindingMap>(parse_mapspec("winding:3,0.5", 3, cfg).kind));
  CHECK(std::holds_alternative<Composition>(parse_mapspec("compose:winding:3,0.5;stretch:const:2", 3, cfg).kind));
  CHECK_THROWS_AS(parse_mapspec("exp2d:3", 3, cfg), Error);
  CHECK_THROWS_AS(parse_mapspec("twist:2", 3, cfg), ParseError);
}
