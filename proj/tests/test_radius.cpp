#include <doctest.h>

#include <cmath>
#include <numbers>

#include "injrad/errors.hpp"
#include "injrad/radius.hpp"
#include "oracles.hpp"

using namespace injrad;

namespace {

double target(double C, double alpha, double cap) { return std::pow(C / (cap * std::log(std::sqrt(3.0))), 1.0 / alpha); }

InjectivityReport canonical(const char* spec, int n, const Config& cfg) {
  const auto q = parse_qspec(spec, n);
  return estimate_delta(q, n, PsiKind::canonical, default_parameters(n, PsiKind::canonical, q, cfg), cfg);
}

}  // namespace

TEST_CASE("parameters") {
  const auto p = make_parameters(2.0, 3.0, 0.5);
  CHECK(p.cap_integrated == doctest::Approx(0.5 * std::log(std::sqrt(3.0))));
  CHECK_THROWS_AS(make_parameters(-1.0, 2.0, 0.5), ParameterError);
  CHECK(default_cap_constant(3).has_value());
  CHECK_FALSE(default_cap_constant(40).has_value());
  Config cfg;
  CHECK_THROWS_AS(resolve_cap_constant(40, cfg), ParameterError);
  cfg.cap_constant = 0.7;
  CHECK(resolve_cap_constant(40, cfg) == 0.7);
}

TEST_CASE("constant Q gives the closed-form radius") {
  Config cfg;
  cfg.cap_constant = 0.5;
  const double T = target(4.0 * std::numbers::pi, 2.0, 0.5);
  for (double K : {1.0, 4.0, 16.0}) {
    const auto r = canonical(("const:" + std::to_string(static_cast<int>(K))).c_str(), 3, cfg);
    CHECK(r.status == Status::ok);
    CHECK(r.I_target == doctest::Approx(T).epsilon(1e-14));
    CHECK(std::abs(r.log_delta + std::sqrt(K) * T) < 1e-8);
  }
}

TEST_CASE("log-squared Q in three dimensions") {
  const Config cfg;
  const double cap = *default_cap_constant(3);
  const double T = target(4.0 * std::numbers::pi, 2.0, cap);
  const auto r = canonical("logpow:1,2", 3, cfg);
  REQUIRE(r.status == Status::ok);
  // I(r, top) = log(log(1/r) / log(1/top))
  const double want = -std::log(1.0 / r.upper) * std::exp(T);
  CHECK(r.log_delta == doctest::Approx(want).epsilon(1e-8));
  CHECK(r.delta > 0.0);
}

TEST_CASE("a convergent integral has no radius") {
  const auto r = canonical("logpow:1,4", 3, Config{});
  CHECK(r.status == Status::not_applicable);
  CHECK(r.delta == 0.0);
  CHECK(r.divergence.verdict == Verdict::convergent);
}

TEST_CASE("radius is monotone in Q") {
  const Config cfg;
  double prev = 1.0;
  for (const char* spec : {"const:1", "const:2", "const:4", "const:8"}) {
    const double d = canonical(spec, 3, cfg).delta;
    CHECK(d < prev);
    prev = d;
  }
  CHECK_THROWS_AS(canonical("const:1", 2, cfg), DimensionError);
}

TEST_CASE("growth-gated and oscillation-gated reports") {
  const Config cfg;
  const auto g = corollary_report(parse_qspec("logpow:1,2", 3), 3, cfg);
  CHECK(g.method == Method::log_growth);
  CHECK(g.delta > 0.0);
  CHECK_THROWS_AS(corollary_report(parse_qspec("logpow:1,3", 3), 3, cfg), NotApplicableError);

  const auto f = fmo_report(parse_qspec("const:1", 3), 3, cfg);
  CHECK(f.method == Method::fmo);
  REQUIRE(f.epsilon0.has_value());
  CHECK(std::isfinite(f.log_delta));
  CHECK_THROWS_AS(fmo_report(parse_qspec("powr:-1.5", 3), 3, cfg), NotApplicableError);
}

TEST_CASE("sharpness example for a convergent integral") {
  const Config cfg;
  const auto q = parse_qspec("logpow:1,4", 3);
  const auto plan = build_sharpness(q, 0.3, 3, cfg);
  CHECK(plan.K == doctest::Approx(std::pow(plan.k, 2)));
  CHECK(plan.witness.image_gap < 1e-9);
  CHECK(plan.witness.containment_radius < 0.3);
  CHECK(distance(map_eval(plan.composed, plan.witness.x1), map_eval(plan.composed, plan.witness.x2)) < 1e-9);
  CHECK(plan.axis_clearance > 0.0);
  for (const auto& rc : plan.ring_checks_q_tilde) CHECK(rc.relative_gap < 1e-6);
  for (const auto& rc : plan.ring_checks_bound) CHECK(rc.passed);
  CHECK_THROWS_AS(build_sharpness(parse_qspec("const:1", 3), 0.3, 3, cfg), NotApplicableError);
  CHECK_THROWS_AS(build_sharpness(q, 1.5, 3, cfg), ArgumentError);
}
