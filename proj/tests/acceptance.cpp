// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "injrad/cli.hpp"
#include "injrad/errors.hpp"
#include "injrad/geometry.hpp"
#include "injrad/integrals.hpp"
#include "injrad/mappings.hpp"
#include "injrad/random.hpp"
#include "injrad/radius.hpp"

using namespace injrad;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(const char* name, double time_limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit > 0 && secs >= time_limit) {
    o.pass = false;
    o.detail += " (over time limit)";
  }
  if (!o.pass) ++failures;
  std::printf("%s  %-28s %s  [%.2fs]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// 5 x 5 grid of (r1, r2) inside (0.01, 0.99)
std::vector<std::pair<double, double>> ring_grid() {
  const double in[] = {0.02, 0.05, 0.1, 0.2, 0.4};
  const double out[] = {0.5, 0.62, 0.75, 0.87, 0.98};
  std::vector<std::pair<double, double>> g;
  for (double a : in)
    for (double b : out) g.emplace_back(a, b);
  return g;
}

const char* kCatalog[] = {"const:1", "const:8", "logpow:1,2", "powr:1"};

Outcome fubini() {
  const Config cfg;
  const int n = 3;
  double worst = 0.0;
  for (const char* spec : kCatalog) {
    const auto q = parse_qspec(spec, n);
    const auto psi = psi_canonical(q, 0.0, q.outer_radius());
    const double w = constants(n).omega;
    for (auto [r1, r2] : ring_grid()) {
      const double lhs = fubini_rhs(q, psi, r1, r2, n, cfg);
      const double rhs = w * integrate_I(psi, r1, r2, cfg).value;
      worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
  }
  return {worst < 1e-6, fmt("max rel diff %.3g", worst)};
}

Outcome ring_equality() {
  const Config cfg;
  double worst = 0.0;
  bool all_passed = true;
  for (int n : {2, 3, 4}) {
    for (const char* spec : kCatalog) {
      const auto q = parse_qspec(spec, n);
      const auto f = radial_stretch_from_q(q, n, cfg);
      for (auto [r1, r2] : ring_grid()) {
        const auto rc = verify_ring_inequality(f, q, r1, r2, n, cfg);
        worst = std::max(worst, rc.relative_gap);
        all_passed = all_passed && rc.passed;
      }
    }
  }
  return {worst < 1e-6 && all_passed, fmt("max rel gap %.3g", worst)};
}

Outcome identity() {
  const Config cfg;
  const CounterRng rng(2024);
  double worst = 0.0;
  for (int n : {2, 3, 4}) {
    const auto f = radial_stretch_from_q(QField::constant(1.0, n), n, cfg);
    for (std::uint64_t i = 0; i < 1000; ++i) {
      const Point x = rng.in_ball(i, n);
      worst = std::max(worst, distance(map_eval(f, x), x));
    }
  }
  return {worst < 1e-9, fmt("max deviation %.3g over 1000 points per n", worst)};
}

Outcome closed_form_delta() {
  Config cfg;
  cfg.cap_constant = 0.5;
  double worst = 0.0;
  for (double K : {1.0, 4.0, 16.0}) {
    const auto q = QField::constant(K, 3);
    const auto p = default_parameters(3, PsiKind::canonical, q, cfg);
    const auto r = estimate_delta(q, 3, PsiKind::canonical, p, cfg);
    const double T = std::pow(4.0 * std::numbers::pi / (0.5 * std::log(std::sqrt(3.0))), 0.5);
    worst = std::max(worst, std::abs(r.log_delta + std::sqrt(K) * T));
  }
  return {worst < 1e-8, fmt("max |d log delta| %.3g", worst)};
}

Outcome dichotomy() {
  const Config cfg;
  auto delta = [&](const char* spec) {
    const auto q = parse_qspec(spec, 3);
    return estimate_delta(q, 3, PsiKind::canonical, default_parameters(3, PsiKind::canonical, q, cfg), cfg);
  };
  const auto a = delta("const:1");
  const auto b = delta("logpow:1,2");
  const auto c = delta("logpow:1,4");
  const auto plan = build_sharpness(parse_qspec("logpow:1,4", 3), 0.3, 3, cfg);
  const bool ok = a.delta > 0 && b.delta > 0 && c.delta == 0.0 && c.status == Status::not_applicable &&
                  plan.witness.image_gap < 1e-9 && plan.witness.containment_radius < 0.3;
  std::ostringstream d;
  d << "delta(const:1)=" << a.delta << " delta(logpow:1,2)=" << b.delta << " delta(logpow:1,4)=" << c.delta
    << " witness gap=" << plan.witness.image_gap << " containment=" << plan.witness.containment_radius;
  return {ok, d.str()};
}

Outcome weighted_integral() {
  const Config cfg;
  const double v = pr7_integral(QField::constant(1.0, 3), std::exp(-1.0), 3, cfg);
  // omega_2 * int_1^inf v^{-3} dv
  const double exact = 4.0 * std::numbers::pi * 0.5;
  const double rel = std::abs(v - exact) / exact;
  return {rel < 1e-4, fmt("value %.12g, rel err %.3g", v, rel)};
}

Outcome kor() {
  const Point e1{1.0, 0.0, 0.0};
  const bool fixed = kor_verify(scale(e1, -0.5), e1, scale(e1, -1.0), 1.0, 256).all_pass;
  int passed = 0;
  std::string failed;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const CounterRng rng(seed);
    const double r = 0.25 + 2.0 * rng.uniform(0, 7);
    const Point a = scale(rng.direction(1, 3), r), b = scale(rng.direction(2, 3), r);
    try {
      if (kor_verify(kor_point(a, b, r, 64), a, b, r, 64).all_pass) {
        ++passed;
        continue;
      }
    } catch (const NoCertificateError&) {
    }
    failed += " seed " + std::to_string(seed);
  }
  std::string d = "fixed pair " + std::string(fixed ? "ok" : "FAILED") + ", random " + std::to_string(passed) + "/100";
  if (!failed.empty()) d += ", failed:" + failed;
  return {fixed && passed >= 99, d};
}

Outcome planar() {
  const Config cfg;
  double worst = 0.0;
  for (int m : {7, 20, 100}) {
    const auto w = noninjectivity_witness(exp2d_map(m), 1.0, cfg);
    if (!w) return {false, "no witness for m=" + std::to_string(m)};
    worst = std::max(worst, std::abs(w->containment_radius - 2 * std::numbers::pi / m));
  }
  return {worst < 1e-12, fmt("max |containment - 2pi/m| %.3g", worst)};
}

Outcome monotonicity() {
  Config cfg;
  std::ostringstream d;
  bool ok = true;
  for (const char* spec : kCatalog) {
    const auto q = parse_qspec(spec, 3);
    const auto psi = psi_canonical(q, 0.0, q.outer_radius());
    double prev = INFINITY;
    for (double r : log_grid(1e-6, 0.9, 60)) {
      const double v = integrate_I(psi, r, cfg.r_max, cfg).value;
      if (!(v < prev)) ok = false;
      prev = v;
    }
  }
  d << "I decreasing " << (ok ? "yes" : "no");

  double add = 0.0;
  for (int n : {2, 3, 4}) {
    const double w = constants(n).omega;
    auto width = [&](double a, double b) {
      return std::pow(ring_modulus(make_annulus(Point(n, 0.0), a, b), n).value / w, 1.0 / (1 - n));
    };
    for (auto [a, b, c] : {std::tuple{0.01, 0.1, 0.9}, std::tuple{0.2, 0.3, 0.35}}) {
      add = std::max(add, std::abs(width(a, c) - width(a, b) - width(b, c)) / width(a, c));
    }
  }
  d << ", log additivity " << add;

  cfg.probe_samples = 128;
  const std::vector<MapSpec> fam{radial_stretch_from_q(QField::constant(4.0, 3), 3, cfg),
                                 winding_map(3, standard_axis(3, 0.4), 3),
                                 radial_stretch_from_q(QField::log_power(1.0, 2.0, 3), 3, cfg)};
  const std::vector<double> radii{0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5};
  const auto t = equicontinuity_probe(fam, Point(3, 0.0), radii, cfg);
  bool probe_ok = true;
  for (std::size_t i = 1; i < radii.size(); ++i) probe_ok = probe_ok && t.modulus[i] >= t.modulus[i - 1];
  d << ", probe monotone " << (probe_ok ? "yes" : "no");
  return {ok && add < 1e-12 && probe_ok, d.str()};
}

std::string cli_once(std::vector<std::string> args) {
  args.insert(args.begin(), "injrad");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return std::to_string(code) + "\n" + out.str();
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> cmds{
      {"analyze", "--q", "powr:-0.5", "--n", "3", "--seed", "11"},
      {"radius", "--q", "logpow:1,2", "--n", "3", "--seed", "11"},
      {"sharp", "--q", "logpow:1,4", "--n", "3", "--delta", "0.3", "--seed", "11"},
      {"probe", "--family", "stretch:const:4,winding:3,0.5", "--radii", "0.1,0.2", "--n", "3", "--seed", "11"},
  };
  int same = 0;
  for (const auto& c : cmds) same += cli_once(c) == cli_once(c) ? 1 : 0;
  return {same == static_cast<int>(cmds.size()), std::to_string(same) + "/" + std::to_string(cmds.size()) +
                                                     " commands byte identical"};
}

}  // namespace

int main() {
  criterion("fubini_identity", 10.0, fubini);
  criterion("ring_modulus_equality", 10.0, ring_equality);
  criterion("identity_degeneracy", 0.0, identity);
  criterion("closed_form_delta", 5.0, closed_form_delta);
  criterion("dichotomy", 30.0, dichotomy);
  criterion("weighted_origin_integral", 0.0, weighted_integral);
  criterion("kor_certificate", 0.0, kor);
  criterion("planar_exponential", 0.0, planar);
  criterion("monotonicity_suite", 0.0, monotonicity);
  criterion("cli_determinism", 0.0, determinism);
  std::printf("%d failed\n", failures);
  return failures;
}
