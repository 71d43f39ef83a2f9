#include "injrad/radius.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "injrad/errors.hpp"
#include "injrad/geometry.hpp"
#include "injrad/text.hpp"

namespace injrad {

namespace {

// Output of tools/derive_cap_constant.py (data/cap_constants.csv).
struct CapRow {
  int n;
  double value;
};
constexpr CapRow kCapTable[] = {
    {2, 0.318312},
    {3, 0.115477},
    {4, 0.024051},
    {5, 0.005508},
};

std::string fmt(double v) { return text::format_real(v); }

}  // namespace

BoundParameters make_parameters(double C, double alpha, double cap_constant) {
  if (!(C > 0.0) || !std::isfinite(C)) throw ParameterError("C must be positive and finite");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be positive");
  if (!(cap_constant > 0.0) || !std::isfinite(cap_constant))
    throw ParameterError("cap constant must be positive and finite");
  return {C, alpha, cap_constant, cap_constant * std::log(std::sqrt(3.0))};
}

std::optional<double> default_cap_constant(int n) {
  for (const CapRow& row : kCapTable)
    if (row.n == n) return row.value;
  return std::nullopt;
}

double resolve_cap_constant(int n, const Config& cfg) {
  if (cfg.cap_constant) return *cfg.cap_constant;
  if (auto v = default_cap_constant(n)) return *v;
  throw ParameterError("no tabulated cap constant for n = " + std::to_string(n) +
                       "; pass one explicitly");
}

BoundParameters default_parameters(int n, PsiKind psi_kind, const QField& q, const Config& cfg,
                                   std::optional<double> epsilon0) {
  const DimensionConstants dc = constants(n);
  const double cap = resolve_cap_constant(n, cfg);
  if (psi_kind != PsiKind::fmo) return make_parameters(dc.omega, n - 1.0, cap);

  double e0 = 0.0;
  if (epsilon0) {
    e0 = *epsilon0;
  } else {
    const auto grid = default_fmo_grid();
    const FmoReport rep = fmo_oscillation(q, Point(n, 0.0), grid, cfg);
    if (!rep.epsilon0) throw ParameterError("no epsilon0 with a finite weighted integral");
    e0 = *rep.epsilon0;
  }
  const double w = pr7_integral(q, e0, n, cfg);
  if (!std::isfinite(w) || !(w > 0.0))
    throw ParameterError("weighted integral near the origin is not finite and positive");
  return make_parameters(w / std::pow(e0, n), static_cast<double>(n), cap);
}

const char* to_string(Method m) {
  switch (m) {
    case Method::canonical: return "canonical";
    case Method::fmo: return "fmo";
    default: return "log_growth";
  }
}

const char* to_string(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::not_applicable: return "not_applicable";
    default: return "inconclusive";
  }
}

namespace {

// Upper limit for I(r, .): 1 when the weight is finite there, else r_max or
// the end of a table.
double integration_upper(const PsiWeight& psi, const Config& cfg, std::vector<std::string>& caveats) {
  if (psi.r2 < 1.0) {
    caveats.push_back("integration stops at the last tabulated radius " + fmt(psi.r2));
    return psi.r2;
  }
  double w0 = INFINITY;
  try {
    w0 = psi.t_psi_log(0.0);
  } catch (const Error&) {
  }
  if (std::isfinite(w0)) return 1.0;
  caveats.push_back("weight is singular at |x| = 1; integration capped at r_max = " +
                    fmt(cfg.r_max));
  return cfg.r_max;
}

}  // namespace

InjectivityReport estimate_delta(const QField& q, int n, PsiKind psi_kind,
                                 const BoundParameters& params, const Config& cfg,
                                 double epsilon0) {
  if (n < 3) throw DimensionError("the injectivity bound needs n >= 3");
  if (q.dim() != n) throw DimensionError("field dimension does not match n");
  cfg.validate();
  make_parameters(params.C, params.alpha, params.cap_constant);

  InjectivityReport rep;
  rep.n = n;
  rep.q_summary = q.describe();
  rep.psi_kind = psi_kind;
  rep.method = psi_kind == PsiKind::fmo ? Method::fmo : Method::canonical;
  rep.params = params;
  rep.I_target = std::pow(params.C / params.cap_integrated, 1.0 / params.alpha);

  PsiWeight psi;
  if (psi_kind == PsiKind::fmo) {
    rep.epsilon0 = epsilon0;
    rep.divergence.verdict = Verdict::divergent;
    rep.divergence.fit.model = "analytic: log weight";
    psi = psi_fmo(epsilon0, n);
  } else if (psi_kind == PsiKind::canonical) {
    rep.divergence = classify_divergence(q, cfg);
    if (q.is_radial()) {
      psi = psi_canonical(q, 0.0, q.outer_radius());
    } else {
      const RadialProfile prof =
          q_profile(q, Point(n, 0.0), log_grid(1e-12, cfg.r_max, 241), cfg);
      psi = psi_canonical(prof, n, prof.min_radius(), prof.max_radius());
      rep.caveats.push_back("spherical means sampled on [1e-12, r_max]");
    }
  } else {
    throw ArgumentError("estimate_delta takes the canonical or fmo weight");
  }

  if (rep.divergence.verdict == Verdict::convergent) {
    rep.status = Status::not_applicable;
    rep.delta = 0.0;
    rep.log_delta = -INFINITY;
    rep.caveats.push_back(
        "controlling integral converges at the origin: no injectivity ball is guaranteed and the "
        "sharpness construction applies");
    return rep;
  }
  if (rep.divergence.verdict == Verdict::inconclusive) {
    rep.status = Status::inconclusive;
    rep.delta = NAN;
    rep.log_delta = NAN;
    rep.caveats.push_back("divergence of the controlling integral could not be decided");
    return rep;
  }

  rep.upper = integration_upper(psi, cfg, rep.caveats);
  const double lowest = psi.r1;
  auto I = [&](double u) -> double {
    const double r = std::exp(u);
    if (r < lowest) return INFINITY;
    return integrate_I(psi, r, rep.upper, cfg).value;
  };

  const double u_cap = std::log(std::min(cfg.r_cap, rep.upper));
  const double at_cap = I(u_cap);
  if (!std::isfinite(at_cap)) {
    rep.delta = cfg.r_cap;
    rep.log_delta = u_cap;
    rep.I_at_delta = at_cap;
    rep.caveats.push_back("I(r, upper) is infinite for every r; delta set to r_cap");
  } else if (at_cap >= rep.I_target) {
    rep.delta = std::exp(u_cap);
    rep.log_delta = u_cap;
    rep.I_at_delta = at_cap;
    rep.caveats.push_back("bound clamped at r_cap = " + fmt(cfg.r_cap));
  } else {
    double hi = u_cap;
    double step = 1.0;
    double lo = hi - step;
    double I_lo = I(lo);
    while (I_lo < rep.I_target) {
      hi = lo;
      step *= 2.0;
      lo = hi - step;
      if (lo < -1e300 || step > 1e300) break;
      I_lo = I(lo);
    }
    if (I_lo < rep.I_target) {
      rep.delta = 0.0;
      rep.log_delta = -INFINITY;
      rep.status = Status::inconclusive;
      rep.caveats.push_back("I(r, upper) stays below the target on the representable range");
      return rep;
    }
    for (int it = 0; it < 400; ++it) {
      if (hi - lo <= 1e-13 * std::max(1.0, std::abs(lo))) break;
      const double mid = 0.5 * (lo + hi);
      const double v = I(mid);
      if (v >= rep.I_target) {
        lo = mid;
        I_lo = v;
      } else {
        hi = mid;
      }
    }
    rep.log_delta = lo;
    rep.delta = std::exp(lo);
    rep.I_at_delta = I_lo;
    if (rep.delta == 0.0) rep.caveats.push_back("delta underflows; see log_delta");
  }

  if (psi_kind == PsiKind::fmo && epsilon0 != 1.0) {
    rep.log_delta += std::log(epsilon0);
    rep.delta = std::exp(rep.log_delta);
    rep.caveats.push_back("radius rescaled by epsilon0 = " + fmt(epsilon0));
  }
  return rep;
}

InjectivityReport corollary_report(const QField& q, int n, const Config& cfg) {
  if (q.dim() != n) throw DimensionError("field dimension does not match n");
  const RadialProfile prof = q_profile(q, Point(n, 0.0), log_grid(1e-8, 0.5, 81), cfg);
  const GrowthCheck gc = log_growth_check(prof, n);
  if (!gc.holds) {
    std::ostringstream msg;
    msg << "q0(r) / log^{n-1}(1/r) keeps growing (relative trend " << gc.relative_trend << ")";
    throw NotApplicableError(msg.str());
  }
  const BoundParameters params = default_parameters(n, PsiKind::canonical, q, cfg);
  InjectivityReport rep = estimate_delta(q, n, PsiKind::canonical, params, cfg);
  rep.method = Method::log_growth;
  rep.growth = gc;
  return rep;
}

InjectivityReport fmo_report(const QField& q, int n, const Config& cfg) {
  if (q.dim() != n) throw DimensionError("field dimension does not match n");
  const auto grid = default_fmo_grid();
  const FmoReport osc = fmo_oscillation(q, Point(n, 0.0), grid, cfg);
  if (osc.is_fmo != Tristate::yes) {
    std::ostringstream msg;
    msg << "mean oscillation test returned " << to_string(osc.is_fmo) << " (relative trend "
        << osc.relative_trend << ")";
    throw NotApplicableError(msg.str());
  }
  if (!osc.epsilon0) throw NotApplicableError("no epsilon0 with a finite weighted integral");
  const BoundParameters params = default_parameters(n, PsiKind::fmo, q, cfg, osc.epsilon0);
  InjectivityReport rep = estimate_delta(q, n, PsiKind::fmo, params, cfg, *osc.epsilon0);
  rep.fmo = osc;
  return rep;
}

// ---------------------------------------------------------------------------
// Sharpness

namespace {

// Largest R <= top with q0 >= 1 on (delta, R).
double unit_floor_radius(const QField& q, double delta, double top) {
  auto ok = [&](double r) { return q.radial(r) >= 1.0; };
  constexpr int kScan = 2000;
  const double a = std::log(delta);
  const double b = std::log(top);
  double prev = a;
  for (int i = 1; i <= kScan; ++i) {
    const double u = a + (b - a) * i / kScan;
    if (!ok(std::exp(u))) {
      double lo = prev, hi = u;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (ok(std::exp(mid))) lo = mid;
        else hi = mid;
      }
      return std::exp(lo);
    }
    prev = u;
  }
  return top;
}

std::vector<double> ring_radii(double delta, double domain) {
  std::vector<double> out;
  const double lo = delta / 8.0;
  const double hi = domain * (1.0 - 1e-3);
  for (int i = 0; i < 6; ++i) out.push_back(lo * std::pow(hi / lo, i / 5.0));
  out.push_back(delta);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SharpnessPlan build_sharpness(const QField& q, double delta, int n, const Config& cfg,
                              const SharpnessOptions& opts) {
  if (!(delta > 0.0 && delta < 1.0)) throw ArgumentError("delta must lie in (0, 1)");
  if (q.dim() != n) throw DimensionError("field dimension does not match n");
  if (!(opts.clearance > 0.0)) throw ArgumentError("axis clearance must be positive");
  cfg.validate();
  if (!q.is_radial()) throw UnsupportedMapError("sharpness construction needs a radial field");

  const DivergenceClass div = classify_divergence(q, cfg);
  if (div.verdict == Verdict::divergent)
    throw NotApplicableError(
        "controlling integral diverges at the origin: every such map is injective near 0");
  if (div.verdict == Verdict::inconclusive)
    throw InconclusiveError("divergence of the controlling integral could not be decided");

  SharpnessPlan plan;
  plan.delta = delta;
  plan.normalized = opts.normalize_by_K;

  double top = q.outer_radius();
  if (top >= 1.0) {
    double w0 = 0.0;
    try {
      w0 = q.radial_log(0.0);
    } catch (const Error&) {
    }
    if (!(w0 > 0.0) || !std::isfinite(w0)) top = cfg.r_max;
  }
  if (!(delta < top)) throw ArgumentError("delta lies beyond the field's range");
  if (!(q.radial_log(std::nextafter(std::log(delta), INFINITY)) >= 1.0))
    throw ConstructionError("the construction needs Q >= 1 just outside delta");
  plan.domain_radius = unit_floor_radius(q, delta, top);
  if (plan.domain_radius < top)
    plan.caveats.push_back("Q drops below 1 at |x| = " + fmt(plan.domain_radius) +
                           "; the stretch is built on that smaller ball");
  if (top < 1.0 && plan.domain_radius == top)
    plan.caveats.push_back("stretch domain capped at " + fmt(top));

  // sigma only depends on Q outside delta, so the order k can be chosen first.
  const MapSpec probe = radial_stretch_from_q(QField::truncated(1.0, delta, q), n, cfg,
                                              plan.domain_radius);
  const double sigma_q = std::get<RadialStretch>(probe.kind).rho(delta);
  const double D = 1.0 + opts.clearance;
  auto feasible = [&](int k) {
    const double sig = opts.normalize_by_K ? std::pow(sigma_q, k) : sigma_q;
    return D * std::sin(std::numbers::pi / k) < sig * (1.0 - 1e-6);
  };
  int k = 0;
  if (opts.k) {
    if (*opts.k < 2) throw ArgumentError("winding order must be at least 2");
    if (!feasible(*opts.k))
      throw AxisPlacementError("winding order " + std::to_string(*opts.k) +
                               " cannot place an angle pair inside the image of B(0, delta)"
                               " with the axis clear of the image ball");
    k = *opts.k;
  } else {
    for (int c = 2; c <= 4096 && !k; ++c)
      if (feasible(c)) k = c;
    if (!k)
      throw AxisPlacementError("no winding order up to 4096 fits an angle pair inside rho(delta) = " +
                               fmt(sigma_q));
  }
  plan.k = k;
  plan.K = std::pow(static_cast<double>(k), n - 1);

  const QField outer = opts.normalize_by_K ? QField::scaled(1.0 / plan.K, q) : q;
  plan.q_tilde = QField::truncated(1.0 / plan.K, delta, outer);
  plan.stretch = radial_stretch_from_q(plan.q_tilde, n, cfg, plan.domain_radius);
  plan.sigma = std::get<RadialStretch>(plan.stretch.kind).rho(delta);

  plan.axis = standard_axis(n, D);
  plan.axis_clearance = axis_clearance(plan.axis, Point(n, 0.0), 1.0);
  if (!(plan.axis_clearance > 0.0)) throw AxisPlacementError("axis meets the image ball");
  plan.composed = compose({winding_map(k, plan.axis, n), plan.stretch});

  const auto w = noninjectivity_witness(plan.composed, delta, cfg);
  if (!w) throw ConstructionError("no witness found inside B(0, delta)");
  plan.witness = *w;

  const QField bound = opts.normalize_by_K ? q : QField::scaled(plan.K, q);
  const auto radii = ring_radii(delta, plan.domain_radius);
  for (std::size_t i = 0; i < radii.size(); ++i)
    for (std::size_t j = i + 1; j < radii.size(); ++j) {
      plan.ring_checks_q_tilde.push_back(
          verify_ring_inequality(plan.stretch, plan.q_tilde, radii[i], radii[j], n, cfg));
      plan.ring_checks_bound.push_back(
          verify_ring_inequality(plan.stretch, bound, radii[i], radii[j], n, cfg));
    }
  return plan;
}

}  // namespace injrad
