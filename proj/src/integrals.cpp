#include "injrad/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "injrad/errors.hpp"
#include "injrad/geometry.hpp"
#include "injrad/quadrature.hpp"

namespace injrad {

const char* to_string(PsiKind k) {
  switch (k) {
    case PsiKind::canonical: return "canonical";
    case PsiKind::fmo: return "fmo";
    default: return "custom";
  }
}

const char* to_string(Endpoint e) { return e == Endpoint::lower ? "lower" : "upper"; }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::divergent: return "divergent";
    case Verdict::convergent: return "convergent";
    default: return "inconclusive";
  }
}

double PsiWeight::weight_log(double u) const {
  const double lo = r1 > 0.0 ? std::log(r1) : -INFINITY;
  const double hi = std::log(r2);
  if (u < lo || u > hi) return 0.0;
  return t_psi_log(u);
}

double PsiWeight::operator()(double t) const {
  if (!(t > 0.0)) throw DomainError("psi evaluated at nonpositive radius");
  return weight_log(std::log(t)) / t;
}

namespace {

double q_root(double q0, int n) {
  if (q0 == 0.0) return INFINITY;
  if (std::isinf(q0)) return 0.0;
  return std::pow(q0, -1.0 / (n - 1));
}

void check_support(double r1, double r2, double hi_limit) {
  if (!(r1 >= 0.0) || !(r2 > r1) || !(r2 <= hi_limit)) {
    std::ostringstream msg;
    msg << "weight support (" << r1 << ", " << r2 << ") must satisfy 0 <= r1 < r2 <= "
        << hi_limit;
    throw ArgumentError(msg.str());
  }
}

double log_or_minus_inf(double r) { return r > 0.0 ? std::log(r) : -INFINITY; }

double slope_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double m = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

PsiWeight psi_canonical(const RadialProfile& profile, int n, double r1, double r2) {
  constants(n);
  check_support(r1, r2, 1.0);
  const double slack = 1e-12;
  if (r1 < profile.min_radius() * (1.0 - slack) || r2 > profile.max_radius() * (1.0 + slack)) {
    std::ostringstream msg;
    msg << "profile covers [" << profile.min_radius() << ", " << profile.max_radius()
        << "] but the weight needs (" << r1 << ", " << r2 << ")";
    throw DomainError(msg.str());
  }
  PsiWeight w;
  w.kind = PsiKind::canonical;
  w.n = n;
  w.r1 = r1;
  w.r2 = r2;
  w.q_profile = profile;
  auto shared = std::make_shared<RadialProfile>(profile);
  w.t_psi_log = [shared, n](double u) { return q_root(shared->eval_log(u), n); };
  for (double r : profile.radii()) w.breakpoints_log.push_back(std::log(r));
  w.label = "canonical:" + profile.provenance();
  return w;
}

PsiWeight psi_canonical(const QField& q, double r1, double r2) {
  if (!q.is_radial()) throw ArgumentError("canonical weight from a field needs a radial field");
  check_support(r1, r2, q.outer_radius());
  PsiWeight w;
  w.kind = PsiKind::canonical;
  w.n = q.dim();
  w.r1 = r1;
  w.r2 = r2;
  auto shared = std::make_shared<QField>(q);
  const int n = q.dim();
  w.t_psi_log = [shared, n](double u) { return q_root(shared->radial_log(u), n); };
  w.breakpoints_log = q.breakpoints_log();
  w.label = "canonical:" + q.describe();
  return w;
}

PsiWeight psi_fmo(double epsilon0, int n) {
  constants(n);
  if (!(epsilon0 > 0.0 && epsilon0 <= 1.0)) throw ArgumentError("epsilon0 must lie in (0, 1]");
  PsiWeight w;
  w.kind = PsiKind::fmo;
  w.n = n;
  w.r1 = 0.0;
  w.r2 = 1.0;
  const double l0 = -std::log(epsilon0);
  w.t_psi_log = [epsilon0, l0](double u) { return 1.0 / (epsilon0 * (l0 - u)); };
  std::ostringstream label;
  label << "fmo:eps0=" << epsilon0;
  w.label = label.str();
  return w;
}

PsiWeight psi_tabulated(const RadialProfile& psi_values, int n) {
  constants(n);
  PsiWeight w;
  w.kind = PsiKind::custom;
  w.n = n;
  w.r1 = psi_values.min_radius();
  w.r2 = psi_values.max_radius();
  auto shared = std::make_shared<RadialProfile>(psi_values);
  w.t_psi_log = [shared](double u) { return std::exp(u) * shared->eval_log(u); };
  for (double r : psi_values.radii()) w.breakpoints_log.push_back(std::log(r));
  w.label = "tabulated:" + psi_values.provenance();
  return w;
}

PsiWeight psi_custom(std::function<double(double)> t_psi_log, int n, double r1, double r2,
                     std::string label) {
  constants(n);
  check_support(r1, r2, 1.0);
  PsiWeight w;
  w.kind = PsiKind::custom;
  w.n = n;
  w.r1 = r1;
  w.r2 = r2;
  w.t_psi_log = std::move(t_psi_log);
  w.label = std::move(label);
  return w;
}

namespace detail {

IntegralResult integrate_log(const std::function<double(double)>& g, double u1, double u2,
                             const std::vector<double>& breaks, const Config& cfg) {
  if (!(u1 < u2) || u2 > 0.0) throw ArgumentError("integration limits out of order");
  const quad::Settings s = quad::settings_from(cfg);
  IntegralResult out;

  bool upper_singular = false;
  if (u2 == 0.0) {
    double g0 = INFINITY;
    try {
      g0 = g(0.0);
    } catch (const Error&) {
    }
    upper_singular = !std::isfinite(g0);
  }

  double lo = u1;
  if (std::isinf(u1)) {
    lo = u2 - 1.0;
    for (double b : breaks)
      if (b < u2) lo = std::min(lo, b - 1.0);
  }
  double hi = u2;
  if (upper_singular) hi = std::max(-0.5, 0.5 * lo);

  if (std::isinf(u1)) {
    const quad::TailResult t = quad::tail(g, lo, -1, 1.0, s);
    if (t.diverged) {
      out.value = INFINITY;
      out.diverged_at = Endpoint::lower;
      return out;
    }
    out.value += t.value;
    out.abs_error_estimate += t.abs_error;
  }

  std::vector<double> cuts{lo};
  for (double b : breaks)
    if (b > lo && b < hi) cuts.push_back(b);
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.push_back(hi);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] > cuts[i])) continue;
    const quad::Result r = quad::adaptive(g, cuts[i], cuts[i + 1], s);
    out.value += r.value;
    out.abs_error_estimate += r.abs_error;
  }

  if (upper_singular) {
    // u = -exp(-w) pushes the endpoint u = 0 to w = +inf.
    const double w0 = -std::log(-hi);
    const quad::TailResult t = quad::tail(
        [&g](double w) {
          const double e = std::exp(-w);
          return g(-e) * e;
        },
        w0, +1, 1.0, s);
    if (t.diverged) {
      out.value = INFINITY;
      out.diverged_at = Endpoint::upper;
      return out;
    }
    out.value += t.value;
    out.abs_error_estimate += t.abs_error;
  }
  return out;
}

}  // namespace detail

IntegralResult integrate_I(const PsiWeight& psi, double r1, double r2, const Config& cfg) {
  const double slack = 1e-12;
  if (!(r1 < r2) || r1 < psi.r1 * (1.0 - slack) || r2 > psi.r2 * (1.0 + slack) || r1 < 0.0) {
    std::ostringstream msg;
    msg << "interval (" << r1 << ", " << r2 << ") is not inside the weight support (" << psi.r1
        << ", " << psi.r2 << ")";
    throw DomainError(msg.str());
  }
  const double u1 = log_or_minus_inf(r1);
  const double u2 = r2 >= 1.0 ? 0.0 : std::log(r2);
  return detail::integrate_log(psi.t_psi_log, u1, u2, psi.breakpoints_log, cfg);
}

namespace {

// Partial integrals over dyadic shells [c 2^{-k}, c 2^{-k+1}] and a slope
// test on their decay against log log(1/eps).
DivergenceClass numeric_classify(const std::function<double(double)>& g, double c, double r_min,
                                 const std::vector<double>& breaks, const Config& cfg) {
  DivergenceClass out;
  out.c = c;
  if (r_min > 1e-6 * c * (1.0 + 1e-9)) {
    out.verdict = Verdict::inconclusive;
    out.fit.model = "insufficient tail data";
    return out;
  }
  const int count = std::min(60, static_cast<int>(std::floor(std::log2(c / r_min) + 1e-9)));
  std::vector<double> increments;
  double partial = 0.0;
  for (int k = 1; k <= count; ++k) {
    const double lo = std::ldexp(c, -k);
    const double hi = std::ldexp(c, -k + 1);
    const IntegralResult piece = detail::integrate_log(g, std::log(lo), std::log(hi), breaks, cfg);
    partial += piece.value;
    increments.push_back(piece.value);
    out.epsilons.push_back(lo);
    out.partial_values.push_back(partial);
    if (!std::isfinite(partial)) {
      out.verdict = Verdict::divergent;
      out.fit.model = "non-integrable shell";
      return out;
    }
  }

  constexpr int kFit = 5;
  const std::size_t m = increments.size();
  std::vector<double> xs, ys;
  int zeros = 0;
  for (std::size_t i = m - kFit; i < m; ++i) {
    if (increments[i] <= 0.0) {
      ++zeros;
      continue;
    }
    xs.push_back(std::log(std::log(1.0 / out.epsilons[i])));
    ys.push_back(std::log(increments[i]));
  }
  out.fit.points = kFit;
  if (zeros == kFit) {
    out.verdict = Verdict::convergent;
    out.fit.model = "vanishing increments";
    return out;
  }
  if (zeros > 0 || xs.size() < 3) {
    out.verdict = Verdict::inconclusive;
    out.fit.model = "partially vanishing increments";
    return out;
  }
  out.fit.model = "power law in log(1/eps)";
  out.fit.slope = slope_fit(xs, ys);
  const double s = out.fit.slope;
  if (s <= -1.25) out.verdict = Verdict::convergent;
  else if (s >= -1.05 || partial > cfg.divergence_threshold) out.verdict = Verdict::divergent;
  else out.verdict = Verdict::inconclusive;
  return out;
}

std::optional<Verdict> analytic_verdict(const QField& q, std::string& why) {
  return std::visit(
      [&](const auto& k) -> std::optional<Verdict> {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ConstantField>) {
          why = "constant field";
          return std::isinf(k.k) ? Verdict::convergent : Verdict::divergent;
        } else if constexpr (std::is_same_v<T, LogPowerField>) {
          why = "log-power exponent against n-1";
          if (k.c == 0.0) return Verdict::divergent;
          return k.p <= q.dim() - 1 ? Verdict::divergent : Verdict::convergent;
        } else if constexpr (std::is_same_v<T, RadialPowerField>) {
          why = "radial-power exponent sign";
          return k.a >= 0.0 ? Verdict::divergent : Verdict::convergent;
        } else if constexpr (std::is_same_v<T, TruncatedField>) {
          why = "constant inner part";
          return std::isinf(k.inner) ? Verdict::convergent : Verdict::divergent;
        } else if constexpr (std::is_same_v<T, ScaledField>) {
          if (k.factor == 0.0) {
            why = "zero field";
            return Verdict::divergent;
          }
          const auto base = analytic_verdict(*k.base, why);
          if (base && std::isinf(k.factor)) return Verdict::convergent;
          return base;
        } else {
          return std::nullopt;
        }
      },
      q.kind());
}

}  // namespace

DivergenceClass classify_divergence(const RadialProfile& profile, int n, const Config& cfg) {
  constants(n);
  std::vector<double> breaks;
  for (double r : profile.radii()) breaks.push_back(std::log(r));
  auto g = [&profile, n](double u) { return q_root(profile.eval_log(u), n); };
  return numeric_classify(g, profile.max_radius(), profile.min_radius(), breaks, cfg);
}

DivergenceClass classify_divergence(const QField& q, const Config& cfg) {
  const int n = q.dim();
  if (const auto* t = std::get_if<TabulatedField>(&q.kind()))
    return classify_divergence(t->profile, n, cfg);

  if (!q.is_radial()) {
    const Point origin(n, 0.0);
    const auto grid = log_grid(1e-7, 0.5, 61);
    return classify_divergence(q_profile(q, origin, grid, cfg), n, cfg);
  }

  std::string why;
  const std::optional<Verdict> exact = analytic_verdict(q, why);
  const double c = std::min(0.5, q.outer_radius());
  auto g = [&q, n](double u) { return q_root(q.radial_log(u), n); };
  DivergenceClass out;
  try {
    out = numeric_classify(g, c, std::ldexp(c, exact ? -20 : -40), q.breakpoints_log(), cfg);
  } catch (const NumericError&) {
    if (!exact) throw;
    out = DivergenceClass{};
    out.c = c;
  }
  if (exact) {
    out.verdict = *exact;
    out.fit.model = "analytic: " + why;
  }
  return out;
}

double fubini_rhs(const QField& q, const PsiWeight& psi, double r1, double r2, int n,
                  const Config& cfg) {
  if (q.dim() != n || psi.n != n) throw DimensionError("field, weight and n must agree");
  if (!(r1 >= 0.0) || !(r2 > r1) || r2 > 1.0) throw ArgumentError("need 0 <= r1 < r2 <= 1");
  const DimensionConstants dc = constants(n);
  const bool radial = q.is_radial();
  const Point origin(n, 0.0);
  auto h = [&](double u) {
    const double q0 = radial ? q.radial_log(u) : q_average(q, origin, std::exp(u), cfg);
    if (q0 == 0.0) return 0.0;
    const double w = psi.weight_log(u);
    if (w == 0.0) return 0.0;
    return q0 * std::pow(w, n);
  };
  std::vector<double> breaks = psi.breakpoints_log;
  for (double b : q.breakpoints_log()) breaks.push_back(b);
  if (psi.r1 > 0.0) breaks.push_back(std::log(psi.r1));
  if (psi.r2 < 1.0) breaks.push_back(std::log(psi.r2));
  const double u1 = log_or_minus_inf(std::max(r1, psi.r1));
  const double u2 = std::min(r2, psi.r2) >= 1.0 ? 0.0 : std::log(std::min(r2, psi.r2));
  if (!(u1 < u2)) return 0.0;
  const IntegralResult res = detail::integrate_log(h, u1, u2, breaks, cfg);
  return dc.omega * res.value;
}

PsiWeight eta_normalize(const PsiWeight& psi, double r1, double r2, const Config& cfg) {
  const IntegralResult res = integrate_I(psi, r1, r2, cfg);
  if (res.diverged_at || !std::isfinite(res.value) || !(res.value > 0.0)) {
    std::ostringstream msg;
    msg << "cannot normalize: I(" << r1 << ", " << r2 << ") = " << res.value;
    throw NormalizationError(msg.str());
  }
  PsiWeight eta = psi;
  eta.kind = PsiKind::custom;
  eta.r1 = r1;
  eta.r2 = r2;
  const double scale = 1.0 / res.value;
  eta.t_psi_log = [base = psi.t_psi_log, scale](double u) { return scale * base(u); };
  eta.q_profile.reset();
  eta.label = "eta:" + psi.label;
  return eta;
}

}  // namespace injrad
