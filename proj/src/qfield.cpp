#include "injrad/qfield.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "injrad/errors.hpp"
#include "injrad/geometry.hpp"
#include "injrad/quadrature.hpp"
#include "injrad/random.hpp"
#include "injrad/text.hpp"

namespace injrad {

namespace {

using text::split;

std::string format_number(double v) { return text::format_real(v); }

double parse_number(std::string_view t, const std::string& context) {
  return text::parse_real(t, context);
}

// Least-squares slope of ys against xs.
double fitted_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double nn = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= nn;
  my /= nn;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

bool is_origin(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; });
}

void check_dim(const QField& q, std::span<const double> x) {
  if (static_cast<int>(x.size()) != q.dim())
    throw ArgumentError("point dimension " + std::to_string(x.size()) +
                        " does not match field dimension " + std::to_string(q.dim()));
}

}  // namespace

// ---------------------------------------------------------------------------
// RadialProfile

RadialProfile::RadialProfile(std::vector<double> radii, std::vector<double> values,
                             std::string provenance)
    : radii_(std::move(radii)), values_(std::move(values)), provenance_(std::move(provenance)) {
  if (radii_.empty() || radii_.size() != values_.size())
    throw ArgumentError("profile needs matching, nonempty radius and value lists");
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    if (!(radii_[i] > 0.0 && radii_[i] < 1.0))
      throw ArgumentError("profile radii must lie in (0, 1)");
    if (i > 0 && !(radii_[i] > radii_[i - 1]))
      throw ArgumentError("profile radii must be strictly increasing");
    if (!(values_[i] >= 0.0)) throw ArgumentError("profile values must be nonnegative");
  }
  log_radii_.reserve(radii_.size());
  for (double r : radii_) log_radii_.push_back(std::log(r));
}

double RadialProfile::eval(double r) const {
  if (!(r > 0.0)) throw DomainError("profile evaluated at nonpositive radius");
  return eval_log(std::log(r));
}

double RadialProfile::eval_log(double u) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(u));
  if (std::isnan(u) || u < log_radii_.front() - slack || u > log_radii_.back() + slack) {
    std::ostringstream msg;
    msg << "radius " << std::exp(u) << " outside tabulated range [" << radii_.front() << ", "
        << radii_.back() << "]";
    throw DomainError(msg.str());
  }
  if (u <= log_radii_.front()) return values_.front();
  if (u >= log_radii_.back()) return values_.back();
  const auto it = std::upper_bound(log_radii_.begin(), log_radii_.end(), u);
  const std::size_t hi = static_cast<std::size_t>(it - log_radii_.begin());
  const std::size_t lo = hi - 1;
  const double v0 = values_[lo];
  const double v1 = values_[hi];
  if (u == log_radii_[lo]) return v0;
  if (!std::isfinite(v0) || !std::isfinite(v1)) return INFINITY;
  const double w = (u - log_radii_[lo]) / (log_radii_[hi] - log_radii_[lo]);
  return v0 + w * (v1 - v0);
}

RadialProfile load_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open table file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ParseError("table file '" + path + "' is empty");
  std::string header;
  for (char c : line)
    if (c != ' ' && c != '\r') header.push_back(c);
  if (header != "r,value") throw ParseError("table file '" + path + "' must start with header r,value");
  std::vector<double> radii, values;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \r") == std::string::npos) continue;
    const auto parts = split(line, ',');
    const std::string where = path + ":" + std::to_string(lineno);
    if (parts.size() != 2) throw ParseError("expected two columns at " + where);
    radii.push_back(parse_number(parts[0], where));
    values.push_back(parse_number(parts[1], where));
  }
  try {
    return RadialProfile(std::move(radii), std::move(values), "table:" + path);
  } catch (const ArgumentError& e) {
    throw ParseError("table file '" + path + "': " + e.what());
  }
}

// ---------------------------------------------------------------------------
// QField

QField QField::constant(double k, int n) {
  constants(n);
  if (!(k >= 0.0)) throw ArgumentError("constant field needs K >= 0");
  return QField(ConstantField{k}, n);
}

QField QField::log_power(double c, double p, int n) {
  constants(n);
  if (!(c >= 0.0) || !std::isfinite(c) || !std::isfinite(p))
    throw ArgumentError("log-power field needs finite C >= 0 and finite p");
  return QField(LogPowerField{c, p}, n);
}

QField QField::radial_power(double a, int n) {
  constants(n);
  if (!std::isfinite(a)) throw ArgumentError("radial-power exponent must be finite");
  return QField(RadialPowerField{a}, n);
}

QField QField::tabulated(RadialProfile profile, int n, std::string source) {
  constants(n);
  return QField(TabulatedField{std::move(profile), std::move(source)}, n);
}

QField QField::truncated(double inner, double delta, QField outer) {
  if (!(inner >= 0.0) || !std::isfinite(inner))
    throw ArgumentError("truncated field needs a finite inner value >= 0");
  if (!(delta > 0.0 && delta < 1.0)) throw ArgumentError("truncation radius must lie in (0, 1)");
  const int n = outer.dim();
  return QField(TruncatedField{inner, delta, std::make_shared<const QField>(std::move(outer))}, n);
}

QField QField::scaled(double factor, QField base) {
  if (!(factor >= 0.0) || !std::isfinite(factor))
    throw ArgumentError("scale factor must be finite and >= 0");
  const int n = base.dim();
  return QField(ScaledField{factor, std::make_shared<const QField>(std::move(base))}, n);
}

QField QField::custom(std::function<double(std::span<const double>)> fn, int n,
                      std::string label, std::function<double(double)> radial_log) {
  constants(n);
  return QField(CustomField{std::move(fn), std::move(radial_log), std::move(label)}, n);
}

bool QField::is_radial() const {
  return std::visit(
      [](const auto& k) -> bool {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, TruncatedField>) return k.outer->is_radial();
        else if constexpr (std::is_same_v<T, ScaledField>) return k.base->is_radial();
        else if constexpr (std::is_same_v<T, CustomField>) return static_cast<bool>(k.radial_log);
        else return true;
      },
      kind_);
}

double QField::radial_log(double u) const {
  if (std::isnan(u) || u > 0.0) throw DomainError("radius outside the unit ball");
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ConstantField>) {
          return k.k;
        } else if constexpr (std::is_same_v<T, LogPowerField>) {
          if (k.c == 0.0) return 0.0;
          return k.c * std::pow(-u, k.p);
        } else if constexpr (std::is_same_v<T, RadialPowerField>) {
          if (k.a == 0.0) return 1.0;
          return std::exp(k.a * u);
        } else if constexpr (std::is_same_v<T, TabulatedField>) {
          return k.profile.eval_log(u);
        } else if constexpr (std::is_same_v<T, TruncatedField>) {
          return u <= std::log(k.delta) ? k.inner : k.outer->radial_log(u);
        } else if constexpr (std::is_same_v<T, ScaledField>) {
          const double v = k.base->radial_log(u);
          return k.factor == 0.0 ? 0.0 : k.factor * v;
        } else {
          if (!k.radial_log) throw DomainError("field '" + k.label + "' is not radial");
          return k.radial_log(u);
        }
      },
      kind_);
}

double QField::eval(std::span<const double> x) const {
  check_dim(*this, x);
  const double r = norm(x);
  if (!(r < 1.0)) throw DomainError("point outside the unit ball");
  if (const auto* c = std::get_if<CustomField>(&kind_)) return c->fn(x);
  if (const auto* t = std::get_if<TruncatedField>(&kind_))
    return r <= t->delta ? t->inner : t->outer->eval(x);
  if (const auto* s = std::get_if<ScaledField>(&kind_)) {
    const double v = s->base->eval(x);
    return s->factor == 0.0 ? 0.0 : s->factor * v;
  }
  return radial_log(r == 0.0 ? -INFINITY : std::log(r));
}

double QField::outer_radius() const {
  return std::visit(
      [](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, TabulatedField>) return k.profile.max_radius();
        else if constexpr (std::is_same_v<T, TruncatedField>) return k.outer->outer_radius();
        else if constexpr (std::is_same_v<T, ScaledField>) return k.base->outer_radius();
        else return 1.0;
      },
      kind_);
}

std::vector<double> QField::breakpoints_log() const {
  return std::visit(
      [](const auto& k) -> std::vector<double> {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, TabulatedField>) {
          std::vector<double> out;
          for (double r : k.profile.radii()) out.push_back(std::log(r));
          return out;
        } else if constexpr (std::is_same_v<T, TruncatedField>) {
          const double cut = std::log(k.delta);
          std::vector<double> out{cut};
          for (double b : k.outer->breakpoints_log())
            if (b > cut) out.push_back(b);
          return out;
        } else if constexpr (std::is_same_v<T, ScaledField>) {
          return k.base->breakpoints_log();
        } else {
          return {};
        }
      },
      kind_);
}

std::string QField::describe() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ConstantField>) return "const:" + format_number(k.k);
        else if constexpr (std::is_same_v<T, LogPowerField>)
          return "logpow:" + format_number(k.c) + "," + format_number(k.p);
        else if constexpr (std::is_same_v<T, RadialPowerField>) return "powr:" + format_number(k.a);
        else if constexpr (std::is_same_v<T, TabulatedField>) return "table:" + k.source;
        else if constexpr (std::is_same_v<T, TruncatedField>)
          return "trunc:" + format_number(k.inner) + "," + format_number(k.delta) + "," +
                 k.outer->describe();
        else if constexpr (std::is_same_v<T, ScaledField>)
          return "scaled:" + format_number(k.factor) + "," + k.base->describe();
        else return "custom:" + k.label;
      },
      kind_);
}

QField parse_qspec(const std::string& spec, int n) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) throw ParseError("Q-spec '" + spec + "' lacks a kind prefix");
  const std::string kind = spec.substr(0, colon);
  const std::string body = spec.substr(colon + 1);
  const std::string context = "Q-spec '" + spec + "'";
  try {
    if (kind == "const") return QField::constant(parse_number(body, context), n);
    if (kind == "powr") return QField::radial_power(parse_number(body, context), n);
    if (kind == "logpow") {
      const auto parts = split(body, ',');
      if (parts.size() != 2) throw ParseError(context + " needs logpow:C,p");
      return QField::log_power(parse_number(parts[0], context), parse_number(parts[1], context), n);
    }
    if (kind == "table") {
      if (body.empty()) throw ParseError(context + " needs a file path");
      return QField::tabulated(load_profile_csv(body), n, body);
    }
    if (kind == "trunc") {
      const std::size_t c1 = body.find(',');
      const std::size_t c2 = c1 == std::string::npos ? c1 : body.find(',', c1 + 1);
      if (c2 == std::string::npos) throw ParseError(context + " needs trunc:<inner>,<delta>,<outer>");
      const double inner = parse_number(std::string_view(body).substr(0, c1), context);
      const double delta = parse_number(std::string_view(body).substr(c1 + 1, c2 - c1 - 1), context);
      return QField::truncated(inner, delta, parse_qspec(body.substr(c2 + 1), n));
    }
  } catch (const ArgumentError& e) {
    throw ParseError(context + ": " + e.what());
  }
  throw ParseError("unknown Q-spec kind '" + kind + "'");
}

double q_eval(const QField& q, std::span<const double> x) { return q.eval(x); }

// ---------------------------------------------------------------------------
// Averages

MonteCarloEstimate q_average_estimate(const QField& q, std::span<const double> x0, double r,
                                      const Config& cfg) {
  check_dim(q, x0);
  const double reach = 1.0 - norm(x0);
  if (!(r > 0.0) || !(r < reach)) {
    std::ostringstream msg;
    msg << "sphere radius " << r << " must lie in (0, " << reach << ")";
    throw DomainError(msg.str());
  }
  if (q.is_radial() && is_origin(x0)) return {q.radial(r), 0.0, 0, true};

  const CounterRng rng(cfg.seed);
  const std::size_t n = x0.size();
  const std::size_t count = cfg.sample_count;
  double mean = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    double v = NAN;
    for (int attempt = 0; attempt <= cfg.max_resample; ++attempt) {
      const std::uint64_t index = i + (static_cast<std::uint64_t>(attempt) << 40);
      Point x = rng.direction(index, n);
      for (std::size_t j = 0; j < n; ++j) x[j] = x0[j] + r * x[j];
      v = q.eval(x);
      if (std::isfinite(v)) break;
    }
    if (!std::isfinite(v))
      throw NumericError("field is not finite on repeated resampling of S(x0, r)", r);
    const double delta = v - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (v - mean);
  }
  const double var = count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(count)), count, false};
}

double q_average(const QField& q, std::span<const double> x0, double r, const Config& cfg) {
  return q_average_estimate(q, x0, r, cfg).value;
}

RadialProfile q_profile(const QField& q, std::span<const double> x0,
                        std::span<const double> r_grid, const Config& cfg) {
  std::vector<double> radii(r_grid.begin(), r_grid.end());
  std::vector<double> values;
  values.reserve(radii.size());
  bool exact = true;
  for (double r : radii) {
    const MonteCarloEstimate est = q_average_estimate(q, x0, r, cfg);
    exact = exact && est.exact;
    values.push_back(est.value);
  }
  const std::string provenance =
      exact ? "q_average:exact-radial"
            : "q_average:monte-carlo(seed=" + std::to_string(cfg.seed) +
                  ",samples=" + std::to_string(cfg.sample_count) + ")";
  return RadialProfile(std::move(radii), std::move(values), provenance);
}

std::vector<double> log_grid(double r_lo, double r_hi, int count) {
  if (count < 2 || !(r_lo > 0.0) || !(r_hi > r_lo)) throw ArgumentError("bad log grid");
  std::vector<double> out(count);
  const double a = std::log(r_lo);
  const double b = std::log(r_hi);
  for (int i = 0; i < count; ++i) out[i] = std::exp(a + (b - a) * i / (count - 1));
  out.front() = r_lo;
  out.back() = r_hi;
  return out;
}

// ---------------------------------------------------------------------------
// Growth and oscillation tests

GrowthCheck log_growth_check(const RadialProfile& profile, int n) {
  constants(n);
  constexpr double kSmall = 0.1;
  if (profile.min_radius() > kSmall)
    throw InconclusiveError("profile does not reach radii below 0.1");
  std::vector<double> ls, ratios;
  for (std::size_t i = 0; i < profile.radii().size(); ++i) {
    const double r = profile.radii()[i];
    if (r > kSmall * (1.0 + 1e-12)) continue;
    const double l = std::log(1.0 / r);
    ls.push_back(l);
    ratios.push_back(profile.values()[i] / std::pow(l, n - 1));
  }
  if (ls.size() < 3) throw InconclusiveError("fewer than three profile nodes below r = 0.1");
  GrowthCheck out;
  out.nodes_used = static_cast<int>(ls.size());
  out.c_estimate = *std::max_element(ratios.begin(), ratios.end());
  if (!std::isfinite(out.c_estimate)) {
    out.holds = false;
    out.relative_trend = INFINITY;
    return out;
  }
  const auto [lmin, lmax] = std::minmax_element(ls.begin(), ls.end());
  const double slope = fitted_slope(ls, ratios);
  out.relative_trend = slope * (*lmax - *lmin) / std::max(out.c_estimate, 1e-300);
  out.holds = out.relative_trend <= 0.05;
  return out;
}

const char* to_string(Tristate t) {
  switch (t) {
    case Tristate::yes: return "yes";
    case Tristate::no: return "no";
    default: return "inconclusive";
  }
}

std::vector<double> default_fmo_grid() {
  std::vector<double> grid;
  for (int k = 3; k <= 12; ++k) grid.push_back(std::ldexp(1.0, -k));
  return grid;
}

namespace {

// Ball mean and mean absolute deviation of a radial field over B(0, eps),
// written in s = log(r / eps) so the weight is n e^{ns} ds.
std::pair<double, double> radial_ball_moments(const QField& q, double eps, int n,
                                              const quad::Settings& s) {
  if (const auto* c = std::get_if<ConstantField>(&q.kind())) return {c->k, 0.0};
  const double le = std::log(eps);
  const auto mean_res = quad::tail(
      [&](double x) { return n * q.radial_log(le + x) * std::exp(n * x); }, 0.0, -1, 1.0, s);
  if (mean_res.diverged) return {INFINITY, INFINITY};
  const double mean = mean_res.value;
  const auto dev_res = quad::tail(
      [&](double x) { return n * std::abs(q.radial_log(le + x) - mean) * std::exp(n * x); }, 0.0,
      -1, 1.0, s);
  return {mean, dev_res.diverged ? INFINITY : dev_res.value};
}

std::pair<double, double> sampled_ball_moments(const QField& q, std::span<const double> x0,
                                               double eps, const Config& cfg) {
  const CounterRng rng(cfg.seed);
  const std::size_t n = x0.size();
  std::vector<double> values(cfg.sample_count);
  for (std::size_t i = 0; i < values.size(); ++i) {
    double v = NAN;
    for (int attempt = 0; attempt <= cfg.max_resample; ++attempt) {
      Point x = rng.in_ball(i + (static_cast<std::uint64_t>(attempt) << 40), n);
      for (std::size_t j = 0; j < n; ++j) x[j] = x0[j] + eps * x[j];
      v = q.eval(x);
      if (std::isfinite(v)) break;
    }
    if (!std::isfinite(v)) throw NumericError("field is not finite on repeated resampling", eps);
    values[i] = v;
  }
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); }))
    return {values.front(), 0.0};
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double dev = 0.0;
  for (double v : values) dev += std::abs(v - mean);
  return {mean, dev / static_cast<double>(values.size())};
}

}  // namespace

FmoReport fmo_oscillation(const QField& q, std::span<const double> x0,
                          std::span<const double> eps_grid, const Config& cfg) {
  check_dim(q, x0);
  if (eps_grid.size() < 3) throw ArgumentError("epsilon grid needs at least three radii");
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > 0.0)) throw ArgumentError("epsilon grid must be positive");
    if (i > 0 && !(eps_grid[i] < eps_grid[i - 1]))
      throw ArgumentError("epsilon grid must be strictly decreasing");
  }
  const double reach = 1.0 - norm(x0);
  if (!(eps_grid.front() < reach)) throw DomainError("largest ball leaves the unit ball");

  FmoReport rep;
  rep.x0.assign(x0.begin(), x0.end());
  rep.epsilons.assign(eps_grid.begin(), eps_grid.end());
  const bool radial = q.is_radial() && is_origin(x0);
  const quad::Settings s = quad::settings_from(cfg);
  for (double eps : eps_grid) {
    const auto [mean, dev] =
        radial ? radial_ball_moments(q, eps, q.dim(), s) : sampled_ball_moments(q, x0, eps, cfg);
    rep.ball_means.push_back(mean);
    rep.oscillations.push_back(dev);
  }

  const double max_osc = *std::max_element(rep.oscillations.begin(), rep.oscillations.end());
  std::vector<double> ls;
  for (double e : rep.epsilons) ls.push_back(std::log(1.0 / e));
  if (!std::isfinite(max_osc)) {
    rep.is_fmo = Tristate::no;
    rep.limsup_estimate = INFINITY;
    rep.relative_trend = INFINITY;
  } else if (max_osc <= 1e-12) {
    rep.is_fmo = Tristate::yes;
    rep.limsup_estimate = max_osc;
  } else {
    const double slope = fitted_slope(ls, rep.oscillations);
    rep.relative_trend = slope * (ls.back() - ls.front()) / max_osc;
    const std::size_t m = rep.oscillations.size();
    const bool rising = rep.oscillations[m - 1] > rep.oscillations[m - 2] &&
                        rep.oscillations[m - 2] > rep.oscillations[m - 3];
    if (rep.relative_trend <= 0.1) {
      rep.is_fmo = Tristate::yes;
      rep.limsup_estimate = max_osc;
    } else if (rep.relative_trend >= 0.5 && rising) {
      rep.is_fmo = Tristate::no;
      rep.limsup_estimate = INFINITY;
    } else {
      rep.is_fmo = Tristate::inconclusive;
      rep.limsup_estimate = max_osc;
    }
  }

  if (rep.is_fmo == Tristate::yes && is_origin(x0)) {
    std::vector<double> candidates{std::exp(-1.0)};
    for (double e : rep.epsilons)
      if (e < 1.0) candidates.push_back(e);
    for (double e0 : candidates) {
      try {
        if (std::isfinite(pr7_integral(q, e0, q.dim(), cfg))) {
          rep.epsilon0 = e0;
          break;
        }
      } catch (const NumericError&) {
      }
    }
  }
  return rep;
}

double pr7_integral(const QField& phi, double epsilon0, int n, const Config& cfg) {
  const DimensionConstants dc = constants(n);
  if (phi.dim() != n) throw ArgumentError("field dimension does not match n");
  if (!(epsilon0 > 0.0 && epsilon0 < 1.0)) throw ArgumentError("epsilon0 must lie in (0, 1)");
  const double v0 = std::log(1.0 / epsilon0);
  const Point origin(n, 0.0);
  const bool radial = phi.is_radial();
  // v = log(1/|x|); dm / (|x| log(1/|x|))^n = omega v^{-n} dv on spheres.
  auto integrand = [&](double v) {
    const double avg = radial ? phi.radial_log(-v) : q_average(phi, origin, std::exp(-v), cfg);
    if (avg == 0.0) return 0.0;
    return avg * std::pow(v, -n);
  };
  const quad::TailResult res =
      quad::tail(integrand, v0, +1, std::max(1.0, v0), quad::settings_from(cfg));
  if (res.diverged) return INFINITY;
  return dc.omega * res.value;
}

}  // namespace injrad
