#include "injrad/mappings.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "injrad/errors.hpp"
#include "injrad/geometry.hpp"
#include "injrad/integrals.hpp"
#include "injrad/random.hpp"
#include "injrad/text.hpp"

namespace injrad {

// ---------------------------------------------------------------------------
// RadialStretch

RadialStretch RadialStretch::power(double exponent, std::string label) {
  if (!(exponent > 0.0) || !std::isfinite(exponent))
    throw ConstructionError("stretch exponent must be positive and finite");
  RadialStretch s;
  s.exponent_ = exponent;
  s.upper_ = 1.0;
  s.label_ = std::move(label);
  return s;
}

RadialStretch RadialStretch::table(std::vector<Segment> segments, double upper,
                                   std::string label) {
  if (segments.empty()) throw ConstructionError("stretch table is empty");
  RadialStretch s;
  s.segments_ = std::move(segments);
  s.upper_ = upper;
  s.label_ = std::move(label);
  return s;
}

double RadialStretch::log_rho(double u) const {
  const double top = upper_ >= 1.0 ? 0.0 : std::log(upper_);
  if (std::isnan(u) || u > top + 1e-12 * std::max(1.0, std::abs(top))) {
    std::ostringstream msg;
    msg << "radius " << std::exp(u) << " beyond the stretch domain " << upper_;
    throw DomainError(msg.str());
  }
  u = std::min(u, top);
  if (is_power()) return exponent_ * u;
  const Segment& first = segments_.front();
  if (u <= first.ua) return first.la + first.sa * (u - first.ua);
  auto it = std::upper_bound(segments_.begin(), segments_.end(), u,
                             [](double v, const Segment& s) { return v < s.ua; });
  const Segment& s = *(it - 1);
  const double h = s.ub - s.ua;
  const double t = std::clamp((u - s.ua) / h, 0.0, 1.0);
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * s.la + (t3 - 2 * t2 + t) * h * s.sa + (-2 * t3 + 3 * t2) * s.lb +
         (t3 - t2) * h * s.sb;
}

double RadialStretch::rho(double r) const {
  if (!(r >= 0.0)) throw DomainError("stretch evaluated at a negative radius");
  if (r == 0.0) return 0.0;
  if (is_power()) {
    if (r > upper_) throw DomainError("radius beyond the stretch domain");
    return exponent_ == 1.0 ? r : std::pow(r, exponent_);
  }
  return std::exp(log_rho(std::log(r)));
}

double RadialStretch::inverse(double R) const {
  if (!(R >= 0.0) || R > 1.0 + 1e-12) throw DomainError("stretch image radius outside [0, 1]");
  if (R == 0.0) return 0.0;
  if (is_power()) return exponent_ == 1.0 ? std::min(R, 1.0) : std::pow(std::min(R, 1.0), 1.0 / exponent_);
  const double target = std::min(std::log(R), 0.0);
  const Segment& first = segments_.front();
  if (target <= first.la) return std::exp(first.ua + (target - first.la) / first.sa);
  if (target >= segments_.back().lb) return upper_;
  auto it = std::upper_bound(segments_.begin(), segments_.end(), target,
                             [](double v, const Segment& s) { return v < s.la; });
  const Segment& s = *(it - 1);
  double lo = s.ua, hi = s.ub;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (log_rho(mid) < target) lo = mid;
    else hi = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

// ---------------------------------------------------------------------------
// Construction from Q

namespace {

double stretch_slope(const QField& q, int n, double u) {
  const double q0 = q.radial_log(u);
  if (!(q0 > 0.0) || !std::isfinite(q0)) {
    std::ostringstream msg;
    msg << "spherical mean " << q0 << " at r = " << std::exp(u)
        << " must be positive and finite to build a stretch";
    throw ConstructionError(msg.str());
  }
  return std::pow(q0, -1.0 / (n - 1));
}

struct Piece {
  double a, b;
  double integral;  // of the slope over [a, b]
};

}  // namespace

MapSpec radial_stretch_from_q(const QField& q, int n, const Config& cfg,
                              std::optional<double> upper) {
  if (q.dim() != n) throw DimensionError("field dimension does not match n");
  if (!q.is_radial()) throw UnsupportedMapError("a radial stretch needs a radial field");
  const std::string label = "stretch:" + q.describe();

  if (const auto* c = std::get_if<ConstantField>(&q.kind()); c && !upper) {
    if (!(c->k > 0.0) || !std::isfinite(c->k))
      throw ConstructionError("constant field must be positive and finite");
    const double e = c->k == 1.0 ? 1.0 : std::pow(c->k, -1.0 / (n - 1));
    return MapSpec{n, RadialStretch::power(e, label), label};
  }

  double top = 1.0;
  if (upper) {
    if (!(*upper > 0.0 && *upper <= q.outer_radius()))
      throw ArgumentError("stretch domain radius must lie in (0, field range]");
    top = *upper;
  } else if (q.outer_radius() < 1.0) {
    top = q.outer_radius();
  } else {
    double g0 = INFINITY;
    try {
      g0 = stretch_slope(q, n, 0.0);
    } catch (const Error&) {
    }
    if (!std::isfinite(g0)) top = cfg.r_max;
  }
  const double U = top >= 1.0 ? 0.0 : std::log(top);
  const double u_lo = std::log(1e-12);
  if (!(U > u_lo + 1.0)) throw ConstructionError("stretch domain too small");

  auto g = [&](double u) { return stretch_slope(q, n, u); };
  Config tight = cfg;
  tight.abs_tol = 1e-14;
  tight.rel_tol = 1e-13;
  auto integral = [&](double a, double b) {
    const IntegralResult r = detail::integrate_log(g, a, b, {}, tight);
    if (r.diverged_at || !std::isfinite(r.value))
      throw ConstructionError("defining integral of the stretch diverges inside the ball");
    return r.value;
  };
  auto left_slope = [&](double b) { return g(std::nextafter(b, -INFINITY)); };
  auto right_slope = [&](double a) { return g(std::nextafter(a, INFINITY)); };

  std::vector<double> nodes;
  for (double u = u_lo; u < std::min(U, -1.0); u += 0.5) nodes.push_back(u);
  for (int j = 0; j < 80; ++j) {
    const double u = -std::ldexp(1.0, -j);
    if (u < U && u > u_lo) nodes.push_back(u);
  }
  for (double b : q.breakpoints_log())
    if (b > u_lo && b < U) nodes.push_back(b);
  nodes.push_back(U);
  std::sort(nodes.begin(), nodes.end());
  std::vector<double> clean;
  for (double u : nodes)
    if (clean.empty() || u - clean.back() > 1e-9) clean.push_back(u);
  clean.back() = U;

  // Refine each piece until the Hermite cubic reproduces the midpoint value
  // and stays monotone.
  constexpr double kTol = 1e-12;
  constexpr std::size_t kMaxPieces = 200000;
  std::vector<Piece> done;
  std::vector<Piece> work;
  for (std::size_t i = clean.size() - 1; i > 0; --i)
    work.push_back({clean[i - 1], clean[i], integral(clean[i - 1], clean[i])});
  while (!work.empty()) {
    const Piece p = work.back();
    work.pop_back();
    const double h = p.b - p.a;
    const double sa = right_slope(p.a);
    const double sb = left_slope(p.b);
    const double mid = 0.5 * (p.a + p.b);
    const double left = integral(p.a, mid);
    const double right = integral(mid, p.b);
    const double hermite = 0.5 * p.integral + h * (sa - sb) / 8.0;
    const double delta = p.integral / h;
    const double fc = (sa * sa + sb * sb) / (delta * delta);
    const bool ok = std::abs(hermite - left) <= kTol * std::max(1.0, p.integral) && fc <= 9.0;
    if (ok || h < 1e-13) {
      done.push_back({p.a, p.b, left + right});
      continue;
    }
    if (done.size() + work.size() > kMaxPieces)
      throw ConstructionError("stretch table refinement exceeded its budget");
    work.push_back({mid, p.b, right});
    work.push_back({p.a, mid, left});
  }
  std::sort(done.begin(), done.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });

  std::vector<RadialStretch::Segment> segs(done.size());
  double lb = 0.0;
  for (std::size_t i = done.size(); i-- > 0;) {
    const Piece& p = done[i];
    const double la = lb - p.integral;
    if (!(la < lb)) throw ConstructionError("stretch is not strictly increasing");
    segs[i] = {p.a, p.b, la, lb, right_slope(p.a), left_slope(p.b)};
    lb = la;
  }
  return MapSpec{n, RadialStretch::table(std::move(segs), top, label), label};
}

// ---------------------------------------------------------------------------
// Other maps

WindingAxis standard_axis(int n, double offset) {
  if (n < 2) throw DimensionError("winding map needs n >= 2");
  WindingAxis a{Point(n, 0.0), Point(n, 0.0), Point(n, 0.0)};
  a.base[0] = offset;
  a.u[0] = 1.0;
  a.v[1] = 1.0;
  return a;
}

MapSpec winding_map(int k, const WindingAxis& axis, int n) {
  constants(n);
  if (k < 2) throw ArgumentError("winding order must be at least 2");
  if (static_cast<int>(axis.base.size()) != n || static_cast<int>(axis.u.size()) != n ||
      static_cast<int>(axis.v.size()) != n)
    throw ArgumentError("winding axis dimension mismatch");
  if (std::abs(norm(axis.u) - 1.0) > 1e-12 || std::abs(norm(axis.v) - 1.0) > 1e-12 ||
      std::abs(dot(axis.u, axis.v)) > 1e-12)
    throw ArgumentError("winding plane vectors must be orthonormal");
  std::ostringstream label;
  label << "winding:" << k << ",base=(";
  for (int i = 0; i < n; ++i) label << (i ? "," : "") << axis.base[i];
  label << ")";
  return MapSpec{n, WindingMap{k, axis}, label.str()};
}

MapSpec exp2d_map(int m) {
  if (m < 1) throw ArgumentError("exp2d parameter must be at least 1");
  return MapSpec{2, Exp2dMap{m}, "exp2d:" + std::to_string(m)};
}

MapSpec compose(std::vector<MapSpec> maps) {
  if (maps.empty()) throw ArgumentError("empty composition");
  const int n = maps.front().n;
  std::string label = "compose:";
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (maps[i].n != n) throw DimensionError("composed maps must share a dimension");
    label += (i ? ";" : "") + maps[i].label;
  }
  return MapSpec{n, Composition{std::move(maps)}, label};
}

namespace {

Point eval_winding(const WindingMap& w, std::span<const double> x) {
  const std::size_t n = x.size();
  Point y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] - w.axis.base[i];
  const double a = dot(y, w.axis.u);
  const double b = dot(y, w.axis.v);
  const double radius = std::hypot(a, b);
  const double theta = w.k * std::atan2(b, a);
  const double c = radius * std::cos(theta);
  const double s = radius * std::sin(theta);
  Point out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = w.axis.base[i] + (y[i] - a * w.axis.u[i] - b * w.axis.v[i]) + c * w.axis.u[i] +
             s * w.axis.v[i];
  return out;
}

}  // namespace

Point map_eval(const MapSpec& f, std::span<const double> x) {
  if (static_cast<int>(x.size()) != f.n) throw ArgumentError("point dimension does not match map");
  return std::visit(
      [&](const auto& k) -> Point {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, RadialStretch>) {
          const double r = norm(x);
          if (r >= 1.0) throw DomainError("point outside the unit ball");
          if (r == 0.0) return Point(x.size(), 0.0);
          if (k.is_power() && k.exponent() == 1.0) return Point(x.begin(), x.end());
          const double factor = k.rho(r) / r;
          Point out(x.begin(), x.end());
          for (double& v : out) v *= factor;
          return out;
        } else if constexpr (std::is_same_v<T, WindingMap>) {
          return eval_winding(k, x);
        } else if constexpr (std::is_same_v<T, Exp2dMap>) {
          if (norm(x) >= 1.0) throw DomainError("point outside the unit disk");
          const double mod = std::exp(k.m * x[0]);
          return {mod * std::cos(k.m * x[1]), mod * std::sin(k.m * x[1])};
        } else {
          Point y(x.begin(), x.end());
          for (auto it = k.maps.rbegin(); it != k.maps.rend(); ++it) y = map_eval(*it, y);
          return y;
        }
      },
      f.kind);
}

double axis_clearance(const WindingAxis& axis, std::span<const double> ball_center,
                      double ball_radius) {
  if (ball_center.size() != axis.base.size()) throw ArgumentError("ball dimension mismatch");
  Point d(ball_center.begin(), ball_center.end());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= axis.base[i];
  const double dist = std::hypot(dot(d, axis.u), dot(d, axis.v));
  return std::max(0.0, dist - ball_radius);
}

double distortion_estimate(const MapSpec& f, std::span<const double> x, double h) {
  const int n = f.n;
  Eigen::MatrixXd jac(n, n);
  Point xp(x.begin(), x.end());
  for (int j = 0; j < n; ++j) {
    Point a = xp, b = xp;
    a[j] += h;
    b[j] -= h;
    const Point fa = map_eval(f, a);
    const Point fb = map_eval(f, b);
    for (int i = 0; i < n; ++i) jac(i, j) = (fa[i] - fb[i]) / (2.0 * h);
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  const Eigen::VectorXd sv = svd.singularValues();
  const double det = sv.prod();
  if (!(det > 0.0)) throw NumericError("degenerate Jacobian in distortion estimate");
  return std::pow(sv(0), n) / det;
}

// ---------------------------------------------------------------------------
// Ring inequality

RingCheck verify_ring_inequality(const MapSpec& f, const QField& q, double r1, double r2, int n,
                                 const Config& cfg) {
  const auto* s = std::get_if<RadialStretch>(&f.kind);
  if (!s) throw UnsupportedMapError("ring check needs a radial stretch, got " + f.label);
  if (f.n != n || q.dim() != n) throw DimensionError("map, field and n must agree");
  if (!(r1 > 0.0) || !(r2 > r1) || !(r2 < 1.0)) throw ArgumentError("need 0 < r1 < r2 < 1");
  const DimensionConstants dc = constants(n);
  RingCheck rc;
  rc.r1 = r1;
  rc.r2 = r2;
  const double dl = s->log_rho(std::log(r2)) - s->log_rho(std::log(r1));
  rc.lhs_modulus = dc.omega * std::pow(dl, 1.0 - n);

  IntegralResult I;
  if (q.is_radial()) {
    I = integrate_I(psi_canonical(q, r1, r2), r1, r2, cfg);
  } else {
    const Point origin(n, 0.0);
    const RadialProfile prof = q_profile(q, origin, log_grid(r1, r2, 65), cfg);
    I = integrate_I(psi_canonical(prof, n, r1, r2), r1, r2, cfg);
  }
  rc.rhs_bound = std::isinf(I.value) ? 0.0 : dc.omega * std::pow(I.value, 1.0 - n);
  rc.slack = rc.rhs_bound - rc.lhs_modulus;
  rc.relative_gap =
      rc.rhs_bound > 0.0 ? std::abs(rc.slack) / rc.rhs_bound : std::abs(rc.slack);
  rc.passed = rc.lhs_modulus <= rc.rhs_bound * (1.0 + 1e-9);
  return rc;
}

// ---------------------------------------------------------------------------
// Witnesses

namespace {

void flatten(const MapSpec& f, std::vector<const MapSpec*>& out) {
  if (const auto* c = std::get_if<Composition>(&f.kind)) {
    for (const MapSpec& m : c->maps) flatten(m, out);
  } else {
    out.push_back(&f);
  }
}

std::optional<Witness> validate(const MapSpec& f, Point x1, Point x2, double radius,
                                const Config& cfg, std::string method) {
  if (distance(x1, x2) <= 0.0) return std::nullopt;
  const double containment = std::max(norm(x1), norm(x2));
  if (!(containment < radius)) return std::nullopt;
  double gap = INFINITY;
  try {
    gap = distance(map_eval(f, x1), map_eval(f, x2));
  } catch (const DomainError&) {
    return std::nullopt;
  }
  if (!(gap < cfg.witness_tol)) return std::nullopt;
  return Witness{std::move(x1), std::move(x2), gap, containment, std::move(method)};
}

// Winding applied last, radial stretches before it.
std::optional<Witness> winding_witness(const MapSpec& f, double radius, const Config& cfg) {
  std::vector<const MapSpec*> chain;
  flatten(f, chain);
  const auto* w = std::get_if<WindingMap>(&chain.front()->kind);
  if (!w) return std::nullopt;
  std::vector<const RadialStretch*> inner;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const auto* s = std::get_if<RadialStretch>(&chain[i]->kind);
    if (!s) return std::nullopt;
    inner.push_back(s);
  }
  const std::size_t n = static_cast<std::size_t>(f.n);
  const WindingAxis& ax = w->axis;
  const double bu = dot(ax.base, ax.u);
  const double bv = dot(ax.base, ax.v);
  const double D = std::hypot(bu, bv);
  const double half = std::numbers::pi / w->k;

  auto plane_point = [&](double cx, double cy) {
    Point y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) y[i] = cx * ax.u[i] + cy * ax.v[i];
    return y;
  };
  Point y1, y2;
  if (D > 1e-12) {
    // Offsets from the axis toward the origin, split by +-pi/k; radius
    // D cos(pi/k) puts both points at distance D sin(pi/k) from 0.
    const double phi0 = std::atan2(-bv, -bu);
    const double s = std::max(D * std::cos(half), 0.05 * D);
    y1 = plane_point(bu + s * std::cos(phi0 - half), bv + s * std::sin(phi0 - half));
    y2 = plane_point(bu + s * std::cos(phi0 + half), bv + s * std::sin(phi0 + half));
  } else {
    Point probe = plane_point(0.5 * radius, 0.0);
    for (auto it = inner.rbegin(); it != inner.rend(); ++it) {
      const double r = norm(probe);
      const double R = (*it)->rho(r);
      for (double& v : probe) v *= R / r;
    }
    const double s = norm(probe);
    y1 = plane_point(bu + s, bv);
    y2 = plane_point(bu + s * std::cos(2 * half), bv + s * std::sin(2 * half));
  }

  auto pull_back = [&](Point y) -> std::optional<Point> {
    for (const RadialStretch* s : inner) {
      const double R = norm(y);
      if (R == 0.0) continue;
      if (R > 1.0) return std::nullopt;
      const double r = s->inverse(R);
      for (double& v : y) v *= r / R;
    }
    return y;
  };
  const auto x1 = pull_back(y1);
  const auto x2 = pull_back(y2);
  if (!x1 || !x2) return std::nullopt;
  return validate(f, *x1, *x2, radius, cfg, "winding angle pair");
}

std::optional<Witness> exp2d_witness(const MapSpec& f, double radius, const Config& cfg) {
  const auto* e = std::get_if<Exp2dMap>(&f.kind);
  if (!e) return std::nullopt;
  const double period = 2.0 * std::numbers::pi / e->m;
  if (period < radius && period < 1.0)
    return validate(f, {0.0, 0.0}, {0.0, period}, radius, cfg, "exp2d period");
  const double halfp = 0.5 * period;
  if (halfp < radius && halfp < 1.0)
    return validate(f, {0.0, -halfp}, {0.0, halfp}, radius, cfg, "exp2d period");
  return std::nullopt;
}

std::optional<Witness> search_witness(const MapSpec& f, double radius, const Config& cfg) {
  const std::size_t n = static_cast<std::size_t>(f.n);
  const CounterRng rng(cfg.seed ^ 0x77697473ULL);
  const double inner = radius * (1.0 - 1e-9);
  const double min_sep = 1e-3 * radius;
  Point best1, best2;
  double best_gap = INFINITY;
  auto gap_of = [&](const Point& a, const Point& b) -> double {
    try {
      return distance(map_eval(f, a), map_eval(f, b));
    } catch (const DomainError&) {
      return INFINITY;
    }
  };
  for (std::uint64_t i = 0; i < cfg.witness_budget; ++i) {
    const Point a = scale(rng.in_ball(2 * i, n), inner);
    const Point b = scale(rng.in_ball(2 * i + 1, n), inner);
    if (distance(a, b) < min_sep) continue;
    const double gap = gap_of(a, b);
    if (gap < best_gap) {
      best_gap = gap;
      best1 = a;
      best2 = b;
    }
  }
  if (!std::isfinite(best_gap)) return std::nullopt;
  // Compass search moving x2 toward the image of x1.
  double step = 0.1 * radius;
  for (int iter = 0; iter < 2000 && step > 1e-15 && best_gap >= cfg.witness_tol; ++iter) {
    bool improved = false;
    for (std::size_t j = 0; j < n && !improved; ++j) {
      for (double sign : {1.0, -1.0}) {
        Point c = best2;
        c[j] += sign * step;
        if (norm(c) >= inner || distance(c, best1) < min_sep) continue;
        const double gap = gap_of(best1, c);
        if (gap < best_gap) {
          best_gap = gap;
          best2 = c;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return validate(f, best1, best2, radius, cfg, "seeded search");
}

}  // namespace

std::optional<Witness> noninjectivity_witness(const MapSpec& f, double radius, const Config& cfg) {
  if (!(radius > 0.0 && radius <= 1.0)) throw ArgumentError("witness radius must lie in (0, 1]");
  if (auto w = exp2d_witness(f, radius, cfg)) return w;
  if (auto w = winding_witness(f, radius, cfg)) return w;
  return search_witness(f, radius, cfg);
}

// ---------------------------------------------------------------------------
// Equicontinuity probe

ProbeTable equicontinuity_probe(const std::vector<MapSpec>& family, std::span<const double> x0,
                                std::span<const double> radii, const Config& cfg) {
  if (family.empty()) throw ArgumentError("probe family is empty");
  if (radii.empty()) throw ArgumentError("probe needs at least one radius");
  const std::size_t n = x0.size();
  for (const MapSpec& f : family)
    if (static_cast<std::size_t>(f.n) != n) throw DimensionError("family and x0 dimensions differ");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw ArgumentError("probe radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw ArgumentError("probe radii must be strictly increasing");
  }
  if (!(norm(x0) + radii.back() < 1.0)) throw DomainError("probe spheres leave the unit ball");

  std::vector<Point> dirs;
  for (std::size_t j = 0; j < n; ++j)
    for (double sign : {1.0, -1.0}) {
      Point e(n, 0.0);
      e[j] = sign;
      dirs.push_back(e);
    }
  const CounterRng rng(cfg.seed);
  for (std::size_t i = 0; i < cfg.probe_samples; ++i) dirs.push_back(rng.direction(i, n));

  ProbeTable table;
  std::vector<Point> centres;
  for (const MapSpec& f : family) centres.push_back(map_eval(f, x0));
  double running = 0.0;
  for (double s : radii) {
    double sup = 0.0;
    for (std::size_t m = 0; m < family.size(); ++m) {
      for (const Point& d : dirs) {
        Point x(x0.begin(), x0.end());
        for (std::size_t j = 0; j < n; ++j) x[j] += s * d[j];
        sup = std::max(sup, chordal_distance(map_eval(family[m], x), centres[m]));
      }
    }
    running = std::max(running, sup);
    table.radii.push_back(s);
    table.raw.push_back(sup);
    table.modulus.push_back(running);
  }
  return table;
}

// ---------------------------------------------------------------------------
// Parsing

MapSpec parse_mapspec(const std::string& spec, int n, const Config& cfg) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) throw ParseError("map spec '" + spec + "' lacks a kind prefix");
  const std::string kind = spec.substr(0, colon);
  const std::string body = spec.substr(colon + 1);
  const std::string context = "map spec '" + spec + "'";
  if (kind == "stretch") return radial_stretch_from_q(parse_qspec(body, n), n, cfg);
  if (kind == "winding") {
    const auto parts = text::split(body, ',');
    if (parts.size() != 2) throw ParseError(context + " needs winding:<k>,<offset>");
    const long k = text::parse_integer(parts[0], context);
    const double offset = text::parse_real(parts[1], context);
    return winding_map(static_cast<int>(k), standard_axis(n, offset), n);
  }
  if (kind == "exp2d") {
    if (n != 2) throw DimensionError("exp2d is defined for n = 2 only");
    return exp2d_map(static_cast<int>(text::parse_integer(body, context)));
  }
  if (kind == "compose") {
    std::vector<MapSpec> maps;
    for (std::string_view part : text::split(body, ';')) {
      if (text::trim(part).empty()) throw ParseError(context + " has an empty component");
      maps.push_back(parse_mapspec(std::string(text::trim(part)), n, cfg));
    }
    return compose(std::move(maps));
  }
  throw ParseError("unknown map kind '" + kind + "'");
}

}  // namespace injrad
