#include "injrad/geometry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "injrad/errors.hpp"
#include "injrad/random.hpp"

namespace injrad {

DimensionConstants constants(int n) {
  if (n < 2) throw DimensionError("dimension must be at least 2, got " + std::to_string(n));
  const double half = 0.5 * n;
  const double omega = 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
  return {n, omega, omega / n};
}

double chordal_distance(const ExtendedPoint& x, const ExtendedPoint& y) {
  if (x.is_infinite() && y.is_infinite()) return 0.0;
  if (x.is_infinite()) return chordal_distance(y, x);
  const Point& px = x.finite();
  const double sx = std::sqrt(1.0 + dot(px, px));
  if (y.is_infinite()) return 1.0 / sx;
  const Point& py = y.finite();
  if (px.size() != py.size()) throw ArgumentError("chordal_distance: dimension mismatch");
  const double sy = std::sqrt(1.0 + dot(py, py));
  return distance(px, py) / (sx * sy);
}

double chordal_diameter(std::span<const ExtendedPoint> points) {
  if (points.empty()) throw ArgumentError("chordal_diameter: empty point set");
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      best = std::max(best, chordal_distance(points[i], points[j]));
  return best;
}

Annulus make_annulus(Point center, double r1, double r2) {
  if (!(r1 > 0.0) || !(r2 > r1) || !std::isfinite(r2)) {
    std::ostringstream msg;
    msg << "annulus needs 0 < r1 < r2, got r1=" << r1 << " r2=" << r2;
    throw ArgumentError(msg.str());
  }
  return {std::move(center), r1, r2};
}

ModulusValue ring_modulus(const Annulus& ring, int n) {
  make_annulus(ring.center, ring.r1, ring.r2);
  const DimensionConstants dc = constants(n);
  const double log_ratio = std::log(ring.r2 / ring.r1);
  return {dc.omega * std::pow(log_ratio, 1.0 - n)};
}

namespace {

void check_sphere_pair(const Point& a, const Point& b, double r) {
  if (!(r > 0.0)) throw ArgumentError("sphere radius must be positive");
  if (a.size() != b.size() || a.empty()) throw ArgumentError("points must share a dimension");
  const double tol = 1e-9 * r;
  if (std::abs(norm(a) - r) > tol || std::abs(norm(b) - r) > tol)
    throw ArgumentError("points a and b must lie on S(0, r)");
  if (distance(a, b) <= tol) throw ArgumentError("points a and b must be distinct");
}

// Fraction of t samples passing, for ranking search candidates.
double kor_score(const Point& p, const Point& a, const Point& b, double r,
                 const std::vector<double>& ts) {
  if (norm(p) >= r) return -1.0;
  const double d0 = norm(p);
  const double da = distance(p, a);
  const double db = distance(p, b);
  int pass = 0;
  for (double t : ts) {
    const bool first = d0 < t && db < t && !(da < t);
    const bool second = da < t && db < t && !(d0 < t);
    if (first || second) ++pass;
  }
  return static_cast<double>(pass) / static_cast<double>(ts.size());
}

}  // namespace

std::vector<double> kor_t_grid(double r, int count) {
  if (count < 1) throw ArgumentError("t_count must be at least 1");
  std::vector<double> ts(count);
  const double width = (std::sqrt(3.0) - 1.0) * 0.5 * r;
  for (int k = 0; k < count; ++k) ts[k] = 0.5 * r + width * (k + 0.5) / count;
  return ts;
}

KorCertificate kor_verify(const Point& p, const Point& a, const Point& b, double r,
                          int t_count) {
  check_sphere_pair(a, b, r);
  if (p.size() != a.size()) throw ArgumentError("p must share the dimension of a and b");
  KorCertificate cert{p, r, a, b, {}, kor_t_grid(r, t_count), true};
  const double d0 = norm(p);
  const double da = distance(p, a);
  const double db = distance(p, b);
  const bool inside = d0 < r;
  for (double t : cert.t_samples) {
    const bool first = d0 < t && db < t && !(da < t);
    const bool second = da < t && db < t && !(d0 < t);
    KorBranch br = KorBranch::neither;
    if (first) br = KorBranch::origin_and_b;
    if (second) br = KorBranch::a_and_b;
    cert.branch.push_back(br);
    if (br == KorBranch::neither || !inside) cert.all_pass = false;
  }
  return cert;
}

Point kor_point(const Point& a, const Point& b, double r, int t_count) {
  check_sphere_pair(a, b, r);
  const std::vector<double> ts = kor_t_grid(r, t_count);
  const std::size_t n = a.size();

  std::vector<Point> candidates;
  candidates.push_back(scale(b, 0.5));
  candidates.push_back(scale(add(a, b), 0.5));
  for (double s : {0.25, 0.4, 0.6, 0.75}) candidates.push_back(scale(b, s));
  const Point mid = add(a, b);
  const double mid_len = norm(mid);
  if (mid_len > 1e-12 * r) {
    for (double s : {std::sqrt(3.0) / 2.0, 0.88, 0.92})
      candidates.push_back(scale(mid, s * r / mid_len));
  }

  Point best = candidates.front();
  double best_score = -2.0;
  for (const Point& c : candidates) {
    const double score = kor_score(c, a, b, r, ts);
    if (score == 1.0) return c;
    if (score > best_score) {
      best_score = score;
      best = c;
    }
  }

  // Grid search over the cube around the origin, then refinement around the
  // best candidate. High dimensions fall back to seeded sampling.
  auto scan = [&](const Point& centre, double half_width, int steps) -> bool {
    const std::size_t per_axis = 2 * steps + 1;
    double total = 1.0;
    for (std::size_t i = 0; i < n; ++i) total *= per_axis;
    if (total <= 60000.0) {
      std::vector<int> idx(n, 0);
      for (std::size_t count = 0; count < static_cast<std::size_t>(total); ++count) {
        Point c(n);
        for (std::size_t i = 0; i < n; ++i)
          c[i] = centre[i] + half_width * (static_cast<double>(idx[i]) / steps - 1.0);
        const double score = kor_score(c, a, b, r, ts);
        if (score > best_score) {
          best_score = score;
          best = c;
          if (score == 1.0) return true;
        }
        for (std::size_t i = 0; i < n; ++i) {
          if (++idx[i] < static_cast<int>(per_axis)) break;
          idx[i] = 0;
        }
      }
    } else {
      const CounterRng rng(0x6b6f72ULL);
      for (std::uint64_t s = 0; s < 60000; ++s) {
        const Point u = rng.in_ball(s, n);
        Point c = add(centre, scale(u, half_width));
        const double score = kor_score(c, a, b, r, ts);
        if (score > best_score) {
          best_score = score;
          best = c;
          if (score == 1.0) return true;
        }
      }
    }
    return false;
  };

  if (scan(Point(n, 0.0), r, 10)) return best;
  double width = r / 5.0;
  for (int round = 0; round < 4; ++round) {
    if (scan(best, width, 6)) return best;
    width /= 4.0;
  }
  std::ostringstream msg;
  msg << "no point passing the cap dichotomy found; best candidate passes "
      << best_score * 100.0 << "% of t samples";
  throw NoCertificateError(msg.str(), best);
}

}  // namespace injrad
