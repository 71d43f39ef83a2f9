#include "injrad/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "injrad/errors.hpp"

namespace injrad::quad {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b, value, error;
  bool operator<(const Piece& o) const {
    // max-heap on error, ties broken by position for determinism
    if (error != o.error) return error < o.error;
    return a > o.a;
  }
};

double sample(const std::function<double(double)>& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::ostringstream msg;
    msg << "integrand is not finite at " << x;
    throw NumericError(msg.str(), x);
  }
  return y;
}

Piece gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = sample(f, centre);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = sample(f, centre - dx);
    const double f2 = sample(f, centre + dx);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

Settings settings_from(const Config& cfg) {
  return {cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions};
}

Result adaptive(const std::function<double(double)>& f, double a, double b,
                const Settings& s) {
  if (a == b) return {};
  if (a > b) {
    Result r = adaptive(f, b, a, s);
    r.value = -r.value;
    return r;
  }
  std::priority_queue<Piece> heap;
  heap.push(gauss_kronrod(f, a, b));
  double total = heap.top().value;
  double error = heap.top().error;
  int intervals = 1;
  while (error > std::max(s.abs_tol, s.rel_tol * std::abs(total))) {
    if (intervals >= s.max_subdivisions) {
      return {total, error, false, intervals};
    }
    Piece worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      heap.push(worst);
      return {total, error, false, intervals};
    }
    Piece left = gauss_kronrod(f, worst.a, mid);
    Piece right = gauss_kronrod(f, mid, worst.b);
    heap.push(left);
    heap.push(right);
    ++intervals;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    error = std::max(error, 0.0);
  }
  // Final re-sum in positional order.
  std::vector<Piece> items;
  items.reserve(heap.size());
  while (!heap.empty()) {
    items.push_back(heap.top());
    heap.pop();
  }
  std::sort(items.begin(), items.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
  total = 0.0;
  error = 0.0;
  for (const Piece& p : items) {
    total += p.value;
    error += p.error;
  }
  return {total, error, true, intervals};
}

TailResult tail(const std::function<double(double)>& f, double start, int direction,
                double first_width, const Settings& s) {
  constexpr int kMaxWindows = 900;
  const double sign = direction >= 0 ? 1.0 : -1.0;
  TailResult out;
  std::vector<double> increments;
  double inner = 0.0;
  double width = first_width;
  for (int k = 0; k < kMaxWindows; ++k) {
    const double lo = start + sign * inner;
    const double hi = start + sign * (inner + width);
    Result piece;
    try {
      piece = adaptive(f, std::min(lo, hi), std::max(lo, hi), s);
    } catch (const NumericError&) {
      // Overflowing integrand deep in the tail.
      out.diverged = true;
      out.value = INFINITY;
      out.windows = k + 1;
      return out;
    }
    const double delta = std::abs(piece.value);
    out.value += piece.value;
    out.abs_error += piece.abs_error;
    increments.push_back(delta);
    out.windows = k + 1;
    inner += width;
    width *= 2.0;

    const double tol = std::max(s.abs_tol, s.rel_tol * std::abs(out.value));
    const std::size_t m = increments.size();
    if (m >= 3 && increments[m - 1] <= tol && increments[m - 2] <= tol * 4) {
      return out;
    }
    if (m >= 4) {
      double worst_ratio = 0.0;
      double least_ratio = INFINITY;
      bool positive = true;
      for (std::size_t j = m - 3; j < m; ++j) {
        if (increments[j - 1] <= 0.0) {
          positive = false;
          break;
        }
        const double r = increments[j] / increments[j - 1];
        worst_ratio = std::max(worst_ratio, r);
        least_ratio = std::min(least_ratio, r);
      }
      if (positive && worst_ratio <= 0.9) {
        const double remainder = increments[m - 1] * worst_ratio / (1.0 - worst_ratio);
        if (remainder <= tol) {
          out.value += remainder;
          out.abs_error += remainder;
          return out;
        }
      }
      if (positive && m >= 6 && least_ratio >= 0.97) {
        out.diverged = true;
        out.value = INFINITY;
        return out;
      }
    }
    if (!std::isfinite(out.value) || !std::isfinite(hi)) {
      out.diverged = true;
      out.value = INFINITY;
      return out;
    }
  }
  const std::size_t m = increments.size();
  if (m >= 2 && increments[m - 2] > 0.0 && increments[m - 1] / increments[m - 2] >= 0.93) {
    out.diverged = true;
    out.value = INFINITY;
  }
  return out;
}

}  // namespace injrad::quad
