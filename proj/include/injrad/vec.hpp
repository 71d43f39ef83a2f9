#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace injrad {

/// A point of R^n. Dimension is the vector length.
using Point = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> a) {
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double s = 0.0;
  for (double v : a) s += (v / scale) * (v / scale);
  return scale * std::sqrt(s);
}

inline double distance(std::span<const double> a, std::span<const double> b) {
  Point d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return norm(d);
}

inline Point sub(std::span<const double> a, std::span<const double> b) {
  Point d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

inline Point add(std::span<const double> a, std::span<const double> b) {
  Point d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] + b[i];
  return d;
}

inline Point scale(std::span<const double> a, double s) {
  Point d(a.begin(), a.end());
  for (double& v : d) v *= s;
  return d;
}

inline Point unit_vector(std::size_t n, std::size_t axis) {
  Point e(n, 0.0);
  e[axis] = 1.0;
  return e;
}

}  // namespace injrad
