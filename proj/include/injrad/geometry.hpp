#pragma once

#include <optional>
#include <span>
#include <vector>

#include "injrad/vec.hpp"

namespace injrad {

/// Sphere area and ball volume for R^n.
struct DimensionConstants {
  int n = 0;
  double omega = 0.0;   ///< area of the unit sphere S^{n-1}
  double volume = 0.0;  ///< volume of the unit ball B^n
};

DimensionConstants constants(int n);

/// A point of the one-point compactification of R^n.
class ExtendedPoint {
 public:
  ExtendedPoint(Point p) : finite_(std::move(p)) {}  // NOLINT: implicit on purpose
  static ExtendedPoint infinity() { return ExtendedPoint(); }

  bool is_infinite() const { return !finite_.has_value(); }
  const Point& finite() const { return *finite_; }

 private:
  ExtendedPoint() = default;
  std::optional<Point> finite_;
};

/// Chordal (spherical) distance; lies in [0, 1].
double chordal_distance(const ExtendedPoint& x, const ExtendedPoint& y);

/// Largest pairwise chordal distance; throws ArgumentError on an empty set.
double chordal_diameter(std::span<const ExtendedPoint> points);

struct Annulus {
  Point center;
  double r1 = 0.0;
  double r2 = 0.0;
};

/// Checks 0 < r1 < r2; throws ArgumentError otherwise.
Annulus make_annulus(Point center, double r1, double r2);

struct ModulusValue {
  double value = 0.0;
};

/// Exact modulus of the family of curves joining the two boundary spheres
/// of a spherical ring: omega_{n-1} * log(r2/r1)^{1-n}.
ModulusValue ring_modulus(const Annulus& ring, int n);

// Point dichotomy on a sphere S(0, r) for two distinct points a, b.

enum class KorBranch {
  origin_and_b,  ///< 0, b inside B(p, t) and a outside
  a_and_b,       ///< a, b inside B(p, t) and 0 outside
  neither,
};

struct KorCertificate {
  Point p;
  double r = 0.0;
  Point a;
  Point b;
  std::vector<KorBranch> branch;
  std::vector<double> t_samples;
  bool all_pass = false;
};

/// t_k = r/2 + (sqrt(3) - 1) (r/2) (k + 1/2) / count, strictly inside
/// (r/2, sqrt(3) r/2).
std::vector<double> kor_t_grid(double r, int count);

KorCertificate kor_verify(const Point& p, const Point& a, const Point& b, double r,
                          int t_count);

/// Searches B(0, r) for a point passing kor_verify. Deterministic candidates
/// first, then a refined grid search. Throws NoCertificateError carrying the
/// best candidate when nothing passes.
Point kor_point(const Point& a, const Point& b, double r, int t_count = 64);

}  // namespace injrad
