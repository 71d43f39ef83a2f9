#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "injrad/config.hpp"
#include "injrad/qfield.hpp"
#include "injrad/vec.hpp"

namespace injrad {

/// x -> x/|x| rho(|x|) on the ball of radius `upper`, with rho(upper) = 1.
/// rho is either the power r^exponent or a monotone cubic Hermite table of
/// log rho against log r with exact end slopes.
class RadialStretch {
 public:
  struct Segment {
    double ua, ub;  ///< log r at the ends
    double la, lb;  ///< log rho at the ends
    double sa, sb;  ///< one-sided slopes d log rho / d log r
  };

  static RadialStretch power(double exponent, std::string label);
  static RadialStretch table(std::vector<Segment> segments, double upper, std::string label);

  bool is_power() const { return segments_.empty(); }
  double exponent() const { return exponent_; }
  double upper() const { return upper_; }
  const std::vector<Segment>& segments() const { return segments_; }
  const std::string& label() const { return label_; }

  /// log rho as a function of u = log r; DomainError beyond log(upper).
  double log_rho(double u) const;
  double rho(double r) const;
  /// r with rho(r) = R for R in (0, 1].
  double inverse(double R) const;

 private:
  double exponent_ = 1.0;
  double upper_ = 1.0;
  std::vector<Segment> segments_;
  std::string label_;
};

/// Rotation plane spanned by orthonormal u, v through `base`; the axis is
/// base + (plane)^perp. In the plane it is the single point `base`.
struct WindingAxis {
  Point base;
  Point u;
  Point v;
};

/// Axis through offset * e1 parallel to span(e3, ..., en), rotating in the
/// (e1, e2) plane.
WindingAxis standard_axis(int n, double offset);

struct WindingMap {
  int k = 2;
  WindingAxis axis;
};

struct Exp2dMap {
  int m = 1;
};

struct MapSpec;

/// Applied right to left: maps.back() first.
struct Composition {
  std::vector<MapSpec> maps;
};

struct MapSpec {
  int n = 0;
  std::variant<RadialStretch, WindingMap, Exp2dMap, Composition> kind;
  std::string label;
};

/// Stretch whose log rho solves d log rho / d log r = 1 / q0^{1/(n-1)}.
/// `upper` defaults to 1 when the weight is finite there, else cfg.r_max
/// (or a table's last node). ConstructionError on a vanishing or infinite
/// q0 or a divergent defining integral.
MapSpec radial_stretch_from_q(const QField& q, int n, const Config& cfg,
                              std::optional<double> upper = std::nullopt);

MapSpec winding_map(int k, const WindingAxis& axis, int n);
MapSpec exp2d_map(int m);
MapSpec compose(std::vector<MapSpec> maps);

Point map_eval(const MapSpec& f, std::span<const double> x);

/// Distance from the axis to the ball, clipped at 0.
double axis_clearance(const WindingAxis& axis, std::span<const double> ball_center,
                      double ball_radius);

/// ||f'(x)||^n / |J_f(x)| from central differences.
double distortion_estimate(const MapSpec& f, std::span<const double> x, double h = 1e-6);

struct RingCheck {
  double r1 = 0.0;
  double r2 = 0.0;
  double lhs_modulus = 0.0;
  double rhs_bound = 0.0;
  bool passed = false;
  double slack = 0.0;
  double relative_gap = 0.0;  ///< |lhs - rhs| / rhs
};

/// Modulus of the image ring of a radial stretch against omega / I^{n-1}
/// with I from q's spherical means.
RingCheck verify_ring_inequality(const MapSpec& f, const QField& q, double r1, double r2, int n,
                                 const Config& cfg);

struct Witness {
  Point x1;
  Point x2;
  double image_gap = 0.0;
  double containment_radius = 0.0;
  std::string method;
};

/// Pair of distinct points in B(0, radius) with (numerically) equal images.
/// Analytic for winding after radial stretches and for exp2d, seeded search
/// otherwise. An empty result is not a proof of injectivity.
std::optional<Witness> noninjectivity_witness(const MapSpec& f, double radius, const Config& cfg);

struct ProbeTable {
  std::vector<double> radii;
  std::vector<double> raw;       ///< sampled sup at each radius
  std::vector<double> modulus;   ///< running max over radii, nondecreasing
};

ProbeTable equicontinuity_probe(const std::vector<MapSpec>& family, std::span<const double> x0,
                                std::span<const double> radii, const Config& cfg);

/// `stretch:<q-spec>`, `winding:<k>,<offset>`, `exp2d:<m>`,
/// `compose:<spec>;<spec>;...`.
MapSpec parse_mapspec(const std::string& spec, int n, const Config& cfg);

}  // namespace injrad
