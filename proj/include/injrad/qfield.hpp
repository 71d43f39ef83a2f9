#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "injrad/config.hpp"
#include "injrad/vec.hpp"

namespace injrad {

/// A function of r in (0, 1) known at nodes, interpolated linearly in
/// (log r, value). No extrapolation.
class RadialProfile {
 public:
  RadialProfile(std::vector<double> radii, std::vector<double> values, std::string provenance);

  const std::vector<double>& radii() const { return radii_; }
  const std::vector<double>& values() const { return values_; }
  const std::string& provenance() const { return provenance_; }

  double min_radius() const { return radii_.front(); }
  double max_radius() const { return radii_.back(); }

  /// Throws DomainError outside [min_radius, max_radius].
  double eval(double r) const;
  double eval_log(double log_r) const;

 private:
  std::vector<double> radii_;
  std::vector<double> log_radii_;
  std::vector<double> values_;
  std::string provenance_;
};

/// Reads a CSV with header `r,value`.
RadialProfile load_profile_csv(const std::string& path);

class QField;

struct ConstantField {
  double k;
};

/// C * log^p(1/|x|)
struct LogPowerField {
  double c;
  double p;
};

/// |x|^a
struct RadialPowerField {
  double a;
};

struct TabulatedField {
  RadialProfile profile;
  std::string source;
};

/// `inner` on |x| <= delta, the outer field beyond.
struct TruncatedField {
  double inner;
  double delta;
  std::shared_ptr<const QField> outer;
};

struct ScaledField {
  double factor;
  std::shared_ptr<const QField> base;
};

/// Arbitrary pointwise field. `radial_log`, when set, gives the exact
/// spherical average about the origin as a function of log r.
struct CustomField {
  std::function<double(std::span<const double>)> fn;
  std::function<double(double)> radial_log;
  std::string label;
};

/// A dilatation field Q on the unit ball of R^n with values in [0, inf].
class QField {
 public:
  using Kind = std::variant<ConstantField, LogPowerField, RadialPowerField, TabulatedField,
                            TruncatedField, ScaledField, CustomField>;

  static QField constant(double k, int n);
  static QField log_power(double c, double p, int n);
  static QField radial_power(double a, int n);
  static QField tabulated(RadialProfile profile, int n, std::string source = "inline");
  static QField truncated(double inner, double delta, QField outer);
  static QField scaled(double factor, QField base);
  static QField custom(std::function<double(std::span<const double>)> fn, int n,
                       std::string label, std::function<double(double)> radial_log = {});

  int dim() const { return n_; }
  const Kind& kind() const { return kind_; }

  /// Pointwise value; DomainError outside the unit ball or a table's range.
  double eval(std::span<const double> x) const;

  /// True when Q depends on |x| only, so spherical averages about 0 are exact.
  bool is_radial() const;

  /// Radial value as a function of u = log r. DomainError if not radial.
  double radial_log(double log_r) const;
  double radial(double r) const { return radial_log(std::log(r)); }

  /// Largest radius where the field is defined (a table's last node, else 1).
  double outer_radius() const;

  /// log r positions where the radial value may jump or kink.
  std::vector<double> breakpoints_log() const;

  /// Canonical spec string (`const:4`, `logpow:1,2`, ...).
  std::string describe() const;

 private:
  QField(Kind kind, int n) : kind_(std::move(kind)), n_(n) {}

  Kind kind_;
  int n_;
};

/// Parses `const:K`, `logpow:C,p`, `powr:a`, `table:<path>`,
/// `trunc:<inner>,<delta>,<outer-spec>`. Throws ParseError / IoError.
QField parse_qspec(const std::string& spec, int n);

double q_eval(const QField& q, std::span<const double> x);

struct MonteCarloEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
  bool exact = false;
};

/// Spherical mean of Q over S(x0, r): exact for radial Q about the origin,
/// seeded Monte Carlo otherwise.
MonteCarloEstimate q_average_estimate(const QField& q, std::span<const double> x0, double r,
                                      const Config& cfg);
double q_average(const QField& q, std::span<const double> x0, double r, const Config& cfg);

RadialProfile q_profile(const QField& q, std::span<const double> x0,
                        std::span<const double> r_grid, const Config& cfg);

/// Log-spaced radii from r_lo to r_hi inclusive.
std::vector<double> log_grid(double r_lo, double r_hi, int count);

struct GrowthCheck {
  bool holds = false;
  double c_estimate = 0.0;
  double relative_trend = 0.0;  ///< fitted growth of the ratio across the grid
  int nodes_used = 0;
};

/// Tests q0(r) <= C log^{n-1}(1/r) as r -> 0 on the nodes with r <= 0.1.
GrowthCheck log_growth_check(const RadialProfile& profile, int n);

enum class Tristate { yes, no, inconclusive };

const char* to_string(Tristate t);

struct FmoReport {
  Point x0;
  std::vector<double> epsilons;
  std::vector<double> ball_means;
  std::vector<double> oscillations;
  double limsup_estimate = 0.0;
  double relative_trend = 0.0;
  Tristate is_fmo = Tristate::inconclusive;
  std::optional<double> epsilon0;
};

/// Default decreasing grid 2^{-k}, k = 3..12.
std::vector<double> default_fmo_grid();

FmoReport fmo_oscillation(const QField& q, std::span<const double> x0,
                          std::span<const double> eps_grid, const Config& cfg);

/// Integral of phi / (|x| log(1/|x|))^n over B(0, epsilon0); +inf when it
/// diverges at the origin.
double pr7_integral(const QField& phi, double epsilon0, int n, const Config& cfg);

}  // namespace injrad
