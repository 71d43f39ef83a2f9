#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "injrad/config.hpp"
#include "injrad/qfield.hpp"

namespace injrad {

enum class PsiKind { canonical, fmo, custom };

const char* to_string(PsiKind k);

/// A radial weight psi on (r1, r2), zero outside. Stored as t * psi(t) in the
/// variable u = log t, which is what every integral here consumes.
struct PsiWeight {
  PsiKind kind = PsiKind::custom;
  int n = 0;
  double r1 = 0.0;
  double r2 = 1.0;
  std::function<double(double)> t_psi_log;
  std::vector<double> breakpoints_log;
  std::optional<RadialProfile> q_profile;
  std::string label;

  /// t * psi(t) at u = log t; zero outside the support.
  double weight_log(double u) const;
  /// psi(t) itself.
  double operator()(double t) const;
};

/// 1 / (t q0(t)^{1/(n-1)}) on (r1, r2) from a tabulated spherical mean.
/// DomainError when the profile does not cover [r1, r2].
PsiWeight psi_canonical(const RadialProfile& profile, int n, double r1, double r2);

/// Same weight from a radial field; r1 may be 0 and r2 may be 1.
PsiWeight psi_canonical(const QField& q, double r1, double r2);

/// 1 / (eps0 t log(1/(eps0 t))) on (0, 1).
PsiWeight psi_fmo(double epsilon0, int n);

/// psi given by tabulated values psi(t) on the profile's node range.
PsiWeight psi_tabulated(const RadialProfile& psi_values, int n);

/// psi given through t * psi(t) as a function of log t.
PsiWeight psi_custom(std::function<double(double)> t_psi_log, int n, double r1, double r2,
                     std::string label);

enum class Endpoint { lower, upper };

const char* to_string(Endpoint e);

struct IntegralResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::optional<Endpoint> diverged_at;
};

/// Integral of psi over (r1, r2). r1 = 0 and a singular endpoint r2 = 1 are
/// handled as improper tails; divergence sets `diverged_at` and value = +inf.
IntegralResult integrate_I(const PsiWeight& psi, double r1, double r2, const Config& cfg);

enum class Verdict { divergent, convergent, inconclusive };

const char* to_string(Verdict v);

struct DivergenceFit {
  std::string model;
  double slope = 0.0;  ///< slope of log increment against log log(1/eps)
  int points = 0;
};

struct DivergenceClass {
  Verdict verdict = Verdict::inconclusive;
  double c = 0.0;                           ///< upper end of the partial integrals
  std::vector<double> epsilons;             ///< c 2^{-k}
  std::vector<double> partial_values;       ///< I(eps_k, c)
  DivergenceFit fit;
};

/// Numeric test of whether I(eps, c) grows without bound as eps -> 0, with
/// c the profile's largest node.
DivergenceClass classify_divergence(const RadialProfile& profile, int n, const Config& cfg);

/// Exact verdict for the closed-form kinds, numeric otherwise.
DivergenceClass classify_divergence(const QField& q, const Config& cfg);

/// Integral of Q psi^n over the annulus r1 < |x| < r2 by shells.
double fubini_rhs(const QField& q, const PsiWeight& psi, double r1, double r2, int n,
                  const Config& cfg);

/// psi / I(r1, r2) restricted to (r1, r2). NormalizationError unless
/// 0 < I < inf.
PsiWeight eta_normalize(const PsiWeight& psi, double r1, double r2, const Config& cfg = {});

namespace detail {

/// Integral of g over (u1, u2) in log coordinates, u1 may be -inf and a
/// non-finite g(0) marks an improper upper end at u2 = 0.
IntegralResult integrate_log(const std::function<double(double)>& g, double u1, double u2,
                             const std::vector<double>& breaks, const Config& cfg);

}  // namespace detail

}  // namespace injrad
