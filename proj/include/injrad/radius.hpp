#pragma once

#include <optional>
#include <string>
#include <vector>

#include "injrad/config.hpp"
#include "injrad/integrals.hpp"
#include "injrad/mappings.hpp"
#include "injrad/qfield.hpp"

namespace injrad {

struct BoundParameters {
  double C = 0.0;
  double alpha = 0.0;
  double cap_constant = 0.0;
  double cap_integrated = 0.0;  ///< cap_constant * log(sqrt 3)
};

/// Validates C, alpha, cap > 0 and fills cap_integrated.
BoundParameters make_parameters(double C, double alpha, double cap_constant);

/// Tabulated default for the spherical-cap modulus constant, if n is covered.
std::optional<double> default_cap_constant(int n);

/// cfg.cap_constant when set, else the table; ParameterError otherwise.
double resolve_cap_constant(int n, const Config& cfg);

/// canonical: C = omega_{n-1}, alpha = n - 1. fmo: C from the weighted
/// integral of q about the origin rescaled by epsilon0^n, alpha = n.
BoundParameters default_parameters(int n, PsiKind psi_kind, const QField& q, const Config& cfg,
                                   std::optional<double> epsilon0 = std::nullopt);

enum class Method { canonical, fmo, log_growth };
enum class Status { ok, not_applicable, inconclusive };

const char* to_string(Method m);
const char* to_string(Status s);

struct InjectivityReport {
  int n = 0;
  std::string q_summary;
  PsiKind psi_kind = PsiKind::canonical;
  Method method = Method::canonical;
  Status status = Status::ok;
  DivergenceClass divergence;
  BoundParameters params;
  double I_target = 0.0;
  double upper = 1.0;  ///< upper limit of I(r, upper)
  double delta = 0.0;
  double log_delta = 0.0;
  double I_at_delta = 0.0;
  std::optional<double> epsilon0;
  std::optional<GrowthCheck> growth;
  std::optional<FmoReport> fmo;
  std::vector<std::string> caveats;
};

/// Largest r with I(r, upper) >= (C / C')^{1/alpha}, found by bisection in
/// log r. Needs n >= 3. A convergent integral gives delta = 0 with status
/// not_applicable; an undecided one gives status inconclusive.
InjectivityReport estimate_delta(const QField& q, int n, PsiKind psi_kind,
                                 const BoundParameters& params, const Config& cfg,
                                 double epsilon0 = 1.0);

/// Canonical bound gated on q0(r) <= C log^{n-1}(1/r); NotApplicableError
/// when the growth test fails.
InjectivityReport corollary_report(const QField& q, int n, const Config& cfg);

/// Bound for finite-mean-oscillation fields with the rescaled log weight;
/// NotApplicableError unless the oscillation test says yes.
InjectivityReport fmo_report(const QField& q, int n, const Config& cfg);

struct SharpnessOptions {
  std::optional<int> k;         ///< winding order; smallest feasible when unset
  bool normalize_by_K = false;  ///< divide the outer part of Q~ by K
  double clearance = 0.05;      ///< axis distance beyond the image ball
};

struct SharpnessPlan {
  double delta = 0.0;
  int k = 0;
  double K = 0.0;
  QField q_tilde = QField::constant(1.0, 2);
  double domain_radius = 1.0;  ///< stretch maps B(0, domain_radius) onto B(0, 1)
  double sigma = 0.0;          ///< rho(delta)
  WindingAxis axis;
  double axis_clearance = 0.0;
  MapSpec stretch;
  MapSpec composed;
  Witness witness;
  std::vector<RingCheck> ring_checks_q_tilde;
  std::vector<RingCheck> ring_checks_bound;  ///< against K Q (or Q when normalized)
  bool normalized = false;
  std::vector<std::string> caveats;
};

/// Non-injective map for a field whose controlling integral converges:
/// radial stretch from Q~ (1/K inside delta), then a winding of order k
/// about an axis clear of the image ball.
SharpnessPlan build_sharpness(const QField& q, double delta, int n, const Config& cfg,
                              const SharpnessOptions& opts = {});

}  // namespace injrad
