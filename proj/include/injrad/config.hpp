#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

namespace injrad {

/// Numerical knobs shared by every module. Defaults are the documented ones.
struct Config {
  // Monte Carlo
  std::uint64_t seed = 1;
  std::size_t sample_count = 20000;
  int max_resample = 16;

  // Adaptive quadrature
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 4000;

  // Radial integrals near |x| = 1
  double r_max = 1.0 - 1e-6;
  double r_cap = 0.9;

  // Divergence classification
  double divergence_threshold = 1e3;

  // Radius bound
  std::optional<double> cap_constant;

  // Witness search
  double witness_tol = 1e-9;
  std::size_t witness_budget = 3000;

  // Equicontinuity probe directions per radius
  std::size_t probe_samples = 512;

  /// Throws ArgumentError when the invariants 0 < r_cap <= r_max < 1,
  /// sample_count >= 1000 or positive tolerances are violated.
  void validate() const;
};

}  // namespace injrad
