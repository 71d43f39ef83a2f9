#include "injrad/config.hpp"

#include <cmath>

#include "injrad/errors.hpp"

namespace injrad {

void Config::validate() const {
  if (!(r_cap > 0.0 && r_cap <= r_max && r_max < 1.0))
    throw ArgumentError("need 0 < r_cap <= r_max < 1");
  if (sample_count < 1000) throw ArgumentError("sample_count must be at least 1000");
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw ArgumentError("tolerances must be positive");
  if (max_subdivisions < 1) throw ArgumentError("max_subdivisions must be positive");
  if (max_resample < 0) throw ArgumentError("max_resample must be nonnegative");
  if (!(divergence_threshold > 0.0)) throw ArgumentError("divergence_threshold must be positive");
  if (cap_constant && !(*cap_constant > 0.0 && std::isfinite(*cap_constant)))
    throw ArgumentError("cap_constant must be positive and finite");
  if (!(witness_tol > 0.0)) throw ArgumentError("witness_tol must be positive");
  if (probe_samples < 1) throw ArgumentError("probe_samples must be positive");
}

}  // namespace injrad
