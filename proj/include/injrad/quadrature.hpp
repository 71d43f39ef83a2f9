#pragma once

#include <functional>

#include "injrad/config.hpp"

namespace injrad::quad {

struct Settings {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 4000;
};

Settings settings_from(const Config& cfg);

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = true;
  int intervals = 0;
};

/// Globally adaptive Gauss-Kronrod (7, 15) bisection on a finite interval.
/// A non-finite integrand sample throws NumericError carrying the abscissa.
Result adaptive(const std::function<double(double)>& f, double a, double b,
                const Settings& s);

struct TailResult {
  double value = 0.0;
  double abs_error = 0.0;
  bool diverged = false;
  int windows = 0;
};

/// Integral of a nonnegative f from `start` to +infinity (direction > 0) or
/// -infinity (direction < 0). The half-line is cut into windows of doubling
/// width; increments that stop shrinking geometrically mark divergence.
TailResult tail(const std::function<double(double)>& f, double start, int direction,
                double first_width, const Settings& s);

}  // namespace injrad::quad
