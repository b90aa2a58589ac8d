#pragma once

#include <functional>
#include <vector>

namespace lapnum {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  int nonfinite = 0;  // integrand samples that were not finite (counted as 0)
  bool converged = true;
};

struct QuadOptions {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_subdivisions = 2000;
};

/// Adaptive 15-point Gauss-Kronrod integration of f over (a, b), 0 <= a < b <= inf.
///
/// The range is split at its midpoint and each half is integrated in the
/// variable u = log|t - endpoint|, so algebraic endpoint singularities and
/// power-law decay at infinity both become exponential decay in u. The
/// resulting half-infinite u-ranges are folded onto (0, 1) by rational maps.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt = {});

/// Sum of integrate() over consecutive breakpoints (which must be sorted and
/// lie inside (a, b)); use when f has kinks or jumps at known points.
QuadResult integrate_split(const std::function<double(double)>& f, double a, double b,
                           const std::vector<double>& breaks, const QuadOptions& opt = {});

struct MaxResult {
  double arg = 0.0;
  double value = 0.0;
};

/// Maximum of f on [lo, hi] (0 < lo < hi < inf): log-spaced scan with
/// `samples` points followed by golden-section refinement, in log t, of the
/// best bracket down to `log_tol`.
MaxResult maximize_log(const std::function<double(double)>& f, double lo, double hi,
                       int samples = 96, double log_tol = 1e-10);

/// Largest x in [lo, hi] with pred(x) true, assuming pred is true on a prefix
/// of the interval. Bisection in log x until the bracket width in log x is
/// below log_tol. Returns lo when pred(lo) is false.
double bisect_log_last_true(const std::function<bool(double)>& pred, double lo, double hi,
                            double log_tol = 1e-8);

}  // namespace lapnum
