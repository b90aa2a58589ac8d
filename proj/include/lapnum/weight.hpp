#pragma once

#include <vector>

#include "lapnum/error.hpp"

namespace lapnum {

// One piece of a piecewise-power weight: v(y) = coeff * y^exponent on [lo, hi).
struct WeightPiece {
  double lo = 0.0;
  double hi = kInf;
  double coeff = 0.0;
  double exponent = 0.0;
};

/// Non-negative piecewise-power weight on the half-line.
///
/// Pieces are ordered and disjoint; uncovered regions carry v = 0. The family
/// is closed under powers, multiplication by y^gamma and running essential
/// suprema, so every functional of v needed downstream has a closed form or
/// reduces to a one-dimensional integral of smooth pieces.
class Weight {
 public:
  Weight() = default;
  explicit Weight(std::vector<WeightPiece> pieces);

  static Weight power(double coeff, double exponent, double lo = 0.0,
                      double hi = kInf);

  const std::vector<WeightPiece>& pieces() const noexcept { return pieces_; }
  bool is_zero() const noexcept;

  // Throws unless int_0^T v < inf for every finite T.
  void require_locally_integrable() const;

  double operator()(double y) const { return eval(y); }
  double eval(double y) const;

  /// Exact int_a^b v^rho; +inf when the integral diverges.
  double power_integral(double rho, double a, double b) const;

  /// Essential supremum of v over (a, b).
  double esup(double a, double b) const;

  // Upper semicontinuous envelope: max of one-sided limits at t.
  double usc_value(double t) const;

  Weight pow(double rho) const;
  Weight times_power(double gamma) const;
  Weight scaled(double c) const;
  Weight restricted(double a, double b) const;

  /// t -> esup_{a<x<t} v(x), zero for t <= a.
  Weight running_esup(double a = 0.0) const;

  // Interior breakpoints of nonzero pieces, sorted, excluding 0 and inf.
  std::vector<double> breakpoints() const;
  // Infimum / supremum of the set where v > 0 (0 / 0 for the zero weight).
  double support_start() const;
  double support_end() const;

  // Behaviour near 0: v(y) ~ coeff * y^exponent for small y. Returns false when
  // v vanishes on a neighbourhood of 0.
  bool leading_at_zero(WeightPiece& out) const;
  // Behaviour near infinity; false when v has bounded support.
  bool leading_at_infinity(WeightPiece& out) const;

 private:
  std::vector<WeightPiece> pieces_;
};

/// int_u^w y^e dy for 0 <= u < w <= inf; +inf when divergent.
double monomial_integral(double e, double u, double w);

}  // namespace lapnum
