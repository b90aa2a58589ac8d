#pragma once

// Closed-form and quadrature evaluation of functionals built from
// V(t) = int_a^t v^rho for a piecewise-power weight v.

#include <optional>
#include <vector>

#include "lapnum/weight.hpp"

namespace lapnum::detail {

class Primitive {
 public:
  // On [lo, hi): v^rho = coeff t^exponent and V(t) = base + coeff int_lo^t y^exponent.
  struct Segment {
    double lo, hi, coeff, exponent, base;
  };

  Primitive(const Weight& w, double rho, double a = 0.0);

  double operator()(double t) const;
  double start() const { return start_; }
  double rho() const { return rho_; }
  // V(inf), possibly infinite.
  double total() const;
  // True when v^rho is not integrable at the start point, i.e. V = inf on (a, inf).
  bool infinite() const { return infinite_; }
  const std::vector<Segment>& segments() const { return segs_; }

 private:
  std::vector<Segment> segs_;
  double start_ = 0.0;
  double rho_ = 1.0;
  bool infinite_ = false;
};

struct SupResult {
  double value = 0.0;
  double witness = 0.0;  // 0 or inf when the sup is a limit at an end
};

/// sup_{t > a} t^alpha V(t)^d, d > 0, with 0 * inf = 0.
SupResult sup_power_primitive(const Primitive& V, double alpha, double d);

struct Limits {
  double at_start = 0.0;
  double at_infinity = 0.0;
};

/// Limits of t^alpha V(t)^d as t -> a+ (a = 0 only; otherwise V(a) = 0) and t -> inf.
Limits limits_power_primitive(const Primitive& V, double alpha, double d);

/// int_a^inf t^alpha V(t)^g u(t) dt where u = v^h (or u = 1 when h is empty).
double integral_power_primitive(const Primitive& V, double alpha, double g,
                                const Weight& w, std::optional<double> h);

/// Limits of a weight at 0+ and at infinity.
double weight_limit_at_zero(const Weight& w);
double weight_limit_at_infinity(const Weight& w);

}  // namespace lapnum::detail
