#pragma once

#include <cmath>
#include <string>

#include "lapnum/kernel.hpp"
#include "lapnum/weight.hpp"

namespace lapnum {

// Subinterval (a, b) of the half-line, b possibly infinite.
struct Interval {
  double a = 0.0;
  double b = kInf;
};

void validate(const Interval& I);

// Constants of the local sandwich lemmas; NaN where undefined for the given (p, q).
struct GammaConstants {
  double alpha0, beta0;
  double gamma0, gamma0_bar;
  double gamma1, gamma1_bar;
  double gamma2, gamma2_bar;
  double gamma3_bar, gamma4_bar;
};

GammaConstants gamma_constants(const SpaceParams& params);

// Local quantities on I. The tail T_delta(t) = int (e^{-x t^lambda} - e^{-x b^lambda})^delta dx.
double A0(double delta, const Interval& I, const SpaceParams& params, const Weight& w);  // p > 1
double B0(double delta, const Interval& I, const SpaceParams& params, const Weight& w);  // q < p
double A1(const Interval& I, const SpaceParams& params, const Weight& w);
double B1(const Interval& I, const SpaceParams& params, const Weight& w);               // p > 1
double B2(const Interval& I, const SpaceParams& params, const Weight& w);               // q < 1 < p
double B3(const Interval& I, const SpaceParams& params, const Weight& w);               // q < 1 = p
double B4(const Interval& I, const SpaceParams& params, const Weight& w);               // q < 1

/// sup_{a<y<b} v(y) T_q(y)^{1/q}: the exact local norm when p = 1.
double local_norm_p1(const Interval& I, const SpaceParams& params, const Weight& w);

struct KBounds {
  double lower = 0.0;
  double upper = 0.0;
  std::string lower_name, upper_name;
  bool exact = false;
  // The lemma's sandwich with its printed constants when it differs from (lower, upper), else NaN.
  double lemma_lower = std::nan(""), lemma_upper = std::nan("");
};

/// Two-sided bounds on K(I), the norm of f -> int_I (e^{-x y^lambda} - e^{-x b^lambda}) f v dy.
KBounds K_bounds(const Interval& I, const SpaceParams& params, const Weight& w);

/// The upper member of K_bounds, without computing the lower one.
double K_upper(const Interval& I, const SpaceParams& params, const Weight& w);

}  // namespace lapnum
