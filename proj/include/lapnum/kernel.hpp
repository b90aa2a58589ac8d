#pragma once

#include <optional>
#include <string>

#include "lapnum/error.hpp"

namespace lapnum {

// Exponent regimes of the boundedness theorem, tagged (i) through (vii).
enum class Regime {
  PLeqQ,          // (i)   1 < p <= q < inf
  QLessP,         // (ii)  1 <= q < p < inf
  QSubOneLessP,   // (iii) 0 < q < 1 < p < inf
  QSubOnePOne,    // (iv)  0 < q < 1 = p
  POneLeqQ,       // (v)   1 = p <= q < inf
  PInfinite,      // (vi)  p = inf, 0 < q < inf
  QInfinite,      // (vii) q = inf
};

std::string regime_tag(Regime r);

/// Lebesgue exponents (p, q) and the kernel exponent lambda, with every
/// derived exponent used downstream.
struct SpaceParams {
  double p = 2.0;
  double q = 2.0;
  double lambda = 1.0;
  double p_conj = 2.0;           // p' (inf for p = 1, 1 for p = inf)
  double q_conj = 2.0;           // q' = q/(q-1); inf at q = 1, negative for q < 1
  std::optional<double> r;       // pq/(p-q), only when q < p
  std::optional<double> theta;   // p'q/(p'+q), undefined for q = inf
  double delta = 1.0;            // 1 for q >= 1, q otherwise
  Regime regime = Regime::PLeqQ;
};

SpaceParams derived_params(double p, double q, double lambda);

/// int_0^inf (e^{-x z^lambda} - e^{-x b^lambda})^delta dx for 0 < z < b <= inf.
double tail_integral(double z, double b, double delta, double lambda);

/// -d/dz of tail_integral(z, b, delta, lambda), i.e. the density of the
/// Stieltjes measure d[-tail(., b)].
double tail_integral_density(double z, double b, double delta, double lambda);

/// Constant C1 = [e^{-1} - e^{-2^{lambda0}}]^delta (1 - 2^{lambda0 - lambda}) with
/// tail_integral(2^k, 2^{k+1}, delta, lambda) >= C1 2^{-k lambda} for all k.
double tail_integral_lower_c1(double lambda, double lambda0, double delta);

// Largest C1 over the 32-point grid lambda0 = lambda (i + 1/2) / 32.
double tail_integral_lower_c1_best(double lambda, double delta);

}  // namespace lapnum
