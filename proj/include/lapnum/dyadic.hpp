#pragma once

// Series over the dyadic blocks Delta_k = [2^{k-1}, 2^k] with exact geometric tails.

#include <vector>

#include "lapnum/weight.hpp"

namespace lapnum {

enum class BlockMode { Integral, Esup };

/// Terms c_k = K 2^{-k mu} (int_{Delta_k} v^rho)^{1/rho}   (Integral), or
///       c_k = K 2^{-k mu} esup_{Delta_k} v                (Esup).
///
/// Outside [k_lo, k_hi] every block lies inside the leading piece of v at 0 or
/// at infinity (or outside the support), so there c_k = coef 2^{k rate}
/// exactly and the tails are geometric sums.
struct BlockSeries {
  int k_lo = 0, k_hi = -1;
  std::vector<double> values;
  double low_coef = 0.0, low_rate = 0.0;
  double high_coef = 0.0, high_rate = 0.0;

  double value(int k) const;
  double partial(double s) const;  // sum over the range of c_k^s
  double low_tail(double s) const;
  double high_tail(double s) const;
  double tail(double s) const { return low_tail(s) + high_tail(s); }
  double sum(double s) const { return partial(s) + tail(s); }
  double max_value() const;  // sup over all k
};

/// Builds the series on a range containing [k_lo, k_hi]; the range is widened
/// where needed so the tails are exact.
BlockSeries block_series(const Weight& w, BlockMode mode, double rho, double mu, double K,
                         int k_lo, int k_hi);

/// Range that makes the tail of sum c_k^s at most rel_tol of the partial sum
/// (or the structural minimum widened by 8 when a tail diverges), |k| <= 900.
BlockSeries block_series_auto(const Weight& w, BlockMode mode, double rho, double mu, double K,
                              double s, double rel_tol = 1e-12);

}  // namespace lapnum
