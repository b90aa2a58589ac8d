#include "lapnum/dyadic.hpp"

#include <algorithm>
#include <cmath>

namespace lapnum {

namespace {

constexpr int kMaxBlock = 900;

double block_term(const Weight& w, BlockMode mode, double rho, double mu, double K, int k) {
  const double lo = std::ldexp(1.0, k - 1), hi = std::ldexp(1.0, k);
  const double scale = K * std::exp2(-k * mu);
  if (mode == BlockMode::Esup) {
    const double e = w.esup(lo, hi);
    return e == 0.0 ? 0.0 : scale * e;
  }
  const double I = w.power_integral(rho, lo, hi);
  return I == 0.0 ? 0.0 : scale * std::pow(I, 1.0 / rho);
}

// c_k = coef 2^{k rate} for blocks inside the piece c y^beta.
void geometric_form(const WeightPiece& p, BlockMode mode, double rho, double mu, double K,
                    double& coef, double& rate) {
  const double beta = p.exponent;
  if (mode == BlockMode::Esup) {
    coef = K * p.coeff * (beta < 0.0 ? std::exp2(-beta) : 1.0);
    rate = beta - mu;
    return;
  }
  const double m = rho * beta + 1.0;
  const double cr = std::pow(p.coeff, rho);
  const double block = m == 0.0 ? cr * std::log(2.0) : cr * -std::expm1(-m * std::log(2.0)) / m;
  coef = K * std::pow(block, 1.0 / rho);
  rate = (m == 0.0 ? 0.0 : m / rho) - mu;
}

double geometric_sum(double coef, double rate, int from, bool downward, double s) {
  if (coef == 0.0) return 0.0;
  const double r = rate * s;
  if (downward ? r <= 0.0 : r >= 0.0) return kInf;
  const double first = std::pow(coef, s) * std::exp2(from * r);
  return first / -std::expm1((downward ? -r : r) * std::log(2.0));
}

// Structural bounds: k_lo <= lmax and k_hi >= hmin make the tails exact.
void structural_range(const Weight& w, int& lmax, int& hmin) {
  WeightPiece lead;
  if (w.is_zero()) {
    lmax = 0;
    hmin = 0;
    return;
  }
  if (w.leading_at_zero(lead))
    lmax = std::isinf(lead.hi) ? 0 : static_cast<int>(std::floor(std::log2(lead.hi)));
  else
    lmax = static_cast<int>(std::floor(std::log2(w.support_start())));
  if (w.leading_at_infinity(lead))
    hmin = lead.lo == 0.0 ? 0 : static_cast<int>(std::ceil(std::log2(lead.lo)));
  else
    hmin = static_cast<int>(std::ceil(std::log2(w.support_end())));
  lmax = std::clamp(lmax, -kMaxBlock, kMaxBlock);
  hmin = std::clamp(hmin, -kMaxBlock, kMaxBlock);
}

}  // namespace

double BlockSeries::value(int k) const {
  if (k < k_lo) return low_coef == 0.0 ? 0.0 : low_coef * std::exp2(k * low_rate);
  if (k > k_hi) return high_coef == 0.0 ? 0.0 : high_coef * std::exp2(k * high_rate);
  return values[static_cast<std::size_t>(k - k_lo)];
}

double BlockSeries::partial(double s) const {
  double total = 0.0;
  for (double c : values)
    if (c > 0.0) total += std::pow(c, s);
  return total;
}

double BlockSeries::low_tail(double s) const {
  return geometric_sum(low_coef, low_rate, k_lo - 1, true, s);
}

double BlockSeries::high_tail(double s) const {
  return geometric_sum(high_coef, high_rate, k_hi + 1, false, s);
}

double BlockSeries::max_value() const {
  double best = 0.0;
  for (double c : values) best = std::max(best, c);
  if (low_coef > 0.0) best = std::max(best, low_rate > 0.0 ? value(k_lo - 1) : kInf);
  if (high_coef > 0.0) best = std::max(best, high_rate < 0.0 ? value(k_hi + 1) : kInf);
  return best;
}

BlockSeries block_series(const Weight& w, BlockMode mode, double rho, double mu, double K,
                         int k_lo, int k_hi) {
  int lmax, hmin;
  structural_range(w, lmax, hmin);
  BlockSeries out;
  out.k_lo = std::min(k_lo, lmax);
  out.k_hi = std::max({k_hi, hmin, out.k_lo});
  for (int k = out.k_lo; k <= out.k_hi; ++k)
    out.values.push_back(block_term(w, mode, rho, mu, K, k));
  WeightPiece lead;
  if (w.leading_at_zero(lead)) geometric_form(lead, mode, rho, mu, K, out.low_coef, out.low_rate);
  if (w.leading_at_infinity(lead))
    geometric_form(lead, mode, rho, mu, K, out.high_coef, out.high_rate);
  return out;
}

BlockSeries block_series_auto(const Weight& w, BlockMode mode, double rho, double mu, double K,
                              double s, double rel_tol) {
  int lmax, hmin;
  structural_range(w, lmax, hmin);
  BlockSeries probe = block_series(w, mode, rho, mu, K, lmax, hmin);
  int lo = probe.k_lo, hi = probe.k_hi;
  const double part = std::max(probe.partial(s), 1e-300);
  if (std::isinf(probe.low_tail(s))) {
    lo -= 8;
  } else {
    while (lo > -kMaxBlock && probe.low_tail(s) > rel_tol * part) {
      lo = std::max(-kMaxBlock, lo - 8);
      probe.k_lo = lo;
    }
  }
  if (std::isinf(probe.high_tail(s))) {
    hi += 8;
  } else {
    while (hi < kMaxBlock && probe.high_tail(s) > rel_tol * part) {
      hi = std::min(kMaxBlock, hi + 8);
      probe.k_hi = hi;
    }
  }
  return block_series(w, mode, rho, mu, K, lo, hi);
}

}  // namespace lapnum
