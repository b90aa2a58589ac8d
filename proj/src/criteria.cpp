#include "lapnum/criteria.hpp"

#include <algorithm>
#include <cmath>

#include "lapnum/dyadic.hpp"
#include "functionals.hpp"
#include "lapnum/numerics.hpp"
#include "lapnum/oracle.hpp"

namespace lapnum {

using detail::Primitive;

std::string to_string(Decision d) {
  switch (d) {
    case Decision::Bounded: return "bounded";
    case Decision::Unbounded: return "unbounded";
    case Decision::UndecidedOneSided: return "undecided-one-sided";
  }
  return "?";
}

std::string to_string(Compactness c) {
  switch (c) {
    case Compactness::Compact: return "compact";
    case Compactness::NotCompact: return "not-compact";
    case Compactness::NotApplicable: return "not-applicable";
    case Compactness::Undecided: return "undecided";
  }
  return "?";
}

std::string to_string(CompactnessVerdict c) {
  switch (c) {
    case CompactnessVerdict::Compact: return "compact";
    case CompactnessVerdict::NotCompact: return "not-compact";
    case CompactnessVerdict::EquivalentToBoundedness: return "equivalent-to-boundedness";
    case CompactnessVerdict::NeverCompact: return "never-compact";
  }
  return "?";
}

namespace {

double root(double x, double e) { return std::isinf(x) ? kInf : std::pow(x, 1.0 / e); }

// Product that keeps 0 * inf = 0 for bound arithmetic.
double times(double c, double x) { return (c == 0.0 || x == 0.0) ? 0.0 : c * x; }

Weight esup_profile(const SpaceParams& sp, const Weight& w) {
  return w.running_esup(0.0).times_power(-sp.lambda / sp.q);
}

// B_q(t) = t^{-lambda/q} esup_{0<x<t} v(x)
double esup_Bq(const SpaceParams& sp, const Weight& w) {
  return esup_profile(sp, w).esup(0.0, kInf);
}

bool limits_vanish(double at0, double atinf) { return at0 == 0.0 && atinf == 0.0; }

// Sets decision and compactness for cases where compactness follows boundedness.
void decide_equivalent(BoundReport& rep, bool sufficient_finite, bool necessary_finite) {
  if (sufficient_finite) {
    rep.decision = Decision::Bounded;
    rep.compactness = Compactness::Compact;
  } else if (!necessary_finite) {
    rep.decision = Decision::Unbounded;
    rep.compactness = Compactness::NotCompact;
  } else {
    rep.decision = Decision::UndecidedOneSided;
    rep.compactness = Compactness::Undecided;
  }
}

void finish_bounds(BoundReport& rep) {
  const double low_q = rep.secondary_name.empty() ? rep.value : rep.secondary_value;
  rep.lower_bound = times(rep.lower_const, low_q);
  if (rep.value == 0.0)
    rep.upper_bound = std::isinf(rep.upper_const) ? kInf : 0.0;
  else
    rep.upper_bound = rep.upper_const * rep.value;
}

void case_p_leq_q(const SpaceParams& sp, const Weight& w, BoundReport& rep) {
  const double q = sp.q, pc = sp.p_conj;
  Primitive V(w, pc);
  const auto sup = detail::sup_power_primitive(V, -sp.lambda / q, 1.0 / pc);
  rep.quantity_name = "A_L";
  rep.value = sup.value;
  rep.witness = sup.witness;
  rep.lower_const = std::pow(q, -2.0 / q) * std::pow(std::min(2.0, std::pow(2.0, q - 1.0)), 1.0 / q);
  if (q <= 2.0)
    rep.upper_const = std::pow(2.0, 1.0 / q) * std::pow(sp.q_conj, 1.0 / pc) * std::pow(q - 1.0, -1.0 / q);
  else
    rep.upper_const = std::pow(2.0, 1.0 / sp.q_conj) * std::pow(sp.q_conj, 1.0 / pc);
  const bool finite = std::isfinite(rep.value);
  rep.decision = finite ? Decision::Bounded : Decision::Unbounded;
  const auto lim = detail::limits_power_primitive(V, -sp.lambda / q, 1.0 / pc);
  rep.compactness = finite && limits_vanish(lim.at_start, lim.at_infinity) ? Compactness::Compact
                                                                          : Compactness::NotCompact;
}

double B_L(const SpaceParams& sp, const Weight& w) {
  const double r = *sp.r;
  Primitive V(w, sp.p_conj);
  const double I = detail::integral_power_primitive(V, -sp.lambda * r / sp.q, r / sp.q_conj, w, sp.p_conj);
  return root(I, r);
}

void case_q_less_p(const SpaceParams& sp, const Weight& w, BoundReport& rep) {
  const double q = sp.q, pc = sp.p_conj;
  if (q == 1.0) {
    rep.quantity_name = "B_p";
    rep.value = root(w.times_power(-sp.lambda).power_integral(pc, 0.0, kInf), pc);
    rep.lower_const = rep.upper_const = 1.0;
  } else {
    const double r = *sp.r;
    rep.quantity_name = "B_L";
    rep.value = B_L(sp, w);
    rep.lower_const = std::pow(std::min(2.0, std::pow(2.0, q - 1.0)) / q, 1.0 / q) *
                      std::pow(pc * q / r, 1.0 / sp.q_conj);
    if (q <= 2.0)
      rep.upper_const = std::pow(2.0, 1.0 / q) * std::pow(pc, 1.0 / sp.q_conj) * std::pow(q - 1.0, -1.0 / q);
    else
      rep.upper_const = std::pow(2.0, 1.0 / sp.q_conj) * std::pow(pc, 1.0 / sp.q_conj);
  }
  const bool finite = std::isfinite(rep.value);
  decide_equivalent(rep, finite, finite);
}

void case_q_sub_one_less_p(const SpaceParams& sp, const Weight& w, BoundReport& rep) {
  const double p = sp.p, q = sp.q, pc = sp.p_conj, r = *sp.r;
  rep.quantity_name = "B_L";
  rep.value = B_L(sp, w);
  rep.secondary_name = "norm_B_q";
  rep.secondary_value = root(w.times_power(-sp.lambda / q).power_integral(pc, 0.0, kInf), pc);
  rep.lower_const = std::pow(q, -1.0 / q);
  rep.upper_const = std::pow(p, 1.0 / p) * std::pow(pc, 1.0 / sp.q_conj) * std::pow(q, -2.0 / q) *
                    std::pow(r, 1.0 / r);
  decide_equivalent(rep, std::isfinite(rep.value), std::isfinite(rep.secondary_value));
}

void case_q_sub_one_p_one(const SpaceParams& sp, const Weight& w, BoundReport& rep) {
  const double q = sp.q, lam = sp.lambda;
  const double rho = q / (1.0 - q);
  const double gamma = (-lam - (1.0 - q)) / q;
  rep.quantity_name = "B_q_conj";
  rep.value = root(w.running_esup(0.0).times_power(gamma).power_integral(rho, 0.0, kInf), rho);
  rep.secondary_name = "esup_B_q";
  rep.secondary_value = esup_Bq(sp, w);
  rep.lower_const = std::pow(q, -1.0 / q);
  rep.upper_const = std::pow(lam, (1.0 - q) / q) * std::pow(q, -2.0 / q) *
                    std::pow(1.0 - q, -(1.0 - q) / q);
  decide_equivalent(rep, std::isfinite(rep.value), std::isfinite(rep.secondary_value));
}

void case_p_one_leq_q(const SpaceParams& sp, const Weight& w, BoundReport& rep) {
  const Weight prof = esup_profile(sp, w);
  rep.quantity_name = "esup_B_q";
  rep.value = prof.esup(0.0, kInf);
  rep.lower_const = rep.upper_const = std::pow(sp.q, -1.0 / sp.q);
  rep.note = "norm equals q^{-1/q} esup_y v(y) y^{-lambda/q} (column norms of the kernel)";
  const bool finite = std::isfinite(rep.value);
  rep.decision = finite ? Decision::Bounded : Decision::Unbounded;
  const bool vanish = limits_vanish(detail::weight_limit_at_zero(prof), detail::weight_limit_at_infinity(prof));
  rep.compactness = finite && vanish ? Compactness::Compact : Compactness::NotCompact;
}

void case_p_infinite(const SpaceParams& sp, const Weight& w, BoundReport& rep) {
  const double q = sp.q, lam = sp.lambda;
  Primitive V(w, 1.0);
  const double I = detail::integral_power_primitive(V, -lam, q - 1.0, w, 1.0);
  rep.quantity_name = "C_q";
  rep.value = root(I, q);
  if (q == 1.0) {
    rep.lower_const = rep.upper_const = 1.0;
  } else {
    rep.lower_const = 0.0;
    rep.upper_const = kInf;
    rep.note = "explicit constants unavailable for this q; decision from C_q";
  }
  if (q >= 1.0) {
    const bool finite = std::isfinite(rep.value);
    decide_equivalent(rep, finite, finite);
  } else {
    rep.secondary_name = "int_t^{-lambda/q}v";
    rep.secondary_value = w.times_power(-lam / q).power_integral(1.0, 0.0, kInf);
    decide_equivalent(rep, std::isfinite(rep.value), std::isfinite(rep.secondary_value));
  }
}

void case_q_infinite(const SpaceParams& sp, const Weight& w, BoundReport& rep) {
  rep.lower_const = rep.upper_const = 1.0;
  if (sp.p > 1.0) {
    rep.quantity_name = "norm_v_p_conj";
    rep.value = root(w.power_integral(sp.p_conj, 0.0, kInf), sp.p_conj);
    const bool finite = std::isfinite(rep.value);
    decide_equivalent(rep, finite, finite);
    return;
  }
  rep.quantity_name = "esup_v";
  rep.value = w.esup(0.0, kInf);
  rep.secondary_name = "esup_B_1";
  rep.secondary_value = w.running_esup(0.0).times_power(-sp.lambda).esup(0.0, kInf);
  rep.note = "norm equals esup v; esup_B_1 reported for reference";
  rep.decision = std::isfinite(rep.value) ? Decision::Bounded : Decision::Unbounded;
  rep.compactness = Compactness::NotCompact;
}

}  // namespace

BoundReport norm_criterion(const SpaceParams& sp, const Weight& w) {
  BoundReport rep;
  rep.case_tag = regime_tag(sp.regime);
  switch (sp.regime) {
    case Regime::PLeqQ: case_p_leq_q(sp, w, rep); break;
    case Regime::QLessP: case_q_less_p(sp, w, rep); break;
    case Regime::QSubOneLessP: case_q_sub_one_less_p(sp, w, rep); break;
    case Regime::QSubOnePOne: case_q_sub_one_p_one(sp, w, rep); break;
    case Regime::POneLeqQ: case_p_one_leq_q(sp, w, rep); break;
    case Regime::PInfinite: case_p_infinite(sp, w, rep); break;
    case Regime::QInfinite: case_q_infinite(sp, w, rep); break;
  }
  // Here the secondary quantity is informational and both bounds use the value.
  if (sp.regime == Regime::QInfinite && sp.p == 1.0) {
    rep.lower_bound = rep.upper_bound = rep.value;
    return rep;
  }
  finish_bounds(rep);
  return rep;
}

CompactnessVerdict compactness_test(const SpaceParams& sp, const Weight& w) {
  switch (sp.regime) {
    case Regime::QLessP:
    case Regime::QSubOneLessP:
    case Regime::QSubOnePOne:
    case Regime::PInfinite:
      return CompactnessVerdict::EquivalentToBoundedness;
    case Regime::QInfinite:
      return sp.p == 1.0 ? CompactnessVerdict::NeverCompact
                         : CompactnessVerdict::EquivalentToBoundedness;
    case Regime::PLeqQ:
    case Regime::POneLeqQ: {
      const BoundReport rep = norm_criterion(sp, w);
      return rep.compactness == Compactness::Compact ? CompactnessVerdict::Compact
                                                     : CompactnessVerdict::NotCompact;
    }
  }
  return CompactnessVerdict::NotCompact;
}

double schatten_X_alpha(double alpha, double lambda, const Weight& w) {
  if (!(alpha > 0.0)) fail(ErrorCode::InvalidArgument, "X_alpha: alpha must be positive");
  if (!(lambda > 0.0)) fail(ErrorCode::InvalidArgument, "X_alpha: lambda must be positive");
  Primitive V(w, 2.0);
  const double I = detail::integral_power_primitive(V, -(lambda * alpha / 2.0 + 1.0), alpha / 2.0, w,
                                                    std::nullopt);
  return root(I, alpha);
}

double hilbert_schmidt_exact(double lambda, const Weight& w) {
  if (!(lambda > 0.0)) fail(ErrorCode::InvalidArgument, "hilbert_schmidt_exact: lambda must be positive");
  return std::sqrt(w.times_power(-lambda / 2.0).power_integral(2.0, 0.0, kInf) / 2.0);
}

RemarkCheck remark_lower_check(double alpha, double lambda, const Weight& w, int k_lo, int k_hi,
                               int oracle_size) {
  if (!(alpha >= 1.0)) fail(ErrorCode::InvalidArgument, "remark check: alpha must be >= 1");
  const SpaceParams sp = derived_params(2.0, 2.0, lambda);
  if (norm_criterion(sp, w).compactness != Compactness::Compact)
    fail(ErrorCode::NotCompact, "remark check: operator is not compact on L^2");

  RemarkCheck out;
  out.alpha = alpha;
  const auto tau = block_series(w, BlockMode::Integral, 2.0, lambda / 2.0, 1.0, k_lo, k_hi);
  out.k_lo = tau.k_lo;
  out.k_hi = tau.k_hi;
  double inner = 0.0;
  for (int k = tau.k_lo; k <= tau.k_hi; ++k) {
    const double t = tau.value(k);
    out.tau.emplace_back(k, t);
    if (t == 0.0) continue;
    // <L f_k, g_k> with f_k = v chi_{Delta_k} / |v chi_{Delta_k}|_2 and g_k the unit-norm
    // indicator of (2^{-(k+1) lambda}, 2^{-k lambda}).
    const double ylo = std::ldexp(1.0, k - 1), yhi = std::ldexp(1.0, k);
    const double x1 = std::exp2(-(k + 1) * lambda), x2 = std::exp2(-k * lambda);
    const double vnorm = std::sqrt(w.power_integral(2.0, ylo, yhi));
    auto f = [&](double y) {
      const double yl = std::pow(y, lambda);
      const double v = w(y);
      return v * v * (std::exp(-x1 * yl) - std::exp(-x2 * yl)) / yl;
    };
    std::vector<double> breaks;
    for (double b : w.breakpoints())
      if (b > ylo && b < yhi) breaks.push_back(b);
    const double ip = integrate_split(f, ylo, yhi, breaks).value / (vnorm * std::sqrt(x2 - x1));
    inner += std::pow(std::abs(ip), alpha);
  }
  out.inner_product_sum = inner;
  out.tau_tail = tau.tail(alpha);
  out.rhs = 0.5 * tau.sum(alpha);

  GridSpec grid;
  grid.size = oracle_size;
  const auto op = discretize(sp, w, grid);
  out.oracle_truncation_error = op.truncation_error;
  for (double a : singular_values(op, std::min(op.rows, op.cols)))
    if (a > 0.0) out.lhs_oracle += std::pow(a, alpha);
  if (alpha == 2.0) {
    const double hs = hilbert_schmidt_exact(lambda, w);
    out.lhs_exact = hs * hs;
  }
  out.holds = out.rhs <= out.lhs_oracle && (out.lhs_exact < 0.0 || out.rhs <= out.lhs_exact);
  return out;
}

}  // namespace lapnum
