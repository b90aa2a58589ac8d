#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lapnum/dyadic.hpp"
#include "lapnum/kernel.hpp"
#include "lapnum/localnorm.hpp"
#include "lapnum/weight.hpp"

namespace lapnum {

/// Block profile over Delta_k = [2^{k-1}, 2^k]:
///   sigma_k = T_delta(2^k, 2^{k+1})^{1/q} |v|_{L^{p'}(Delta_k)}     (barred: esup_{Delta_k} v instead)
///   tau_k   = 2^{-lambda k/2} |v|_{L^2(Delta_k)}
struct DyadicProfile {
  int k_lo = 0, k_hi = -1;
  bool barred = false;
  double delta = 1.0;
  BlockSeries sigma;
  BlockSeries tau;
  double tail_s = 1.0;      // exponent used for tail_bound
  double tail_bound = 0.0;  // sum of sigma_k^{tail_s} over k outside [k_lo, k_hi]

  double sigma_at(int k) const { return sigma.value(k); }
  double tau_at(int k) const { return tau.value(k); }
};

/// Profile on [k_lo, k_hi] (widened where the tails need it). k_lo > k_hi selects
/// the range automatically so that the sigma tail is below 1e-12 of the partial sum.
DyadicProfile sigma_profile(const SpaceParams& params, const Weight& w, int k_lo, int k_hi,
                            bool barred);

/// (sum_k sigma_k^s)^{1/s} over all k, or over l <= k <= m-1.
double Lambda_s(const DyadicProfile& prof, double s);
double Lambda_s_range(const DyadicProfile& prof, double s, int l, int m);

/// J_s = (int t^{-lambda s/q} V(t)^{s/p'-1} v^{p'}(t) dt)^{1/s}, V(t) = int_0^t v^{p'}.
double J_s(const SpaceParams& params, const Weight& w, double s);
/// Finite-range J_s(l, m) on Omega(l, m) = [2^{l-1}, 2^{m-1}] with tail cut at 2^m.
double J_s_range(const SpaceParams& params, const Weight& w, double s, int l, int m);
/// J-bar_s = (int esup_{(0,t)}v^s t^{-lambda s/q - 1} dt)^{1/s}.
double J_bar_s(const SpaceParams& params, const Weight& w, double s);
double J_bar_s_range(const SpaceParams& params, const Weight& w, double s, int l, int m);

struct EquivalenceCheck {
  bool barred = false;
  double s = 1.0;
  double Lambda = 0.0, J = 0.0;
  double forward_const = 0.0;          // Lambda <= forward_const * J
  double forward_const_printed = 0.0;  // the proof's printed form with delta^{1/q}
  bool forward_holds = false;
  int l = 0, m = 1;
  double Lambda_range = 0.0, J_range = 0.0;
  double C1 = 0.0;                     // lower tail constant at lambda0 = lambda/2
  double reverse_const = 0.0;          // J(l,m) <= reverse_const * Lambda(l,m)
  bool reverse_holds = false;
  bool vacuous = false;                // both sides infinite
};

/// Lambda_s(delta) <= C J_s and J_s(l, m) <= C' Lambda_s(delta)_{(l,m)} with the
/// explicit constants of the proof; barred variants when p = 1.
EquivalenceCheck lambda_J_equivalence_check(const SpaceParams& params, const Weight& w, double s,
                                            int l, int m);

enum class DyadicLemma { L11, L12, L13, L11p, L12p, L13p };
std::string to_string(DyadicLemma id);
DyadicLemma dyadic_lemma_from_string(const std::string& name);

struct SampleSpec {
  int count = 1000;
  std::uint64_t seed = 1;
  int k_min = -6, k_max = 1;  // block indices drawn from [k_min, k_max]
  int max_splits = 6;         // l in 1..max_splits for split-point lemmas
};

// One configuration of a dyadic lemma. L11 and L11' use k1 <= k2 <= k3 and
// z1 in Delta_{k1}, z0 in Delta_{k2}, z2 in Delta_{k3}; the other lemmas use a
// block k with split points c_1 < ... < c_{l+1} and (for L12, L12') z_n in (c_n, c_{n+1}).
struct LemmaSample {
  int k1 = 0, k2 = 0, k3 = 0;
  double z0 = 0.0, z1 = 0.0, z2 = 0.0;
  int k = 0;
  std::vector<double> c;
  std::vector<double> z;
};

struct LemmaEvaluation {
  double lhs = 0.0;
  double rhs = 0.0;       // the right-hand side as stated, without its implied constant
  double constant = 0.0;  // the constant the proof chain gives for this sample
  double ratio = 0.0;     // lhs / rhs (0 when both vanish)
};

LemmaEvaluation evaluate_lemma_sample(DyadicLemma id, const SpaceParams& params, const Weight& w,
                                      const LemmaSample& sample);

struct LemmaReport {
  DyadicLemma id = DyadicLemma::L11;
  int samples = 0;
  double max_ratio = 0.0;                // max over samples of lhs / rhs
  double constant = 0.0;                 // largest per-sample constant (reached at l = max_splits)
  double max_ratio_over_constant = 0.0;  // max over samples of ratio / own constant
  bool passed = false;                   // max_ratio_over_constant <= 1 up to rounding
};

/// Evaluates both sides of a dyadic lemma on seeded random samples.
LemmaReport dyadic_lemma_check(DyadicLemma id, const SpaceParams& params, const Weight& w,
                               const SampleSpec& spec);

struct SchattenUpperReport {
  std::string weight_sequence;  // u_n, e.g. "n^{-1/p'}"
  double u_exponent = 0.0;      // u_n = n^{u_exponent}
  std::string quantity_name;    // J_s, J_r, Jbar_s, ...
  double quantity_exponent = 0.0;
  double value = 0.0;
  std::string statement;
  // Realized (sum [a_n u_n]^s)^{1/s} / value from the discretized operator (p = q = 2 only).
  double realized_ratio = -1.0;
  int realized_terms = 0;
};

/// Upper-bound form of the Schatten-type theorems for the given (p, q, s).
/// oracle_size > 0 adds the realized ratio for p = q = 2.
SchattenUpperReport schatten_upper_report(const SpaceParams& params, const Weight& w, double s,
                                          int oracle_size = 0);

/// H f(t) = w(t) int_a^t f(y) v(y) dy.
double hardy_apply(const Interval& I, const Weight& v, const Weight& w,
                   const std::function<double(double)>& f, double t);

/// alpha_pq xi zeta |b - a|^{1 - 1/p + 1/q} for constant weights on a finite interval.
double hardy_const_norm(double xi, double zeta, const Interval& I, double p, double q);

/// (theta/p')^{1/p'} (theta/q)^{1/q}, and 1 for p = 1; requires 1 <= p <= q < inf.
double alpha_pq(double p, double q);

/// Norm of f -> int_0^t f on (0,1) from L^p to L^q, estimated on an n-cell discretization.
double alpha_pq_sup_oracle(double p, double q, int n = 512);

struct AsymptoticReport {
  double value = 0.0;
  bool side_condition = false;  // sum sigma_k^theta < inf (p > 1) or sum sigma-bar_k^q < inf (p = 1)
  double side_sum = 0.0;
};

/// (int t^{-(lambda+1) theta/q} v^theta)^{1/theta} for p > 1, (int t^{-lambda-1} v^q)^{1/q} for p = 1.
AsymptoticReport asymptotic_constant(const SpaceParams& params, const Weight& w);

}  // namespace lapnum
