#include "lapnum/schatten.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "functionals.hpp"
#include "lapnum/criteria.hpp"
#include "lapnum/numerics.hpp"
#include "lapnum/oracle.hpp"

namespace lapnum {

using detail::Primitive;

namespace {

const double kNaN = std::nan("");
const QuadOptions kQuad{1e-10, 0.0, 2000};
constexpr double kSlack = 1e-9;

double root(double x, double e) { return std::isinf(x) ? kInf : std::pow(x, 1.0 / e); }

bool is_p_one(const SpaceParams& sp) { return sp.p == 1.0; }

void require_finite_q(const SpaceParams& sp, const char* what) {
  if (std::isinf(sp.q)) fail(ErrorCode::Unsupported, std::string(what) + ": requires q < inf");
}

void require_positive(double s, const char* what) {
  if (!(s > 0.0) || std::isinf(s)) fail(ErrorCode::InvalidArgument, std::string(what) + ": s must be positive and finite");
}

void require_range(int l, int m, const char* what) {
  if (!(l < m)) fail(ErrorCode::InvalidArgument, std::string(what) + ": requires l < m");
}

double tail_or_zero(double t, double b, double delta, double lambda) {
  return t >= b ? 0.0 : tail_integral(t, b, delta, lambda);
}

std::vector<double> breaks_inside(const Weight& w, double lo, double hi) {
  std::vector<double> out;
  for (double b : w.breakpoints())
    if (b > lo && b < hi) out.push_back(b);
  return out;
}

// int_lo^hi F(t) d[-T(t, B)^e] with T = tail_integral(., B, delta, lambda), lo < hi < B.
double stieltjes_tail(const std::function<double(double)>& F, double lo, double hi, double B,
                      double delta, double lambda, double e, const std::vector<double>& breaks) {
  auto f = [&](double t) {
    const double Ft = F(t);
    if (Ft == 0.0) return 0.0;
    const double T = tail_or_zero(t, B, delta, lambda);
    if (T == 0.0) return 0.0;
    return Ft * e * std::pow(T, e - 1.0) * tail_integral_density(t, B, delta, lambda);
  };
  return integrate_split(f, lo, hi, breaks, kQuad).value;
}

double block_tail(double k, double delta, double lambda) {
  return std::pow(2.0, -k * lambda) * tail_integral(1.0, 2.0, delta, lambda);
}

// sigma_k(delta) and sigma-bar_k(delta) evaluated directly.
double sigma_direct(const SpaceParams& sp, const Weight& w, int k, double delta) {
  const double a = std::ldexp(1.0, k - 1), b = std::ldexp(1.0, k);
  const double T = std::pow(block_tail(k, delta, sp.lambda), 1.0 / sp.q);
  return T * root(w.power_integral(sp.p_conj, a, b), sp.p_conj);
}

double sigma_bar_direct(const SpaceParams& sp, const Weight& w, int k, double delta) {
  const double a = std::ldexp(1.0, k - 1), b = std::ldexp(1.0, k);
  return std::pow(block_tail(k, delta, sp.lambda), 1.0 / sp.q) * w.esup(a, b);
}

double ratio_of(double lhs, double rhs) {
  if (lhs == 0.0) return 0.0;
  if (rhs == 0.0) return kInf;
  return lhs / rhs;
}

}  // namespace

// ---------------------------------------------------------------------------
// Profiles, Lambda and J

DyadicProfile sigma_profile(const SpaceParams& sp, const Weight& w, int k_lo, int k_hi, bool barred) {
  require_finite_q(sp, "sigma_profile");
  if (barred != is_p_one(sp))
    fail(ErrorCode::InvalidArgument, "sigma_profile: the barred profile is defined for p = 1 only");
  if (std::isinf(sp.p)) fail(ErrorCode::Unsupported, "sigma_profile: requires p < inf");

  DyadicProfile prof;
  prof.barred = barred;
  prof.delta = sp.delta;
  prof.tail_s = barred ? sp.q : *sp.theta;
  const double K = std::pow(tail_integral(1.0, 2.0, sp.delta, sp.lambda), 1.0 / sp.q);
  const BlockMode mode = barred ? BlockMode::Esup : BlockMode::Integral;
  const double rho = barred ? 1.0 : sp.p_conj;
  const double mu = sp.lambda / sp.q;
  if (k_lo > k_hi) {
    prof.sigma = block_series_auto(w, mode, rho, mu, K, prof.tail_s);
    prof.tau = block_series_auto(w, BlockMode::Integral, 2.0, sp.lambda / 2.0, 1.0, 2.0);
  } else {
    prof.sigma = block_series(w, mode, rho, mu, K, k_lo, k_hi);
    prof.tau = block_series(w, BlockMode::Integral, 2.0, sp.lambda / 2.0, 1.0, k_lo, k_hi);
  }
  prof.k_lo = prof.sigma.k_lo;
  prof.k_hi = prof.sigma.k_hi;
  prof.tail_bound = prof.sigma.tail(prof.tail_s);
  return prof;
}

double Lambda_s(const DyadicProfile& prof, double s) {
  require_positive(s, "Lambda_s");
  return root(prof.sigma.sum(s), s);
}

double Lambda_s_range(const DyadicProfile& prof, double s, int l, int m) {
  require_positive(s, "Lambda_s");
  require_range(l, m, "Lambda_s");
  double total = 0.0;
  for (int k = l; k < m; ++k) total += std::pow(prof.sigma.value(k), s);
  return root(total, s);
}

double J_s(const SpaceParams& sp, const Weight& w, double s) {
  require_positive(s, "J_s");
  require_finite_q(sp, "J_s");
  if (!(sp.p > 1.0) || std::isinf(sp.p)) fail(ErrorCode::Unsupported, "J_s: requires 1 < p < inf");
  if (w.is_zero()) return 0.0;
  Primitive V(w, sp.p_conj, 0.0);
  if (V.infinite()) return kInf;
  const double I = detail::integral_power_primitive(V, -sp.lambda * s / sp.q, s / sp.p_conj - 1.0, w, sp.p_conj);
  return root(I, s);
}

double J_s_range(const SpaceParams& sp, const Weight& w, double s, int l, int m) {
  require_positive(s, "J_s");
  require_range(l, m, "J_s");
  require_finite_q(sp, "J_s");
  if (!(sp.p > 1.0) || std::isinf(sp.p)) fail(ErrorCode::Unsupported, "J_s: requires 1 < p < inf");
  const double a = std::ldexp(1.0, l - 1), b = std::ldexp(1.0, m - 1), B = std::ldexp(1.0, m);
  const double pc = sp.p_conj, q = sp.q, delta = sp.delta, lam = sp.lambda;
  Primitive V(w, pc, a);
  // Integration by parts against d[(p'/s) V^{s/p'}]; V(a) = 0 and T(b, B) > 0.
  const double Vb = V(b);
  if (Vb == 0.0) return 0.0;
  if (std::isinf(Vb)) return kInf;
  const double boundary = std::pow(tail_integral(b, B, delta, lam), s / q) * std::pow(Vb, s / pc);
  auto F = [&](double t) { return std::pow(V(t), s / pc); };
  const double inner = stieltjes_tail(F, a, b, B, delta, lam, s / q, breaks_inside(w, a, b));
  return root(pc / s * (boundary + inner), s);
}

double J_bar_s(const SpaceParams& sp, const Weight& w, double s) {
  require_positive(s, "J_bar_s");
  require_finite_q(sp, "J_bar_s");
  if (w.is_zero()) return 0.0;
  const Weight f = w.running_esup(0.0).times_power((-sp.lambda * s / sp.q - 1.0) / s);
  return root(f.power_integral(s, 0.0, kInf), s);
}

double J_bar_s_range(const SpaceParams& sp, const Weight& w, double s, int l, int m) {
  require_positive(s, "J_bar_s");
  require_range(l, m, "J_bar_s");
  require_finite_q(sp, "J_bar_s");
  const double a = std::ldexp(1.0, l - 1), b = std::ldexp(1.0, m - 1), B = std::ldexp(1.0, m);
  const Weight vbar = w.restricted(a, b).running_esup(a);
  if (vbar.restricted(a, b).is_zero()) return 0.0;
  auto F = [&](double t) { return std::pow(vbar(t), s); };
  return root(stieltjes_tail(F, a, b, B, sp.delta, sp.lambda, s / sp.q, breaks_inside(vbar, a, b)), s);
}

// ---------------------------------------------------------------------------
// Lambda-J equivalence

EquivalenceCheck lambda_J_equivalence_check(const SpaceParams& sp, const Weight& w, double s, int l, int m) {
  require_positive(s, "lambda_J_equivalence_check");
  require_range(l, m, "lambda_J_equivalence_check");
  require_finite_q(sp, "lambda_J_equivalence_check");
  EquivalenceCheck out;
  out.barred = is_p_one(sp);
  out.s = s;
  out.l = l;
  out.m = m;
  const double q = sp.q, lam = sp.lambda, delta = sp.delta;
  const double c = s * lam / q;
  const DyadicProfile prof = sigma_profile(sp, w, l, m - 1, out.barred);
  out.Lambda = Lambda_s(prof, s);
  out.Lambda_range = Lambda_s_range(prof, s, l, m);
  out.C1 = tail_integral_lower_c1(lam, lam / 2.0, delta);

  if (out.barred) {
    out.J = J_bar_s(sp, w, s);
    out.J_range = J_bar_s_range(sp, w, s, l, m);
    out.forward_const = std::pow(std::pow(delta, s / q) * (q / (lam * s)) * (1.0 - std::pow(2.0, -c)), -1.0 / s);
    out.forward_const_printed = kNaN;
    out.reverse_const = std::pow(std::pow(2.0, c) * std::pow(delta, -s / q) / (1.0 - std::pow(2.0, -c)) *
                                     std::pow(out.C1, -s / q),
                                 1.0 / s);
  } else {
    const double pc = sp.p_conj;
    out.J = J_s(sp, w, s);
    out.J_range = J_s_range(sp, w, s, l, m);
    out.forward_const = std::pow(std::pow(delta, s / q) * (pc / s) * (1.0 - std::pow(2.0, -c)), -1.0 / s);
    out.forward_const_printed = std::pow(std::pow(delta, 1.0 / q) * (pc / s) * (1.0 - std::pow(2.0, -c)), -1.0 / s);
    // Block-sum constant for sum_k 2^{-ck} (sum_{j<=k} a_j)^gamma <= C sum_k 2^{-ck} a_k^gamma.
    const double gamma = s / pc;
    double C_blocks;
    if (gamma <= 1.0) {
      C_blocks = 1.0 / (1.0 - std::pow(2.0, -c));
    } else {
      const double gconj = gamma / (gamma - 1.0), eps = c / (2.0 * gamma);
      C_blocks = std::pow(1.0 - std::pow(2.0, -eps * gconj), -gamma / gconj) / (1.0 - std::pow(2.0, -c / 2.0));
    }
    out.reverse_const = std::pow(pc / s * std::pow(2.0, c) * std::pow(delta, -s / q) * C_blocks *
                                     std::pow(out.C1, -s / q),
                                 1.0 / s);
  }
  out.vacuous = std::isinf(out.Lambda) && std::isinf(out.J);
  out.forward_holds = std::isinf(out.J) || out.Lambda <= out.forward_const * out.J * (1.0 + kSlack);
  out.reverse_holds = std::isinf(out.Lambda_range) ||
                      out.J_range <= out.reverse_const * out.Lambda_range * (1.0 + kSlack);
  return out;
}

// ---------------------------------------------------------------------------
// Dyadic lemmas

std::string to_string(DyadicLemma id) {
  switch (id) {
    case DyadicLemma::L11: return "L11";
    case DyadicLemma::L12: return "L12";
    case DyadicLemma::L13: return "L13";
    case DyadicLemma::L11p: return "L11'";
    case DyadicLemma::L12p: return "L12'";
    case DyadicLemma::L13p: return "L13'";
  }
  return "?";
}

DyadicLemma dyadic_lemma_from_string(const std::string& name) {
  for (DyadicLemma id : {DyadicLemma::L11, DyadicLemma::L12, DyadicLemma::L13, DyadicLemma::L11p,
                         DyadicLemma::L12p, DyadicLemma::L13p}) {
    const std::string s = to_string(id);
    if (name == s || (s.back() == '\'' && name == s.substr(0, s.size() - 1) + "p")) return id;
  }
  fail(ErrorCode::InvalidArgument, "unknown dyadic lemma: " + name);
}

namespace {

void require_lemma_params(DyadicLemma id, const SpaceParams& sp) {
  require_finite_q(sp, "dyadic lemma");
  const bool primed = id == DyadicLemma::L11p || id == DyadicLemma::L12p || id == DyadicLemma::L13p;
  if (primed && !is_p_one(sp)) fail(ErrorCode::InvalidArgument, to_string(id) + ": requires p = 1");
  if (!primed && (!(sp.p > 1.0) || std::isinf(sp.p)))
    fail(ErrorCode::InvalidArgument, to_string(id) + ": requires 1 < p < inf");
  if (id == DyadicLemma::L13 && !sp.r) fail(ErrorCode::InvalidArgument, "L13: requires q < p");
  if (id == DyadicLemma::L13p && !(sp.q < 1.0)) fail(ErrorCode::InvalidArgument, "L13': requires q < 1");
}

void check_split_sample(const LemmaSample& s) {
  const double a = std::ldexp(1.0, s.k - 1), b = std::ldexp(1.0, s.k);
  if (s.c.size() < 2) fail(ErrorCode::InvalidArgument, "dyadic lemma: need at least two split points");
  if (s.c.front() < a || s.c.back() > b) fail(ErrorCode::InvalidArgument, "dyadic lemma: split points outside the block");
  for (std::size_t i = 1; i < s.c.size(); ++i)
    if (!(s.c[i - 1] < s.c[i])) fail(ErrorCode::InvalidArgument, "dyadic lemma: split points must increase");
}

void check_z_points(const LemmaSample& s) {
  if (s.z.size() + 1 != s.c.size()) fail(ErrorCode::InvalidArgument, "dyadic lemma: need one z per subinterval");
  for (std::size_t n = 0; n < s.z.size(); ++n)
    if (s.z[n] < s.c[n] || s.z[n] > s.c[n + 1]) fail(ErrorCode::InvalidArgument, "dyadic lemma: z_n outside I_n");
}

}  // namespace

LemmaEvaluation evaluate_lemma_sample(DyadicLemma id, const SpaceParams& sp, const Weight& w,
                                      const LemmaSample& s) {
  require_lemma_params(id, sp);
  const double q = sp.q, lam = sp.lambda;
  const double pc = sp.p_conj;
  LemmaEvaluation ev;
  switch (id) {
    case DyadicLemma::L11:
    case DyadicLemma::L11p: {
      if (!(s.k1 <= s.k2 && s.k2 <= s.k3) || !(s.z1 <= s.z0 && s.z0 <= s.z2))
        fail(ErrorCode::InvalidArgument, "L11: requires k1 <= k2 <= k3 and z1 <= z0 <= z2");
      const double front = std::pow(std::max(0.0, std::pow(s.z0, -lam) - std::pow(s.z2, -lam)), 1.0 / q);
      double best = 0.0;
      if (id == DyadicLemma::L11) {
        ev.lhs = s.z1 < s.z0 ? front * root(w.power_integral(pc, s.z1, s.z0), pc) : 0.0;
        for (int k = s.k1; k <= s.k2; ++k) best = std::max(best, sigma_direct(sp, w, k, 1.0));
        ev.constant = std::pow(2.0, lam / q) * std::pow(1.0 - std::pow(2.0, -lam), -1.0 / q) /
                      std::pow(1.0 - std::pow(2.0, -pc * lam / q), 1.0 / pc);
      } else {
        ev.lhs = s.z1 < s.z0 ? front * w.esup(s.z1, s.z0) : 0.0;
        for (int k = s.k1; k <= s.k2; ++k) best = std::max(best, sigma_bar_direct(sp, w, k, 1.0));
        ev.constant = std::pow(2.0, lam / q) * std::pow(1.0 - std::pow(2.0, -lam), -1.0 / q);
      }
      ev.rhs = best;
      break;
    }
    case DyadicLemma::L12:
    case DyadicLemma::L12p: {
      check_split_sample(s);
      check_z_points(s);
      double sum = 0.0;
      if (id == DyadicLemma::L12) {
        const double th = *sp.theta;
        for (std::size_t n = 0; n < s.z.size(); ++n) {
          const double d = std::max(0.0, std::pow(s.z[n], -lam) - std::pow(s.c[n + 1], -lam));
          if (s.z[n] > s.c[n]) sum += std::pow(d, th / q) * std::pow(w.power_integral(pc, s.c[n], s.z[n]), th / pc);
        }
        ev.rhs = std::pow(sigma_direct(sp, w, s.k, 1.0), th);
        ev.constant = std::pow(2.0, lam * th / q);
      } else {
        for (std::size_t n = 0; n < s.z.size(); ++n) {
          const double d = std::max(0.0, std::pow(s.z[n], -lam) - std::pow(s.c[n + 1], -lam));
          if (s.z[n] > s.c[n]) sum += d * std::pow(w.esup(s.c[n], s.z[n]), q);
        }
        ev.rhs = std::pow(sigma_bar_direct(sp, w, s.k, 1.0), q);
        ev.constant = std::pow(2.0, lam);
      }
      ev.lhs = sum;
      break;
    }
    case DyadicLemma::L13:
    case DyadicLemma::L13p: {
      check_split_sample(s);
      const double l = static_cast<double>(s.c.size() - 1);
      double sum = 0.0;
      if (id == DyadicLemma::L13) {
        const double th = *sp.theta;
        for (std::size_t n = 0; n + 1 < s.c.size(); ++n)
          sum += std::pow(B0(sp.delta, Interval{s.c[n], s.c[n + 1]}, sp, w), th);
        ev.rhs = std::pow(std::pow(2.0, lam) - 1.0, th / q) * std::pow(sigma_direct(sp, w, s.k, sp.delta), th);
        ev.constant = std::pow(std::pow(l, 1.0 - sp.delta) / (1.0 - std::pow(2.0, -lam)), th / q);
      } else {
        for (std::size_t n = 0; n + 1 < s.c.size(); ++n)
          sum += std::pow(B3(Interval{s.c[n], s.c[n + 1]}, sp, w), q);
        ev.rhs = std::pow(sigma_bar_direct(sp, w, s.k, q), q);
        ev.constant = std::pow(l, 1.0 - q) * std::pow(2.0, lam);
      }
      ev.lhs = sum;
      break;
    }
  }
  ev.ratio = ratio_of(ev.lhs, ev.rhs);
  return ev;
}

LemmaReport dyadic_lemma_check(DyadicLemma id, const SpaceParams& sp, const Weight& w, const SampleSpec& spec) {
  require_lemma_params(id, sp);
  if (spec.count < 1 || spec.k_min > spec.k_max || spec.max_splits < 1)
    fail(ErrorCode::InvalidArgument, "dyadic_lemma_check: invalid sample spec");
  const bool three_blocks = id == DyadicLemma::L11 || id == DyadicLemma::L11p;
  if (three_blocks && spec.k_min == spec.k_max)
    fail(ErrorCode::InvalidArgument, "dyadic_lemma_check: L11 needs at least two block indices");

  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<int> kdist(spec.k_min, spec.k_max);
  std::uniform_int_distribution<int> ldist(1, spec.max_splits);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Log-uniform point in Delta_k.
  auto in_block = [&](int k) { return std::ldexp(std::exp2(unit(rng)), k - 1); };

  LemmaReport rep;
  rep.id = id;
  rep.samples = spec.count;
  for (int i = 0; i < spec.count; ++i) {
    LemmaSample s;
    if (three_blocks) {
      int ks[3];
      do {
        for (int& k : ks) k = kdist(rng);
        std::sort(ks, ks + 3);
      } while (ks[0] == ks[2]);
      s.k1 = ks[0];
      s.k2 = ks[1];
      s.k3 = ks[2];
      s.z1 = in_block(s.k1);
      s.z0 = in_block(s.k2);
      s.z2 = in_block(s.k3);
      if (s.z1 > s.z0) std::swap(s.z1, s.z0);
      if (s.z0 > s.z2) std::swap(s.z0, s.z2);
      if (s.z1 > s.z0) std::swap(s.z1, s.z0);
    } else {
      s.k = kdist(rng);
      const int l = ldist(rng);
      const double a = std::ldexp(1.0, s.k - 1), b = std::ldexp(1.0, s.k);
      for (int j = 0; j <= l; ++j) s.c.push_back(a + (b - a) * unit(rng));
      std::sort(s.c.begin(), s.c.end());
      s.c.erase(std::unique(s.c.begin(), s.c.end()), s.c.end());
      if (s.c.size() < 2) {
        --i;
        continue;
      }
      for (std::size_t n = 0; n + 1 < s.c.size(); ++n) s.z.push_back(s.c[n] + (s.c[n + 1] - s.c[n]) * unit(rng));
    }
    const LemmaEvaluation ev = evaluate_lemma_sample(id, sp, w, s);
    rep.max_ratio = std::max(rep.max_ratio, ev.ratio);
    rep.max_ratio_over_constant = std::max(rep.max_ratio_over_constant, ev.ratio / ev.constant);
  }
  LemmaSample widest;
  widest.k = 0;
  if (three_blocks) {
    widest.k1 = 0;
    widest.k2 = widest.k3 = 1;
    widest.z1 = widest.z0 = 0.75;
    widest.z2 = 1.5;
  } else {
    for (int j = 0; j <= spec.max_splits; ++j) widest.c.push_back(0.5 + 0.5 * (j + 0.5) / (spec.max_splits + 1));
    for (int j = 0; j < spec.max_splits; ++j) widest.z.push_back(0.5 * (widest.c[j] + widest.c[j + 1]));
  }
  rep.constant = evaluate_lemma_sample(id, sp, Weight(), widest).constant;
  rep.passed = rep.max_ratio_over_constant <= 1.0 + kSlack;
  return rep;
}

// ---------------------------------------------------------------------------
// Schatten-type upper bounds

SchattenUpperReport schatten_upper_report(const SpaceParams& sp, const Weight& w, double s, int oracle_size) {
  require_positive(s, "schatten_upper_report");
  if (sp.regime == Regime::PInfinite || sp.regime == Regime::QInfinite)
    fail(ErrorCode::Unsupported, "schatten_upper_report: requires p, q < inf");

  SchattenUpperReport rep;
  const double p = sp.p, q = sp.q;
  auto fmt = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return std::string(buf);
  };

  if (p > 1.0) {
    const double th = *sp.theta;
    if (!(s > th)) fail(ErrorCode::InvalidArgument, "schatten_upper_report: requires s > theta = " + fmt(th));
    double exponent = s;
    if (sp.r && s > *sp.r) exponent = *sp.r;
    if (sp.regime == Regime::QSubOneLessP) {
      rep.u_exponent = 1.0 / p - 1.0 / q;
      rep.weight_sequence = "n^{1/p-1/q}";
    } else {
      rep.u_exponent = -1.0 / sp.p_conj;
      rep.weight_sequence = "n^{-1/p'}";
    }
    rep.quantity_exponent = exponent;
    rep.quantity_name = "J_" + fmt(exponent);
  } else {
    if (!(s > q)) fail(ErrorCode::InvalidArgument, "schatten_upper_report: requires s > q = " + fmt(q));
    double exponent = s;
    if (q < 1.0) {
      rep.u_exponent = 1.0 - 1.0 / q;
      rep.weight_sequence = "n^{1-1/q}";
      exponent = std::min(s, q / (1.0 - q));
    } else {
      rep.u_exponent = 0.0;
      rep.weight_sequence = "1";
    }
    rep.quantity_exponent = exponent;
    rep.quantity_name = "Jbar_" + fmt(exponent);
  }

  const CompactnessVerdict cv = compactness_test(sp, w);
  bool compact = cv == CompactnessVerdict::Compact;
  if (cv == CompactnessVerdict::EquivalentToBoundedness)
    compact = norm_criterion(sp, w).decision == Decision::Bounded;
  if (!compact) fail(ErrorCode::NotCompact, "schatten_upper_report: the operator is not certified compact");

  rep.value = p > 1.0 ? J_s(sp, w, rep.quantity_exponent) : J_bar_s(sp, w, rep.quantity_exponent);
  rep.statement = "(sum_n [a_n " + rep.weight_sequence + "]^" + fmt(s) + ")^{1/" + fmt(s) +
                  "} <= const(p,q,s,lambda) * " + rep.quantity_name;

  if (oracle_size > 0 && p == 2.0 && q == 2.0 && rep.value > 0.0 && std::isfinite(rep.value)) {
    GridSpec grid;
    grid.size = oracle_size;
    const DiscretizedOperator op = discretize(sp, w, grid);
    const std::vector<double> a = singular_values(op, op.rows);
    double sum = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n)
      sum += std::pow(a[n] * std::pow(static_cast<double>(n + 1), rep.u_exponent), s);
    rep.realized_terms = static_cast<int>(a.size());
    rep.realized_ratio = root(sum, s) / rep.value;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Hardy operator and asymptotics

double hardy_apply(const Interval& I, const Weight& v, const Weight& w, const std::function<double(double)>& f,
                   double t) {
  validate(I);
  if (t < I.a || t > I.b) fail(ErrorCode::InvalidArgument, "hardy_apply: t outside I");
  if (t == I.a) return 0.0;
  auto g = [&](double y) {
    const double vy = v(y);
    return vy == 0.0 ? 0.0 : f(y) * vy;
  };
  return w(t) * integrate_split(g, I.a, t, breaks_inside(v, I.a, t), kQuad).value;
}

double alpha_pq(double p, double q) {
  if (!(p >= 1.0) || !(q >= p) || std::isinf(q))
    fail(ErrorCode::InvalidArgument, "alpha_pq: requires 1 <= p <= q < inf");
  if (p == 1.0) return 1.0;
  const double pc = p / (p - 1.0);
  const double th = pc * q / (pc + q);
  return std::pow(th / pc, 1.0 / pc) * std::pow(th / q, 1.0 / q);
}

double hardy_const_norm(double xi, double zeta, const Interval& I, double p, double q) {
  validate(I);
  if (std::isinf(I.b)) fail(ErrorCode::InvalidArgument, "hardy_const_norm: requires a finite interval");
  if (xi < 0.0 || zeta < 0.0) fail(ErrorCode::InvalidArgument, "hardy_const_norm: constants must be nonnegative");
  return alpha_pq(p, q) * xi * zeta * std::pow(I.b - I.a, 1.0 - 1.0 / p + 1.0 / q);
}

double alpha_pq_sup_oracle(double p, double q, int n) {
  if (!(p >= 1.0) || !(q > 0.0)) fail(ErrorCode::InvalidArgument, "alpha_pq_sup_oracle: invalid exponents");
  const DiscretizedOperator op = volterra_fixture(n);
  return operator_norm_pq(op, p, q).value;
}

AsymptoticReport asymptotic_constant(const SpaceParams& sp, const Weight& w) {
  const double p = sp.p, q = sp.q, lam = sp.lambda;
  if (!(p >= 1.0) || !(q >= p) || std::isinf(q))
    fail(ErrorCode::InvalidArgument, "asymptotic_constant: requires 1 <= p <= q < inf");
  AsymptoticReport rep;
  if (p == 1.0) {
    rep.value = root(w.times_power((-lam - 1.0) / q).power_integral(q, 0.0, kInf), q);
    const DyadicProfile prof = sigma_profile(sp, w, 1, 0, true);
    rep.side_sum = prof.sigma.sum(q);
  } else {
    const double th = *sp.theta;
    rep.value = root(w.times_power(-(lam + 1.0) / q).power_integral(th, 0.0, kInf), th);
    const DyadicProfile prof = sigma_profile(sp, w, 1, 0, false);
    rep.side_sum = prof.sigma.sum(th);
  }
  rep.side_condition = std::isfinite(rep.side_sum);
  return rep;
}

}  // namespace lapnum
