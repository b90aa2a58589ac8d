#include "lapnum/localnorm.hpp"

#include <algorithm>
#include <cmath>

#include "functionals.hpp"
#include "lapnum/numerics.hpp"

namespace lapnum {

using detail::Primitive;

namespace {

const double kNaN = std::nan("");
const QuadOptions kLocalQuad{1e-10, 0.0, 2000};

double root(double x, double e) { return std::isinf(x) ? kInf : std::pow(x, 1.0 / e); }

double tail(double t, double b, double delta, double lambda) {
  return t >= b ? 0.0 : tail_integral(t, b, delta, lambda);
}

double tail_density(double t, double b, double delta, double lambda) {
  return t >= b ? 0.0 : tail_integral_density(t, b, delta, lambda);
}

void require_p_finite_conj(const SpaceParams& sp, const char* what) {
  if (!(sp.p > 1.0) || std::isinf(sp.p))
    fail(ErrorCode::Unsupported, std::string(what) + ": requires 1 < p < inf");
}

void require_q_finite(const SpaceParams& sp, const char* what) {
  if (std::isinf(sp.q)) fail(ErrorCode::Unsupported, std::string(what) + ": requires q < inf");
}

std::vector<double> breaks_inside(const Weight& w, double lo, double hi) {
  std::vector<double> out;
  for (double b : w.breakpoints())
    if (b > lo && b < hi) out.push_back(b);
  return out;
}

// Effective integration range inside I where the integrand can be nonzero.
bool active_range(const Weight& w, const Interval& I, bool stop_at_support_end, double& lo, double& hi) {
  const Weight wi = w.restricted(I.a, I.b);
  if (wi.is_zero()) return false;
  lo = std::max(I.a, wi.support_start());
  hi = stop_at_support_end ? std::min(I.b, wi.support_end()) : I.b;
  return lo < hi;
}

double log_scan_max(const std::function<double(double)>& F, double lo, double hi,
                    const std::vector<double>& extra) {
  const int samples = std::clamp(static_cast<int>(12.0 * std::log2(hi / lo)), 96, 800);
  double best = maximize_log(F, lo, hi, samples).value;
  for (double t : extra) best = std::max(best, F(t));
  return best;
}

// Lower end for a log scan starting at lo, which may be 0.
double scan_start(double lo, double hi) { return lo > 0.0 ? lo : hi * std::ldexp(1.0, -60); }

// Limit of c y^e as y -> 0+.
double exponent_limit_at_zero(double c, double e) {
  if (c == 0.0) return 0.0;
  if (e > 0.0) return 0.0;
  return e == 0.0 ? c : kInf;
}

}  // namespace

void validate(const Interval& I) {
  if (!(I.a >= 0.0) || std::isinf(I.a) || !(I.a < I.b))
    fail(ErrorCode::InvalidArgument, "interval: need 0 <= a < b <= inf");
}

GammaConstants gamma_constants(const SpaceParams& sp) {
  require_q_finite(sp, "gamma_constants");
  const double p = sp.p, q = sp.q, pc = sp.p_conj, qc = sp.q_conj;
  GammaConstants g{};
  g.alpha0 = std::max(2.0, std::pow(2.0, q - 1.0));
  g.beta0 = q > 2.0 ? std::pow(2.0, q - 1.0) : (q > 1.0 ? 2.0 / (q - 1.0) : kNaN);
  g.gamma0 = g.gamma1 = std::pow(g.alpha0, 1.0 / q) * std::pow(q, -1.0 / q);
  g.gamma0_bar = q > 1.0 ? std::pow(g.beta0, 1.0 / q) * std::pow(qc, 1.0 / pc) : kNaN;
  g.gamma1_bar = q > 1.0 ? std::pow(g.beta0, 1.0 / q) * std::pow(qc, -1.0 / q) : kNaN;
  g.gamma2 = g.gamma2_bar = g.gamma3_bar = kNaN;
  if (sp.r && q > 1.0) {
    g.gamma2 = std::pow(g.alpha0, 1.0 / q) * std::pow(q * pc / *sp.r, 1.0 / qc);
    g.gamma2_bar = std::pow(g.beta0, 1.0 / q) * std::pow(pc, 1.0 / qc);
  }
  if (sp.r && q < 1.0 && p > 1.0 && !std::isinf(p)) {
    const double r = *sp.r;
    g.gamma3_bar = std::pow(r / q, 1.0 / r - 1.0) * std::pow(p, 1.0 / p) * std::pow(pc, 1.0 / pc) *
                   std::pow(q, -1.0 / q);
  }
  g.gamma4_bar = q < 1.0 ? std::pow(1.0 - q, -(1.0 - q) / q) : kNaN;
  return g;
}

double A0(double delta, const Interval& I, const SpaceParams& sp, const Weight& w) {
  validate(I);
  require_p_finite_conj(sp, "A0");
  require_q_finite(sp, "A0");
  const double q = sp.q, pc = sp.p_conj, lam = sp.lambda;
  Primitive V(w, pc, I.a);
  if (std::isinf(I.b))
    return std::pow(delta, -1.0 / q) * detail::sup_power_primitive(V, -lam / q, 1.0 / pc).value;
  double lo, hi;
  if (!active_range(w, I, true, lo, hi)) return 0.0;
  if (V.infinite()) return kInf;
  double lim0 = 0.0;
  if (I.a == 0.0) {
    lim0 = std::pow(delta, -1.0 / q) * detail::limits_power_primitive(V, -lam / q, 1.0 / pc).at_start;
    if (std::isinf(lim0)) return kInf;
  }
  auto F = [&](double t) {
    const double Vt = V(t);
    if (Vt == 0.0) return 0.0;
    return std::pow(Vt, 1.0 / pc) * std::pow(tail(t, I.b, delta, lam), 1.0 / q);
  };
  const double start = scan_start(lo, hi);
  return std::max(lim0, log_scan_max(F, start, hi, breaks_inside(w, start, hi)));
}

double B0(double delta, const Interval& I, const SpaceParams& sp, const Weight& w) {
  validate(I);
  require_p_finite_conj(sp, "B0");
  if (!sp.r) fail(ErrorCode::Unsupported, "B0: requires q < p");
  const double q = sp.q, pc = sp.p_conj, lam = sp.lambda, r = *sp.r;
  Primitive V(w, pc, I.a);
  const double alpha = -lam * r / q - 1.0, g = r / pc;
  if (std::isinf(I.b)) {
    const double J = detail::integral_power_primitive(V, alpha, g, w, std::nullopt);
    return root(std::pow(delta, -r / q) * (lam * r / q) * J, r);
  }
  double lo, hi;
  if (!active_range(w, I, false, lo, hi)) return 0.0;
  if (V.infinite()) return kInf;
  const auto& first = V.segments().front();
  if (I.a == 0.0 && first.coeff > 0.0 && alpha + g * (first.exponent + 1.0) <= -1.0) return kInf;
  auto f = [&](double t) {
    const double Vt = V(t);
    if (Vt == 0.0) return 0.0;
    const double T = tail(t, I.b, delta, lam);
    if (T == 0.0) return 0.0;
    return std::pow(Vt, g) * (r / q) * std::pow(T, r / q - 1.0) * tail_density(t, I.b, delta, lam);
  };
  return root(integrate_split(f, lo, hi, breaks_inside(w, lo, hi), kLocalQuad).value, r);
}

double A1(const Interval& I, const SpaceParams& sp, const Weight& w) {
  validate(I);
  require_q_finite(sp, "A1");
  const double q = sp.q, lam = sp.lambda;
  if (std::isinf(I.b)) return w.times_power(-lam / q).esup(I.a, kInf);
  auto g = [&](double c, double beta, double y) {
    return c * std::pow(y, beta) * std::pow(-std::expm1(lam * std::log(y / I.b)) * std::pow(y, -lam), 1.0 / q);
  };
  double best = 0.0;
  for (const auto& p : w.pieces()) {
    const double u0 = std::max(p.lo, I.a), u1 = std::min(p.hi, I.b);
    if (!(u0 < u1) || p.coeff == 0.0) continue;
    if (u0 == 0.0)
      best = std::max(best, exponent_limit_at_zero(p.coeff, p.exponent - lam / q));
    else
      best = std::max(best, g(p.coeff, p.exponent, u0));
    if (u1 < I.b) best = std::max(best, g(p.coeff, p.exponent, u1));
    if (p.exponent > lam / q) {
      const double y = I.b * std::pow((p.exponent - lam / q) / p.exponent, 1.0 / lam);
      if (y > u0 && y < u1) best = std::max(best, g(p.coeff, p.exponent, y));
    }
  }
  return best;
}

double B1(const Interval& I, const SpaceParams& sp, const Weight& w) {
  validate(I);
  require_p_finite_conj(sp, "B1");
  const double pc = sp.p_conj, lam = sp.lambda;
  const Weight s = w.times_power(-lam);
  if (std::isinf(I.b)) return root(s.power_integral(pc, I.a, kInf), pc);
  if (std::isinf(s.power_integral(pc, I.a, I.b))) return kInf;
  double lo, hi;
  if (!active_range(w, I, true, lo, hi)) return 0.0;
  auto f = [&](double t) {
    const double v = w(t);
    if (v == 0.0) return 0.0;
    return std::pow(-std::expm1(lam * std::log(t / I.b)) * std::pow(t, -lam) * v, pc);
  };
  return root(integrate_split(f, lo, hi, breaks_inside(w, lo, hi), kLocalQuad).value, pc);
}

double B2(const Interval& I, const SpaceParams& sp, const Weight& w) {
  validate(I);
  require_p_finite_conj(sp, "B2");
  const double q = sp.q, pc = sp.p_conj, lam = sp.lambda;
  const Weight s = w.times_power(-lam / q);
  if (std::isinf(I.b)) return std::pow(q, -1.0 / q) * root(s.power_integral(pc, I.a, kInf), pc);
  if (std::isinf(s.power_integral(pc, I.a, I.b))) return kInf;
  double lo, hi;
  if (!active_range(w, I, true, lo, hi)) return 0.0;
  auto f = [&](double y) {
    const double v = w(y);
    if (v == 0.0) return 0.0;
    return std::pow(v, pc) * std::pow(tail(y, I.b, q, lam), pc / q);
  };
  return root(integrate_split(f, lo, hi, breaks_inside(w, lo, hi), kLocalQuad).value, pc);
}

double B3(const Interval& I, const SpaceParams& sp, const Weight& w) {
  validate(I);
  const double q = sp.q, lam = sp.lambda;
  if (!(q < 1.0)) fail(ErrorCode::Unsupported, "B3: requires q < 1");
  const double rho = q / (1.0 - q);
  const double gamma = (-lam - (1.0 - q)) / q;
  const Weight vbar = w.running_esup(I.a);
  if (std::isinf(I.b)) {
    const double J = vbar.times_power(gamma).power_integral(rho, I.a, kInf);
    return root(std::pow(q, -1.0 / (1.0 - q)) * (lam / (1.0 - q)) * J, rho);
  }
  if (std::isinf(vbar.times_power(gamma).power_integral(rho, I.a, I.b))) return kInf;
  double lo, hi;
  if (!active_range(w, I, false, lo, hi)) return 0.0;
  auto f = [&](double t) {
    const double vb = vbar(t);
    if (vb == 0.0) return 0.0;
    const double T = tail(t, I.b, q, lam);
    return std::pow(vb, rho) * std::pow(T, rho) * tail_density(t, I.b, q, lam) / (1.0 - q);
  };
  return root(integrate_split(f, lo, hi, breaks_inside(vbar, lo, hi), kLocalQuad).value, rho);
}

double local_norm_p1(const Interval& I, const SpaceParams& sp, const Weight& w) {
  validate(I);
  require_q_finite(sp, "local norm");
  const double q = sp.q, lam = sp.lambda;
  if (std::isinf(I.b)) return std::pow(q, -1.0 / q) * w.times_power(-lam / q).esup(I.a, kInf);
  if (q == 1.0) return A1(I, sp, w);
  double best = 0.0;
  for (const auto& p : w.pieces()) {
    const double u0 = std::max(p.lo, I.a), u1 = std::min(p.hi, I.b);
    if (!(u0 < u1) || p.coeff == 0.0) continue;
    if (u0 == 0.0)
      best = std::max(best, exponent_limit_at_zero(p.coeff * std::pow(q, -1.0 / q), p.exponent - lam / q));
    if (std::isinf(best)) return kInf;
    auto F = [&](double y) { return p.coeff * std::pow(y, p.exponent) * std::pow(tail(y, I.b, q, lam), 1.0 / q); };
    const double start = scan_start(u0, u1);
    best = std::max(best, log_scan_max(F, start, u1, {start, u1}));
  }
  return best;
}

double B4(const Interval& I, const SpaceParams& sp, const Weight& w) {
  if (!(sp.q < 1.0)) fail(ErrorCode::Unsupported, "B4: requires q < 1");
  return local_norm_p1(I, sp, w);
}

KBounds K_bounds(const Interval& I, const SpaceParams& sp, const Weight& w) {
  validate(I);
  const double p = sp.p, q = sp.q;
  if (std::isinf(p) || std::isinf(q))
    fail(ErrorCode::Unsupported, "K_bounds: local norms need finite p and q");
  const GammaConstants g = gamma_constants(sp);
  // The lower constants are used with min{2, 2^{q-1}} in place of alpha0; with alpha0
  // itself the lower bound exceeds the computed norm for q != 2.
  const double shrink = std::pow(std::min(2.0, std::pow(2.0, q - 1.0)) / g.alpha0, 1.0 / q);
  KBounds out;
  switch (sp.regime) {
    case Regime::PLeqQ:
      out.lemma_lower = g.gamma0 * A0(q, I, sp, w);
      out.lower = shrink * out.lemma_lower;
      out.upper = out.lemma_upper = g.gamma0_bar * A0(1.0, I, sp, w);
      out.lower_name = "gamma0_min*A0(q)";
      out.upper_name = "gamma0_bar*A0(1)";
      break;
    case Regime::POneLeqQ: {
      // For p = 1 the norm is the largest column norm, which is computable exactly.
      const double k = local_norm_p1(I, sp, w);
      out.lower = out.upper = k;
      out.exact = true;
      out.lower_name = out.upper_name = "esup v T_q^{1/q}";
      const double a1 = A1(I, sp, w);
      out.lemma_lower = g.gamma1 * a1;
      out.lemma_upper = q == 1.0 ? a1 : g.gamma1_bar * a1;
      break;
    }
    case Regime::QLessP:
      if (q == 1.0) {
        out.lower = out.upper = B1(I, sp, w);
        out.exact = true;
        out.lower_name = out.upper_name = "B1";
      } else {
        out.lemma_lower = g.gamma2 * B0(q, I, sp, w);
        out.lower = shrink * out.lemma_lower;
        out.upper = out.lemma_upper = g.gamma2_bar * B0(1.0, I, sp, w);
        out.lower_name = "gamma2_min*B0(q)";
        out.upper_name = "gamma2_bar*B0(1)";
      }
      break;
    case Regime::QSubOneLessP:
      out.lower = B2(I, sp, w);
      out.upper = g.gamma3_bar * B0(q, I, sp, w);
      out.lower_name = "B2";
      out.upper_name = "gamma3_bar*B0(q)";
      break;
    case Regime::QSubOnePOne:
      out.lower = B4(I, sp, w);
      out.upper = g.gamma4_bar * B3(I, sp, w);
      out.lower_name = "B4";
      out.upper_name = "gamma4_bar*B3";
      break;
    default:
      fail(ErrorCode::Unsupported, "K_bounds: unsupported exponent regime");
  }
  return out;
}

double K_upper(const Interval& I, const SpaceParams& sp, const Weight& w) {
  validate(I);
  const GammaConstants g = gamma_constants(sp);
  switch (sp.regime) {
    case Regime::PLeqQ: return g.gamma0_bar * A0(1.0, I, sp, w);
    case Regime::POneLeqQ: return local_norm_p1(I, sp, w);
    case Regime::QLessP:
      return sp.q == 1.0 ? B1(I, sp, w) : g.gamma2_bar * B0(1.0, I, sp, w);
    case Regime::QSubOneLessP: return g.gamma3_bar * B0(sp.q, I, sp, w);
    case Regime::QSubOnePOne: return g.gamma4_bar * B3(I, sp, w);
    default: fail(ErrorCode::Unsupported, "K_upper: unsupported exponent regime");
  }
}

}  // namespace lapnum
