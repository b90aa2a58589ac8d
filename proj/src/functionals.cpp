#include "functionals.hpp"

#include <algorithm>
#include <cmath>

#include "lapnum/numerics.hpp"

namespace lapnum::detail {

namespace {

// t^alpha V^d computed in logs, with 0 * inf = 0.
double power_product(double t, double alpha, double V, double d) {
  if (V == 0.0) return 0.0;
  if (std::isinf(V)) return kInf;
  return std::exp(alpha * std::log(t) + d * std::log(V));
}

double segment_value(const Primitive::Segment& s, double t) {
  if (s.coeff == 0.0 || t <= s.lo) return s.base;
  return s.base + s.coeff * monomial_integral(s.exponent, s.lo, t);
}

// Limit of C t^e as t -> 0 (at_zero) or t -> inf, C > 0.
double power_limit(double C, double e, bool at_zero) {
  if (C == 0.0) return 0.0;
  if (e == 0.0) return C;
  const bool decays = at_zero ? e > 0.0 : e < 0.0;
  return decays ? 0.0 : kInf;
}

}  // namespace

Primitive::Primitive(const Weight& w, double rho, double a) : start_(a), rho_(rho) {
  if (!(a >= 0.0) || std::isinf(a)) fail(ErrorCode::InvalidArgument, "primitive: bad start point");
  const Weight u = w.pow(rho).restricted(a, kInf);
  double pos = a;
  double base = 0.0;
  for (const auto& p : u.pieces()) {
    if (p.lo > pos) {
      segs_.push_back({pos, p.lo, 0.0, 0.0, base});
      pos = p.lo;
    }
    if (std::isinf(p.coeff) || (p.lo == 0.0 && p.coeff > 0.0 && p.exponent <= -1.0)) {
      infinite_ = true;
      segs_.clear();
      segs_.push_back({a, kInf, 0.0, 0.0, kInf});
      return;
    }
    segs_.push_back({p.lo, p.hi, p.coeff, p.exponent, base});
    if (std::isinf(p.hi)) return;
    if (p.coeff > 0.0) base += p.coeff * monomial_integral(p.exponent, p.lo, p.hi);
    pos = p.hi;
  }
  segs_.push_back({pos, kInf, 0.0, 0.0, base});
}

double Primitive::operator()(double t) const {
  if (t <= start_) return 0.0;
  if (infinite_) return kInf;
  auto it = std::upper_bound(segs_.begin(), segs_.end(), t,
                             [](double x, const Segment& s) { return x < s.lo; });
  if (it == segs_.begin()) return 0.0;
  return segment_value(*std::prev(it), t);
}

double Primitive::total() const {
  const Segment& s = segs_.back();
  if (s.coeff == 0.0) return s.base;
  return s.base + s.coeff * monomial_integral(s.exponent, s.lo, kInf);
}

SupResult sup_power_primitive(const Primitive& V, double alpha, double d) {
  if (V.infinite()) return {kInf, V.start()};
  SupResult best{0.0, V.start()};
  auto consider = [&](double value, double t) {
    if (value > best.value) best = {value, t};
  };
  const Limits lim = limits_power_primitive(V, alpha, d);
  consider(lim.at_start, V.start());
  consider(lim.at_infinity, kInf);
  for (const auto& s : V.segments()) {
    if (s.lo > V.start()) consider(power_product(s.lo, alpha, s.base, d), s.lo);
    if (s.coeff == 0.0) continue;
    const double m = s.exponent + 1.0;
    double tc = std::nan("");
    if (m != 0.0) {
      const double B = s.coeff / m;
      const double A = s.base - (s.lo == 0.0 ? 0.0 : B * std::pow(s.lo, m));
      const double den = B * (alpha + d * m);
      if (den != 0.0) {
        const double tm = -alpha * A / den;
        if (tm > 0.0) tc = std::pow(tm, 1.0 / m);
      }
    } else if (alpha != 0.0) {
      tc = s.lo * std::exp(-(alpha * s.base + d * s.coeff) / (alpha * s.coeff));
    }
    if (tc > s.lo && tc < s.hi) consider(power_product(tc, alpha, segment_value(s, tc), d), tc);
  }
  return best;
}

Limits limits_power_primitive(const Primitive& V, double alpha, double d) {
  if (V.infinite()) return {kInf, kInf};
  Limits out;
  const auto& first = V.segments().front();
  if (V.start() == 0.0 && first.coeff > 0.0) {
    const double m = first.exponent + 1.0;
    out.at_start = power_limit(std::pow(first.coeff / m, d), alpha + d * m, true);
  }
  const auto& last = V.segments().back();
  if (last.coeff == 0.0) {
    out.at_infinity = power_limit(std::pow(last.base, d), alpha, false);
  } else {
    const double m = last.exponent + 1.0;
    if (m > 0.0) {
      out.at_infinity = power_limit(std::pow(last.coeff / m, d), alpha + d * m, false);
    } else if (m < 0.0) {
      const double vinf = last.base + last.coeff * std::pow(last.lo, m) / -m;
      out.at_infinity = power_limit(std::pow(vinf, d), alpha, false);
    } else {
      out.at_infinity = alpha < 0.0 ? 0.0 : kInf;
    }
  }
  return out;
}

double integral_power_primitive(const Primitive& V, double alpha, double g,
                                const Weight& w, std::optional<double> h) {
  const Weight one = Weight::power(1.0, 0.0);
  const Weight u = h ? w.pow(*h) : one;
  if (V.infinite()) return u.restricted(V.start(), kInf).is_zero() ? 0.0 : kInf;
  const QuadOptions opt{1e-11, 0.0, 2000};
  double total = 0.0;
  for (const auto& s : V.segments()) {
    for (const auto& up : u.pieces()) {
      const double s0 = std::max(s.lo, up.lo);
      const double s1 = std::min(s.hi, up.hi);
      if (!(s0 < s1) || up.coeff == 0.0) continue;
      const double beta = up.exponent;
      double part;
      if (s.coeff == 0.0) {
        if (s.base == 0.0) {
          if (g > 0.0) continue;
          if (g < 0.0) return kInf;
        }
        part = (g == 0.0 ? 1.0 : std::pow(s.base, g)) * up.coeff *
               monomial_integral(alpha + beta, s0, s1);
      } else if (s.lo == 0.0) {
        const double m = s.exponent + 1.0;
        part = std::pow(s.coeff / m, g) * up.coeff *
               monomial_integral(alpha + g * m + beta, s0, s1);
      } else {
        const double m = s.exponent + 1.0;
        if (std::isinf(s1)) {
          const double e = m > 0.0 ? alpha + g * m + beta : alpha + beta;
          if (e >= -1.0) return kInf;
        }
        if (s0 == V.start() && s.base == 0.0 && g <= -1.0) return kInf;
        auto f = [&](double t) {
          const double Vt = segment_value(s, t);
          if (Vt == 0.0) return 0.0;
          return up.coeff * std::exp((alpha + beta) * std::log(t) + g * std::log(Vt));
        };
        part = integrate(f, s0, s1, opt).value;
      }
      if (std::isinf(part)) return kInf;
      total += part;
    }
  }
  return total;
}

double weight_limit_at_zero(const Weight& w) {
  WeightPiece p;
  if (!w.leading_at_zero(p)) return 0.0;
  return power_limit(p.coeff, p.exponent, true);
}

double weight_limit_at_infinity(const Weight& w) {
  WeightPiece p;
  if (!w.leading_at_infinity(p)) return 0.0;
  return power_limit(p.coeff, p.exponent, false);
}

}  // namespace lapnum::detail
