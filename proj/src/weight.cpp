#include "lapnum/weight.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lapnum {

namespace {

bool nonempty(const WeightPiece& p) { return p.coeff > 0.0 && p.lo < p.hi; }

// c * y^beta with the convention 0 * anything = 0.
double piece_value(const WeightPiece& p, double y) {
  if (p.coeff == 0.0) return 0.0;
  if (p.exponent == 0.0) return p.coeff;
  return p.coeff * std::pow(y, p.exponent);
}

}  // namespace

double monomial_integral(double e, double u, double w) {
  if (!(u < w)) return 0.0;
  const double m = e + 1.0;
  if (u == 0.0) {
    if (m <= 0.0 || std::isinf(w)) return kInf;
    return std::pow(w, m) / m;
  }
  if (std::isinf(w)) {
    if (m >= 0.0) return kInf;
    return std::pow(u, m) / -m;
  }
  const double log_ratio = std::log(w / u);
  if (m == 0.0) return log_ratio;
  const double x = m * log_ratio;
  // u^m (e^{x} - 1) / m, written to stay accurate when w is close to u.
  return std::pow(u, m) * log_ratio * (std::abs(x) < 1e-300 ? 1.0 : std::expm1(x) / x);
}

Weight::Weight(std::vector<WeightPiece> pieces) : pieces_(std::move(pieces)) {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    std::ostringstream where;
    where << "weight piece " << i << " [" << p.lo << ", " << p.hi << ")";
    if (!(p.lo >= 0.0) || std::isinf(p.lo))
      fail(ErrorCode::InvalidArgument, where.str() + ": lower end must be finite and >= 0");
    if (!(p.lo < p.hi))
      fail(ErrorCode::InvalidArgument, where.str() + ": empty or reversed interval");
    if (!(p.coeff >= 0.0))
      fail(ErrorCode::InvalidArgument, where.str() + ": negative coefficient");
    if (!std::isfinite(p.exponent))
      fail(ErrorCode::InvalidArgument, where.str() + ": exponent must be finite");
    if (i > 0 && pieces_[i - 1].hi > p.lo)
      fail(ErrorCode::InvalidArgument, where.str() + ": pieces overlap or are unordered");
  }
}

Weight Weight::power(double coeff, double exponent, double lo, double hi) {
  return Weight({{lo, hi, coeff, exponent}});
}

bool Weight::is_zero() const noexcept {
  return std::none_of(pieces_.begin(), pieces_.end(), nonempty);
}

void Weight::require_locally_integrable() const {
  for (const auto& p : pieces_) {
    if (!nonempty(p)) continue;
    if (std::isinf(p.coeff))
      fail(ErrorCode::InvalidArgument, "weight coefficient must be finite");
    if (p.lo == 0.0 && p.exponent <= -1.0)
      fail(ErrorCode::InvalidArgument,
           "weight is not locally integrable at 0 (exponent <= -1 on a piece touching 0)");
  }
}

double Weight::eval(double y) const {
  for (const auto& p : pieces_)
    if (p.lo <= y && y < p.hi) return piece_value(p, y);
  return 0.0;
}

double Weight::power_integral(double rho, double a, double b) const {
  if (!(rho > 0.0)) fail(ErrorCode::InvalidArgument, "power_integral: rho must be > 0");
  if (!(a >= 0.0) || !(a < b))
    fail(ErrorCode::InvalidArgument, "power_integral: need 0 <= a < b");
  double total = 0.0;
  for (const auto& p : pieces_) {
    const double u = std::max(a, p.lo);
    const double w = std::min(b, p.hi);
    if (!(u < w) || p.coeff == 0.0) continue;
    if (std::isinf(p.coeff)) return kInf;
    const double part = monomial_integral(rho * p.exponent, u, w);
    if (std::isinf(part)) return kInf;
    total += std::pow(p.coeff, rho) * part;
  }
  return total;
}

double Weight::esup(double a, double b) const {
  if (!(a >= 0.0) || !(a < b)) fail(ErrorCode::InvalidArgument, "esup: need 0 <= a < b");
  double best = 0.0;
  for (const auto& p : pieces_) {
    const double u = std::max(a, p.lo);
    const double w = std::min(b, p.hi);
    if (!(u < w) || p.coeff == 0.0) continue;
    double s;
    if (p.exponent > 0.0)
      s = std::isinf(w) ? kInf : p.coeff * std::pow(w, p.exponent);
    else if (p.exponent < 0.0)
      s = u == 0.0 ? kInf : p.coeff * std::pow(u, p.exponent);
    else
      s = p.coeff;
    best = std::max(best, s);
  }
  return best;
}

double Weight::usc_value(double t) const {
  double best = 0.0;
  for (const auto& p : pieces_) {
    const bool left = p.lo < t && t <= p.hi;
    const bool right = p.lo <= t && t < p.hi;
    if (left || right) best = std::max(best, piece_value(p, t));
  }
  return best;
}

Weight Weight::pow(double rho) const {
  auto out = pieces_;
  for (auto& p : out) {
    p.coeff = p.coeff == 0.0 ? 0.0 : std::pow(p.coeff, rho);
    p.exponent *= rho;
  }
  return Weight(std::move(out));
}

Weight Weight::times_power(double gamma) const {
  auto out = pieces_;
  for (auto& p : out) p.exponent += gamma;
  return Weight(std::move(out));
}

Weight Weight::scaled(double c) const {
  if (!(c >= 0.0)) fail(ErrorCode::InvalidArgument, "scaled: factor must be >= 0");
  auto out = pieces_;
  for (auto& p : out) p.coeff = (p.coeff == 0.0 || c == 0.0) ? 0.0 : p.coeff * c;
  return Weight(std::move(out));
}

Weight Weight::restricted(double a, double b) const {
  std::vector<WeightPiece> out;
  for (auto p : pieces_) {
    p.lo = std::max(p.lo, a);
    p.hi = std::min(p.hi, b);
    if (p.lo < p.hi) out.push_back(p);
  }
  return Weight(std::move(out));
}

Weight Weight::running_esup(double a) const {
  std::vector<WeightPiece> out;
  double running = 0.0;
  double cursor = a;
  auto push_const = [&](double lo, double hi) {
    if (running > 0.0 && lo < hi) out.push_back({lo, hi, running, 0.0});
  };
  for (const auto& p : pieces_) {
    const double lo = std::max(p.lo, a);
    const double hi = p.hi;
    if (!(lo < hi)) continue;
    push_const(cursor, lo);
    if (p.coeff == 0.0) {
      push_const(lo, hi);
    } else if (p.exponent > 0.0) {
      const double start = piece_value(p, lo);
      double from = lo;
      if (running > start) {
        from = std::pow(running / p.coeff, 1.0 / p.exponent);
        if (from >= hi) {
          push_const(lo, hi);
          cursor = hi;
          continue;
        }
        push_const(lo, from);
      }
      out.push_back({from, hi, p.coeff, p.exponent});
      running = std::isinf(hi) ? kInf : piece_value(p, hi);
    } else if (p.exponent == 0.0) {
      running = std::max(running, p.coeff);
      push_const(lo, hi);
    } else {
      running = std::max(running, lo == 0.0 ? kInf : piece_value(p, lo));
      push_const(lo, hi);
    }
    cursor = hi;
    if (std::isinf(running)) {
      push_const(cursor, kInf);
      return Weight(std::move(out));
    }
  }
  push_const(cursor, kInf);
  return Weight(std::move(out));
}

std::vector<double> Weight::breakpoints() const {
  std::vector<double> pts;
  for (const auto& p : pieces_) {
    if (!nonempty(p)) continue;
    if (p.lo > 0.0) pts.push_back(p.lo);
    if (std::isfinite(p.hi)) pts.push_back(p.hi);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double Weight::support_start() const {
  for (const auto& p : pieces_)
    if (nonempty(p)) return p.lo;
  return 0.0;
}

double Weight::support_end() const {
  for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it)
    if (nonempty(*it)) return it->hi;
  return 0.0;
}

bool Weight::leading_at_zero(WeightPiece& out) const {
  for (const auto& p : pieces_) {
    if (!nonempty(p)) continue;
    if (p.lo > 0.0) return false;
    out = p;
    return true;
  }
  return false;
}

bool Weight::leading_at_infinity(WeightPiece& out) const {
  for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
    if (!nonempty(*it)) continue;
    if (!std::isinf(it->hi)) return false;
    out = *it;
    return true;
  }
  return false;
}

}  // namespace lapnum
