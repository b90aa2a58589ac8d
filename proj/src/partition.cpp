#include "lapnum/partition.hpp"

#include <algorithm>
#include <cmath>

#include "lapnum/criteria.hpp"
#include "lapnum/localnorm.hpp"
#include "lapnum/numerics.hpp"

namespace lapnum {

namespace {

constexpr double kLogTol = 1e-8;
constexpr int kMaxIntervals = 100000;

// Bisection in log t between a point where `good` holds and one where it fails;
// returns the last point found on the good side.
double bisect_log(const std::function<bool(double)>& good, double at_good, double at_bad) {
  while (std::abs(std::log(at_bad / at_good)) > kLogTol) {
    const double mid = std::sqrt(at_good) * std::sqrt(at_bad);
    if (mid == at_good || mid == at_bad) break;
    (good(mid) ? at_good : at_bad) = mid;
  }
  return at_good;
}

double next_right(double c, double eps, const SpaceParams& sp, const Weight& w) {
  auto good = [&](double b) { return K_upper({c, b}, sp, w) <= eps; };
  double lo;
  if (c > 0.0) {
    lo = c * (1.0 + std::ldexp(1.0, -40));
  } else {
    lo = 1.0;
    while (!good(lo)) {
      lo *= 0.5;
      if (lo < std::ldexp(1.0, -1000))
        fail(ErrorCode::NotCompact, "partition: upper local bound does not vanish near 0");
    }
  }
  double hi = std::max(2.0 * lo, c > 0.0 ? 2.0 * c : 2.0);
  while (good(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > std::ldexp(1.0, 1000)) fail(ErrorCode::Internal, "partition: bracket search diverged");
  }
  return bisect_log(good, lo, hi);
}

double next_left(double c, double eps, const SpaceParams& sp, const Weight& w) {
  auto good = [&](double a) { return K_upper({a, c}, sp, w) <= eps; };
  double hi;
  if (std::isinf(c)) {
    hi = 1.0;
    while (!good(hi)) {
      hi *= 2.0;
      if (hi > std::ldexp(1.0, 1000))
        fail(ErrorCode::NotCompact, "partition: upper local bound does not vanish near infinity");
    }
  } else {
    hi = c * (1.0 - std::ldexp(1.0, -40));
  }
  double lo = std::min(0.5 * hi, std::isinf(c) ? 0.5 : 0.5 * c);
  while (good(lo)) {
    hi = lo;
    lo *= 0.5;
    if (lo < std::ldexp(1.0, -1000)) return 0.0;
  }
  return bisect_log(good, hi, lo);
}

}  // namespace

Partition split(double eps, const SpaceParams& sp, const Weight& w) {
  if (!(eps > 0.0) || std::isinf(eps)) fail(ErrorCode::InvalidArgument, "split: epsilon must be positive");
  if (std::isinf(sp.p) || std::isinf(sp.q))
    fail(ErrorCode::Unsupported, "split: local norms need finite p and q");
  if (norm_criterion(sp, w).compactness != Compactness::Compact)
    fail(ErrorCode::NotCompact, "split: operator is not compact for these exponents");

  Partition part;
  part.epsilon = eps;
  part.orientation = sp.q < 1.0 ? Orientation::RightToLeft : Orientation::LeftToRight;
  const double whole = K_upper({0.0, kInf}, sp, w);
  if (whole <= eps) {
    part.points = {0.0, kInf};
    part.bounds = {whole};
    return part;
  }
  std::vector<double> pts;
  if (part.orientation == Orientation::LeftToRight) {
    double c = 0.0;
    pts.push_back(c);
    while (K_upper({c, kInf}, sp, w) > eps) {
      c = next_right(c, eps, sp, w);
      pts.push_back(c);
      if (static_cast<int>(pts.size()) > kMaxIntervals) fail(ErrorCode::Internal, "split: too many intervals");
    }
    pts.push_back(kInf);
  } else {
    double c = kInf;
    pts.push_back(c);
    while (K_upper({0.0, c}, sp, w) > eps) {
      c = next_left(c, eps, sp, w);
      if (c == 0.0) break;
      pts.push_back(c);
      if (static_cast<int>(pts.size()) > kMaxIntervals) fail(ErrorCode::Internal, "split: too many intervals");
    }
    pts.push_back(0.0);
    std::reverse(pts.begin(), pts.end());
  }
  part.points = pts;
  part.N = static_cast<int>(pts.size()) - 2;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    part.bounds.push_back(K_upper({pts[i], pts[i + 1]}, sp, w));
  return part;
}

double apply_finite_rank(const Partition& part, const std::function<double(double)>& f, double x,
                         double lambda, const Weight& w) {
  double total = 0.0;
  for (std::size_t n = 0; n + 1 < part.points.size(); ++n) {
    const double a = part.points[n], b = part.points[n + 1];
    if (std::isinf(b)) continue;
    std::vector<double> breaks;
    for (double t : w.breakpoints())
      if (t > a && t < b) breaks.push_back(t);
    const double I = integrate_split([&](double y) { return f(y) * w(y); }, a, b, breaks).value;
    total += std::exp(-x * std::pow(b, lambda)) * I;
  }
  return total;
}

double an_upper(const Partition& part, const SpaceParams& sp) {
  const double n1 = part.N + 1.0, eps = part.epsilon;
  if (std::isinf(sp.p) || std::isinf(sp.q)) fail(ErrorCode::Unsupported, "an_upper: needs finite p and q");
  if (sp.q >= 1.0) return sp.p == 1.0 ? eps : eps * std::pow(n1, 1.0 / sp.p_conj);
  if (sp.p > 1.0) return eps * std::pow(n1, 1.0 / *sp.r);
  return eps * std::pow(n1, (1.0 - sp.q) / sp.q);
}

std::vector<AnRow> an_curve(const std::vector<double>& grid, const SpaceParams& sp, const Weight& w) {
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] < grid[i - 1])) fail(ErrorCode::InvalidArgument, "an_curve: epsilon grid must be strictly decreasing");
  std::vector<AnRow> rows;
  for (double eps : grid) {
    const Partition part = split(eps, sp, w);
    rows.push_back({eps, part.N, part.N + 1, an_upper(part, sp)});
  }
  return rows;
}

}  // namespace lapnum
