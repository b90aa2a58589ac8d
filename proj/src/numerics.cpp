#include "lapnum/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

#include "lapnum/error.hpp"

namespace lapnum {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo, hi, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

class Kronrod {
 public:
  explicit Kronrod(const std::function<double(double)>& g) : g_(g) {}

  Segment eval(double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    const double fc = sample(c);
    double k = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
      const double f1 = sample(c - h * kXgk[j]);
      const double f2 = sample(c + h * kXgk[j]);
      k += kWgk[j] * (f1 + f2);
      if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    return {lo, hi, k * h, std::abs((k - gauss) * h)};
  }

  int evaluations = 0;
  int nonfinite = 0;

 private:
  double sample(double s) {
    ++evaluations;
    const double v = g_(s);
    if (!std::isfinite(v)) {
      ++nonfinite;
      return 0.0;
    }
    return v;
  }
  const std::function<double(double)>& g_;
};

// Adaptive bisection driven by the largest local error.
QuadResult adapt(const std::function<double(double)>& g, double lo, double hi, int initial,
                 const QuadOptions& opt) {
  Kronrod kr(g);
  std::priority_queue<Segment> heap;
  double total = 0.0, err = 0.0;
  for (int i = 0; i < initial; ++i) {
    const double a = lo + (hi - lo) * i / initial;
    const double b = i + 1 == initial ? hi : lo + (hi - lo) * (i + 1) / initial;
    auto s = kr.eval(a, b);
    total += s.value;
    err += s.error;
    heap.push(s);
  }
  QuadResult res;
  int splits = 0;
  while (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (splits >= opt.max_subdivisions) {
      res.converged = false;
      break;
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(worst.lo < mid && mid < worst.hi)) {
      res.converged = false;
      heap.push(worst);
      break;
    }
    auto left = kr.eval(worst.lo, mid);
    auto right = kr.eval(mid, worst.hi);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  // Recompute sums to shed accumulated cancellation from the running totals.
  total = 0.0;
  err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  res.value = total;
  res.abs_error = err;
  res.evaluations = kr.evaluations;
  res.nonfinite = kr.nonfinite;
  return res;
}

// int_{-inf}^{U} h(u) du with u = U - s/(1-s), s in (0, 1).
QuadResult half_line(const std::function<double(double)>& h, double upper,
                     const QuadOptions& opt) {
  auto g = [&](double s) {
    const double om = 1.0 - s;
    if (om <= 0.0) return 0.0;
    const double u = upper - s / om;
    return h(u) / (om * om);
  };
  return adapt(g, 0.0, 1.0, 8, opt);
}

// int_{-inf}^{inf} h(u) du with u = s/(1-s^2), s in (-1, 1).
QuadResult full_line(const std::function<double(double)>& h, const QuadOptions& opt) {
  auto g = [&](double s) {
    const double om = 1.0 - s * s;
    if (om <= 0.0) return 0.0;
    const double u = s / om;
    return h(u) * (1.0 + s * s) / (om * om);
  };
  return adapt(g, -1.0, 1.0, 16, opt);
}

void accumulate(QuadResult& into, const QuadResult& part) {
  into.value += part.value;
  into.abs_error += part.abs_error;
  into.evaluations += part.evaluations;
  into.nonfinite += part.nonfinite;
  into.converged = into.converged && part.converged;
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt) {
  if (!(a >= 0.0) || !(a < b) || std::isinf(a))
    fail(ErrorCode::InvalidArgument, "integrate: need 0 <= a < b");
  // Offsets below this underflow relative to a and carry no mass.
  auto from_left = [&](double u) {
    const double e = std::exp(u);
    if (e == 0.0 || std::isinf(e)) return 0.0;
    const double t = a + e;
    if (t == a) return 0.0;
    return f(t) * e;
  };
  if (std::isinf(b)) return full_line(from_left, opt);

  const double mid = 0.5 * (a + b);
  auto from_right = [&](double u) {
    const double e = std::exp(u);
    if (e == 0.0) return 0.0;
    const double t = b - e;
    if (t == b) return 0.0;
    return f(t) * e;
  };
  QuadResult res = half_line(from_left, std::log(mid - a), opt);
  accumulate(res, half_line(from_right, std::log(b - mid), opt));
  return res;
}

QuadResult integrate_split(const std::function<double(double)>& f, double a, double b,
                           const std::vector<double>& breaks, const QuadOptions& opt) {
  QuadResult res;
  res.value = 0.0;
  double lo = a;
  for (double x : breaks) {
    if (!(x > lo) || !(x < b)) continue;
    accumulate(res, integrate(f, lo, x, opt));
    lo = x;
  }
  accumulate(res, integrate(f, lo, b, opt));
  return res;
}

MaxResult maximize_log(const std::function<double(double)>& f, double lo, double hi,
                       int samples, double log_tol) {
  if (!(0.0 < lo && lo < hi && std::isfinite(hi)))
    fail(ErrorCode::InvalidArgument, "maximize_log: need 0 < lo < hi < inf");
  const double ulo = std::log(lo), uhi = std::log(hi);
  samples = std::max(samples, 3);
  std::vector<double> us(samples), vals(samples);
  int best = 0;
  for (int i = 0; i < samples; ++i) {
    us[i] = i + 1 == samples ? uhi : ulo + (uhi - ulo) * i / (samples - 1);
    const double t = i == 0 ? lo : (i + 1 == samples ? hi : std::exp(us[i]));
    vals[i] = f(t);
    if (!(vals[i] <= vals[best])) best = i;
  }
  MaxResult res{best == 0 ? lo : (best + 1 == samples ? hi : std::exp(us[best])), vals[best]};
  double a = us[std::max(best - 1, 0)];
  double b = us[std::min(best + 1, samples - 1)];
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = f(std::exp(c)), fd = f(std::exp(d));
  while (b - a > log_tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(std::exp(d));
    }
  }
  if (fc > res.value) res = {std::exp(c), fc};
  if (fd > res.value) res = {std::exp(d), fd};
  return res;
}

double bisect_log_last_true(const std::function<bool(double)>& pred, double lo, double hi,
                            double log_tol) {
  if (!pred(lo)) return lo;
  if (pred(hi)) return hi;
  double a = std::log(lo), b = std::log(hi);
  while (b - a > log_tol) {
    const double m = 0.5 * (a + b);
    if (pred(std::exp(m)))
      a = m;
    else
      b = m;
  }
  return std::exp(a);
}

}  // namespace lapnum
