#include "lapnum/kernel.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <vector>

#include "lapnum/numerics.hpp"

namespace lapnum {

std::string regime_tag(Regime r) {
  switch (r) {
    case Regime::PLeqQ: return "i";
    case Regime::QLessP: return "ii";
    case Regime::QSubOneLessP: return "iii";
    case Regime::QSubOnePOne: return "iv";
    case Regime::POneLeqQ: return "v";
    case Regime::PInfinite: return "vi";
    case Regime::QInfinite: return "vii";
  }
  return "?";
}

SpaceParams derived_params(double p, double q, double lambda) {
  if (!(lambda > 0.0) || std::isinf(lambda))
    fail(ErrorCode::InvalidArgument, "lambda must be a finite positive number");
  if (!(p >= 1.0)) fail(ErrorCode::InvalidArgument, "p must lie in [1, inf]");
  if (!(q > 0.0)) fail(ErrorCode::InvalidArgument, "q must lie in (0, inf]");

  SpaceParams s;
  s.p = p;
  s.q = q;
  s.lambda = lambda;
  s.p_conj = p == 1.0 ? kInf : (std::isinf(p) ? 1.0 : p / (p - 1.0));
  s.q_conj = q == 1.0 ? kInf : (std::isinf(q) ? 1.0 : q / (q - 1.0));
  if (q < p) s.r = std::isinf(p) ? q : p * q / (p - q);
  if (std::isfinite(q)) s.theta = std::isinf(s.p_conj) ? q : s.p_conj * q / (s.p_conj + q);
  s.delta = q >= 1.0 ? 1.0 : q;

  if (std::isinf(q))
    s.regime = Regime::QInfinite;
  else if (std::isinf(p))
    s.regime = Regime::PInfinite;
  else if (p == 1.0)
    s.regime = q >= 1.0 ? Regime::POneLeqQ : Regime::QSubOnePOne;
  else if (p <= q)
    s.regime = Regime::PLeqQ;
  else
    s.regime = q >= 1.0 ? Regime::QLessP : Regime::QSubOneLessP;
  return s;
}

namespace {

void check_tail_args(double z, double b, double delta, double lambda) {
  if (!(z > 0.0) || !(z < b)) {
    std::ostringstream os;
    os << "tail_integral: need 0 < z < b (z=" << z << ", b=" << b << ")";
    fail(ErrorCode::InvalidArgument, os.str());
  }
  if (!(delta > 0.0)) fail(ErrorCode::InvalidArgument, "tail_integral: delta must be > 0");
  if (!(lambda > 0.0)) fail(ErrorCode::InvalidArgument, "tail_integral: lambda must be > 0");
}

bool small_integer(double delta) {
  return delta == std::floor(delta) && delta >= 1.0 && delta <= 64.0;
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// R - 1 where R = (b/z)^lambda, computed without cancellation.
double ratio_minus_one(double z, double b, double lambda) {
  return std::expm1(lambda * std::log(b / z));
}

const QuadOptions kTailQuad{1e-13, 0.0, 4000};

// G(R) = int (e^{-y} - e^{-yR})^delta dy and D(R) = int y e^{-delta y} (1 - e^{-y(R-1)})^{delta-1} dy.
double tail_G(double rm1, double delta) {
  auto g = [&](double y) { return std::exp(-delta * y) * std::pow(-std::expm1(-y * rm1), delta); };
  return integrate(g, 0.0, kInf, kTailQuad).value;
}

double tail_D(double rm1, double delta) {
  auto g = [&](double y) { return y * std::exp(-delta * y) * std::pow(-std::expm1(-y * rm1), delta - 1.0); };
  return integrate(g, 0.0, kInf, kTailQuad).value;
}

// Chebyshev fits in s = 1 - 1/R of G / s^delta and D / s^{delta-1}; both are
// smooth on [0, 1], so a fixed degree reaches near machine precision.
struct TailTable {
  static constexpr int kNodes = 96;
  std::vector<double> cg, cd;
  bool usable = false;

  explicit TailTable(double delta) {
    std::vector<double> hg(kNodes), hd(kNodes), x(kNodes);
    for (int k = 0; k < kNodes; ++k) {
      x[k] = std::cos(M_PI * (k + 0.5) / kNodes);
      const double s = 0.5 * (x[k] + 1.0);
      const double rm1 = s / (1.0 - s);
      hg[k] = tail_G(rm1, delta) / std::pow(s, delta);
      hd[k] = tail_D(rm1, delta) / std::pow(s, delta - 1.0);
    }
    cg = coefficients(x, hg);
    cd = coefficients(x, hd);
    const double tol = 1e-14;
    usable = std::abs(cg.back()) < tol * std::abs(cg.front()) && std::abs(cd.back()) < tol * std::abs(cd.front());
  }

  static std::vector<double> coefficients(const std::vector<double>& x, const std::vector<double>& f) {
    const int n = static_cast<int>(x.size());
    std::vector<double> c(n, 0.0);
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += f[k] * std::cos(j * std::acos(x[k]));
      c[j] = (j == 0 ? 1.0 : 2.0) * acc / n;
    }
    return c;
  }

  static double clenshaw(const std::vector<double>& c, double x) {
    double b1 = 0.0, b2 = 0.0;
    for (int j = static_cast<int>(c.size()) - 1; j >= 1; --j) {
      const double b0 = 2.0 * x * b1 - b2 + c[j];
      b2 = b1;
      b1 = b0;
    }
    return x * b1 - b2 + c[0];
  }
};

std::shared_ptr<const TailTable> tail_table(double delta) {
  static std::mutex mu;
  static std::map<double, std::shared_ptr<const TailTable>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(delta);
    if (it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const TailTable>(delta);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(delta, table).first->second;
}

// s = 1 - 1/R = rm1 / (1 + rm1), accurate for small and large rm1.
double table_s(double rm1) { return std::isinf(rm1) ? 1.0 : rm1 / (1.0 + rm1); }

}  // namespace

double tail_integral(double z, double b, double delta, double lambda) {
  check_tail_args(z, b, delta, lambda);
  const double zl = std::pow(z, lambda);
  if (std::isinf(b)) return 1.0 / (delta * zl);
  const double rm1 = ratio_minus_one(z, b, lambda);
  if (delta == 1.0) return -std::expm1(-lambda * std::log(b / z)) / zl;

  if (small_integer(delta)) {
    const int n = static_cast<int>(delta);
    const double bl = zl * (1.0 + rm1);
    double sum = 0.0, mag = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double term = binomial(n, j) / ((n - j) * zl + j * bl);
      sum += (j % 2 ? -term : term);
      mag += term;
    }
    // Alternating sums lose everything when b is close to z; use quadrature there.
    if (sum > 0.0 && mag / sum < 1e5) return sum;
  }
  // Normalised by y = x z^lambda: (1/z^lambda) int (e^{-y} - e^{-y R})^delta dy.
  const auto table = tail_table(delta);
  if (table->usable) {
    const double s = table_s(rm1);
    return TailTable::clenshaw(table->cg, 2.0 * s - 1.0) * std::pow(s, delta) / zl;
  }
  return tail_G(rm1, delta) / zl;
}

double tail_integral_density(double z, double b, double delta, double lambda) {
  check_tail_args(z, b, delta, lambda);
  const double zl = std::pow(z, lambda);
  if (std::isinf(b)) return lambda / (delta * z * zl);
  if (delta == 1.0) return lambda / (z * zl);
  const double rm1 = ratio_minus_one(z, b, lambda);
  const double scale = lambda * zl / z;  // lambda z^{lambda-1}

  if (small_integer(delta)) {
    const int n = static_cast<int>(delta);
    const double bl = zl * (1.0 + rm1);
    double sum = 0.0, mag = 0.0;
    for (int j = 0; j < n; ++j) {
      const double den = (n - j) * zl + j * bl;
      const double term = binomial(n, j) * (n - j) / (den * den);
      sum += (j % 2 ? -term : term);
      mag += term;
    }
    if (sum > 0.0 && mag / sum < 1e5) return scale * sum;
  }
  // lambda z^{lambda-1} delta z^{-2 lambda} int y e^{-y} (e^{-y} - e^{-y R})^{delta-1} dy
  const auto table = tail_table(delta);
  double D;
  if (table->usable) {
    const double s = table_s(rm1);
    D = TailTable::clenshaw(table->cd, 2.0 * s - 1.0) * std::pow(s, delta - 1.0);
  } else {
    D = tail_D(rm1, delta);
  }
  return scale * delta * D / (zl * zl);
}

double tail_integral_lower_c1(double lambda, double lambda0, double delta) {
  if (!(lambda > 0.0)) fail(ErrorCode::InvalidArgument, "C1: lambda must be > 0");
  if (!(lambda0 > 0.0 && lambda0 < lambda))
    fail(ErrorCode::InvalidArgument, "C1: lambda0 must lie in (0, lambda)");
  if (!(delta > 0.0)) fail(ErrorCode::InvalidArgument, "C1: delta must be > 0");
  const double gap = std::exp(-1.0) - std::exp(-std::exp2(lambda0));
  return std::pow(gap, delta) * (1.0 - std::exp2(lambda0 - lambda));
}

double tail_integral_lower_c1_best(double lambda, double delta) {
  double best = 0.0;
  for (int i = 0; i < 32; ++i)
    best = std::max(best, tail_integral_lower_c1(lambda, lambda * (i + 0.5) / 32.0, delta));
  return best;
}

}  // namespace lapnum
