#include "lapnum/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace lapnum {

namespace {

constexpr int kGaussOrder = 8;

// Gauss-Legendre nodes/weights on [-1, 1] (Newton on the Legendre recurrence).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

// Log-spaced composite Gauss-Legendre rule on [lo, hi] with about `size` nodes,
// panels split at the given breakpoints and at equal steps in log t.
void log_grid(double lo, double hi, int size, const std::vector<double>& breaks,
              std::vector<double>& t, std::vector<double>& wt) {
  std::set<double> cuts{lo, hi};
  for (double b : breaks)
    if (b > lo && b < hi) cuts.insert(b);
  const int order = std::min(kGaussOrder, std::max(2, size / 4));
  const int panels = std::max(1, size / order);
  const double L = std::log(hi / lo);
  for (int i = 1; i < panels; ++i) cuts.insert(lo * std::exp(L * i / panels));
  // Keep the node count at `size` by merging the shortest panels if breakpoints added extra.
  std::vector<double> c(cuts.begin(), cuts.end());
  while (static_cast<int>(c.size() - 1) > panels) {
    std::size_t best = 1;
    double width = kInf;
    for (std::size_t i = 1; i + 1 < c.size(); ++i) {
      if (std::find(breaks.begin(), breaks.end(), c[i]) != breaks.end()) continue;
      const double wdt = std::log(c[i + 1] / c[i - 1]);
      if (wdt < width) {
        width = wdt;
        best = i;
      }
    }
    if (!std::isfinite(width)) break;
    c.erase(c.begin() + static_cast<std::ptrdiff_t>(best));
  }
  std::vector<double> gx, gw;
  gauss_legendre(order, gx, gw);
  t.clear();
  wt.clear();
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    const double a = std::log(c[i]), b = std::log(c[i + 1]);
    for (int j = 0; j < order; ++j) {
      const double u = 0.5 * (a + b) + 0.5 * (b - a) * gx[j];
      const double x = std::exp(u);
      t.push_back(x);
      wt.push_back(0.5 * (b - a) * gw[j] * x);
    }
  }
}

struct Window {
  double y_lo, y_hi, x_lo, x_hi;
};

Window choose_window(double lambda, const Weight& w, const GridSpec& g) {
  Window win{};
  const double start = w.support_start(), end = w.support_end();
  win.y_lo = g.y_lo > 0.0 ? g.y_lo : std::max(start, std::ldexp(1.0, -20));
  win.y_hi = g.y_hi > 0.0 ? g.y_hi : (std::isinf(end) || end <= 0.0 ? std::ldexp(1.0, 20) : end);
  if (!(win.y_lo < win.y_hi)) win.y_hi = 2.0 * win.y_lo;
  win.x_lo = g.x_lo > 0.0 ? g.x_lo : std::ldexp(1.0, -20) / std::pow(win.y_hi, lambda);
  win.x_hi = g.x_hi > 0.0 ? g.x_hi : 40.0 / std::pow(win.y_lo, lambda);
  return win;
}

// Hilbert-Schmidt mass of L outside window x window (upper bound).
double hs_truncation(double lambda, const Weight& w, const Window& win) {
  const Weight s = w.times_power(-lambda / 2.0);
  double tail = 0.5 * (s.power_integral(2.0, 0.0, win.y_lo) + s.power_integral(2.0, win.y_hi, kInf));
  const double inside = w.power_integral(2.0, win.y_lo, win.y_hi);
  tail += win.x_lo * inside;
  const double ylam = std::pow(win.y_lo, lambda);
  tail += std::exp(-2.0 * win.x_hi * ylam) / (2.0 * ylam) * inside;
  return std::sqrt(tail);
}

void scale_matrix(DiscretizedOperator& op) {
  op.matrix.resize(op.kernel.size());
  for (int i = 0; i < op.rows; ++i)
    for (int j = 0; j < op.cols; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * op.cols + j;
      op.matrix[idx] = std::sqrt(op.wx[i]) * op.kernel[idx] * std::sqrt(op.wy[j]);
    }
}

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double lq_norm(const Eigen::VectorXd& v, double q) {
  if (std::isinf(q)) return v.cwiseAbs().maxCoeff();
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v[i]), q);
  return std::pow(s, 1.0 / q);
}

}  // namespace

DiscretizedOperator discretize_kernel(double lambda, const Weight& w, const KernelFn& k,
                                      const GridSpec& grid, double hs_tail) {
  if (grid.size < 2) fail(ErrorCode::InvalidArgument, "discretize: grid size must be at least 2");
  const Window win = choose_window(lambda, w, grid);
  DiscretizedOperator op;
  log_grid(win.y_lo, win.y_hi, grid.size, w.breakpoints(), op.y, op.wy);
  log_grid(win.x_lo, win.x_hi, grid.size, {}, op.x, op.wx);
  op.rows = static_cast<int>(op.x.size());
  op.cols = static_cast<int>(op.y.size());
  op.kernel.assign(static_cast<std::size_t>(op.rows) * op.cols, 0.0);
  std::vector<double> vy(op.y.size());
  for (std::size_t j = 0; j < op.y.size(); ++j) vy[j] = w(op.y[j]);
  for (int i = 0; i < op.rows; ++i)
    for (int j = 0; j < op.cols; ++j)
      if (vy[j] != 0.0)
        op.kernel[static_cast<std::size_t>(i) * op.cols + j] = k(op.x[i], op.y[j]) * vy[j];
  scale_matrix(op);
  op.truncation_error = hs_truncation(lambda, w, win) + hs_tail;
  return op;
}

DiscretizedOperator discretize(const SpaceParams& sp, const Weight& w, const GridSpec& grid) {
  const double lam = sp.lambda;
  return discretize_kernel(lam, w, [lam](double x, double y) { return std::exp(-x * std::pow(y, lam)); },
                           grid, 0.0);
}

DiscretizedOperator discretize_local(const SpaceParams& sp, const Weight& w, double a, double b,
                                     const GridSpec& grid) {
  if (!(a >= 0.0 && a < b)) fail(ErrorCode::InvalidArgument, "discretize_local: need 0 <= a < b");
  const double lam = sp.lambda;
  const Weight wi = w.restricted(a, b);
  const double bl = std::isinf(b) ? kInf : std::pow(b, lam);
  auto k = [lam, bl](double x, double y) {
    const double e = std::exp(-x * std::pow(y, lam));
    return std::isinf(bl) ? e : e - std::exp(-x * bl);
  };
  return discretize_kernel(lam, wi, k, grid, 0.0);
}

DiscretizedOperator volterra_fixture(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "volterra_fixture: n must be positive");
  DiscretizedOperator op;
  const double h = 1.0 / n;
  for (int i = 0; i < n; ++i) {
    op.x.push_back((i + 0.5) * h);
    op.wx.push_back(h);
  }
  op.y = op.x;
  op.wy = op.wx;
  op.rows = op.cols = n;
  op.kernel.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) op.kernel[static_cast<std::size_t>(i) * n + j] = j == i ? 0.5 : 1.0;
  scale_matrix(op);
  return op;
}

std::vector<double> singular_values(const DiscretizedOperator& op, int count) {
  if (op.rows == 0 || op.cols == 0) return {};
  Eigen::Map<const Mat> M(op.matrix.data(), op.rows, op.cols);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(M), 0);
  const Eigen::VectorXd s = svd.singularValues();
  const int n = std::min<int>(count, static_cast<int>(s.size()));
  return std::vector<double>(s.data(), s.data() + n);
}

NormCertificate operator_norm_pq(const DiscretizedOperator& op, double p, double q, int restarts,
                                 std::uint64_t seed) {
  if (!(p >= 1.0)) fail(ErrorCode::InvalidArgument, "operator_norm_pq: p must be >= 1");
  if (!(q > 0.0)) fail(ErrorCode::InvalidArgument, "operator_norm_pq: q must be positive");
  NormCertificate cert;
  if (op.rows == 0 || op.cols == 0) return cert;

  // l^p -> l^q matrix: rows scaled by wx^{1/q}, columns by wy^{1/p'}.
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  const double inv_pc = std::isinf(p) ? 1.0 : 1.0 - 1.0 / p;
  Mat M(op.rows, op.cols);
  for (int i = 0; i < op.rows; ++i)
    for (int j = 0; j < op.cols; ++j)
      M(i, j) = std::pow(op.wx[i], inv_q) * op.kernel[static_cast<std::size_t>(i) * op.cols + j] *
                std::pow(op.wy[j], inv_pc);

  auto ratio = [&](const Eigen::VectorXd& f) {
    const double nf = lq_norm(f, p);
    return nf > 0.0 ? lq_norm(M * f, q) / nf : 0.0;
  };
  auto consider = [&](const Eigen::VectorXd& f) {
    const double r = ratio(f);
    if (r > cert.value) {
      cert.value = r;
      cert.argmax.assign(f.data(), f.data() + f.size());
    }
  };

  if (p == 1.0) {
    for (int j = 0; j < op.cols; ++j) consider(Eigen::VectorXd::Unit(op.cols, j));
  }
  if (std::isinf(p)) consider(Eigen::VectorXd::Ones(op.cols));
  if (std::isinf(q) && p > 1.0) {
    for (int i = 0; i < op.rows; ++i) {
      Eigen::VectorXd f = M.row(i).transpose();
      if (std::isinf(p))
        f = (f.array() > 0.0).cast<double>().matrix();
      else
        f = f.array().pow(1.0 / (p - 1.0)).matrix();
      consider(f);
    }
  }

  // Nonlinear power iteration on the nonnegative cone:
  // f <- (M^T (M f)^{q-1})^{p'-1}, normalized in l^p.
  if (p > 1.0 && !std::isinf(q)) {
    const double pc_minus_1 = std::isinf(p) ? 0.0 : 1.0 / (p - 1.0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    for (int r = 0; r <= restarts; ++r) {
      Eigen::VectorXd f(op.cols);
      if (r == 0) f.setOnes();
      else
        for (int j = 0; j < op.cols; ++j) f[j] = unif(rng);
      f /= lq_norm(f, p);
      double prev = 0.0;
      for (int it = 0; it < 2000; ++it) {
        ++cert.iterations;
        Eigen::VectorXd g = M * f;
        for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = g[i] > 0.0 ? std::pow(g[i], q - 1.0) : 0.0;
        Eigen::VectorXd h = M.transpose() * g;
        if (std::isinf(p)) {
          for (Eigen::Index j = 0; j < h.size(); ++j) h[j] = h[j] > 0.0 ? 1.0 : 0.0;
        } else {
          for (Eigen::Index j = 0; j < h.size(); ++j) h[j] = h[j] > 0.0 ? std::pow(h[j], pc_minus_1) : 0.0;
        }
        const double nh = lq_norm(h, p);
        if (!(nh > 0.0)) break;
        f = h / nh;
        const double val = ratio(f);
        consider(f);
        if (std::abs(val - prev) <= 1e-15 * val) break;
        prev = val;
      }
    }
  }
  return cert;
}

}  // namespace lapnum
