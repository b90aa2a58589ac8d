#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lapnum/kernel.hpp"
#include "lapnum/weight.hpp"

namespace lapnum {

// Node budget and truncation window of a discretization. Zero window ends
// are chosen automatically from the weight's support and lambda.
struct GridSpec {
  int size = 256;  // nodes per axis
  double y_lo = 0.0, y_hi = 0.0;
  double x_lo = 0.0, x_hi = 0.0;
};

/// Nystrom discretization of an integral operator with kernel k(x, y) v(y).
///
/// `matrix` (row-major, rows = x nodes) uses the symmetric scaling
/// sqrt(wx_i) k(x_i, y_j) v(y_j) sqrt(wy_j), so its singular values approximate
/// those of the operator on L^2. `kernel` keeps the unscaled k(x_i, y_j) v(y_j)
/// for other (p, q).
struct DiscretizedOperator {
  std::vector<double> x, wx, y, wy;
  std::vector<double> kernel;
  std::vector<double> matrix;
  int rows = 0, cols = 0;
  double truncation_error = 0.0;  // Hilbert-Schmidt bound on the discarded part
};

using KernelFn = std::function<double(double x, double y)>;

/// Discretizes L f(x) = int e^{-x y^lambda} f(y) v(y) dy.
DiscretizedOperator discretize(const SpaceParams& params, const Weight& w, const GridSpec& grid);

/// Discretizes f -> int k(x, y) f(y) v(y) dy with the same grids as discretize().
/// `hs_tail` is added to the truncation error as provided by the caller.
DiscretizedOperator discretize_kernel(double lambda, const Weight& w, const KernelFn& k,
                                      const GridSpec& grid, double hs_tail);

/// Local operator on I = (a, b): kernel (e^{-x y^lambda} - e^{-x b^lambda}) on y in I
/// (no subtraction when b = inf).
DiscretizedOperator discretize_local(const SpaceParams& params, const Weight& w, double a,
                                     double b, const GridSpec& grid);

/// Volterra operator f -> int_0^x f on (0, 1), midpoint rule with n cells.
DiscretizedOperator volterra_fixture(int n);

/// Largest `count` singular values of op.matrix, nonincreasing (dense SVD).
std::vector<double> singular_values(const DiscretizedOperator& op, int count);

struct NormCertificate {
  double value = 0.0;  // lower bound on the discretized l^p -> l^q norm
  std::vector<double> argmax;
  int iterations = 0;
};

/// Lower bound on the l^p -> l^q norm of the discretized operator (p in [1, inf],
/// q in (0, inf]). Nonnegative power iteration with seeded random restarts plus
/// exact candidates (columns for p = 1, all-ones for p = inf, rows for q = inf).
NormCertificate operator_norm_pq(const DiscretizedOperator& op, double p, double q,
                                 int restarts = 4, std::uint64_t seed = 1);

}  // namespace lapnum
