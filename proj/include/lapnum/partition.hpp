#pragma once

#include <functional>
#include <vector>

#include "lapnum/kernel.hpp"
#include "lapnum/weight.hpp"

namespace lapnum {

enum class Orientation { LeftToRight, RightToLeft };

/// Splitting 0 = c_0 < c_1 < ... < c_{N+1} = inf of the half-line into
/// intervals I_n = (c_n, c_{n+1}) whose upper local-norm bound is at most epsilon.
struct Partition {
  double epsilon = 0.0;
  std::vector<double> points;
  std::vector<double> bounds;  // K_upper(I_n), one per interval
  int N = 0;
  bool surrogate = true;       // intervals chosen from the upper sandwich, not K itself
  Orientation orientation = Orientation::LeftToRight;
};

/// Greedy sweep: each new endpoint is the extreme point keeping K_upper <= epsilon,
/// located by bisection in log scale. Left to right for q >= 1, right to left for q < 1.
Partition split(double epsilon, const SpaceParams& params, const Weight& w);

/// P f(x) = sum_n e^{-x c_{n+1}^lambda} int_{I_n} f v, a rank <= N operator.
double apply_finite_rank(const Partition& part, const std::function<double(double)>& f, double x,
                         double lambda, const Weight& w);

/// Upper bound on a_{N+1}(L) implied by the partition.
double an_upper(const Partition& part, const SpaceParams& params);

struct AnRow {
  double epsilon = 0.0;
  int N = 0;
  int n = 1;
  double bound = 0.0;
};

/// One row per epsilon (grid strictly decreasing).
std::vector<AnRow> an_curve(const std::vector<double>& epsilon_grid, const SpaceParams& params,
                            const Weight& w);

}  // namespace lapnum
