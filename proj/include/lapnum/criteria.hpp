#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lapnum/kernel.hpp"
#include "lapnum/weight.hpp"

namespace lapnum {

enum class Decision { Bounded, Unbounded, UndecidedOneSided };
enum class Compactness { Compact, NotCompact, NotApplicable, Undecided };

std::string to_string(Decision d);
std::string to_string(Compactness c);

/// Two-sided estimate of the L^p -> L^q norm from one criterion quantity.
///
/// In the one-sided regimes the upper bound comes from `quantity_name` and the
/// lower bound from `secondary_name`; each constant multiplies its own
/// quantity. An unavailable constant is reported as 0 (lower) or inf (upper).
struct BoundReport {
  std::string quantity_name;
  double value = 0.0;
  double lower_const = 0.0;
  double upper_const = kInf;
  double lower_bound = 0.0;
  double upper_bound = kInf;
  Decision decision = Decision::Bounded;
  Compactness compactness = Compactness::NotApplicable;
  std::string case_tag;  // "i" .. "vii"

  std::string secondary_name;  // empty unless the lower bound uses another quantity
  double secondary_value = 0.0;
  double witness = 0.0;        // argmax of the sup defining `value`, when there is one
  std::string note;
};

BoundReport norm_criterion(const SpaceParams& params, const Weight& w);

enum class CompactnessVerdict { Compact, NotCompact, EquivalentToBoundedness, NeverCompact };
std::string to_string(CompactnessVerdict c);

/// Compactness from the limits of the criterion function at 0 and infinity
/// (p <= q), or the structural answer for q < p and for p = 1, q = inf.
CompactnessVerdict compactness_test(const SpaceParams& params, const Weight& w);

/// X_alpha = (int_0^inf x^{-(lambda alpha/2 + 1)} (int_0^x v^2)^{alpha/2} dx)^{1/alpha}.
double schatten_X_alpha(double alpha, double lambda, const Weight& w);

/// Exact Hilbert-Schmidt norm (int v^2(y) / (2 y^lambda) dy)^{1/2}.
double hilbert_schmidt_exact(double lambda, const Weight& w);

struct RemarkCheck {
  double alpha = 2.0;
  int k_lo = 0, k_hi = 0;
  std::vector<std::pair<int, double>> tau;  // (k, tau_k) over the range
  double tau_tail = 0.0;                    // sum of tau_k^alpha outside the range
  double rhs = 0.0;                         // (1/2) sum tau_k^alpha
  double lhs_oracle = 0.0;                  // sum of a_n^alpha from the discretized operator
  double lhs_exact = -1.0;                  // Hilbert-Schmidt closed form when alpha = 2, else -1
  double inner_product_sum = 0.0;           // sum |<L f_k, g_k>|^alpha with unit-norm g_k
  double oracle_truncation_error = 0.0;
  bool holds = false;
};

/// Checks sum_n a_n^alpha >= (1/2) sum_k tau_k^alpha, tau_k = 2^{-lambda k/2} |v|_{L^2(Delta_k)},
/// with a_n from the discretized operator (`oracle_size` nodes per axis).
RemarkCheck remark_lower_check(double alpha, double lambda, const Weight& w, int k_lo, int k_hi,
                               int oracle_size = 512);

}  // namespace lapnum
