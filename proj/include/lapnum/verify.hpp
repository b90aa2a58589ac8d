#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lapnum {

/// Outcome of one invariant check. Everything here is deterministic for a
/// given seed, so reports built from it are reproducible byte for byte.
struct CheckResult {
  std::string id;
  std::string description;
  bool passed = false;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> table_columns;
  std::vector<std::vector<double>> table;
  std::string note;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  int oracle_size = 512;
  int lemma_samples = 1000;
};

// Fixture W1 is v(y) = y on (0, 1), lambda = 1.
CheckResult check_hilbert_schmidt(const SuiteOptions& opt);
CheckResult check_norm_sandwich(const SuiteOptions& opt);
CheckResult check_exact_q1(const SuiteOptions& opt);
CheckResult check_rank_bound(const SuiteOptions& opt);
CheckResult check_lambda_J(const SuiteOptions& opt);
CheckResult check_remark_lower(const SuiteOptions& opt);
CheckResult check_asymptotic_envelope(const SuiteOptions& opt);
CheckResult check_dyadic_lemmas(const SuiteOptions& opt);
CheckResult check_kernel_closed_forms(const SuiteOptions& opt);
CheckResult check_homogeneity(const SuiteOptions& opt);
CheckResult check_J2_X2(const SuiteOptions& opt);

/// Every check above, in a fixed order.
std::vector<CheckResult> run_invariant_suite(const SuiteOptions& opt);

}  // namespace lapnum
