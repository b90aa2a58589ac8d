// Acceptance run: one PASS/FAIL line per criterion, with wall time.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lapnum/criteria.hpp"
#include "lapnum/lapnum.h"
#include "lapnum/schatten.hpp"
#include "lapnum/verify.hpp"

using namespace lapnum;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

double metric(const CheckResult& r, const std::string& name) {
  for (const auto& [k, v] : r.metrics)
    if (k == name) return v;
  return std::nan("");
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

const SuiteOptions kOpt{};

Outcome hilbert_schmidt() {
  const CheckResult r = check_hilbert_schmidt(kOpt);
  return {r.passed, "oracle sum a^2 = " + fmt("%.8f", metric(r, "oracle_sum_a2")) + ", exact " +
                        fmt("%.12f", metric(r, "exact")) + ", (lambda/2) X_2^2 " +
                        fmt("%.12f", metric(r, "half_lambda_X2_squared"))};
}

Outcome sandwich() {
  const CheckResult r = check_norm_sandwich(kOpt);
  const BoundReport rep = norm_criterion(derived_params(2, 2, 1), Weight::power(1.0, 1.0, 0.0, 1.0));
  const bool constants = close_rel(rep.lower_const, std::sqrt(0.5), 1e-12) && close_rel(rep.upper_const, 2.0, 1e-12);
  std::string rows;
  for (const auto& row : r.table) {
    char buf[128];
    std::snprintf(buf, sizeof buf, " (%g,%g): %.5f <= %.5f <= %.5f;", row[0], row[1], row[2], row[3], row[4]);
    rows += buf;
  }
  return {r.passed && constants, "kappa " + fmt("%.5f", rep.lower_const) + "/" + fmt("%.5f", rep.upper_const) + ";" + rows};
}

Outcome exact_q1() {
  const CheckResult r = check_exact_q1(kOpt);
  return {r.passed, "K((0,1)) = " + fmt("%.9f", metric(r, "K_lower")) + ", oracle " + fmt("%.9f", metric(r, "oracle"))};
}

Outcome rank_bound() {
  const CheckResult r = check_rank_bound(kOpt);
  bool frozen = r.table.size() == 3;
  const int expected_N[] = {2, 4, 8};
  std::string rows;
  for (std::size_t i = 0; i < r.table.size(); ++i) {
    const auto& row = r.table[i];
    if (i < 3 && static_cast<int>(row[1]) != expected_N[i]) frozen = false;
    char buf[160];
    std::snprintf(buf, sizeof buf, " eps=%g N=%d a_{N+1}=%.3e resid=%.4f bound=%.4f;", row[0],
                  static_cast<int>(row[1]), row[3], row[4], row[0] * std::sqrt(row[1] + 1));
    rows += buf;
  }
  return {r.passed && frozen, rows.substr(1)};
}

Outcome lambda_J() {
  const CheckResult r = check_lambda_J(kOpt);
  const double L = metric(r, "Lambda_1"), J = metric(r, "J_1"), C = metric(r, "forward_const");
  const bool values = std::abs(L - 0.76376) <= 5e-6 && std::abs(J - 1.73205) <= 5e-6 && std::abs(C - 1.70711) <= 5e-6;
  const double c1 = tail_integral_lower_c1(1.0, 0.5, 1.0);
  const bool c1_used = close_rel(metric(r, "C1"), c1, 1e-14);
  return {r.passed && values && c1_used, "Lambda_1 = " + fmt("%.5f", L) + " <= " + fmt("%.5f", C) + " * " +
                                             fmt("%.5f", J) + " = " + fmt("%.5f", C * J) + "; C1 = " +
                                             fmt("%.6f", c1) + "; " + std::to_string(r.table.size()) +
                                             " weights, forward and reverse hold"};
}

Outcome remark_lower() {
  const CheckResult r = check_remark_lower(kOpt);
  return {r.passed, "1/2 sum tau^2 = " + fmt("%.6f", metric(r, "rhs")) + " <= exact " +
                        fmt("%.6f", metric(r, "lhs_exact")) + ", oracle " + fmt("%.6f", metric(r, "lhs_oracle"))};
}

Outcome asymptotic_envelope() {
  const CheckResult r = check_asymptotic_envelope(kOpt);
  std::string rows = "sqrt(n) a_n:";
  for (const auto& row : r.table) {
    const int n = static_cast<int>(row[0]);
    if (n == 1 || n == 2 || n == 5 || n == 10 || n == 20 || n == 50 || n == 100)
      rows += " n=" + std::to_string(n) + ":" + fmt("%.4f", row[2]);
  }
  return {r.passed && r.table.size() == 100, "constant " + fmt("%.6f", metric(r, "asymptotic_constant")) +
                                                 ", max " + fmt("%.4f", metric(r, "max_sqrt_n_a_n")) + "; " + rows};
}

Outcome dyadic_lemmas() {
  const CheckResult r = check_dyadic_lemmas(kOpt);
  // Frozen with seed 1 and 1000 samples per lemma.
  const std::pair<const char*, double> frozen[] = {
      {"L11_max_ratio", 1.46221879},      {"L12_max_ratio", 0.5429439175}, {"L13_q2_max_ratio", 0.7193308408},
      {"L13_q0.5_max_ratio", 2.768288934}, {"L11'_max_ratio", 1.393328225}, {"L12'_max_ratio", 0.6312922138},
      {"L13'_max_ratio", 3.818879967}};
  bool regress = true;
  std::string detail;
  for (const auto& [name, value] : frozen) {
    const double got = metric(r, name);
    if (!close_rel(got, value, 1e-6)) regress = false;
    detail += std::string(name).substr(0, std::string(name).size() - 10) + "=" + fmt("%.6f", got) + " ";
  }
  return {r.passed && regress, detail + (regress ? "(match frozen values)" : "(REGRESSION)")};
}

// Reference values by double-exponential quadrature, independent of the library's integrator.
Outcome kernel_closed_forms() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> deg(1, 4);
  boost::math::quadrature::exp_sinh<double> integrator;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double z = std::exp(6.0 * unit(rng) - 3.0);
    const double b = z * std::exp(0.01 + 3.0 * unit(rng));
    const double lambda = 0.3 + 2.7 * unit(rng);
    const double delta = deg(rng);
    const double zl = std::pow(z, lambda), bl = std::pow(b, lambda);
    const double ref =
        integrator.integrate([&](double x) { return std::pow(std::exp(-x * zl) - std::exp(-x * bl), delta); }, 1e-15);
    worst = std::max(worst, std::abs(tail_integral(z, b, delta, lambda) - ref) / ref);
  }
  const CheckResult own = check_kernel_closed_forms(kOpt);
  const double homog = metric(own, "max_homogeneity_error");
  return {worst <= 1e-9 && homog <= 1e-12 && own.passed,
          "max rel error vs independent quadrature " + fmt("%.2e", worst) + ", vs internal " +
              fmt("%.2e", metric(own, "max_relative_error")) + ", homogeneity " + fmt("%.2e", homog)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const fs::path base = fs::temp_directory_path() / "lapnum-acceptance-determinism";
  fs::remove_all(base);
  std::vector<std::string> outputs[2];
  for (int run = 0; run < 2; ++run) {
    lapnum_config* cfg = nullptr;
    if (lapnum_config_default(&cfg) != LAPNUM_OK) return {false, lapnum_last_error()};
    const std::string dir = "\"" + (base / ("run" + std::to_string(run))).string() + "\"";
    int code = -1;
    const bool ok = lapnum_config_set(cfg, "output_dir", dir.c_str()) == LAPNUM_OK &&
                    lapnum_config_set(cfg, "seed", "1") == LAPNUM_OK &&
                    lapnum_run("verify", cfg, &code) == LAPNUM_OK && code == 0;
    lapnum_config_destroy(cfg);
    if (!ok) return {false, std::string("verify failed: ") + lapnum_last_error()};
    for (const auto& entry : fs::directory_iterator(base / ("run" + std::to_string(run))))
      outputs[run].push_back(entry.path().filename().string());
    std::sort(outputs[run].begin(), outputs[run].end());
  }
  bool same = outputs[0] == outputs[1] && !outputs[0].empty();
  std::size_t bytes = 0;
  for (const std::string& name : outputs[0]) {
    const std::string a = slurp(base / "run0" / name), b = slurp(base / "run1" / name);
    bytes += a.size();
    if (a != b) same = false;
  }
  fs::remove_all(base);
  return {same, std::to_string(outputs[0].size()) + " files, " + std::to_string(bytes) + " bytes, " +
                    (same ? "byte-identical" : "DIFFERENT")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;  // 0 means no runtime requirement
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "Hilbert-Schmidt identity", 10.0, hilbert_schmidt},
      {2, "norm sandwich over four regimes", 60.0, sandwich},
      {3, "exact local norm for q = 1", 0.0, exact_q1},
      {4, "partition rank bound", 60.0, rank_bound},
      {5, "Lambda-J equivalence with explicit constants", 0.0, lambda_J},
      {6, "dyadic lower bound on sum a_k^2", 0.0, remark_lower},
      {7, "asymptotic envelope", 0.0, asymptotic_envelope},
      {8, "dyadic lemma verifiers", 0.0, dyadic_lemmas},
      {9, "tail integral closed forms and homogeneity", 0.0, kernel_closed_forms},
      {10, "determinism of verify", 0.0, determinism},
  };
  int failed = 0;
  double total = 0.0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    total += secs;
    const bool in_budget = c.budget_s <= 0.0 || secs < c.budget_s;
    const bool pass = o.passed && in_budget;
    if (!pass) ++failed;
    std::printf("%s  criterion %2d  %-46s %7.2fs%s  %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                in_budget ? "" : " (over budget)", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/10 criteria passed in %.2fs\n", 10 - failed, total);
  return failed == 0 ? 0 : 1;
}
