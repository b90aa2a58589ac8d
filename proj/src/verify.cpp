#include "lapnum/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lapnum/criteria.hpp"
#include "lapnum/localnorm.hpp"
#include "lapnum/numerics.hpp"
#include "lapnum/oracle.hpp"
#include "lapnum/partition.hpp"
#include "lapnum/schatten.hpp"

namespace lapnum {

namespace {

Weight fixture_w1() { return Weight::power(1.0, 1.0, 0.0, 1.0); }

double rel_diff(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

CheckResult make(const char* id, const char* description) {
  CheckResult r;
  r.id = id;
  r.description = description;
  return r;
}

DiscretizedOperator w1_operator(const SpaceParams& sp, int size) {
  GridSpec grid;
  grid.size = size;
  return discretize(sp, fixture_w1(), grid);
}

}  // namespace

CheckResult check_hilbert_schmidt(const SuiteOptions& opt) {
  CheckResult r = make("hilbert_schmidt", "sum of squared singular values equals the Hilbert-Schmidt norm");
  const SpaceParams sp = derived_params(2.0, 2.0, 1.0);
  const DiscretizedOperator op = w1_operator(sp, opt.oracle_size);
  double sum = 0.0;
  for (double a : singular_values(op, op.rows)) sum += a * a;
  const double hs = std::pow(hilbert_schmidt_exact(1.0, fixture_w1()), 2.0);
  const double via_x2 = 0.5 * std::pow(schatten_X_alpha(2.0, 1.0, fixture_w1()), 2.0);
  r.metrics = {{"oracle_sum_a2", sum}, {"exact", hs}, {"half_lambda_X2_squared", via_x2},
               {"truncation_error", op.truncation_error}};
  r.passed = std::abs(sum - 0.25) <= 0.01 * 0.25 && std::abs(hs - 0.25) <= 1e-10 && std::abs(via_x2 - hs) <= 1e-10;
  return r;
}

CheckResult check_norm_sandwich(const SuiteOptions& opt) {
  CheckResult r = make("norm_sandwich", "oracle norm lies in the criterion sandwich with a 2% allowance");
  r.table_columns = {"p", "q", "lower", "oracle", "upper"};
  r.passed = true;
  const std::pair<double, double> cases[] = {{2.0, 2.0}, {2.0, 1.0}, {1.0, 2.0}, {kInf, 1.0}};
  for (auto [p, q] : cases) {
    const SpaceParams sp = derived_params(p, q, 1.0);
    const BoundReport rep = norm_criterion(sp, fixture_w1());
    const DiscretizedOperator op = w1_operator(sp, opt.oracle_size);
    const double est = operator_norm_pq(op, p, q, 4, opt.seed).value;
    r.table.push_back({p, q, rep.lower_bound, est, rep.upper_bound});
    if (!(est >= 0.98 * rep.lower_bound && est <= 1.02 * rep.upper_bound)) r.passed = false;
  }
  return r;
}

CheckResult check_exact_q1(const SuiteOptions& opt) {
  CheckResult r = make("exact_q1", "local norm on (0,1) for p = 2, q = 1 equals B1");
  const SpaceParams sp = derived_params(2.0, 1.0, 1.0);
  const Interval I{0.0, 1.0};
  const KBounds kb = K_bounds(I, sp, fixture_w1());
  GridSpec grid;
  grid.size = opt.oracle_size;
  const DiscretizedOperator op = discretize_local(sp, fixture_w1(), I.a, I.b, grid);
  const double est = operator_norm_pq(op, 2.0, 1.0, 4, opt.seed).value;
  const double B1v = 1.0 / std::sqrt(3.0);
  r.metrics = {{"K_lower", kb.lower}, {"K_upper", kb.upper}, {"oracle", est}, {"B1_closed_form", B1v}};
  r.passed = kb.exact && std::abs(kb.lower - B1v) <= 1e-9 && est >= 0.98 * B1v && est <= B1v + 1e-6;
  return r;
}

CheckResult check_rank_bound(const SuiteOptions& opt) {
  CheckResult r = make("rank_bound", "partition rank bound dominates oracle a_{N+1} and the residual norm");
  r.table_columns = {"epsilon", "N", "bound", "oracle_a_N_plus_1", "residual_norm"};
  r.passed = true;
  const SpaceParams sp = derived_params(2.0, 2.0, 1.0);
  const Weight w = fixture_w1();
  const DiscretizedOperator op = w1_operator(sp, opt.oracle_size);
  const std::vector<double> sv = singular_values(op, op.rows);
  GridSpec grid;
  grid.size = opt.oracle_size;
  for (double eps : {0.4, 0.2, 0.1}) {
    const Partition part = split(eps, sp, w);
    const double bound = an_upper(part, sp);
    const std::vector<double> pts = part.points;
    KernelFn k = [&](double x, double y) {
      const auto it = std::upper_bound(pts.begin(), pts.end(), y);
      const double b = it == pts.end() ? kInf : *it;
      const double e = std::exp(-x * std::pow(y, sp.lambda));
      return std::isinf(b) ? e : e - std::exp(-x * std::pow(b, sp.lambda));
    };
    const double resid = singular_values(discretize_kernel(sp.lambda, w, k, grid, 0.0), 1).front();
    const double a_next = part.N < static_cast<int>(sv.size()) ? sv[part.N] : 0.0;
    const double simple = eps * std::sqrt(part.N + 1.0);
    r.table.push_back({eps, static_cast<double>(part.N), bound, a_next, resid});
    if (!(a_next <= simple && a_next <= bound && resid <= 1.02 * simple)) r.passed = false;
  }
  return r;
}

CheckResult check_lambda_J(const SuiteOptions& opt) {
  CheckResult r = make("lambda_J", "Lambda_s and J_s are equivalent with the explicit constants");
  r.table_columns = {"weight", "Lambda", "forward_const_times_J", "J_range", "reverse_const_times_Lambda_range"};
  r.passed = true;
  const SpaceParams sp = derived_params(2.0, 2.0, 1.0);
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, 3);
  std::vector<Weight> weights{fixture_w1()};
  for (int i = 0; i < 10; ++i) {
    const int n = count(rng);
    std::vector<double> cuts{0.0, 1.0};
    for (int j = 1; j < n; ++j) cuts.push_back(unit(rng));
    std::sort(cuts.begin(), cuts.end());
    std::vector<WeightPiece> pieces;
    for (int j = 0; j < n; ++j) pieces.push_back({cuts[j], cuts[j + 1], 0.5 + 1.5 * unit(rng), 3.0 * unit(rng)});
    weights.emplace_back(pieces);
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const EquivalenceCheck e = lambda_J_equivalence_check(sp, weights[i], 1.0, -6, 1);
    r.table.push_back({static_cast<double>(i), e.Lambda, e.forward_const * e.J, e.J_range,
                       e.reverse_const * e.Lambda_range});
    if (!e.forward_holds || !e.reverse_holds) r.passed = false;
    if (i == 0) {
      r.metrics = {{"Lambda_1", e.Lambda}, {"J_1", e.J}, {"forward_const", e.forward_const},
                   {"C1", e.C1}, {"reverse_const", e.reverse_const}};
      if (std::abs(e.Lambda - 2.0 * std::sqrt(7.0 / 48.0)) > 1e-9 || std::abs(e.J - std::sqrt(3.0)) > 1e-9)
        r.passed = false;
    }
  }
  return r;
}

CheckResult check_remark_lower(const SuiteOptions& opt) {
  CheckResult r = make("remark_lower", "half the sum of tau_k^2 is below the sum of a_k^2");
  const RemarkCheck rc = remark_lower_check(2.0, 1.0, fixture_w1(), -30, 0, opt.oracle_size);
  r.metrics = {{"rhs", rc.rhs}, {"lhs_exact", rc.lhs_exact}, {"lhs_oracle", rc.lhs_oracle},
               {"inner_product_sum", rc.inner_product_sum}};
  r.passed = rc.holds && std::abs(rc.rhs - 7.0 / 36.0) <= 1e-9 && std::abs(rc.lhs_exact - 0.25) <= 1e-10 &&
             std::abs(rc.lhs_oracle - 0.25) <= 0.01 * 0.25 && rc.rhs <= rc.lhs_oracle;
  return r;
}

CheckResult check_asymptotic_envelope(const SuiteOptions& opt) {
  CheckResult r = make("asymptotic_envelope", "n^{1/2} a_n stays below ten times the asymptotic constant");
  const SpaceParams sp = derived_params(2.0, 2.0, 1.0);
  const AsymptoticReport ar = asymptotic_constant(sp, fixture_w1());
  const std::vector<double> sv = singular_values(w1_operator(sp, opt.oracle_size), 100);
  r.table_columns = {"n", "a_n", "sqrt_n_a_n", "ratio_to_constant"};
  double worst = 0.0;
  for (std::size_t n = 0; n < sv.size(); ++n) {
    const double scaled = std::sqrt(n + 1.0) * sv[n];
    worst = std::max(worst, scaled);
    r.table.push_back({n + 1.0, sv[n], scaled, scaled / ar.value});
  }
  r.metrics = {{"asymptotic_constant", ar.value}, {"max_sqrt_n_a_n", worst}};
  r.passed = ar.side_condition && std::abs(ar.value - 1.0) <= 1e-10 && worst <= 10.0 * ar.value;
  return r;
}

CheckResult check_dyadic_lemmas(const SuiteOptions& opt) {
  CheckResult r = make("dyadic_lemmas", "seeded samples of the dyadic lemmas stay within their constants");
  r.table_columns = {"lemma", "p", "q", "max_ratio", "constant", "max_ratio_over_constant"};
  r.passed = true;
  struct Case {
    DyadicLemma id;
    double p, q;
    const char* label;
  };
  const Case cases[] = {{DyadicLemma::L11, 2, 2, "L11"},         {DyadicLemma::L12, 2, 2, "L12"},
                        {DyadicLemma::L13, 3, 2, "L13_q2"},      {DyadicLemma::L13, 2, 0.5, "L13_q0.5"},
                        {DyadicLemma::L11p, 1, 2, "L11'"},       {DyadicLemma::L12p, 1, 2, "L12'"},
                        {DyadicLemma::L13p, 1, 0.5, "L13'"}};
  SampleSpec spec;
  spec.count = opt.lemma_samples;
  spec.seed = opt.seed;
  int index = 0;
  for (const Case& c : cases) {
    const LemmaReport rep = dyadic_lemma_check(c.id, derived_params(c.p, c.q, 1.0), fixture_w1(), spec);
    r.table.push_back({static_cast<double>(index++), c.p, c.q, rep.max_ratio, rep.constant, rep.max_ratio_over_constant});
    r.metrics.emplace_back(std::string(c.label) + "_max_ratio", rep.max_ratio);
    if (!rep.passed) r.passed = false;
  }
  r.note = "lemma column indexes L11, L12, L13_q2, L13_q0.5, L11', L12', L13'";
  return r;
}

CheckResult check_kernel_closed_forms(const SuiteOptions& opt) {
  CheckResult r = make("kernel_closed_forms", "tail integral closed forms agree with quadrature; block homogeneity");
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> deg(1, 4);
  const QuadOptions quad{1e-13, 0.0, 4000};
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double z = std::exp(6.0 * unit(rng) - 3.0);
    const double b = z * std::exp(0.01 + 3.0 * unit(rng));
    const double lambda = 0.3 + 2.7 * unit(rng);
    const double delta = deg(rng);
    const double zl = std::pow(z, lambda), bl = std::pow(b, lambda);
    auto f = [&](double x) { return std::pow(std::exp(-x * zl) - std::exp(-x * bl), delta); };
    const double reference = integrate(f, 0.0, kInf, quad).value;
    worst = std::max(worst, rel_diff(tail_integral(z, b, delta, lambda), reference));
  }
  double homog = 0.0;
  for (double delta : {1.0, 2.0, 0.5, 0.25}) {
    for (double lambda : {0.5, 1.0, 2.5}) {
      const double base = tail_integral(1.0, 2.0, delta, lambda);
      for (int k = -10; k <= 10; ++k) {
        const double direct = tail_integral(std::ldexp(1.0, k), std::ldexp(1.0, k + 1), delta, lambda);
        homog = std::max(homog, rel_diff(direct, std::pow(2.0, -k * lambda) * base));
      }
    }
  }
  r.metrics = {{"max_relative_error", worst}, {"max_homogeneity_error", homog}};
  r.passed = worst <= 1e-9 && homog <= 1e-12;
  return r;
}

CheckResult check_homogeneity(const SuiteOptions&) {
  CheckResult r = make("homogeneity", "sigma, Lambda, J and the asymptotic constant scale linearly in v");
  const double c = 3.7;
  const Weight w = fixture_w1(), cw = fixture_w1().scaled(c);
  const SpaceParams sp = derived_params(2.0, 2.0, 1.0);
  const DyadicProfile a = sigma_profile(sp, w, -8, 2, false), b = sigma_profile(sp, cw, -8, 2, false);
  const double errs[] = {rel_diff(c * a.sigma_at(0), b.sigma_at(0)), rel_diff(c * Lambda_s(a, 1.0), Lambda_s(b, 1.0)),
                         rel_diff(c * J_s(sp, w, 1.0), J_s(sp, cw, 1.0)),
                         rel_diff(c * asymptotic_constant(sp, w).value, asymptotic_constant(sp, cw).value)};
  const double worst = *std::max_element(std::begin(errs), std::end(errs));
  r.metrics = {{"max_relative_error", worst}};
  r.passed = worst <= 1e-10;
  return r;
}

CheckResult check_J2_X2(const SuiteOptions&) {
  CheckResult r = make("J2_X2", "J_2 equals sqrt(lambda) X_2 at p = q = 2");
  double worst = 0.0;
  const Weight weights[] = {fixture_w1(), Weight::power(2.0, 0.5, 0.0, 3.0),
                            Weight({{0.0, 1.0, 1.0, 2.0}, {1.0, 4.0, 1.0, 0.0}})};
  for (double lambda : {1.0, 2.0, 0.5}) {
    for (const Weight& w : weights) {
      const double J2 = J_s(derived_params(2.0, 2.0, lambda), w, 2.0);
      const double X2 = schatten_X_alpha(2.0, lambda, w);
      worst = std::max(worst, std::abs(J2 - std::sqrt(lambda) * X2));
    }
  }
  r.metrics = {{"max_abs_difference", worst}};
  r.passed = worst <= 1e-10;
  return r;
}

std::vector<CheckResult> run_invariant_suite(const SuiteOptions& opt) {
  return {check_hilbert_schmidt(opt), check_norm_sandwich(opt), check_exact_q1(opt),
          check_rank_bound(opt),      check_lambda_J(opt),      check_remark_lower(opt),
          check_asymptotic_envelope(opt), check_dyadic_lemmas(opt), check_kernel_closed_forms(opt),
          check_homogeneity(opt),     check_J2_X2(opt)};
}

}  // namespace lapnum
