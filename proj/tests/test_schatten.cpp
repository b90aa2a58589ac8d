#include <cmath>

#include "doctest.h"
#include "lapnum/criteria.hpp"
#include "lapnum/schatten.hpp"

using namespace lapnum;

namespace {
Weight w1() { return Weight::power(1.0, 1.0, 0.0, 1.0); }
const SpaceParams kP22 = derived_params(2, 2, 1);
}  // namespace

TEST_CASE("dyadic profile") {
  const DyadicProfile prof = sigma_profile(kP22, w1(), -10, 2, false);
  for (int k = -6; k <= 0; ++k) CHECK(prof.sigma_at(k) == doctest::Approx(std::sqrt(7.0 / 48.0) * std::ldexp(1.0, k)));
  CHECK(prof.sigma_at(0) == doctest::Approx(0.381881).epsilon(1e-6));
  CHECK(prof.sigma_at(1) == 0.0);
  CHECK(prof.tau_at(0) == doctest::Approx(std::sqrt(7.0 / 24.0)));
  const DyadicProfile bar = sigma_profile(derived_params(1, 2, 1), w1(), -10, 2, true);
  CHECK(bar.sigma_at(0) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("Lambda and J on the fixture") {
  const DyadicProfile prof = sigma_profile(kP22, w1(), 1, 0, false);
  CHECK(Lambda_s(prof, 1.0) == doctest::Approx(0.76376).epsilon(1e-5));
  CHECK(J_s(kP22, w1(), 1.0) == doctest::Approx(std::sqrt(3.0)));
  CHECK(J_s(kP22, w1(), 2.0) == doctest::Approx(std::sqrt(0.5)));
  CHECK(J_s(kP22, Weight(), 1.0) == 0.0);
  CHECK(Lambda_s(sigma_profile(kP22, Weight(), 1, 0, false), 1.0) == 0.0);
}

TEST_CASE("J_2 equals sqrt(lambda) X_2") {
  for (double lambda : {0.5, 1.0, 1.3}) {
    const Weight w = Weight::power(1.5, 0.7, 0.0, 2.0);
    CHECK(J_s(derived_params(2, 2, lambda), w, 2.0) ==
          doctest::Approx(std::sqrt(lambda) * schatten_X_alpha(2, lambda, w)).epsilon(1e-10));
  }
}

TEST_CASE("Lambda-J equivalence") {
  const EquivalenceCheck e = lambda_J_equivalence_check(kP22, w1(), 1.0, -6, 1);
  CHECK(e.forward_const == doctest::Approx(1.70711).epsilon(1e-5));
  CHECK(e.forward_holds);
  CHECK(e.reverse_holds);
  CHECK(e.C1 == doctest::Approx(tail_integral_lower_c1(1.0, 0.5, 1.0)));
  CHECK(e.Lambda <= e.forward_const * e.J);
  CHECK(e.J_range <= e.reverse_const * e.Lambda_range);
  const EquivalenceCheck zero = lambda_J_equivalence_check(kP22, Weight(), 1.0, -6, 1);
  CHECK(zero.forward_holds);
  const EquivalenceCheck inf = lambda_J_equivalence_check(kP22, Weight::power(1.0, 0.0), 1.0, -6, 1);
  CHECK(inf.vacuous);
  CHECK(inf.forward_holds);
  const EquivalenceCheck bar = lambda_J_equivalence_check(derived_params(1, 2, 1), w1(), 4.0, -6, 1);
  CHECK(bar.barred);
  CHECK(bar.forward_holds);
  CHECK(bar.reverse_holds);
}

TEST_CASE("dyadic lemma evaluations") {
  LemmaSample s;
  s.k1 = s.k2 = s.k3 = 0;
  s.z0 = s.z1 = 0.6;
  s.z2 = 0.9;
  CHECK(evaluate_lemma_sample(DyadicLemma::L11, kP22, w1(), s).lhs == 0.0);
  CHECK(dyadic_lemma_from_string("L13'") == DyadicLemma::L13p);
  CHECK(dyadic_lemma_from_string("L12p") == DyadicLemma::L12p);
  CHECK(to_string(DyadicLemma::L11p) == "L11'");
  CHECK_THROWS_AS(dyadic_lemma_from_string("L99"), Error);
}

TEST_CASE("dyadic lemmas on small samples") {
  SampleSpec spec;
  spec.count = 100;
  const std::pair<DyadicLemma, SpaceParams> cases[] = {
      {DyadicLemma::L11, kP22}, {DyadicLemma::L12, kP22}, {DyadicLemma::L13, derived_params(3, 2, 1)},
      {DyadicLemma::L11p, derived_params(1, 2, 1)}, {DyadicLemma::L12p, derived_params(1, 2, 1)},
      {DyadicLemma::L13p, derived_params(1, 0.5, 1)}};
  for (const auto& [id, sp] : cases) {
    CAPTURE(to_string(id));
    const LemmaReport rep = dyadic_lemma_check(id, sp, w1(), spec);
    CHECK(rep.samples == 100);
    CHECK(rep.passed);
    CHECK(rep.max_ratio <= rep.constant);
  }
}

TEST_CASE("Schatten upper reports") {
  const SchattenUpperReport r = schatten_upper_report(kP22, w1(), 2.0, 128);
  CHECK(r.quantity_name == "J_2");
  CHECK(r.value == doctest::Approx(std::sqrt(0.5)));
  CHECK(r.realized_ratio > 0.0);
  CHECK(r.realized_ratio < 2.0);
  CHECK(schatten_upper_report(derived_params(2, 1, 1), w1(), 3.0).value == doctest::Approx(1.0));
  CHECK_THROWS_AS(schatten_upper_report(kP22, w1(), 1.0), Error);
  CHECK_THROWS_AS(schatten_upper_report(kP22, Weight::power(1.0, 0.0), 2.0), Error);
}

TEST_CASE("Hardy operator") {
  const Weight one = Weight::power(1.0, 0.0);
  CHECK(hardy_apply({0.0, 1.0}, w1(), one, [](double) { return 1.0; }, 0.5) == doctest::Approx(0.125));
  CHECK(hardy_const_norm(1, 1, {0.0, 1.0}, 2, 2) == doctest::Approx(0.5));
  CHECK(alpha_pq(2, 2) == doctest::Approx(0.5));
  CHECK(alpha_pq(1, 3) == 1.0);
  CHECK(alpha_pq_sup_oracle(2, 2, 256) == doctest::Approx(2.0 / M_PI).epsilon(1e-3));
  CHECK_THROWS_AS(alpha_pq(3, 2), Error);
}

TEST_CASE("asymptotic constant") {
  const AsymptoticReport r = asymptotic_constant(kP22, w1());
  CHECK(r.value == doctest::Approx(1.0));
  CHECK(r.side_condition);
  CHECK(asymptotic_constant(kP22, Weight()).value == 0.0);
  CHECK(asymptotic_constant(derived_params(1, 2, 1), w1()).value == doctest::Approx(1.0));
  const double c = 1.9;
  CHECK(asymptotic_constant(kP22, w1().scaled(c)).value == doctest::Approx(c));
}
