#include <cmath>

#include "doctest.h"
#include "lapnum/weight.hpp"

using lapnum::kInf;
using lapnum::Weight;

TEST_CASE("point evaluation") {
  CHECK(Weight::power(1.0, 1.0, 0.0, 1.0)(0.5) == doctest::Approx(0.5));
  CHECK(Weight::power(1.0, 0.0, 0.0, 1.0)(2.0) == 0.0);
  const Weight w = Weight::power(2.0, -0.5, 1.0, 4.0);
  CHECK(w(std::nextafter(4.0, 0.0)) == doctest::Approx(1.0));
  CHECK(w.usc_value(4.0) == doctest::Approx(1.0));
}

TEST_CASE("power integrals") {
  const Weight w = Weight::power(1.0, 1.0, 0.0, 1.0);
  for (double t : {0.1, 0.5, 1.0}) CHECK(w.power_integral(2.0, 0.0, t) == doctest::Approx(t * t * t / 3.0));
  CHECK(w.power_integral(2.0, 0.0, 5.0) == doctest::Approx(1.0 / 3.0));
  CHECK(Weight::power(1.0, 0.0, 0.0, 1.0).power_integral(2.0, 0.0, 2.0) == doctest::Approx(1.0));
  CHECK(std::isinf(Weight::power(1.0, -1.0, 0.0, 1.0).power_integral(2.0, 0.0, 1.0)));
}

TEST_CASE("essential suprema") {
  const Weight w = Weight::power(1.0, 1.0, 0.0, 1.0);
  for (double t : {0.25, 0.9}) CHECK(w.esup(0.0, t) == doctest::Approx(t));
  CHECK(w.esup(0.5, 1.0) == doctest::Approx(1.0));
  CHECK(std::isinf(Weight::power(1.0, -0.5, 0.0, 1.0).esup(0.0, 1.0)));
  const Weight run = w.running_esup();
  CHECK(run(0.3) == doctest::Approx(0.3));
  CHECK(run(7.0) == doctest::Approx(1.0));
}

TEST_CASE("algebra of piecewise powers") {
  const Weight w({{0.0, 1.0, 2.0, 1.0}, {1.0, 3.0, 1.0, -2.0}});
  const double ys[] = {0.2, 0.7, 1.5, 2.9};
  for (double y : ys) {
    CHECK(w.pow(3.0)(y) == doctest::Approx(std::pow(w(y), 3.0)));
    CHECK(w.times_power(0.5)(y) == doctest::Approx(std::sqrt(y) * w(y)));
    CHECK(w.scaled(4.0)(y) == doctest::Approx(4.0 * w(y)));
  }
  CHECK(w.restricted(0.5, 2.0)(0.2) == 0.0);
  CHECK(w.restricted(0.5, 2.0)(1.5) == doctest::Approx(w(1.5)));
  CHECK(w.support_start() == 0.0);
  CHECK(w.support_end() == 3.0);
  CHECK(w.breakpoints() == std::vector<double>{1.0, 3.0});
}

TEST_CASE("leading behaviour at the ends") {
  lapnum::WeightPiece lead;
  const Weight w({{0.0, 1.0, 3.0, 0.5}, {2.0, kInf, 1.0, -1.0}});
  REQUIRE(w.leading_at_zero(lead));
  CHECK(lead.coeff == 3.0);
  CHECK(lead.exponent == 0.5);
  REQUIRE(w.leading_at_infinity(lead));
  CHECK(lead.exponent == -1.0);
  CHECK_FALSE(Weight::power(1.0, 1.0, 0.0, 1.0).leading_at_infinity(lead));
}

TEST_CASE("monomial integral") {
  CHECK(lapnum::monomial_integral(2.0, 0.0, 1.0) == doctest::Approx(1.0 / 3.0));
  CHECK(lapnum::monomial_integral(-2.0, 1.0, kInf) == doctest::Approx(1.0));
  CHECK(std::isinf(lapnum::monomial_integral(-1.0, 1.0, kInf)));
}

TEST_CASE("invalid weights are rejected") {
  CHECK_THROWS_AS(Weight({{0.0, 1.0, -1.0, 0.0}}), lapnum::Error);
  CHECK_THROWS_AS(Weight({{0.0, 2.0, 1.0, 0.0}, {1.0, 3.0, 1.0, 0.0}}), lapnum::Error);
  CHECK_THROWS_AS(Weight::power(1.0, -1.0, 0.0, 1.0).require_locally_integrable(), lapnum::Error);
  CHECK(Weight().is_zero());
}
