#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <random>

#include "doctest.h"
#include "lapnum/kernel.hpp"

using lapnum::kInf;
using lapnum::tail_integral;

namespace {

// Reference tail integral by double-exponential quadrature on (0, inf).
double tail_reference(double z, double b, double delta, double lambda) {
  const double zl = std::pow(z, lambda);
  const double bl = std::isinf(b) ? kInf : std::pow(b, lambda);
  auto f = [&](double x) {
    const double d = std::exp(-x * zl) - (std::isinf(bl) ? 0.0 : std::exp(-x * bl));
    return d > 0.0 ? std::pow(d, delta) : 0.0;
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(f, 1e-14);
}

}  // namespace

TEST_CASE("derived exponents") {
  const auto a = lapnum::derived_params(2.0, 2.0, 1.0);
  CHECK(a.p_conj == 2.0);
  CHECK(*a.theta == doctest::Approx(1.0));
  CHECK(a.delta == 1.0);
  CHECK_FALSE(a.r.has_value());
  const auto b = lapnum::derived_params(3.0, 2.0, 1.0);
  CHECK(b.p_conj == doctest::Approx(1.5));
  CHECK(*b.r == doctest::Approx(6.0));
  CHECK(*b.theta == doctest::Approx(6.0 / 7.0));
  const auto c = lapnum::derived_params(2.0, 0.5, 1.0);
  CHECK(c.delta == 0.5);
  CHECK(*c.r == doctest::Approx(2.0 / 3.0));
  CHECK(lapnum::derived_params(1.0, 2.0, 1.0).p_conj == kInf);
  CHECK(lapnum::derived_params(kInf, 1.0, 1.0).p_conj == 1.0);
  CHECK_THROWS_AS(lapnum::derived_params(0.5, 2.0, 1.0), lapnum::Error);
  CHECK_THROWS_AS(lapnum::derived_params(2.0, 2.0, 0.0), lapnum::Error);
}

TEST_CASE("regime tags") {
  CHECK(lapnum::derived_params(2, 3, 1).regime == lapnum::Regime::PLeqQ);
  CHECK(lapnum::derived_params(3, 2, 1).regime == lapnum::Regime::QLessP);
  CHECK(lapnum::derived_params(2, 0.5, 1).regime == lapnum::Regime::QSubOneLessP);
  CHECK(lapnum::derived_params(1, 0.5, 1).regime == lapnum::Regime::QSubOnePOne);
  CHECK(lapnum::derived_params(1, 2, 1).regime == lapnum::Regime::POneLeqQ);
  CHECK(lapnum::derived_params(kInf, 1, 1).regime == lapnum::Regime::PInfinite);
  CHECK(lapnum::derived_params(2, kInf, 1).regime == lapnum::Regime::QInfinite);
}

TEST_CASE("tail integral closed forms") {
  CHECK(tail_integral(1.0, 2.0, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(tail_integral(1.0, kInf, 1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(tail_integral(1.0, 2.0, 2.0, 1.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("fractional delta against the quadrature oracle") {
  const double ref = tail_reference(1.0, 2.0, 0.5, 1.0);
  CHECK(tail_integral(1.0, 2.0, 0.5, 1.0) == doctest::Approx(ref).epsilon(1e-10));
  // u = e^{-x} turns it into the Beta integral B(1/2, 3/2) = pi/2.
  CHECK(tail_integral(1.0, 2.0, 0.5, 1.0) == doctest::Approx(M_PI / 2.0).epsilon(1e-12));
}

TEST_CASE("random tuples against the quadrature oracle") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 60; ++i) {
    const double z = std::exp(4.0 * unit(rng) - 2.0);
    const double b = unit(rng) < 0.2 ? kInf : z * std::exp(0.05 + 2.5 * unit(rng));
    const double lambda = 0.3 + 2.7 * unit(rng);
    const double delta = unit(rng) < 0.5 ? std::floor(1.0 + 4.0 * unit(rng)) : 0.1 + 0.9 * unit(rng);
    CAPTURE(z);
    CAPTURE(b);
    CAPTURE(lambda);
    CAPTURE(delta);
    CHECK(tail_integral(z, b, delta, lambda) ==
          doctest::Approx(tail_reference(z, b, delta, lambda)).epsilon(1e-9));
  }
}

TEST_CASE("density is minus the z-derivative") {
  for (double delta : {1.0, 2.0, 0.5, 0.3}) {
    const double z = 0.7, b = 1.9, lambda = 1.3, h = 1e-5;
    const double fd = -(tail_integral(z + h, b, delta, lambda) - tail_integral(z - h, b, delta, lambda)) / (2 * h);
    CHECK(lapnum::tail_integral_density(z, b, delta, lambda) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("dyadic lower constant C1") {
  using lapnum::tail_integral_lower_c1;
  CHECK(tail_integral_lower_c1(1.0, 0.5, 1.0) ==
        doctest::Approx((std::exp(-1.0) - std::exp(-std::sqrt(2.0))) * (1.0 - std::pow(2.0, -0.5))));
  CHECK(tail_integral_lower_c1(1.0, 0.5, 1.0) == doctest::Approx(0.036545).epsilon(1e-4));
  CHECK(tail_integral_lower_c1(2.0, 1.0, 1.0) == doctest::Approx((std::exp(-1.0) - std::exp(-2.0)) * 0.5));
  for (double delta : {1.0, 0.5, 2.0}) {
    const double c1 = tail_integral_lower_c1(1.0, 0.5, delta);
    CHECK(c1 > 0.0);
    for (int k = -5; k <= 5; ++k)
      CHECK(tail_integral(std::ldexp(1.0, k), std::ldexp(1.0, k + 1), delta, 1.0) >= c1 * std::ldexp(1.0, -k));
  }
  CHECK(lapnum::tail_integral_lower_c1_best(1.0, 1.0) >= tail_integral_lower_c1(1.0, 0.5, 1.0));
}

TEST_CASE("invalid tail arguments") {
  CHECK_THROWS_AS(tail_integral(2.0, 1.0, 1.0, 1.0), lapnum::Error);
  CHECK_THROWS_AS(tail_integral(0.0, 1.0, 1.0, 1.0), lapnum::Error);
  CHECK_THROWS_AS(tail_integral(1.0, 2.0, 0.0, 1.0), lapnum::Error);
}
