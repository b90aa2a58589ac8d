#include <cmath>

#include "doctest.h"
#include "lapnum/localnorm.hpp"
#include "lapnum/oracle.hpp"

using namespace lapnum;

namespace {
Weight w1() { return Weight::power(1.0, 1.0, 0.0, 1.0); }
}  // namespace

TEST_CASE("gamma constants") {
  const GammaConstants g = gamma_constants(derived_params(2, 2, 1));
  CHECK(g.alpha0 == doctest::Approx(2.0));
  CHECK(g.beta0 == doctest::Approx(2.0));
  CHECK(g.gamma0 == doctest::Approx(1.0));
  CHECK(g.gamma1 == doctest::Approx(g.gamma0));
  CHECK(gamma_constants(derived_params(2, 3, 1)).alpha0 == doctest::Approx(4.0));
  CHECK(gamma_constants(derived_params(2, 3, 1)).beta0 == doctest::Approx(4.0));
}

TEST_CASE("local quantities on (0,1)") {
  const Interval I{0.0, 1.0};
  CHECK(A0(1.0, I, derived_params(2, 2, 1), w1()) == doctest::Approx(2.0 / 9.0).epsilon(1e-8));
  CHECK(B1(I, derived_params(2, 1, 1), w1()) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));
  CHECK(A1(I, derived_params(1, 2, 1), w1()) == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("sandwich for p = q = 2") {
  const KBounds kb = K_bounds({0.0, 1.0}, derived_params(2, 2, 1), w1());
  CHECK(kb.upper == doctest::Approx(4.0 / 9.0).epsilon(1e-8));
  CHECK(kb.lower <= kb.upper);
  CHECK_FALSE(kb.exact);
  CHECK(K_upper({0.0, 1.0}, derived_params(2, 2, 1), w1()) == doctest::Approx(kb.upper));
  // The local operator's SVD norm must sit inside the sandwich.
  GridSpec grid;
  grid.size = 256;
  const double est = singular_values(discretize_local(derived_params(2, 2, 1), w1(), 0.0, 1.0, grid), 1)[0];
  CHECK(est >= 0.98 * kb.lower);
  CHECK(est <= 1.02 * kb.upper);
}

TEST_CASE("exact local norm for q = 1") {
  const KBounds kb = K_bounds({0.0, 1.0}, derived_params(2, 1, 1), w1());
  CHECK(kb.exact);
  CHECK(kb.lower == doctest::Approx(0.57735).epsilon(1e-5));
  CHECK(kb.upper == doctest::Approx(kb.lower));
}

TEST_CASE("zero weight on the interval") {
  const KBounds kb = K_bounds({2.0, 3.0}, derived_params(2, 2, 1), w1());
  CHECK(kb.lower == 0.0);
  CHECK(kb.upper == 0.0);
}

TEST_CASE("monotone in the interval") {
  const SpaceParams sp = derived_params(2, 2, 1);
  double prev = 0.0;
  for (double b : {0.2, 0.4, 0.8, 1.5, 4.0}) {
    const double v = A0(1.0, {0.1, b}, sp, w1());
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
  CHECK(A0(1.0, {0.3, 1.0}, sp, w1()) <= A0(1.0, {0.1, 1.0}, sp, w1()) + 1e-12);
}

TEST_CASE("all regimes give ordered bounds") {
  const double cases[][2] = {{2, 2}, {3, 2}, {2, 0.5}, {1, 0.5}, {1, 2}, {2, 1}};
  for (auto& c : cases) {
    CAPTURE(c[0]);
    CAPTURE(c[1]);
    const KBounds kb = K_bounds({0.25, 0.5}, derived_params(c[0], c[1], 1), w1());
    CHECK(kb.lower >= 0.0);
    CHECK(kb.lower <= kb.upper * (1 + 1e-12));
  }
}

TEST_CASE("invalid arguments") {
  CHECK_THROWS_AS(K_bounds({0.0, 1.0}, derived_params(kInf, 1, 1), w1()), Error);
  CHECK_THROWS_AS(validate({1.0, 0.5}), Error);
  CHECK_THROWS_AS(validate({-1.0, 0.5}), Error);
}
