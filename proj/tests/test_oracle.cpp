#include <cmath>

#include "doctest.h"
#include "lapnum/criteria.hpp"
#include "lapnum/oracle.hpp"

using namespace lapnum;

namespace {
Weight w1() { return Weight::power(1.0, 1.0, 0.0, 1.0); }
}  // namespace

TEST_CASE("Volterra spectrum") {
  const std::vector<double> sv = singular_values(volterra_fixture(512), 3);
  REQUIRE(sv.size() == 3);
  for (int n = 1; n <= 3; ++n) CHECK(sv[n - 1] == doctest::Approx(2.0 / ((2 * n - 1) * M_PI)).epsilon(2e-3));
}

TEST_CASE("Hilbert-Schmidt identity on the grid") {
  GridSpec grid;
  grid.size = 384;
  const DiscretizedOperator op = discretize(derived_params(2, 2, 1), w1(), grid);
  double frob = 0.0;
  for (double m : op.matrix) frob += m * m;
  CHECK(std::sqrt(frob) == doctest::Approx(0.5).epsilon(0.01));
  double sum = 0.0;
  for (double a : singular_values(op, op.rows)) sum += a * a;
  CHECK(sum == doctest::Approx(0.25).epsilon(0.01));
  CHECK(op.truncation_error >= 0.0);
}

TEST_CASE("zero weight discretizes to zero") {
  GridSpec grid;
  grid.size = 32;
  const DiscretizedOperator op = discretize(derived_params(2, 2, 1), Weight(), grid);
  for (double m : op.matrix) CHECK(m == 0.0);
  for (double a : singular_values(op, 5)) CHECK(a == 0.0);
}

TEST_CASE("power iteration agrees with the SVD at p = q = 2") {
  GridSpec grid;
  grid.size = 128;
  const DiscretizedOperator op = discretize(derived_params(2, 2, 1), w1(), grid);
  const NormCertificate cert = operator_norm_pq(op, 2, 2, 4, 3);
  CHECK(std::abs(cert.value - singular_values(op, 1)[0]) <= 1e-6);
}

TEST_CASE("norm estimates respect the criterion sandwich") {
  GridSpec grid;
  grid.size = 192;
  const double cases[][2] = {{2, 1}, {1, 2}, {kInf, 1}, {3, 2}};
  for (auto& c : cases) {
    CAPTURE(c[0]);
    CAPTURE(c[1]);
    const SpaceParams sp = derived_params(c[0], c[1], 1);
    const BoundReport rep = norm_criterion(sp, w1());
    const double est = operator_norm_pq(discretize(sp, w1(), grid), c[0], c[1], 4, 1).value;
    CHECK(est >= 0.98 * rep.lower_bound);
    CHECK(est <= 1.02 * rep.upper_bound);
  }
}

TEST_CASE("same seed, same certificate") {
  GridSpec grid;
  grid.size = 64;
  const DiscretizedOperator op = discretize(derived_params(3, 2, 1), w1(), grid);
  CHECK(operator_norm_pq(op, 3, 2, 4, 9).value == operator_norm_pq(op, 3, 2, 4, 9).value);
}

TEST_CASE("invalid grid") {
  GridSpec grid;
  grid.size = 1;
  CHECK_THROWS_AS(discretize(derived_params(2, 2, 1), w1(), grid), Error);
}
