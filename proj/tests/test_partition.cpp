#include <cmath>

#include "doctest.h"
#include "lapnum/criteria.hpp"
#include "lapnum/localnorm.hpp"
#include "lapnum/partition.hpp"

using namespace lapnum;

namespace {
Weight w1() { return Weight::power(1.0, 1.0, 0.0, 1.0); }
}  // namespace

TEST_CASE("large epsilon gives the trivial partition") {
  const Partition part = split(10.0, derived_params(2, 2, 1), w1());
  CHECK(part.N == 0);
  REQUIRE(part.points.size() == 2);
  CHECK(part.points[0] == 0.0);
  CHECK(std::isinf(part.points[1]));
}

TEST_CASE("regression partitions for p = q = 2") {
  const SpaceParams sp = derived_params(2, 2, 1);
  const std::pair<double, int> frozen[] = {{0.4, 2}, {0.2, 4}, {0.1, 8}};
  for (auto [eps, N] : frozen) {
    const Partition part = split(eps, sp, w1());
    CHECK(part.N == N);
    CHECK(part.points.size() == static_cast<std::size_t>(N + 2));
    for (std::size_t i = 0; i < part.bounds.size(); ++i) CHECK(part.bounds[i] <= eps * (1 + 1e-9));
    for (std::size_t i = 0; i + 1 < part.points.size(); ++i) CHECK(part.points[i] < part.points[i + 1]);
  }
}

TEST_CASE("q < 1 sweeps from the right") {
  // v = y^2 on (0,1): L f decays like x^{-3}, fast enough for q = 1/2.
  const Weight w = Weight::power(1.0, 2.0, 0.0, 1.0);
  REQUIRE(norm_criterion(derived_params(2, 0.5, 1), w).decision == Decision::Bounded);
  const Partition part = split(0.05, derived_params(2, 0.5, 1), w);
  CHECK(part.orientation == Orientation::RightToLeft);
  CHECK(part.N >= 1);
  for (double bnd : part.bounds) CHECK(bnd <= 0.2 * (1 + 1e-9));
}

TEST_CASE("finite-rank operator") {
  const Partition trivial = split(10.0, derived_params(2, 2, 1), w1());
  CHECK(apply_finite_rank(trivial, [](double) { return 1.0; }, 1.0, 1.0, w1()) == 0.0);
  Partition part;
  part.points = {0.0, 1.0, kInf};
  part.N = 1;
  auto chi01 = [](double y) { return y < 1.0 ? 1.0 : 0.0; };
  CHECK(apply_finite_rank(part, chi01, 1.0, 1.0, w1()) == doctest::Approx(std::exp(-1.0) / 2.0));
}

TEST_CASE("rank bound arithmetic") {
  Partition part;
  part.epsilon = 0.3;
  part.N = 5;
  CHECK(an_upper(part, derived_params(1, 2, 1)) == doctest::Approx(0.3));
  part.epsilon = 0.1;
  part.N = 3;
  CHECK(an_upper(part, derived_params(2, 2, 1)) == doctest::Approx(0.2));
  part.N = 1;
  CHECK(an_upper(part, derived_params(2, 0.5, 1)) == doctest::Approx(0.1 * std::pow(2.0, 1.5)));
}

TEST_CASE("approximation-number curve") {
  const SpaceParams sp = derived_params(2, 2, 1);
  const auto one = an_curve({10.0}, sp, w1());
  REQUIRE(one.size() == 1);
  CHECK(one[0].N == 0);
  CHECK(one[0].n == 1);
  CHECK(one[0].bound == doctest::Approx(10.0));
  const auto rows = an_curve({0.4, 0.2, 0.1}, sp, w1());
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].N >= rows[0].N);
  CHECK(rows[2].N >= rows[1].N);
  CHECK_THROWS_AS(an_curve({0.1, 0.2}, sp, w1()), Error);
}

TEST_CASE("non-compact operators are rejected") {
  CHECK_THROWS_AS(split(0.1, derived_params(2, 2, 1), Weight::power(1.0, 0.0)), Error);
  CHECK_THROWS_AS(split(0.0, derived_params(2, 2, 1), w1()), Error);
}
