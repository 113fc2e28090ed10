#include <catch2/catch.hpp>

#include <cmath>
#include <vector>

#include "probcover/oracle.hpp"
#include "probcover/selection.hpp"
#include "test_helpers.hpp"

using namespace probcover;
using testutil::line_fixture;

TEST_CASE("optimal_coverage on the line fixture") {
  const auto es = line_fixture();
  const LabeledPool empty;

  const auto b1 = optimal_coverage(es, empty, 1, 1.5);
  CHECK(b1.coverage == 0.75);
  CHECK(b1.subset == std::vector<std::uint32_t>{1});

  const auto b2 = optimal_coverage(es, empty, 2, 1.5);
  CHECK(b2.coverage == 1.0);
  CHECK(b2.subset == std::vector<std::uint32_t>{1, 3});

  const auto all = optimal_coverage(es, empty, 4, 1.5);
  CHECK(all.coverage == 1.0);
  CHECK(all.subset == std::vector<std::uint32_t>{0, 1, 2, 3});
}

TEST_CASE("optimal_coverage agrees with brute force over center sets") {
  Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 5 + rng.next_index(10);
    const auto es = testutil::random_cloud(rng, n, 2);
    const double delta = 0.1 + rng.next_double() * 0.5;
    const auto sol = optimal_coverage(es, LabeledPool{}, 2, delta);
    double best = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = i + 1; j < n; ++j) {
        best = std::max(best, testutil::brute_coverage(es, {i, j}, delta));
      }
    }
    REQUIRE(sol.coverage == best);
    REQUIRE(testutil::brute_coverage(es, sol.subset, delta) == best);
  }
}

TEST_CASE("optimal_coverage respects the pool") {
  const auto es = line_fixture();
  const LabeledPool pool{{1}};
  const auto sol = optimal_coverage(es, pool, 1, 1.5);
  // The pool already covers {0,1,2}; only 3 adds anything.
  CHECK(sol.coverage == 1.0);
  CHECK(sol.subset == std::vector<std::uint32_t>{3});
}

TEST_CASE("optimal_kcenter on the line fixture") {
  const auto es = line_fixture();
  const LabeledPool empty;

  const auto b1 = optimal_kcenter(es, empty, 1);
  CHECK(b1.radius == Approx(8.0).margin(1e-12));
  CHECK(b1.subset == std::vector<std::uint32_t>{2});

  const auto b2 = optimal_kcenter(es, empty, 2);
  CHECK(b2.radius == Approx(1.0).margin(1e-12));
  CHECK(b2.subset == std::vector<std::uint32_t>{1, 3});

  const auto all = optimal_kcenter(es, empty, 4);
  CHECK(all.radius == 0.0);
}

TEST_CASE("oracle monotonicity in the budget") {
  Rng rng(67);
  const auto es = testutil::random_cloud(rng, 15, 2);
  double prev_cov = 0.0;
  double prev_rad = 1e18;
  for (std::size_t b = 1; b <= 4; ++b) {
    const auto cov = optimal_coverage(es, LabeledPool{}, b, 0.2);
    const auto rad = optimal_kcenter(es, LabeledPool{}, b);
    REQUIRE(cov.coverage >= prev_cov - 1e-12);
    REQUIRE(rad.radius <= prev_rad + 1e-12);
    prev_cov = cov.coverage;
    prev_rad = rad.radius;
  }
}

TEST_CASE("oracles refuse out-of-limit instances instead of approximating") {
  Rng rng(71);
  const auto big = testutil::random_cloud(rng, 30, 2);
  CHECK_THROWS_AS(optimal_coverage(big, LabeledPool{}, 2, 0.5), capacity_error);
  CHECK_THROWS_AS(optimal_kcenter(big, LabeledPool{}, 2), capacity_error);

  const auto small = testutil::random_cloud(rng, 10, 2);
  CHECK_THROWS_AS(optimal_coverage(small, LabeledPool{}, 6, 0.5), capacity_error);

  OracleBudgetLimit tight;
  tight.max_steps = 3;
  CHECK_THROWS_AS(optimal_coverage(small, LabeledPool{}, 3, 0.5, tight),
                  capacity_error);
  CHECK_THROWS_AS(optimal_coverage(small, LabeledPool{}, 0, 0.5), validation_error);
}

TEST_CASE("greedy guarantee holds against the oracle with a pool present") {
  Rng rng(73);
  const double factor = 1.0 - 1.0 / std::exp(1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 8 + rng.next_index(12);
    const auto es = testutil::random_cloud(rng, n, 2);
    const double delta = 0.1 + rng.next_double() * 0.5;
    const LabeledPool pool{{0, std::uint32_t(n / 2)}};
    const auto sel = select_probcover(es, pool, 2, delta);
    const auto opt = optimal_coverage(es, pool, 2, delta);
    // Both sides include the pool's balls; the greedy marginal guarantee
    // transfers to the absolute objective.
    std::vector<std::uint32_t> greedy_centers = pool.indices;
    greedy_centers.insert(greedy_centers.end(), sel.queried.begin(),
                          sel.queried.end());
    const double greedy_cov = testutil::brute_coverage(es, greedy_centers, delta);
    const double pool_cov = testutil::brute_coverage(es, pool.indices, delta);
    REQUIRE(greedy_cov - pool_cov >= factor * (opt.coverage - pool_cov) - 1e-12);
  }
}
