#include <catch2/catch.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "probcover/cover_graph.hpp"
#include "probcover/oracle.hpp"
#include "probcover/selection.hpp"
#include "test_helpers.hpp"

using namespace probcover;
using testutil::line_fixture;

namespace {

/// True when every greedy argmax along the run is unique, so index
/// tie-breaking never fires and equivariance must hold exactly.
bool greedy_tie_free(const EmbeddingSet& es, double delta, std::size_t b) {
  auto g = build_graph(es, delta, GraphAccel::naive);
  std::vector<char> excluded(es.n, 0);
  for (std::size_t t = 0; t < b; ++t) {
    std::size_t best = es.n;
    int best_count = 0;
    for (std::size_t i = 0; i < es.n; ++i) {
      if (excluded[i]) continue;
      if (best == es.n || g.out_degree[i] > g.out_degree[best]) {
        best = i;
        best_count = 1;
      } else if (g.out_degree[i] == g.out_degree[best]) {
        ++best_count;
      }
    }
    if (best_count != 1) return false;
    g.mark_covered(best);
    excluded[best] = 1;
  }
  return true;
}

}  // namespace

TEST_CASE("select_probcover on the line fixture") {
  const auto es = line_fixture();
  const LabeledPool empty;

  const auto b1 = select_probcover(es, empty, 1, 1.5);
  CHECK(b1.queried == std::vector<std::uint32_t>{1});
  CHECK(b1.coverage_trace == std::vector<double>{0.75});

  // Brute force over single centers confirms 1 is the unique maximizer.
  for (std::uint32_t c = 0; c < 4; ++c) {
    const double cov = testutil::brute_coverage(es, {c}, 1.5);
    if (c != 1) CHECK(cov < 0.75);
  }

  const auto b2 = select_probcover(es, empty, 2, 1.5);
  CHECK(b2.queried == std::vector<std::uint32_t>{1, 3});
  CHECK(b2.coverage_trace == std::vector<double>{0.75, 1.0});
  const auto opt = optimal_coverage(es, empty, 2, 1.5);
  CHECK(opt.coverage == 1.0);
  CHECK(b2.coverage_trace.back() == opt.coverage);

  const LabeledPool pool{{1}};
  const auto with_pool = select_probcover(es, pool, 1, 1.5);
  CHECK(with_pool.queried == std::vector<std::uint32_t>{3});
  CHECK(with_pool.coverage_trace == std::vector<double>{1.0});
}

TEST_CASE("select_probcover validations") {
  const auto es = line_fixture();
  const LabeledPool empty;
  CHECK_THROWS_AS(select_probcover(es, empty, 5, 1.5), validation_error);
  CHECK_THROWS_AS(select_probcover(es, empty, 1, 0.0), validation_error);
  CHECK_THROWS_AS(select_probcover(es, LabeledPool{{7}}, 1, 1.5), validation_error);
}

TEST_CASE("saturated greedy still returns exactly b unique indices") {
  const auto es = line_fixture();
  const LabeledPool empty;
  const auto sel = select_probcover(es, empty, 4, 100.0);
  CHECK(sel.queried.size() == 4);
  std::set<std::uint32_t> uniq(sel.queried.begin(), sel.queried.end());
  CHECK(uniq.size() == 4);
  CHECK(sel.coverage_trace.back() == 1.0);
  // One ball covers everything; the rest fall back to lowest-index picks.
  CHECK(sel.queried == std::vector<std::uint32_t>{0, 1, 2, 3});
}

TEST_CASE("coverage_trace is non-decreasing with non-increasing gains") {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 6 + rng.next_index(30);
    const auto es = testutil::random_cloud(rng, n, 2);
    const double delta = 0.1 + rng.next_double() * 0.5;
    const std::size_t b = 1 + rng.next_index(std::min<std::size_t>(n, 6));
    const auto sel = select_probcover(es, LabeledPool{}, b, delta);
    REQUIRE(sel.queried.size() == b);
    double prev = 0.0;
    double prev_gain = 2.0;
    for (double c : sel.coverage_trace) {
      REQUIRE(c >= prev - 1e-12);
      const double gain = c - prev;
      REQUIRE(gain <= prev_gain + 1e-12);
      prev_gain = gain;
      prev = c;
    }
    REQUIRE(prev >= 0.0);
    REQUIRE(prev <= 1.0);
    // The trace matches a recomputation from scratch.
    CHECK(sel.coverage_trace.back() ==
          Approx(testutil::brute_coverage(es, sel.queried, delta)).margin(0));
  }
}

TEST_CASE("greedy first pick attains the optimal single-ball coverage") {
  Rng rng(77);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 5 + rng.next_index(15);
    const auto es = testutil::random_cloud(rng, n, 2);
    const double delta = 0.1 + rng.next_double() * 0.6;
    const auto sel = select_probcover(es, LabeledPool{}, 1, delta);
    const auto opt = optimal_coverage(es, LabeledPool{}, 1, delta);
    REQUIRE(sel.coverage_trace[0] == opt.coverage);
  }
}

TEST_CASE("greedy satisfies the (1 - 1/e) guarantee on small instances") {
  Rng rng(515);
  const double factor = 1.0 - 1.0 / std::exp(1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 5 + rng.next_index(16);  // n <= 20
    const auto es = testutil::random_cloud(rng, n, 2);
    const double delta = 0.05 + rng.next_double() * 0.7;
    const std::size_t b = 1 + rng.next_index(4);
    const auto sel = select_probcover(es, LabeledPool{}, b, delta);
    const auto opt = optimal_coverage(es, LabeledPool{}, b, delta);
    REQUIRE(sel.coverage_trace.back() >= factor * opt.coverage - 1e-12);
  }
}

TEST_CASE("multi-round greedy with pool resume equals one large selection") {
  Rng rng(900);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 10 + rng.next_index(30);
    const auto es = testutil::random_cloud(rng, n, 2);
    const double delta = 0.1 + rng.next_double() * 0.4;
    const auto whole = select_probcover(es, LabeledPool{}, 6, delta);

    std::vector<std::uint32_t> accumulated;
    for (int round = 0; round < 3; ++round) {
      const auto part = select_probcover(es, LabeledPool{accumulated}, 2, delta);
      accumulated.insert(accumulated.end(), part.queried.begin(),
                         part.queried.end());
    }
    REQUIRE(accumulated == whole.queried);
  }
}

TEST_CASE("permutation equivariance on tie-free instances") {
  Rng rng(1234);
  int tested = 0;
  while (tested < 10) {
    const std::size_t n = 8 + rng.next_index(12);
    const auto es = testutil::random_cloud(rng, n, 2);
    const auto maybe_delta = testutil::gap_guarded_delta(es, rng);
    if (!maybe_delta) continue;
    const double delta = *maybe_delta;
    const std::size_t b = 1 + rng.next_index(3);
    if (!greedy_tie_free(es, delta, b)) continue;

    std::vector<std::uint32_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = std::uint32_t(i);
    rng.shuffle(perm);
    std::vector<double> pts(n * es.d);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < es.d; ++k)
        pts[std::size_t(perm[i]) * es.d + k] = es.row(i)[k];
    }
    const auto permuted = make_embedding_set(n, es.d, std::move(pts));

    const auto base = select_probcover(es, LabeledPool{}, b, delta);
    const auto moved = select_probcover(permuted, LabeledPool{}, b, delta);
    REQUIRE(moved.queried.size() == base.queried.size());
    for (std::size_t t = 0; t < base.queried.size(); ++t)
      REQUIRE(moved.queried[t] == perm[base.queried[t]]);
    ++tested;
  }
}

TEST_CASE("isometry invariance: rotation plus translation") {
  Rng rng(5678);
  int tested = 0;
  while (tested < 10) {
    const std::size_t n = 8 + rng.next_index(12);
    const auto es = testutil::random_cloud(rng, n, 2);
    const auto maybe_delta = testutil::gap_guarded_delta(es, rng);
    if (!maybe_delta) continue;
    const double delta = *maybe_delta;

    const double theta = rng.next_double() * 6.28;
    const double tx = rng.next_double() * 10 - 5, ty = rng.next_double() * 10 - 5;
    std::vector<double> pts(n * 2);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = es.row(i)[0], y = es.row(i)[1];
      pts[i * 2] = std::cos(theta) * x - std::sin(theta) * y + tx;
      pts[i * 2 + 1] = std::sin(theta) * x + std::cos(theta) * y + ty;
    }
    const auto moved_es = make_embedding_set(n, 2, std::move(pts));

    const auto base = select_probcover(es, LabeledPool{}, 3, delta);
    const auto moved = select_probcover(moved_es, LabeledPool{}, 3, delta);
    REQUIRE(moved.queried == base.queried);
    ++tested;
  }
}

TEST_CASE("select_probcover_pairs on the line fixture") {
  const auto es = line_fixture();
  const auto b2 = select_probcover_pairs(es, LabeledPool{}, 2, 1.5);
  std::set<std::uint32_t> picked(b2.queried.begin(), b2.queried.end());
  CHECK(picked == std::set<std::uint32_t>{1, 3});
  CHECK(b2.coverage_trace.back() == 1.0);

  const auto b1 = select_probcover_pairs(es, LabeledPool{}, 1, 1.5);
  CHECK(b1.queried == std::vector<std::uint32_t>{1});
}

TEST_CASE("pair steps never trail two sequential single-greedy picks") {
  Rng rng(31337);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 6 + rng.next_index(35);  // n <= 40
    const auto es = testutil::random_cloud(rng, n, 2);
    const double delta = 0.1 + rng.next_double() * 0.5;
    const std::size_t b = 2 + 2 * rng.next_index(2);  // 2 or 4
    if (b > n) continue;

    const auto pairs = select_probcover_pairs(es, LabeledPool{}, b, delta);
    REQUIRE(pairs.queried.size() == b);

    // Replay each pair iteration: from the same prefix state the chosen
    // pair's joint gain must be at least what two single-greedy picks get.
    auto g = build_graph(es, delta, GraphAccel::naive);
    std::vector<char> excluded(es.n, 0);
    for (std::size_t t = 0; t + 1 < b; t += 2) {
      auto sim = g;
      auto sim_excluded = excluded;
      std::size_t single_gain = 0;
      for (int pick = 0; pick < 2; ++pick) {
        std::size_t best = es.n;
        for (std::size_t i = 0; i < es.n; ++i) {
          if (sim_excluded[i]) continue;
          if (best == es.n || sim.out_degree[i] > sim.out_degree[best]) best = i;
        }
        single_gain += sim.mark_covered(best);
        sim_excluded[best] = 1;
      }
      std::size_t pair_gain = 0;
      pair_gain += g.mark_covered(pairs.queried[t]);
      excluded[pairs.queried[t]] = 1;
      pair_gain += g.mark_covered(pairs.queried[t + 1]);
      excluded[pairs.queried[t + 1]] = 1;
      REQUIRE(pair_gain >= single_gain);
    }
  }
}

TEST_CASE("select_coreset on the line fixture") {
  const auto es = line_fixture();
  const LabeledPool pool{{1}};

  const auto b1 = select_coreset(es, pool, 1, 0);
  CHECK(b1.queried == std::vector<std::uint32_t>{3});

  const auto b2 = select_coreset(es, pool, 2, 0);
  CHECK(b2.queried == std::vector<std::uint32_t>{3, 0});
  REQUIRE(b2.radius_trace.size() == 2);
  CHECK(b2.radius_trace[0] == Approx(9.0).margin(1e-12));
  CHECK(b2.radius_trace[1] == Approx(1.0).margin(1e-12));
}

TEST_CASE("coreset radius trace is non-increasing") {
  Rng rng(246);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 8 + rng.next_index(30);
    const auto es = testutil::random_cloud(rng, n, 3);
    const auto sel = select_coreset(es, LabeledPool{}, std::min<std::size_t>(n, 7),
                                    trial);
    for (std::size_t i = 1; i < sel.radius_trace.size(); ++i)
      REQUIRE(sel.radius_trace[i] <= sel.radius_trace[i - 1] + 1e-12);
  }
}

TEST_CASE("coreset cold start is seeded and deterministic") {
  Rng rng(888);
  const auto es = testutil::random_cloud(rng, 20, 2);
  const auto a = select_coreset(es, LabeledPool{}, 5, 99);
  const auto b = select_coreset(es, LabeledPool{}, 5, 99);
  CHECK(a.queried == b.queried);
  CHECK(a.radius_trace == b.radius_trace);
}

TEST_CASE("coreset_radius examples") {
  const auto es = line_fixture();
  const std::vector<std::uint32_t> one = {1};
  CHECK(coreset_radius(es, one) == Approx(9.0).margin(1e-12));
  const std::vector<std::uint32_t> all = {0, 1, 2, 3};
  CHECK(coreset_radius(es, all) == 0.0);
  CHECK_THROWS_AS(coreset_radius(es, std::vector<std::uint32_t>{}),
                  validation_error);
}

TEST_CASE("coreset stays within twice the optimal k-center radius") {
  Rng rng(135);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 6 + rng.next_index(19);  // n <= 25
    const auto es = testutil::random_cloud(rng, n, 2);
    const std::size_t b = 1 + rng.next_index(4);
    const LabeledPool pool;
    const auto sel = select_coreset(es, pool, b, trial);
    const auto opt = optimal_kcenter(es, pool, b);
    const double achieved = coreset_radius(es, sel.queried);
    REQUIRE(achieved <= 2.0 * opt.radius + 1e-9);
  }
}

TEST_CASE("select_random basics") {
  const auto es = line_fixture();
  const LabeledPool pool{{1}};

  const auto all = select_random(es, pool, 3, 5);
  std::set<std::uint32_t> got(all.queried.begin(), all.queried.end());
  CHECK(got == std::set<std::uint32_t>{0, 2, 3});

  const auto a = select_random(es, pool, 2, 7);
  const auto b = select_random(es, pool, 2, 7);
  CHECK(a.queried == b.queried);

  CHECK_THROWS_AS(select_random(es, pool, 4, 5), validation_error);
}

TEST_CASE("select_random frequencies stay within five sigma of uniform") {
  Rng rng(0);
  std::vector<double> pts;
  for (int i = 0; i < 10; ++i) pts.push_back(double(i));
  const auto es = make_embedding_set(10, 1, std::move(pts));

  std::vector<std::size_t> counts(10, 0);
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    const auto sel = select_random(es, LabeledPool{}, 1, 1000 + t);
    ++counts[sel.queried[0]];
  }
  const double p = 0.1;
  const double sigma = std::sqrt(p * (1 - p) / trials);
  for (std::size_t i = 0; i < 10; ++i) {
    const double freq = double(counts[i]) / trials;
    REQUIRE(std::abs(freq - p) <= 5 * sigma);
  }
}
