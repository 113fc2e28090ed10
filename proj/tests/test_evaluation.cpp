#include <catch2/catch.hpp>

#include <cmath>
#include <vector>

#include "probcover/evaluation.hpp"
#include "probcover/selection.hpp"
#include "test_helpers.hpp"

using namespace probcover;
using testutil::line_fixture;

TEST_CASE("compute_bound examples and validation") {
  CHECK(compute_bound(1.0, 1.0) == 0.0);
  CHECK(compute_bound(0.75, 0.9) == Approx(0.35).margin(1e-15));
  CHECK(compute_bound(0.1, 0.2) == 1.0);
  CHECK_THROWS_AS(compute_bound(-0.1, 0.5), validation_error);
  CHECK_THROWS_AS(compute_bound(0.5, 1.2), validation_error);
}

TEST_CASE("compute_bound matches the clamped formula on fuzzed inputs") {
  Rng rng(11);
  for (int i = 0; i < 3000; ++i) {
    const double c = rng.next_double();
    const double p = rng.next_double();
    const double expected = std::min(1.0, (1.0 - c) + (1.0 - p));
    REQUIRE(compute_bound(c, p) == Approx(expected).margin(1e-12));
  }
}

TEST_CASE("knn_accuracy basics") {
  const auto train = make_embedding_set(2, 1, {0.0, 10.0},
                                        std::vector<std::uint32_t>{0, 1});
  const auto test = make_embedding_set(2, 1, {1.0, 9.0},
                                       std::vector<std::uint32_t>{0, 1});
  CHECK(knn_accuracy(train, test) == 1.0);

  const auto one = make_embedding_set(1, 1, {5.0}, std::vector<std::uint32_t>{0});
  const auto all_a = make_embedding_set(3, 1, {1.0, 2.0, 3.0},
                                        std::vector<std::uint32_t>{0, 0, 0});
  const auto all_b = make_embedding_set(3, 1, {1.0, 2.0, 3.0},
                                        std::vector<std::uint32_t>{1, 1, 1});
  CHECK(knn_accuracy(one, all_a) == 1.0);
  CHECK(knn_accuracy(one, all_b) == 0.0);

  const auto unlabeled = make_embedding_set(1, 1, {0.0});
  CHECK_THROWS_AS(knn_accuracy(unlabeled, all_a), validation_error);
  const auto wrong_d = make_embedding_set(1, 2, {0.0, 0.0},
                                          std::vector<std::uint32_t>{0});
  CHECK_THROWS_WITH(knn_accuracy(train, wrong_d), Catch::Contains("dimension"));
}

TEST_CASE("knn ties go to the lowest train index") {
  const auto train = make_embedding_set(2, 1, {1.0, 3.0},
                                        std::vector<std::uint32_t>{7, 8});
  const auto test = make_embedding_set(1, 1, {2.0},
                                       std::vector<std::uint32_t>{7});
  CHECK(knn_accuracy(train, test) == 1.0);  // picks index 0, label 7
}

TEST_CASE("accelerated knn equals the naive all-pairs scan") {
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    MixtureSpec spec;
    spec.samples = 60 + rng.next_index(60);
    spec.seed = 1000 + trial;
    spec.components = {{{0.0, 0.0, 0.0}, 1.0, 1.0, 0},
                       {{3.0, 0.0, 0.0}, 1.0, 1.0, 1},
                       {{0.0, 3.0, 0.0}, 1.0, 2.0, 2}};
    const auto data = generate_mixture(spec);
    spec.seed += 5000;
    spec.samples = 40;
    const auto test = generate_mixture(spec);
    REQUIRE(knn_accuracy(data, test) == testutil::brute_knn_accuracy(data, test));
  }
}

TEST_CASE("knn_accuracy is invariant under a joint isometry") {
  Rng rng(29);
  const auto train_pts = testutil::random_cloud(rng, 20, 2);
  const auto test_pts = testutil::random_cloud(rng, 15, 2);
  std::vector<std::uint32_t> train_lab, test_lab;
  for (int i = 0; i < 20; ++i) train_lab.push_back(std::uint32_t(rng.next_index(3)));
  for (int i = 0; i < 15; ++i) test_lab.push_back(std::uint32_t(rng.next_index(3)));
  const auto train = make_embedding_set(20, 2, train_pts.points, train_lab);
  const auto test = make_embedding_set(15, 2, test_pts.points, test_lab);

  const double theta = 1.234, tx = 4.0, ty = -2.0;
  const auto transform = [&](const EmbeddingSet& es) {
    std::vector<double> pts(es.n * 2);
    for (std::size_t i = 0; i < es.n; ++i) {
      const double x = es.row(i)[0], y = es.row(i)[1];
      pts[i * 2] = std::cos(theta) * x - std::sin(theta) * y + tx;
      pts[i * 2 + 1] = std::sin(theta) * x + std::cos(theta) * y + ty;
    }
    return make_embedding_set(es.n, 2, std::move(pts), *es.labels);
  };
  CHECK(knn_accuracy(train, test) ==
        knn_accuracy(transform(train), transform(test)));
}

TEST_CASE("evaluate composes the metrics on the line fixture") {
  const auto es = line_fixture(std::vector<std::uint32_t>{0, 0, 0, 1});
  Selection sel;
  sel.queried = {1, 3};
  const auto report = evaluate(es, sel, LabeledPool{}, 1.5, es);
  CHECK(report.coverage == 1.0);
  REQUIRE(report.purity_true.has_value());
  CHECK(*report.purity_true == 1.0);
  REQUIRE(report.bound.has_value());
  CHECK(*report.bound == 0.0);
  REQUIRE(report.knn_accuracy.has_value());
  CHECK(*report.knn_accuracy == 1.0);
  CHECK(report.b == 2);
}

TEST_CASE("evaluate with every point labeled") {
  const auto es = line_fixture(std::vector<std::uint32_t>{0, 0, 1, 1});
  Selection sel;
  sel.queried = {0, 1, 2, 3};
  const auto report = evaluate(es, sel, LabeledPool{}, 0.25, es);
  CHECK(report.coverage == 1.0);
  CHECK(*report.knn_accuracy == 1.0);  // train equals test population
}

TEST_CASE("evaluate validations") {
  const auto es = line_fixture(std::vector<std::uint32_t>{0, 0, 0, 1});
  Selection sel;
  sel.queried = {1};
  const auto test3d = make_embedding_set(2, 3, std::vector<double>(6, 0.0),
                                         std::vector<std::uint32_t>{0, 0});
  CHECK_THROWS_WITH(evaluate(es, sel, LabeledPool{}, 1.5, test3d),
                    Catch::Contains("dimension"));
  Selection empty_sel;
  CHECK_THROWS_AS(evaluate(es, empty_sel, LabeledPool{}, 1.5, es),
                  validation_error);
  CHECK_THROWS_AS(evaluate(es, sel, LabeledPool{}, -1.0, es), validation_error);
}

TEST_CASE("observed 1-NN error never exceeds the bound on the same sample") {
  // Train, coverage, and purity all live on the same finite set, where the
  // bound argument is airtight: a covered point with a pure ball must be
  // classified correctly.
  Rng rng(47);
  for (int trial = 0; trial < 15; ++trial) {
    MixtureSpec spec;
    spec.samples = 50 + rng.next_index(50);
    spec.seed = 400 + trial;
    spec.components = {{{0.0, 0.0}, 0.5, 1.0, 0},
                       {{4.0, 0.0}, 0.5, 1.0, 1},
                       {{0.0, 4.0}, 0.5, 1.0, 2}};
    const auto es = generate_mixture(spec);
    const double delta = 0.3 + rng.next_double() * 1.2;
    const std::size_t b = 2 + rng.next_index(6);
    const auto sel = select_probcover(es, LabeledPool{}, b, delta);
    const auto report = evaluate(es, sel, LabeledPool{}, delta, es);
    REQUIRE(report.bound.has_value());
    if (*report.bound < 1.0) {
      const double error = 1.0 - *report.knn_accuracy;
      REQUIRE(error <= *report.bound + 1e-12);
    }
  }
}

TEST_CASE("adding a labeled point never decreases coverage") {
  Rng rng(53);
  auto es = testutil::random_cloud(rng, 30, 2);
  es.labels.emplace(30, 0);
  const double delta = 0.25;
  Selection sel;
  sel.queried = {3, 9};
  const auto base = evaluate(es, sel, LabeledPool{}, delta, es);
  sel.queried.push_back(17);
  const auto more = evaluate(es, sel, LabeledPool{}, delta, es);
  CHECK(more.coverage >= base.coverage);
}

TEST_CASE("report serialization") {
  EvalReport r;
  r.coverage = 0.75;
  r.purity_true = 1.0;
  r.bound = 0.25;
  r.knn_accuracy = 0.5;
  r.delta = 1.5;
  r.b = 2;
  CHECK(report_kv(r) ==
        "coverage=0.75\npurity=1\nbound=0.25\nknn_accuracy=0.5\ndelta=1.5\nb=2\n");
  CHECK(report_csv_row(r) == "1.5,2,0.75,1,0.25,0.5");

  EvalReport bare;
  bare.coverage = 0.5;
  bare.delta = 2.0;
  bare.b = 1;
  CHECK(report_kv(bare) == "coverage=0.5\ndelta=2\nb=1\n");
  CHECK(report_csv_row(bare) == "2,1,0.5,,,");
}
