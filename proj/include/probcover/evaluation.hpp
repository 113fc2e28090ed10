#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "probcover/common.hpp"
#include "probcover/cover_graph.hpp"
#include "probcover/delta_estimation.hpp"
#include "probcover/embedding_set.hpp"
#include "probcover/selection.hpp"

namespace probcover {

/// Scores for one selection at one radius. purity/bound/knn are absent when
/// the labels they need are missing.
struct EvalReport {
  double coverage = 0.0;
  std::optional<double> purity_true;
  std::optional<double> bound;
  std::optional<double> knn_accuracy;
  double delta = 0.0;
  std::size_t b = 0;
};

/// Generalization-error bound for the 1-NN classifier:
/// (1 - coverage) + (1 - purity), clamped at the trivial bound 1.
inline double compute_bound(double coverage, double purity) {
  if (!(coverage >= 0.0 && coverage <= 1.0))
    throw validation_error("compute_bound: coverage outside [0, 1]");
  if (!(purity >= 0.0 && purity <= 1.0))
    throw validation_error("compute_bound: purity outside [0, 1]");
  return std::min(1.0, (1.0 - coverage) + (1.0 - purity));
}

/// 1-NN accuracy of test points against the labeled train set. Exact ties
/// resolve to the lowest train index. The inner scan abandons a candidate as
/// soon as its partial squared distance exceeds the incumbent.
inline double knn_accuracy(const EmbeddingSet& train, const EmbeddingSet& test) {
  if (!train.has_labels())
    throw validation_error("knn_accuracy: train set is unlabeled");
  if (!test.has_labels())
    throw validation_error("knn_accuracy: test set is unlabeled");
  if (train.d != test.d)
    throw validation_error("knn_accuracy: dimension mismatch (train d=" +
                           std::to_string(train.d) + ", test d=" +
                           std::to_string(test.d) + ")");
  const std::size_t d = train.d;
  std::vector<char> correct(test.n, 0);
  parallel_for(0, test.n, [&](std::size_t t) {
    const double* q = test.row(t);
    std::size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < train.n; ++i) {
      const double* p = train.row(i);
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = q[k] - p[k];
        s += diff * diff;
        if (s > best_d2) break;
      }
      if (s < best_d2) {
        best_d2 = s;
        best = i;
      }
    }
    correct[t] = (*train.labels)[best] == (*test.labels)[t];
  });
  std::size_t hits = 0;
  for (char c : correct) hits += c != 0;
  return static_cast<double>(hits) / static_cast<double>(test.n);
}

/// Full scoring of a selection: coverage of the labeled set's delta-balls,
/// true-label purity at delta, the bound, and 1-NN accuracy on the test set
/// with the labeled points as the train set.
inline EvalReport evaluate(const EmbeddingSet& es, const Selection& sel,
                           const LabeledPool& pool, double delta,
                           const EmbeddingSet& test,
                           GraphAccel accel = GraphAccel::grid) {
  if (!(delta > 0.0)) throw validation_error("delta must be positive");
  std::vector<std::uint32_t> labeled = pool.indices;
  labeled.insert(labeled.end(), sel.queried.begin(), sel.queried.end());
  std::sort(labeled.begin(), labeled.end());
  labeled.erase(std::unique(labeled.begin(), labeled.end()), labeled.end());
  if (labeled.empty())
    throw validation_error("evaluate: no labeled points (pool and selection empty)");
  if (labeled.back() >= es.n)
    throw validation_error("evaluate: labeled index out of range");
  if (test.d != es.d)
    throw validation_error("evaluate: dimension mismatch (dataset d=" +
                           std::to_string(es.d) + ", test d=" +
                           std::to_string(test.d) + ")");
  if (!test.has_labels())
    throw validation_error("evaluate: test set must carry labels");

  EvalReport report;
  report.delta = delta;
  report.b = sel.queried.size();
  const CoverGraph g = build_graph(es, delta, accel);
  report.coverage = g.coverage(labeled);
  if (es.has_labels()) {
    report.purity_true = purity(es, *es.labels, delta);
    report.bound = compute_bound(report.coverage, *report.purity_true);
    report.knn_accuracy = knn_accuracy(subset(es, labeled), test);
  }
  return report;
}

/// Flat key=value record, one field per line; absent fields are omitted.
inline std::string report_kv(const EvalReport& r) {
  std::string out;
  out += "coverage=" + detail::fmt_double(r.coverage) + "\n";
  if (r.purity_true) out += "purity=" + detail::fmt_double(*r.purity_true) + "\n";
  if (r.bound) out += "bound=" + detail::fmt_double(*r.bound) + "\n";
  if (r.knn_accuracy)
    out += "knn_accuracy=" + detail::fmt_double(*r.knn_accuracy) + "\n";
  out += "delta=" + detail::fmt_double(r.delta) + "\n";
  out += "b=" + std::to_string(r.b) + "\n";
  return out;
}

inline std::string report_csv_header() {
  return "delta,b,coverage,purity,bound,knn_accuracy";
}

/// CSV row matching report_csv_header(); absent fields stay empty.
inline std::string report_csv_row(const EvalReport& r) {
  std::string out = detail::fmt_double(r.delta) + "," + std::to_string(r.b) +
                    "," + detail::fmt_double(r.coverage) + ",";
  if (r.purity_true) out += detail::fmt_double(*r.purity_true);
  out += ",";
  if (r.bound) out += detail::fmt_double(*r.bound);
  out += ",";
  if (r.knn_accuracy) out += detail::fmt_double(*r.knn_accuracy);
  return out;
}

}  // namespace probcover
