#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "probcover/common.hpp"
#include "probcover/embedding_set.hpp"
#include "probcover/selection.hpp"

namespace probcover {

/// Ceilings for the exhaustive solvers. They refuse (capacity_error) rather
/// than approximate past these limits; a silently degraded oracle would be
/// worse than none.
struct OracleBudgetLimit {
  std::size_t max_n = 25;
  std::size_t max_b = 5;
  double max_steps = 1e7;
};

struct CoverageSolution {
  double coverage = 0.0;
  std::vector<std::uint32_t> subset;
};

struct KCenterSolution {
  double radius = 0.0;
  std::vector<std::uint32_t> subset;
};

namespace detail {

inline double choose_count(std::size_t m, std::size_t b) {
  double c = 1.0;
  for (std::size_t i = 0; i < b; ++i) {
    c *= static_cast<double>(m - i) / static_cast<double>(i + 1);
    if (c > 1e18) return c;
  }
  return c;
}

inline std::vector<std::uint32_t> oracle_candidates(
    const EmbeddingSet& es, const std::vector<std::uint32_t>& pool_idx,
    std::size_t b, const OracleBudgetLimit& limit) {
  if (b == 0) throw validation_error("oracle: budget must be positive");
  if (es.n > limit.max_n)
    throw capacity_error("oracle: n=" + std::to_string(es.n) +
                         " exceeds the limit of " + std::to_string(limit.max_n));
  if (b > limit.max_b)
    throw capacity_error("oracle: b=" + std::to_string(b) +
                         " exceeds the limit of " + std::to_string(limit.max_b));
  std::vector<char> in_pool(es.n, 0);
  for (std::uint32_t c : pool_idx) in_pool[c] = 1;
  std::vector<std::uint32_t> cands;
  for (std::size_t i = 0; i < es.n; ++i) {
    if (!in_pool[i]) cands.push_back(static_cast<std::uint32_t>(i));
  }
  if (b > cands.size())
    throw validation_error("oracle: budget exceeds available unlabeled points");
  const double steps = choose_count(cands.size(), b);
  if (steps > limit.max_steps)
    throw capacity_error("oracle: enumeration needs about " +
                         std::to_string(steps) + " subsets, over the step budget of " +
                         std::to_string(limit.max_steps));
  return cands;
}

/// Lexicographic b-subset enumeration over [0, m); fn receives the index
/// tuple. Visits combinations in ascending lexicographic order, so the first
/// optimum kept is the lexicographically smallest.
template <typename Fn>
void for_each_combination(std::size_t m, std::size_t b, Fn&& fn) {
  std::vector<std::size_t> comb(b);
  for (std::size_t i = 0; i < b; ++i) comb[i] = i;
  for (;;) {
    fn(comb);
    std::size_t i = b;
    while (i-- > 0) {
      if (comb[i] != i + m - b) break;
      if (i == 0) return;
    }
    if (comb[i] == i + m - b) return;
    ++comb[i];
    for (std::size_t j = i + 1; j < b; ++j) comb[j] = comb[j - 1] + 1;
  }
}

}  // namespace detail

/// Exact max coverage by exhaustive enumeration of b-subsets of the
/// unlabeled indices, scored together with the pool's balls. Returns the
/// best empirical coverage and the lexicographically smallest subset
/// attaining it.
inline CoverageSolution optimal_coverage(const EmbeddingSet& es,
                                         const LabeledPool& pool, std::size_t b,
                                         double delta,
                                         OracleBudgetLimit limit = {}) {
  if (!(delta > 0.0)) throw validation_error("delta must be positive");
  const auto pool_idx = detail::normalized_pool(pool, es.n);
  const auto cands = detail::oracle_candidates(es, pool_idx, b, limit);

  const std::size_t words = (es.n + 63) / 64;
  const double delta2 = delta * delta;
  std::vector<std::vector<std::uint64_t>> ball(es.n,
                                               std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < es.n; ++i) {
    for (std::size_t j = 0; j < es.n; ++j) {
      if (es.dist2(i, j) <= delta2) ball[i][j / 64] |= std::uint64_t(1) << (j % 64);
    }
  }
  std::vector<std::uint64_t> base(words, 0);
  for (std::uint32_t c : pool_idx) {
    for (std::size_t w = 0; w < words; ++w) base[w] |= ball[c][w];
  }

  std::size_t best_count = 0;
  std::vector<std::uint32_t> best_subset;
  std::vector<std::uint64_t> acc(words);
  detail::for_each_combination(cands.size(), b, [&](const std::vector<std::size_t>& comb) {
    acc = base;
    for (std::size_t pos : comb) {
      const auto& m = ball[cands[pos]];
      for (std::size_t w = 0; w < words; ++w) acc[w] |= m[w];
    }
    std::size_t count = 0;
    for (std::uint64_t w : acc) count += std::popcount(w);
    if (count > best_count || best_subset.empty()) {
      best_count = count;
      best_subset.clear();
      for (std::size_t pos : comb) best_subset.push_back(cands[pos]);
    }
  });
  return {static_cast<double>(best_count) / static_cast<double>(es.n), best_subset};
}

/// Exact k-center by exhaustive enumeration: minimizes coreset_radius over
/// b-subsets of the unlabeled indices joined with the pool.
inline KCenterSolution optimal_kcenter(const EmbeddingSet& es,
                                       const LabeledPool& pool, std::size_t b,
                                       OracleBudgetLimit limit = {}) {
  const auto pool_idx = detail::normalized_pool(pool, es.n);
  const auto cands = detail::oracle_candidates(es, pool_idx, b, limit);

  std::vector<double> dist2(es.n * es.n);
  for (std::size_t i = 0; i < es.n; ++i) {
    for (std::size_t j = 0; j < es.n; ++j) dist2[i * es.n + j] = es.dist2(i, j);
  }
  std::vector<double> pool_d2(es.n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < es.n; ++i) {
    for (std::uint32_t c : pool_idx)
      pool_d2[i] = std::min(pool_d2[i], dist2[i * es.n + c]);
  }

  double best_r2 = std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> best_subset;
  detail::for_each_combination(cands.size(), b, [&](const std::vector<std::size_t>& comb) {
    double worst = 0.0;
    for (std::size_t i = 0; i < es.n; ++i) {
      double nearest = pool_d2[i];
      for (std::size_t pos : comb)
        nearest = std::min(nearest, dist2[i * es.n + cands[pos]]);
      worst = std::max(worst, nearest);
      if (worst >= best_r2 && !best_subset.empty()) break;
    }
    if (worst < best_r2 || best_subset.empty()) {
      best_r2 = worst;
      best_subset.clear();
      for (std::size_t pos : comb) best_subset.push_back(cands[pos]);
    }
  });
  return {std::sqrt(best_r2), best_subset};
}

}  // namespace probcover
