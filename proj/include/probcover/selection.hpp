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
#include "probcover/embedding_set.hpp"
#include "probcover/rng.hpp"

namespace probcover {

/// Indices that already carry labels before selection starts.
struct LabeledPool {
  std::vector<std::uint32_t> indices;
};

/// Result of one selection run: the queried indices in pick order plus the
/// per-pick trace. coverage_trace is filled by the probcover strategies,
/// radius_trace by coreset; delta/seed record what the run actually used.
struct Selection {
  std::string strategy;
  std::vector<std::uint32_t> queried;
  std::vector<double> coverage_trace;
  std::vector<double> radius_trace;
  std::optional<double> delta;
  std::optional<std::uint64_t> seed;
};

namespace detail {

inline std::vector<std::uint32_t> normalized_pool(const LabeledPool& pool,
                                                  std::size_t n) {
  std::vector<std::uint32_t> idx = pool.indices;
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  if (!idx.empty() && idx.back() >= n)
    throw validation_error("labeled pool index " + std::to_string(idx.back()) +
                           " out of range");
  return idx;
}

inline void check_budget(std::size_t b, std::size_t n, std::size_t pool_size) {
  if (b == 0) throw validation_error("budget must be positive");
  if (b > n - pool_size)
    throw validation_error("budget " + std::to_string(b) + " exceeds the " +
                           std::to_string(n - pool_size) +
                           " available unlabeled points");
}

}  // namespace detail

/// Greedy max-coverage selection over the delta-ball graph: repeatedly query
/// the vertex whose ball covers the most not-yet-covered vertices. Pool
/// members are pre-covered and never re-queried. Fully deterministic; ties
/// and the covered-everything case both resolve to the lowest eligible
/// index, so exactly b indices always come back.
inline Selection select_probcover(const EmbeddingSet& es, const LabeledPool& pool,
                                  std::size_t b, double delta,
                                  GraphAccel accel = GraphAccel::grid,
                                  std::size_t max_edges = kDefaultEdgeBudget) {
  const auto pool_idx = detail::normalized_pool(pool, es.n);
  detail::check_budget(b, es.n, pool_idx.size());
  if (!(delta > 0.0)) throw validation_error("delta must be positive");

  CoverGraph g = build_graph(es, delta, accel, max_edges);
  std::size_t covered_total = 0;
  std::vector<char> excluded(es.n, 0);
  for (std::uint32_t c : pool_idx) {
    covered_total += g.mark_covered(c);
    excluded[c] = 1;
  }

  Selection sel;
  sel.strategy = "probcover";
  sel.delta = delta;
  sel.queried.reserve(b);
  sel.coverage_trace.reserve(b);
  for (std::size_t t = 0; t < b; ++t) {
    std::size_t best = es.n;
    for (std::size_t i = 0; i < es.n; ++i) {
      if (excluded[i]) continue;
      if (best == es.n || g.out_degree[i] > g.out_degree[best]) best = i;
    }
    covered_total += g.mark_covered(best);
    excluded[best] = 1;
    sel.queried.push_back(static_cast<std::uint32_t>(best));
    sel.coverage_trace.push_back(static_cast<double>(covered_total) /
                                 static_cast<double>(es.n));
  }
  return sel;
}

/// Two-ball variant: each iteration exhaustively picks the candidate pair
/// with the largest joint marginal coverage (lexicographically first pair on
/// ties) and queries both; a final odd pick falls back to the best single
/// vertex. O(n^2) pair scan per iteration, with the overlap count skipped
/// whenever the degree sum already cannot beat the incumbent.
inline Selection select_probcover_pairs(const EmbeddingSet& es,
                                        const LabeledPool& pool, std::size_t b,
                                        double delta,
                                        GraphAccel accel = GraphAccel::grid,
                                        std::size_t max_edges = kDefaultEdgeBudget) {
  const auto pool_idx = detail::normalized_pool(pool, es.n);
  detail::check_budget(b, es.n, pool_idx.size());
  if (!(delta > 0.0)) throw validation_error("delta must be positive");

  CoverGraph g = build_graph(es, delta, accel, max_edges);
  std::size_t covered_total = 0;
  std::vector<char> excluded(es.n, 0);
  for (std::uint32_t c : pool_idx) {
    covered_total += g.mark_covered(c);
    excluded[c] = 1;
  }

  Selection sel;
  sel.strategy = "probcover-pairs";
  sel.delta = delta;

  const auto push_pick = [&](std::size_t v) {
    covered_total += g.mark_covered(v);
    excluded[v] = 1;
    sel.queried.push_back(static_cast<std::uint32_t>(v));
    sel.coverage_trace.push_back(static_cast<double>(covered_total) /
                                 static_cast<double>(es.n));
  };

  // Live vertices shared by both balls; their union gain is
  // deg(u) + deg(v) - overlap.
  const auto overlap_uncovered = [&](std::size_t u, std::size_t v) {
    const auto& eu = g.out_edges[u];
    const auto& ev = g.out_edges[v];
    std::size_t a = 0, c = 0, shared = 0;
    while (a < eu.size() && c < ev.size()) {
      if (eu[a] < ev[c]) {
        ++a;
      } else if (eu[a] > ev[c]) {
        ++c;
      } else {
        shared += !g.covered[eu[a]];
        ++a;
        ++c;
      }
    }
    return shared;
  };

  std::vector<std::uint32_t> cands;
  while (sel.queried.size() < b) {
    const std::size_t remaining = b - sel.queried.size();
    cands.clear();
    for (std::size_t i = 0; i < es.n; ++i) {
      if (!excluded[i]) cands.push_back(static_cast<std::uint32_t>(i));
    }
    if (remaining == 1) {
      std::size_t best = cands.front();
      for (std::uint32_t i : cands) {
        if (g.out_degree[i] > g.out_degree[best]) best = i;
      }
      push_pick(best);
      break;
    }
    long long best_gain = -1;
    std::size_t best_u = cands[0], best_v = cands[1];
    for (std::size_t a = 0; a + 1 < cands.size(); ++a) {
      const std::uint32_t u = cands[a];
      for (std::size_t c = a + 1; c < cands.size(); ++c) {
        const std::uint32_t v = cands[c];
        const long long ceiling =
            static_cast<long long>(g.out_degree[u]) + g.out_degree[v];
        if (ceiling <= best_gain) continue;
        const long long gain = ceiling - static_cast<long long>(overlap_uncovered(u, v));
        if (gain > best_gain) {
          best_gain = gain;
          best_u = u;
          best_v = v;
        }
      }
    }
    push_pick(best_u);
    push_pick(best_v);
  }
  return sel;
}

/// Exact k-center objective: the farthest any point sits from its nearest
/// center.
inline double coreset_radius(const EmbeddingSet& es,
                             std::span<const std::uint32_t> centers) {
  if (centers.empty()) throw validation_error("coreset_radius: empty center set");
  double worst = 0.0;
  for (std::size_t i = 0; i < es.n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t c : centers) {
      if (c >= es.n)
        throw validation_error("coreset_radius: center " + std::to_string(c) +
                               " out of range");
      best = std::min(best, es.dist2(i, c));
    }
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

/// Farthest-first traversal (greedy k-center). Each pick is the unlabeled
/// point farthest from the current center set, lowest index on ties; an
/// empty pool starts from a seeded uniform pick. radius_trace[i] records the
/// k-center objective the i-th pick resolved, i.e. its own distance to the
/// centers chosen before it (for the seeded first pick, the radius right
/// after it).
inline Selection select_coreset(const EmbeddingSet& es, const LabeledPool& pool,
                                std::size_t b, std::uint64_t seed) {
  const auto pool_idx = detail::normalized_pool(pool, es.n);
  detail::check_budget(b, es.n, pool_idx.size());

  std::vector<double> min_d2(es.n, std::numeric_limits<double>::infinity());
  std::vector<char> selected(es.n, 0);
  const auto relax = [&](std::size_t center) {
    for (std::size_t i = 0; i < es.n; ++i)
      min_d2[i] = std::min(min_d2[i], es.dist2(i, center));
  };
  for (std::uint32_t c : pool_idx) {
    selected[c] = 1;
    relax(c);
  }

  Selection sel;
  sel.strategy = "coreset";
  sel.seed = seed;
  sel.queried.reserve(b);
  sel.radius_trace.reserve(b);

  std::size_t picked = 0;
  if (pool_idx.empty()) {
    Rng rng(seed);
    const std::size_t first = rng.next_index(es.n);
    selected[first] = 1;
    sel.queried.push_back(static_cast<std::uint32_t>(first));
    relax(first);
    double worst = 0.0;
    for (double v : min_d2) worst = std::max(worst, v);
    sel.radius_trace.push_back(std::sqrt(worst));
    ++picked;
  }
  for (; picked < b; ++picked) {
    std::size_t best = es.n;
    for (std::size_t i = 0; i < es.n; ++i) {
      if (selected[i]) continue;
      if (best == es.n || min_d2[i] > min_d2[best]) best = i;
    }
    sel.radius_trace.push_back(std::sqrt(min_d2[best]));
    selected[best] = 1;
    sel.queried.push_back(static_cast<std::uint32_t>(best));
    relax(best);
  }
  return sel;
}

/// Uniform sample without replacement from the unlabeled indices.
inline Selection select_random(const EmbeddingSet& es, const LabeledPool& pool,
                               std::size_t b, std::uint64_t seed) {
  const auto pool_idx = detail::normalized_pool(pool, es.n);
  detail::check_budget(b, es.n, pool_idx.size());

  std::vector<char> in_pool(es.n, 0);
  for (std::uint32_t c : pool_idx) in_pool[c] = 1;
  std::vector<std::uint32_t> cands;
  cands.reserve(es.n - pool_idx.size());
  for (std::size_t i = 0; i < es.n; ++i) {
    if (!in_pool[i]) cands.push_back(static_cast<std::uint32_t>(i));
  }

  Rng rng(seed);
  Selection sel;
  sel.strategy = "random";
  sel.seed = seed;
  sel.queried.reserve(b);
  for (std::size_t t = 0; t < b; ++t) {
    const std::size_t j = t + rng.next_index(cands.size() - t);
    std::swap(cands[t], cands[j]);
    sel.queried.push_back(cands[t]);
  }
  return sel;
}

}  // namespace probcover
