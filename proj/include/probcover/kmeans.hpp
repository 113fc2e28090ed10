#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "probcover/common.hpp"
#include "probcover/embedding_set.hpp"
#include "probcover/rng.hpp"

namespace probcover {

struct KMeansResult {
  std::vector<std::uint32_t> assignments;
  std::vector<double> centroids;  // k x d row-major
  double inertia = 0.0;
  std::size_t iterations = 0;
  std::vector<double> inertia_trace;  // cost after each centroid update
};

namespace detail {

inline double point_centroid_dist2(const EmbeddingSet& es, std::size_t i,
                                   const std::vector<double>& centroids,
                                   std::size_t c, std::size_t d) {
  const double* p = es.row(i);
  const double* q = centroids.data() + c * d;
  double s = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double diff = p[k] - q[k];
    s += diff * diff;
  }
  return s;
}

/// k-means++ seeding: first center uniform, then each next center sampled
/// with probability proportional to the squared distance to the nearest
/// chosen center. Falls back to the lowest unchosen index once all residual
/// distances are zero (duplicate-heavy inputs).
inline std::vector<std::size_t> kmeanspp_seed(const EmbeddingSet& es,
                                              std::size_t k, Rng& rng) {
  std::vector<std::size_t> centers;
  centers.reserve(k);
  std::vector<char> chosen(es.n, 0);
  std::vector<double> min_d2(es.n, std::numeric_limits<double>::infinity());

  const std::size_t first = rng.next_index(es.n);
  centers.push_back(first);
  chosen[first] = 1;
  for (std::size_t i = 0; i < es.n; ++i) min_d2[i] = es.dist2(i, first);

  while (centers.size() < k) {
    double total = 0.0;
    for (double w : min_d2) total += w;
    std::size_t next;
    if (total > 0.0) {
      next = rng.next_weighted(min_d2);
    } else {
      next = 0;
      while (chosen[next]) ++next;
    }
    centers.push_back(next);
    chosen[next] = 1;
    for (std::size_t i = 0; i < es.n; ++i)
      min_d2[i] = std::min(min_d2[i], es.dist2(i, next));
  }
  return centers;
}

}  // namespace detail

/// Lloyd's algorithm with k-means++ seeding. Stops at an assignment fixpoint
/// or after max_iters updates; an empty cluster is repaired by relocating
/// the point farthest from its own centroid (lowest index on ties, never
/// draining a singleton cluster). Deterministic given the seed.
inline KMeansResult kmeans(const EmbeddingSet& es, std::size_t k,
                           std::uint64_t seed, std::size_t max_iters = 100) {
  if (k == 0) throw validation_error("kmeans: k must be positive");
  if (k > es.n)
    throw validation_error("kmeans: k=" + std::to_string(k) + " exceeds n=" +
                           std::to_string(es.n));
  if (max_iters == 0) throw validation_error("kmeans: max_iters must be positive");

  const std::size_t n = es.n;
  const std::size_t d = es.d;
  Rng rng(seed);
  const auto seed_idx = detail::kmeanspp_seed(es, k, rng);

  KMeansResult res;
  res.centroids.resize(k * d);
  for (std::size_t c = 0; c < k; ++c) {
    const double* p = es.row(seed_idx[c]);
    std::copy(p, p + d, res.centroids.begin() + c * d);
  }
  res.assignments.assign(n, 0);

  std::vector<std::uint32_t> prev;
  std::vector<std::size_t> sizes(k, 0);

  const auto assign_all = [&](std::vector<std::uint32_t>& out) {
    parallel_for(0, n, [&](std::size_t i) {
      std::size_t best = 0;
      double best_d2 = detail::point_centroid_dist2(es, i, res.centroids, 0, d);
      for (std::size_t c = 1; c < k; ++c) {
        const double d2 = detail::point_centroid_dist2(es, i, res.centroids, c, d);
        if (d2 < best_d2) {
          best_d2 = d2;
          best = c;
        }
      }
      out[i] = static_cast<std::uint32_t>(best);
    });
  };
  const auto cost = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      s += detail::point_centroid_dist2(es, i, res.centroids, res.assignments[i], d);
    return s;
  };

  bool hit_iteration_cap = true;
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    assign_all(res.assignments);
    if (iter > 0 && res.assignments == prev) {
      hit_iteration_cap = false;
      break;
    }

    std::fill(sizes.begin(), sizes.end(), 0);
    for (std::uint32_t a : res.assignments) ++sizes[a];
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] > 0) continue;
      std::size_t worst = n;
      double worst_d2 = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[res.assignments[i]] <= 1) continue;
        const double d2 =
            detail::point_centroid_dist2(es, i, res.centroids, res.assignments[i], d);
        if (d2 > worst_d2) {
          worst_d2 = d2;
          worst = i;
        }
      }
      --sizes[res.assignments[worst]];
      res.assignments[worst] = static_cast<std::uint32_t>(c);
      sizes[c] = 1;
    }

    std::fill(res.centroids.begin(), res.centroids.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double* p = es.row(i);
      double* q = res.centroids.data() + std::size_t(res.assignments[i]) * d;
      for (std::size_t kd = 0; kd < d; ++kd) q[kd] += p[kd];
    }
    for (std::size_t c = 0; c < k; ++c) {
      double* q = res.centroids.data() + c * d;
      for (std::size_t kd = 0; kd < d; ++kd) q[kd] /= static_cast<double>(sizes[c]);
    }

    res.inertia_trace.push_back(cost());
    ++res.iterations;
    prev = res.assignments;
  }

  if (hit_iteration_cap) {
    // Re-align assignments with the final centroids.
    assign_all(res.assignments);
  }
  res.inertia = cost();
  return res;
}

}  // namespace probcover
