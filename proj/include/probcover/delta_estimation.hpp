#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "probcover/common.hpp"
#include "probcover/embedding_set.hpp"
#include "probcover/kmeans.hpp"
#include "probcover/rng.hpp"

namespace probcover {

/// Sampled purity curve and the radius resolved from it. fallback is set
/// when no sampled delta met the threshold and delta_star was clamped to the
/// smallest grid value.
struct PurityCurve {
  std::vector<double> deltas;
  std::vector<double> purity;
  double alpha = 0.0;
  double delta_star = 0.0;
  bool fallback = false;
};

/// Squared distance from each listed center to the nearest differently-
/// labeled point (infinity when none exists). A delta-ball is label-pure
/// exactly when this exceeds delta^2, which turns every purity query into a
/// threshold count. Balls always range over the full point set; centers may
/// be a subsample.
inline std::vector<double> impurity_radius2(
    const EmbeddingSet& es, const std::vector<std::uint32_t>& labels,
    std::span<const std::uint32_t> centers) {
  if (labels.size() != es.n)
    throw validation_error("label array length does not match point count");
  std::vector<double> rho2(centers.size(),
                           std::numeric_limits<double>::infinity());
  parallel_for(0, centers.size(), [&](std::size_t c) {
    const std::size_t i = centers[c];
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < es.n; ++j) {
      if (labels[j] == labels[i]) continue;
      best = std::min(best, es.dist2(i, j));
    }
    rho2[c] = best;
  });
  return rho2;
}

inline std::vector<double> impurity_radius2(
    const EmbeddingSet& es, const std::vector<std::uint32_t>& labels) {
  std::vector<std::uint32_t> all(es.n);
  for (std::size_t i = 0; i < es.n; ++i) all[i] = static_cast<std::uint32_t>(i);
  return impurity_radius2(es, labels, all);
}

/// Fraction of points whose delta-ball contains only same-labeled points
/// (the ball is evaluated over dataset members, self included).
inline double purity(const EmbeddingSet& es,
                     const std::vector<std::uint32_t>& labels, double delta) {
  if (!(delta > 0.0)) throw validation_error("delta must be positive");
  const auto rho2 = impurity_radius2(es, labels);
  const double delta2 = delta * delta;
  std::size_t pure = 0;
  for (double r2 : rho2) pure += r2 > delta2;
  return static_cast<double>(pure) / static_cast<double>(es.n);
}

/// Log-spaced grid of candidate radii between the 0.1th and 90th percentile
/// of sampled pairwise distances (all pairs up to 10k, seeded sampling
/// beyond).
inline std::vector<double> default_delta_grid(const EmbeddingSet& es,
                                              std::uint64_t seed,
                                              std::size_t count = 50) {
  constexpr std::size_t kMaxPairs = 10000;
  std::vector<double> dists;
  const std::size_t all_pairs = es.n * (es.n - 1) / 2;
  if (all_pairs == 0)
    throw validation_error("default_delta_grid: need at least two points");
  if (all_pairs <= kMaxPairs) {
    dists.reserve(all_pairs);
    for (std::size_t i = 0; i < es.n; ++i) {
      for (std::size_t j = i + 1; j < es.n; ++j)
        dists.push_back(std::sqrt(es.dist2(i, j)));
    }
  } else {
    Rng rng(seed);
    dists.reserve(kMaxPairs);
    while (dists.size() < kMaxPairs) {
      const std::size_t i = rng.next_index(es.n);
      const std::size_t j = rng.next_index(es.n);
      if (i == j) continue;
      dists.push_back(std::sqrt(es.dist2(i, j)));
    }
  }
  std::sort(dists.begin(), dists.end());
  const auto percentile = [&](double p) {
    const std::size_t rank =
        std::min(dists.size() - 1,
                 static_cast<std::size_t>(p * static_cast<double>(dists.size())));
    return dists[rank];
  };
  double hi = percentile(0.90);
  if (!(hi > 0.0))
    throw validation_error("default_delta_grid: sampled distances are all zero");
  double lo = percentile(0.001);
  if (!(lo > 0.0)) {
    // duplicates dominate the low tail; fall back to the smallest positive gap
    for (double v : dists) {
      if (v > 0.0) {
        lo = v;
        break;
      }
    }
  }
  if (!(lo < hi)) return {hi};
  std::vector<double> grid;
  grid.reserve(count);
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count == 1 ? 1.0
                                : static_cast<double>(i) /
                                      static_cast<double>(count - 1);
    grid.push_back(std::exp(llo + t * (lhi - llo)));
  }
  grid.front() = lo;
  grid.back() = hi;
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

/// Estimates delta* from unlabeled data: cluster once with k-means, treat
/// cluster ids as pseudo-labels, sweep the grid, and keep the largest delta
/// whose pseudo-label purity stays at or above alpha. restarts > 1 reruns
/// k-means with seeds seed, seed+1, ... and keeps the lowest-inertia run.
/// purity_sample > 0 evaluates purity over that many seeded sample centers
/// instead of all n (balls still range over every point).
inline PurityCurve estimate_delta(const EmbeddingSet& es, std::size_t k,
                                  double alpha, const std::vector<double>& grid,
                                  std::uint64_t seed, std::size_t max_iters = 100,
                                  std::size_t restarts = 1,
                                  std::size_t purity_sample = 0) {
  if (grid.empty()) throw validation_error("delta grid must be nonempty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw validation_error("delta grid values must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw validation_error("delta grid must be strictly ascending");
  }
  if (!(alpha > 0.0 && alpha < 1.0))
    throw validation_error("alpha must lie in (0, 1)");
  if (restarts == 0) throw validation_error("restarts must be positive");

  KMeansResult best;
  for (std::size_t r = 0; r < restarts; ++r) {
    KMeansResult run = kmeans(es, k, seed + r, max_iters);
    if (r == 0 || run.inertia < best.inertia) best = std::move(run);
  }

  std::vector<std::uint32_t> centers(es.n);
  for (std::size_t i = 0; i < es.n; ++i) centers[i] = static_cast<std::uint32_t>(i);
  if (purity_sample > 0 && purity_sample < es.n) {
    Rng rng(seed);
    for (std::size_t t = 0; t < purity_sample; ++t) {
      const std::size_t j = t + rng.next_index(es.n - t);
      std::swap(centers[t], centers[j]);
    }
    centers.resize(purity_sample);
    std::sort(centers.begin(), centers.end());
  }

  const auto rho2 = impurity_radius2(es, best.assignments, centers);
  PurityCurve curve;
  curve.alpha = alpha;
  curve.deltas = grid;
  curve.purity.reserve(grid.size());
  for (double delta : grid) {
    const double delta2 = delta * delta;
    std::size_t pure = 0;
    for (double r2 : rho2) pure += r2 > delta2;
    curve.purity.push_back(static_cast<double>(pure) /
                           static_cast<double>(centers.size()));
  }

  curve.fallback = true;
  for (std::size_t i = grid.size(); i-- > 0;) {
    if (curve.purity[i] >= alpha) {
      curve.delta_star = grid[i];
      curve.fallback = false;
      break;
    }
  }
  if (curve.fallback) curve.delta_star = grid.front();
  return curve;
}

/// CSV rendering: "delta,purity" rows plus a trailing comment fixing the
/// resolved radius.
inline void write_purity_csv(const PurityCurve& curve, std::ostream& os) {
  os << "delta,purity\n";
  for (std::size_t i = 0; i < curve.deltas.size(); ++i) {
    os << detail::fmt_double(curve.deltas[i]) << ','
       << detail::fmt_double(curve.purity[i]) << '\n';
  }
  os << "# delta_star=" << detail::fmt_double(curve.delta_star)
     << " alpha=" << detail::fmt_double(curve.alpha) << '\n';
}

}  // namespace probcover
