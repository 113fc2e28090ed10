#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "probcover/common.hpp"
#include "probcover/embedding_set.hpp"

namespace probcover {

enum class GraphAccel { naive, grid };

inline constexpr std::size_t kDefaultEdgeBudget = std::size_t(1) << 28;

/// Directed delta-ball adjacency over a point set: (x, x') is an edge iff
/// d(x, x') <= delta, self-loops included. Euclidean balls are symmetric, so
/// out_edges[v] doubles as v's in-neighbor list; mark_covered leans on that
/// to keep out_degree equal to the live count of edges into uncovered
/// vertices.
struct CoverGraph {
  double delta = 0.0;
  std::size_t n = 0;
  std::vector<std::vector<std::uint32_t>> out_edges;  // each list sorted
  std::vector<char> covered;
  std::vector<std::uint32_t> out_degree;

  std::size_t covered_count() const {
    std::size_t c = 0;
    for (char f : covered) c += f != 0;
    return c;
  }

  /// Flags every vertex in B_delta(center) as covered and decrements the
  /// out-degrees of their in-neighbors. Returns how many vertices flipped
  /// to covered; calling again with the same center returns 0.
  std::size_t mark_covered(std::size_t center) {
    if (center >= n)
      throw validation_error("mark_covered: vertex " + std::to_string(center) +
                             " out of range");
    std::size_t newly = 0;
    for (std::uint32_t x : out_edges[center]) {
      if (covered[x]) continue;
      covered[x] = 1;
      ++newly;
      for (std::uint32_t z : out_edges[x]) --out_degree[z];
    }
    return newly;
  }

  /// Vertex with the highest live out-degree, lowest index on ties.
  std::size_t max_outdegree_vertex() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (out_degree[i] > out_degree[best]) best = i;
    }
    return best;
  }

  /// Fraction of vertices inside the union of the centers' balls. Pure
  /// read; ignores covered flags.
  double coverage(std::span<const std::uint32_t> centers) const {
    std::vector<char> seen(n, 0);
    std::size_t count = 0;
    for (std::uint32_t c : centers) {
      if (c >= n)
        throw validation_error("coverage: vertex " + std::to_string(c) +
                               " out of range");
      for (std::uint32_t x : out_edges[c]) {
        if (!seen[x]) {
          seen[x] = 1;
          ++count;
        }
      }
    }
    return static_cast<double>(count) / static_cast<double>(n);
  }

  /// Debug dump, one line per vertex: "src: dst1 dst2 ...".
  void dump(std::ostream& os) const {
    for (std::size_t v = 0; v < n; ++v) {
      os << v << ':';
      for (std::uint32_t x : out_edges[v]) os << ' ' << x;
      os << '\n';
    }
  }
};

namespace detail {

// Buckets points by floor(coord / delta) on the first few dimensions; a
// range query scans the 3^g neighboring cells. Bucketing on a coordinate
// projection keeps the search exact for any d: points within delta in full
// space are within delta per coordinate.
class GridIndex {
 public:
  static constexpr std::size_t kMaxDims = 6;

  GridIndex(const EmbeddingSet& es, double delta)
      : es_(es), delta_(delta), g_(std::min(es.d, kMaxDims)) {
    cells_.reserve(es.n);
    for (std::size_t i = 0; i < es.n; ++i) {
      cells_[key_of(es.row(i))].push_back(static_cast<std::uint32_t>(i));
    }
  }

  /// Calls fn(j) for every j with d(i, j) <= delta, in ascending j order
  /// within each cell; callers needing global order sort afterwards.
  template <typename Fn>
  void for_each_in_ball(std::size_t i, Fn&& fn) const {
    const double* p = es_.row(i);
    const double delta2 = delta_ * delta_;
    std::array<long long, kMaxDims> base{};
    for (std::size_t k = 0; k < g_; ++k)
      base[k] = static_cast<long long>(std::floor(p[k] / delta_));
    std::array<long long, kMaxDims> cell = base;
    std::array<int, kMaxDims> off{};
    off.fill(-1);
    for (;;) {
      for (std::size_t k = 0; k < g_; ++k) cell[k] = base[k] + off[k];
      const auto it = cells_.find(encode(cell));
      if (it != cells_.end()) {
        for (std::uint32_t j : it->second) {
          if (es_.dist2(i, j) <= delta2) fn(j);
        }
      }
      // odometer over {-1,0,1}^g
      std::size_t k = 0;
      while (k < g_ && off[k] == 1) {
        off[k] = -1;
        ++k;
      }
      if (k == g_) break;
      ++off[k];
    }
  }

 private:
  struct Key {
    std::array<long long, kMaxDims> c{};
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = 0x9e3779b97f4a7c15ULL;
      for (long long v : k.c) {
        h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) +
             (h >> 2);
      }
      return static_cast<std::size_t>(h);
    }
  };

  Key key_of(const double* p) const {
    std::array<long long, kMaxDims> c{};
    for (std::size_t k = 0; k < g_; ++k)
      c[k] = static_cast<long long>(std::floor(p[k] / delta_));
    return encode(c);
  }
  static Key encode(const std::array<long long, kMaxDims>& c) { return Key{c}; }

  const EmbeddingSet& es_;
  double delta_;
  std::size_t g_;
  std::unordered_map<Key, std::vector<std::uint32_t>, KeyHash> cells_;
};

}  // namespace detail

/// Builds the delta-ball graph. Both accelerations produce the exact edge
/// set; grid is a bucketed range search, naive the O(n^2) scan. Refuses with
/// a capacity_error when the edge count would exceed max_edges.
inline CoverGraph build_graph(const EmbeddingSet& es, double delta,
                              GraphAccel accel = GraphAccel::grid,
                              std::size_t max_edges = kDefaultEdgeBudget) {
  if (!(delta > 0.0)) throw validation_error("delta must be positive");
  const std::size_t n = es.n;
  CoverGraph g;
  g.delta = delta;
  g.n = n;
  g.out_degree.assign(n, 0);

  std::vector<std::uint32_t> counts(n, 0);
  const double delta2 = delta * delta;

  if (accel == GraphAccel::grid) {
    const detail::GridIndex index(es, delta);
    parallel_for(0, n, [&](std::size_t i) {
      std::uint32_t c = 0;
      index.for_each_in_ball(i, [&](std::uint32_t) { ++c; });
      counts[i] = c;
    });
    std::size_t total = 0;
    for (std::uint32_t c : counts) total += c;
    if (total > max_edges)
      throw capacity_error("delta-ball graph needs " + std::to_string(total) +
                           " edges, over the budget of " +
                           std::to_string(max_edges));
    g.out_edges.resize(n);
    parallel_for(0, n, [&](std::size_t i) {
      auto& list = g.out_edges[i];
      list.reserve(counts[i]);
      index.for_each_in_ball(i, [&](std::uint32_t j) { list.push_back(j); });
      std::sort(list.begin(), list.end());
    });
  } else {
    parallel_for(0, n, [&](std::size_t i) {
      std::uint32_t c = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (es.dist2(i, j) <= delta2) ++c;
      }
      counts[i] = c;
    });
    std::size_t total = 0;
    for (std::uint32_t c : counts) total += c;
    if (total > max_edges)
      throw capacity_error("delta-ball graph needs " + std::to_string(total) +
                           " edges, over the budget of " +
                           std::to_string(max_edges));
    g.out_edges.resize(n);
    parallel_for(0, n, [&](std::size_t i) {
      auto& list = g.out_edges[i];
      list.reserve(counts[i]);
      for (std::size_t j = 0; j < n; ++j) {
        if (es.dist2(i, j) <= delta2) list.push_back(static_cast<std::uint32_t>(j));
      }
    });
  }

  g.covered.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    g.out_degree[i] = static_cast<std::uint32_t>(g.out_edges[i].size());
  return g;
}

}  // namespace probcover
