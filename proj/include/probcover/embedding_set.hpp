#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "probcover/common.hpp"
#include "probcover/rng.hpp"

namespace probcover {

/// An n x d point set in a Euclidean embedding space, with optional class
/// labels. Immutable after construction; safe to share across threads.
struct EmbeddingSet {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<double> points;  // row-major, n * d
  std::optional<std::vector<std::uint32_t>> labels;

  const double* row(std::size_t i) const { return points.data() + i * d; }

  bool has_labels() const { return labels.has_value(); }

  /// Number of classes implied by the labels (max label + 1), 0 if unlabeled.
  std::size_t num_classes() const {
    if (!labels || labels->empty()) return 0;
    return static_cast<std::size_t>(
               *std::max_element(labels->begin(), labels->end())) +
           1;
  }

  double dist2(std::size_t i, std::size_t j) const {
    const double* a = row(i);
    const double* b = row(j);
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double diff = a[k] - b[k];
      s += diff * diff;
    }
    return s;
  }
};

inline void validate(const EmbeddingSet& es) {
  if (es.n < 1) throw validation_error("embedding set must contain at least one point");
  if (es.d < 1) throw validation_error("embedding dimension must be at least 1");
  if (es.points.size() != es.n * es.d)
    throw validation_error("point buffer size does not match n*d");
  for (std::size_t i = 0; i < es.points.size(); ++i) {
    if (!std::isfinite(es.points[i]))
      throw validation_error("non-finite coordinate at point " +
                             std::to_string(i / es.d) + ", dimension " +
                             std::to_string(i % es.d));
  }
  if (es.labels && es.labels->size() != es.n)
    throw validation_error("label array length does not match point count");
}

inline EmbeddingSet make_embedding_set(
    std::size_t n, std::size_t d, std::vector<double> points,
    std::optional<std::vector<std::uint32_t>> labels = std::nullopt) {
  EmbeddingSet es;
  es.n = n;
  es.d = d;
  es.points = std::move(points);
  es.labels = std::move(labels);
  validate(es);
  return es;
}

/// Restriction of es to the given point indices, labels carried along.
inline EmbeddingSet subset(const EmbeddingSet& es,
                           std::span<const std::uint32_t> indices) {
  if (indices.empty()) throw validation_error("subset: empty index list");
  EmbeddingSet out;
  out.n = indices.size();
  out.d = es.d;
  out.points.reserve(out.n * out.d);
  if (es.labels) out.labels.emplace();
  for (std::uint32_t i : indices) {
    if (i >= es.n)
      throw validation_error("subset: index " + std::to_string(i) +
                             " out of range");
    out.points.insert(out.points.end(), es.row(i), es.row(i) + es.d);
    if (es.labels) out.labels->push_back((*es.labels)[i]);
  }
  return out;
}

struct MixtureComponent {
  std::vector<double> mean;
  double stddev = 1.0;
  double weight = 1.0;
  std::uint32_t label = 0;
};

/// Isotropic Gaussian mixture used to synthesize desk-scale embedding sets.
struct MixtureSpec {
  std::vector<MixtureComponent> components;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Draws spec.samples points. Sampling procedure, fixed for reproducibility:
/// per sample, one categorical draw over the normalized weights picks the
/// component, then d Box-Muller normals scaled by stddev perturb its mean.
/// Labels record the generating component's class.
inline EmbeddingSet generate_mixture(const MixtureSpec& spec) {
  if (spec.components.empty())
    throw validation_error("mixture needs at least one component");
  if (spec.samples == 0)
    throw validation_error("mixture sample count must be positive");
  const std::size_t d = spec.components.front().mean.size();
  if (d == 0) throw validation_error("mixture mean dimension must be at least 1");
  std::vector<double> weights;
  weights.reserve(spec.components.size());
  for (const auto& comp : spec.components) {
    if (comp.mean.size() != d)
      throw validation_error("mixture components disagree on dimension");
    if (!(comp.stddev > 0.0))
      throw validation_error("mixture stddev must be positive");
    if (!(comp.weight > 0.0))
      throw validation_error("mixture weight must be positive");
    weights.push_back(comp.weight);
  }

  Rng rng(spec.seed);
  EmbeddingSet es;
  es.n = spec.samples;
  es.d = d;
  es.points.reserve(es.n * d);
  es.labels.emplace();
  es.labels->reserve(es.n);
  for (std::size_t i = 0; i < spec.samples; ++i) {
    const std::size_t c = rng.next_weighted(weights);
    const auto& comp = spec.components[c];
    for (std::size_t k = 0; k < d; ++k) {
      es.points.push_back(comp.mean[k] + comp.stddev * rng.next_normal());
    }
    es.labels->push_back(comp.label);
  }
  validate(es);
  return es;
}

/// Scales every row to unit Euclidean norm. Labels are preserved.
inline EmbeddingSet normalize_l2(const EmbeddingSet& es) {
  EmbeddingSet out = es;
  for (std::size_t i = 0; i < es.n; ++i) {
    double norm2 = 0.0;
    const double* r = es.row(i);
    for (std::size_t k = 0; k < es.d; ++k) norm2 += r[k] * r[k];
    if (norm2 == 0.0)
      throw validation_error("normalize_l2: zero-norm row " + std::to_string(i));
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t k = 0; k < es.d; ++k) out.points[i * es.d + k] = r[k] * inv;
  }
  return out;
}

}  // namespace probcover
