#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hyporank/embedding.hpp"
#include "hyporank/error.hpp"

namespace hyporank {

struct TopicEntry {
  std::string term;
  double probability = 0.0;
};

/// One topic: a probability distribution over terms.
struct Topic {
  std::vector<TopicEntry> entries;
};

using TopicModel = std::vector<Topic>;

/// A query pair (a, c) together with the topic model produced for it.
struct Hypothesis {
  std::string a;
  std::string c;
  TopicModel topics;
};

/// Validates raw topic probabilities and rescales them to sum to one.
/// Sums outside [0.9, 1.1] are rejected as malformed.
inline void normalize_topic(Topic& topic) {
  if (topic.entries.empty()) throw DomainError("topic has no entries");
  double sum = 0.0;
  for (const auto& e : topic.entries) {
    if (!(e.probability >= 0.0) || !std::isfinite(e.probability))
      throw DomainError("topic probability must be finite and non-negative");
    sum += e.probability;
  }
  if (sum < 0.9 || sum > 1.1)
    throw DomainError("topic probabilities sum to " + detail::format_double(sum) + ", outside [0.9, 1.1]");
  for (auto& e : topic.entries) e.probability /= sum;
}

/// A topic restricted to in-vocabulary terms, weights renormalized.
struct ResolvedTopic {
  std::vector<VectorView> vectors;
  std::vector<double> weights;
};

inline ResolvedTopic resolve_topic(const Topic& topic, const EmbeddingSpace& space) {
  ResolvedTopic out;
  double total = 0.0;
  for (const auto& e : topic.entries) {
    auto v = space.find(e.term);
    if (v.empty()) continue;
    out.vectors.push_back(v);
    out.weights.push_back(e.probability);
    total += e.probability;
  }
  if (out.vectors.empty()) throw DomainError("topic entirely out of vocabulary");
  if (!(total > 0.0)) throw DomainError("topic has zero in-vocabulary probability mass");
  for (auto& w : out.weights) w /= total;
  return out;
}

namespace detail {

// Order-independent summation: the addends are sorted first, so any
// permutation of the inputs gives a bit-identical result.
inline double sorted_sum(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  double s = 0.0;
  for (double x : xs) s += x;
  return s;
}

}  // namespace detail

/// Weighted cosine similarity of x to a topic.
inline double topic_sim(VectorView x, const ResolvedTopic& topic) {
  double s = 0.0;
  for (std::size_t i = 0; i < topic.vectors.size(); ++i) s += topic.weights[i] * csim(x, topic.vectors[i]);
  return std::clamp(s, -1.0, 1.0);
}

inline double topic_sim(VectorView x, const Topic& topic, const EmbeddingSpace& space) {
  return topic_sim(x, resolve_topic(topic, space));
}

/// Probability-weighted centroid of a topic's term vectors.
inline Vector centroid(const ResolvedTopic& topic) {
  Vector out(topic.vectors.front().size(), 0.0);
  for (std::size_t i = 0; i < topic.vectors.size(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += topic.weights[i] * topic.vectors[i][j];
  return out;
}

inline Vector centroid(const Topic& topic, const EmbeddingSpace& space) {
  return centroid(resolve_topic(topic, space));
}

/// A hypothesis with every term looked up once. Metrics that need the same
/// topic repeatedly work from this instead of the raw Hypothesis.
struct ResolvedHypothesis {
  VectorView a;
  VectorView c;
  std::vector<ResolvedTopic> topics;
  std::vector<Vector> centroids;
};

inline ResolvedHypothesis resolve(const Hypothesis& h, const EmbeddingSpace& space) {
  if (h.a == h.c) throw DomainError("query terms must differ");
  if (h.topics.empty()) throw DomainError("hypothesis has no topics");
  ResolvedHypothesis r;
  r.a = space.vector_of(h.a);
  r.c = space.vector_of(h.c);
  r.topics.reserve(h.topics.size());
  r.centroids.reserve(h.topics.size());
  for (const auto& t : h.topics) {
    r.topics.push_back(resolve_topic(t, space));
    r.centroids.push_back(centroid(r.topics.back()));
  }
  return r;
}

/// Entry i is TopSim(x, T_i).
inline Vector similarity_profile(VectorView x, const ResolvedHypothesis& h) {
  Vector v;
  v.reserve(h.topics.size());
  for (const auto& t : h.topics) v.push_back(topic_sim(x, t));
  return v;
}

/// Cosine similarity between the similarity profiles of a and c.
inline double topic_corr(const ResolvedHypothesis& h) {
  const Vector va = similarity_profile(h.a, h);
  const Vector vc = similarity_profile(h.c, h);
  std::vector<double> prods, sqa, sqc;
  for (std::size_t i = 0; i < va.size(); ++i) {
    prods.push_back(va[i] * vc[i]);
    sqa.push_back(va[i] * va[i]);
    sqc.push_back(vc[i] * vc[i]);
  }
  const double na = std::sqrt(detail::sorted_sum(sqa));
  const double nc = std::sqrt(detail::sorted_sum(sqc));
  if (na == 0.0 || nc == 0.0) throw DomainError("undefined topic correlation: zero-norm similarity profile");
  return std::clamp(detail::sorted_sum(prods) / (na * nc), -1.0, 1.0);
}

inline double topic_corr(const std::string& a, const std::string& c, const TopicModel& model,
                         const EmbeddingSpace& space) {
  return topic_corr(resolve(Hypothesis{a, c, model}, space));
}

/// Best topic by mean cosine similarity of its centroid to a and c.
inline double best_centr_csim(const ResolvedHypothesis& h) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& ct : h.centroids) best = std::max(best, (csim(h.a, ct) + csim(h.c, ct)) / 2.0);
  return best;
}

/// Best topic by closeness of its centroid to the midpoint of a and c,
/// measured in units of the radius of the sphere whose diameter is a-c and
/// clamped to [0, 1].
inline double best_centr_l2(const ResolvedHypothesis& h) {
  const double radius = l2(h.a, h.c) / 2.0;
  if (radius == 0.0) throw DomainError("query terms coincide in embedding space (zero radius)");
  Vector mid(h.a.size());
  for (std::size_t j = 0; j < mid.size(); ++j) mid[j] = (h.a[j] + h.c[j]) / 2.0;
  double best = 0.0;
  for (const auto& ct : h.centroids) best = std::max(best, std::clamp(1.0 - l2(ct, mid) / radius, 0.0, 1.0));
  return best;
}

/// Best topic by the lower of its two TopSim values.
inline double best_topic_per_word(const ResolvedHypothesis& h) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& t : h.topics) best = std::max(best, std::min(topic_sim(h.a, t), topic_sim(h.c, t)));
  return best;
}

struct QueryWordSimilarity {
  double csim;
  double l2;
};

inline QueryWordSimilarity query_word_similarity(VectorView a, VectorView c) { return {csim(a, c), l2(a, c)}; }

inline QueryWordSimilarity query_word_similarity(const Hypothesis& h, const EmbeddingSpace& space) {
  return query_word_similarity(space.vector_of(h.a), space.vector_of(h.c));
}

inline double best_centr_csim(const Hypothesis& h, const EmbeddingSpace& space) {
  return best_centr_csim(resolve(h, space));
}
inline double best_centr_l2(const Hypothesis& h, const EmbeddingSpace& space) {
  return best_centr_l2(resolve(h, space));
}
inline double best_topic_per_word(const Hypothesis& h, const EmbeddingSpace& space) {
  return best_topic_per_word(resolve(h, space));
}

}  // namespace hyporank
