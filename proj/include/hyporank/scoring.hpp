#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyporank/embedding.hpp"
#include "hyporank/error.hpp"
#include "hyporank/topic_metrics.hpp"
#include "hyporank/topic_network.hpp"

namespace hyporank {

enum class Metric : std::size_t {
  csim,
  l2,
  best_centr_csim,
  best_centr_l2,
  best_topic_per_word,
  topic_corr,
  top_walk_length,
  top_walk_btwn,
  top_walk_eigen,
  top_net_ccoef,
  top_net_mod,
};

inline constexpr std::size_t kMetricCount = 11;

inline constexpr std::array<Metric, kMetricCount> kAllMetrics = {
    Metric::csim,           Metric::l2,            Metric::best_centr_csim, Metric::best_centr_l2,
    Metric::best_topic_per_word, Metric::topic_corr, Metric::top_walk_length, Metric::top_walk_btwn,
    Metric::top_walk_eigen, Metric::top_net_ccoef, Metric::top_net_mod,
};

inline constexpr std::array<std::string_view, kMetricCount> kMetricNames = {
    "csim",          "l2",           "best_centr_csim", "best_centr_l2",  "best_topic_per_word", "topic_corr",
    "top_walk_length", "top_walk_btwn", "top_walk_eigen", "top_net_ccoef", "top_net_mod",
};

inline constexpr std::string_view name(Metric m) { return kMetricNames[static_cast<std::size_t>(m)]; }

inline std::optional<Metric> metric_from_name(std::string_view s) {
  for (auto m : kAllMetrics)
    if (name(m) == s) return m;
  return std::nullopt;
}

/// True for metrics where a smaller value indicates a published pair; these
/// are ranked in reverse for single-metric ROC curves.
inline constexpr bool lower_is_published(Metric m) {
  switch (m) {
    case Metric::l2:
    case Metric::top_walk_length:
    case Metric::top_walk_btwn:
    case Metric::top_net_ccoef:
    case Metric::top_net_mod:
      return true;
    default:
      return false;
  }
}

/// The eleven plausibility values of one hypothesis.
struct MetricVector {
  std::array<double, kMetricCount> values{};

  double& operator[](Metric m) { return values[static_cast<std::size_t>(m)]; }
  double operator[](Metric m) const { return values[static_cast<std::size_t>(m)]; }

  friend bool operator==(const MetricVector&, const MetricVector&) = default;
};

inline MetricVector compute_metric_vector(const ResolvedHypothesis& h) {
  MetricVector v;
  const auto q = query_word_similarity(h.a, h.c);
  v[Metric::csim] = q.csim;
  v[Metric::l2] = q.l2;
  v[Metric::best_centr_csim] = best_centr_csim(h);
  v[Metric::best_centr_l2] = best_centr_l2(h);
  v[Metric::best_topic_per_word] = best_topic_per_word(h);
  v[Metric::topic_corr] = topic_corr(h);

  const auto net = build_topic_network(h);
  const auto path = shortest_path(net);
  v[Metric::top_walk_length] = path_weight(net.graph, path);
  v[Metric::top_walk_btwn] = detail::mean_over_path(betweenness_centrality(net.graph), path);
  v[Metric::top_walk_eigen] = detail::mean_over_path(component_eigenvector_centrality(net.graph, TopicNetwork::source), path);
  v[Metric::top_net_ccoef] = average_clustering(net.graph);
  v[Metric::top_net_mod] = greedy_modularity(net.graph).modularity;

  for (auto m : kAllMetrics)
    if (!std::isfinite(v[m])) throw DomainError(std::string("non-finite ") + std::string(name(m)));
  return v;
}

/// All eleven metrics for one hypothesis. Any component failure propagates.
inline MetricVector compute_metric_vector(const Hypothesis& h, const EmbeddingSpace& space) {
  return compute_metric_vector(resolve(h, space));
}

/// Per-metric (min, max) observed on a fitting set.
struct ScaleParams {
  std::array<double, kMetricCount> min{};
  std::array<double, kMetricCount> max{};
};

inline ScaleParams fit_scaler(std::span<const MetricVector> data) {
  if (data.empty()) throw DomainError("cannot fit a scaler on an empty dataset");
  ScaleParams p;
  p.min = p.max = data.front().values;
  for (const auto& v : data)
    for (std::size_t i = 0; i < kMetricCount; ++i) {
      p.min[i] = std::min(p.min[i], v.values[i]);
      p.max[i] = std::max(p.max[i], v.values[i]);
    }
  return p;
}

inline double scale_value(const ScaleParams& p, std::size_t i, double x) {
  const double lo = p.min[i], hi = p.max[i];
  if (hi == lo) return 0.5;
  return std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
}

/// Min-max scales every metric into [0, 1]. Constant metrics map to 0.5 and
/// values outside the fitted range clamp.
inline MetricVector apply_scaler(const ScaleParams& p, const MetricVector& v) {
  MetricVector out;
  for (std::size_t i = 0; i < kMetricCount; ++i) out.values[i] = scale_value(p, i, v.values[i]);
  return out;
}

}  // namespace hyporank
