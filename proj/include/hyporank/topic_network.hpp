#pragma once

#include <algorithm>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "hyporank/detail/text.hpp"
#include "hyporank/embedding.hpp"
#include "hyporank/graph.hpp"
#include "hyporank/topic_metrics.hpp"

namespace hyporank {

// Coincident points still get a strictly positive edge weight.
inline constexpr double kMinEdgeWeight = 1e-12;

/// Adaptive nearest-neighbor network over the two query vectors and the
/// topic centroids.
///
/// Nodes 0 and 1 are the query vectors and nodes 2.. are the centroids.
/// Both groups are put in a canonical order keyed on query-centroid
/// distances (coordinates only break exact ties), so swapping a and c or
/// permuting the topics yields the identical network, and a rigid motion of
/// the space yields the same node order.
/// `query_a` records which of nodes 0/1 is a, and `topic_index[i]` the
/// original topic position of node i (i >= 2).
struct TopicNetwork {
  std::vector<Vector> nodes;
  std::vector<std::size_t> topic_index;
  std::size_t query_a = 0;
  Graph graph;
  std::size_t k_used = 0;

  static constexpr std::size_t source = 0;
  static constexpr std::size_t target = 1;

  std::size_t size() const noexcept { return nodes.size(); }

  std::string label(std::size_t i) const {
    if (i < 2) return i == query_a ? "a" : "c";
    return "T" + std::to_string(topic_index[i]);
  }
};

namespace detail {

inline bool lex_less(const Vector& x, const Vector& y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

inline std::vector<double> pairwise_distances(const std::vector<Vector>& nodes) {
  const auto n = nodes.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = l2(nodes[i], nodes[j]);
  return d;
}

// neighbor_order[i] lists the other nodes by (distance, index).
inline std::vector<std::vector<std::size_t>> neighbor_order(const std::vector<double>& dist, std::size_t n) {
  std::vector<std::vector<std::size_t>> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& o = order[i];
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) o.push_back(j);
    std::stable_sort(o.begin(), o.end(), [&](std::size_t x, std::size_t y) { return dist[i * n + x] < dist[i * n + y]; });
  }
  return order;
}

}  // namespace detail

/// Undirected union of every node's k nearest neighbors (Euclidean, ties by
/// ascending index), weighted by distance.
inline Graph knn_graph(const std::vector<Vector>& nodes, std::size_t k) {
  const auto n = nodes.size();
  const auto dist = detail::pairwise_distances(nodes);
  const auto order = detail::neighbor_order(dist, n);
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < std::min(k, n - 1); ++r) {
      const auto j = order[i][r];
      g.add_edge(i, j, std::max(dist[i * n + j], kMinEdgeWeight));
    }
  return g;
}

/// Builds the network at the smallest neighbor count that joins a and c.
inline TopicNetwork build_topic_network(const ResolvedHypothesis& h) {
  if (h.centroids.empty()) throw DomainError("topic network needs at least one centroid");

  TopicNetwork net;
  Vector a(h.a.begin(), h.a.end()), c(h.c.begin(), h.c.end());
  const auto k = h.centroids.size();
  std::vector<double> da(k), dc(k);
  for (std::size_t i = 0; i < k; ++i) {
    da[i] = l2(a, h.centroids[i]);
    dc[i] = l2(c, h.centroids[i]);
  }
  auto sorted_copy = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto ka = sorted_copy(da), kc = sorted_copy(dc);
  net.query_a = (kc < ka || (kc == ka && detail::lex_less(c, a))) ? 1 : 0;
  if (net.query_a == 1) std::swap(a, c);
  net.nodes.push_back(std::move(a));
  net.nodes.push_back(std::move(c));

  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
    const double sx = da[x] + dc[x], sy = da[y] + dc[y];
    if (sx != sy) return sx < sy;
    const double mx = std::min(da[x], dc[x]), my = std::min(da[y], dc[y]);
    if (mx != my) return mx < my;
    if (h.centroids[x] != h.centroids[y]) return detail::lex_less(h.centroids[x], h.centroids[y]);
    return x < y;
  });
  net.topic_index.assign(2, 0);
  for (auto p : perm) {
    net.nodes.push_back(h.centroids[p]);
    net.topic_index.push_back(p);
  }

  const auto n = net.nodes.size();
  const auto dist = detail::pairwise_distances(net.nodes);
  const auto order = detail::neighbor_order(dist, n);
  net.graph = Graph(n);
  for (std::size_t k = 1; k <= n - 1; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto j = order[i][k - 1];
      net.graph.add_edge(i, j, std::max(dist[i * n + j], kMinEdgeWeight));
    }
    if (connected(net.graph, TopicNetwork::source, TopicNetwork::target)) {
      net.k_used = k;
      return net;
    }
  }
  // k = n - 1 is the complete graph.
  throw DomainError("topic network failed to connect the query terms");
}

inline TopicNetwork build_topic_network(const Hypothesis& h, const EmbeddingSpace& space) {
  return build_topic_network(resolve(h, space));
}

inline std::vector<std::size_t> shortest_path(const TopicNetwork& net) {
  return shortest_path(net.graph, TopicNetwork::source, TopicNetwork::target);
}

/// Total edge weight of the a~c shortest path.
inline double top_walk_length(const TopicNetwork& net) { return path_weight(net.graph, shortest_path(net)); }

namespace detail {

inline double mean_over_path(const std::vector<double>& values, const std::vector<std::size_t>& path) {
  double s = 0.0;
  for (auto u : path) s += values[u];
  return s / static_cast<double>(path.size());
}

}  // namespace detail

/// Mean betweenness centrality of the nodes on the a~c path, endpoints included.
inline double top_walk_btwn(const TopicNetwork& net) {
  return detail::mean_over_path(betweenness_centrality(net.graph), shortest_path(net));
}

/// Mean eigenvector centrality of the nodes on the a~c path. Centrality is
/// taken within the component holding a and c; other components may have
/// no principal eigenvector in common with it.
inline double top_walk_eigen(const TopicNetwork& net) {
  return detail::mean_over_path(component_eigenvector_centrality(net.graph, TopicNetwork::source),
                                shortest_path(net));
}

inline double top_net_ccoef(const TopicNetwork& net) { return average_clustering(net.graph); }

inline double top_net_mod(const TopicNetwork& net) { return greedy_modularity(net.graph).modularity; }

/// Debug dump: `src dst weight`, one edge per line, src < dst.
inline void write_edge_list(std::ostream& out, const TopicNetwork& net) {
  for (const auto& e : net.graph.edges()) out << e.u << ' ' << e.v << ' ' << detail::format_double(e.weight) << '\n';
}

/// Debug dump: `index label` per node, e.g. `2 T17`.
inline void write_node_table(std::ostream& out, const TopicNetwork& net) {
  for (std::size_t i = 0; i < net.size(); ++i) out << i << ' ' << net.label(i) << '\n';
}

}  // namespace hyporank
