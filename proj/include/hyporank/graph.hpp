#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "hyporank/error.hpp"

namespace hyporank {

struct WeightedEdge {
  std::size_t u;
  std::size_t v;
  double weight;
};

/// Small undirected weighted graph backed by a dense weight matrix.
/// Neighbor lists are kept in ascending index order, which is what every
/// deterministic tie rule below relies on.
class Graph {
public:
  explicit Graph(std::size_t n = 0) : n_(n), weight_(n * n, 0.0), adj_(n) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_; }

  void add_edge(std::size_t u, std::size_t v, double w) {
    if (u == v) throw DomainError("self loops are not allowed");
    if (!(w > 0.0)) throw DomainError("edge weights must be positive");
    if (!has_edge(u, v)) {
      insert_sorted(adj_[u], v);
      insert_sorted(adj_[v], u);
      ++edges_;
    }
    weight_[u * n_ + v] = w;
    weight_[v * n_ + u] = w;
  }

  bool has_edge(std::size_t u, std::size_t v) const { return weight_[u * n_ + v] > 0.0; }
  double weight(std::size_t u, std::size_t v) const { return weight_[u * n_ + v]; }
  const std::vector<std::size_t>& neighbors(std::size_t u) const { return adj_[u]; }
  std::size_t degree(std::size_t u) const { return adj_[u].size(); }

  /// Edges with u < v, ordered by (u, v).
  std::vector<WeightedEdge> edges() const {
    std::vector<WeightedEdge> out;
    for (std::size_t u = 0; u < n_; ++u)
      for (auto v : adj_[u])
        if (u < v) out.push_back({u, v, weight(u, v)});
    return out;
  }

private:
  static void insert_sorted(std::vector<std::size_t>& xs, std::size_t x) {
    xs.insert(std::lower_bound(xs.begin(), xs.end(), x), x);
  }

  std::size_t n_;
  std::size_t edges_ = 0;
  std::vector<double> weight_;
  std::vector<std::vector<std::size_t>> adj_;
};

inline bool connected(const Graph& g, std::size_t s, std::size_t t) {
  std::vector<char> seen(g.size(), 0);
  std::vector<std::size_t> stack{s};
  seen[s] = 1;
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    if (u == t) return true;
    for (auto v : g.neighbors(u))
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
  }
  return false;
}

/// Single-source weighted distances. Extract-min scans in index order, so
/// results are reproducible bit for bit.
inline std::vector<double> dijkstra(const Graph& g, std::size_t source) {
  const auto n = g.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  std::vector<char> done(n, 0);
  dist[source] = 0.0;
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t u = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && dist[i] < inf && (u == n || dist[i] < dist[u])) u = i;
    if (u == n) break;
    done[u] = 1;
    for (auto v : g.neighbors(u)) {
      const double cand = dist[u] + g.weight(u, v);
      if (cand < dist[v]) dist[v] = cand;
    }
  }
  return dist;
}

/// Minimum-weight path from s to t. Among equal-weight paths the
/// lexicographically smallest node sequence is returned. Empty when t is
/// unreachable.
inline std::vector<std::size_t> shortest_path(const Graph& g, std::size_t s, std::size_t t) {
  const auto to_target = dijkstra(g, t);
  if (!std::isfinite(to_target[s])) return {};
  std::vector<std::size_t> path{s};
  std::size_t u = s;
  while (u != t) {
    // Neighbors are ascending, so the first one on a shortest path wins.
    // The Dijkstra predecessor satisfies the equality exactly, so the walk
    // always advances.
    for (auto v : g.neighbors(u)) {
      if (to_target[v] + g.weight(u, v) == to_target[u]) {
        u = v;
        break;
      }
    }
    path.push_back(u);
  }
  return path;
}

inline double path_weight(const Graph& g, const std::vector<std::size_t>& path) {
  double s = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) s += g.weight(path[i - 1], path[i]);
  return s;
}

/// Brandes betweenness over weighted shortest paths, each unordered pair
/// counted once, normalized by (n-1)(n-2)/2. Graphs with fewer than three
/// nodes get all zeros.
inline std::vector<double> betweenness_centrality(const Graph& g) {
  const auto n = g.size();
  std::vector<double> bc(n, 0.0);
  if (n < 3) return bc;
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<double> dist(n), sigma(n), delta(n);
  std::vector<std::vector<std::size_t>> preds(n);
  std::vector<char> done(n);
  std::vector<std::size_t> order;
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), inf);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(done.begin(), done.end(), 0);
    for (auto& p : preds) p.clear();
    order.clear();
    dist[s] = 0.0;
    sigma[s] = 1.0;
    for (;;) {
      std::size_t u = n;
      for (std::size_t i = 0; i < n; ++i)
        if (!done[i] && dist[i] < inf && (u == n || dist[i] < dist[u])) u = i;
      if (u == n) break;
      done[u] = 1;
      order.push_back(u);
      for (auto v : g.neighbors(u)) {
        if (done[v]) continue;
        const double cand = dist[u] + g.weight(u, v);
        if (cand < dist[v]) {
          dist[v] = cand;
          sigma[v] = sigma[u];
          preds[v].assign(1, u);
        } else if (cand == dist[v]) {
          sigma[v] += sigma[u];
          preds[v].push_back(u);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const auto w = *it;
      for (auto v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) bc[w] += delta[w];
    }
  }
  // Each unordered pair was seen from both ends.
  const double scale = 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
  for (auto& b : bc) b *= scale;
  return bc;
}

namespace detail {

// Power iteration with A + I from x, which must be L2-normalized. A + I has
// the same eigenvectors as A but cannot oscillate on bipartite graphs, and
// it never moves mass between components.
inline std::vector<double> power_iterate(const Graph& g, std::vector<double> x, double tol, int max_iter) {
  const auto n = g.size();
  std::vector<double> next(n);
  for (int it = 0; it < max_iter; ++it) {
    for (std::size_t u = 0; u < n; ++u) {
      double s = x[u];
      for (auto v : g.neighbors(u)) s += x[v];
      next[u] = s;
    }
    double nrm = 0.0;
    for (double v : next) nrm += v * v;
    nrm = std::sqrt(nrm);
    double diff = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      next[u] /= nrm;
      diff = std::max(diff, std::abs(next[u] - x[u]));
    }
    x.swap(next);
    if (diff < tol) return x;
  }
  throw ConvergenceError("eigenvector centrality did not converge in " + std::to_string(max_iter) + " iterations");
}

}  // namespace detail

/// Eigenvector centrality of the unweighted adjacency matrix, L2-normalized.
/// Meant for connected graphs; on a disconnected one the result depends on
/// how the components' spectra compare.
inline std::vector<double> eigenvector_centrality(const Graph& g, double tol = 1e-10, int max_iter = 1000) {
  const auto n = g.size();
  if (n == 0) return {};
  return detail::power_iterate(g, std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n))), tol, max_iter);
}

/// Eigenvector centrality of the component containing s, computed as if it
/// were the whole graph. Nodes outside it get 0.
inline std::vector<double> component_eigenvector_centrality(const Graph& g, std::size_t s, double tol = 1e-10,
                                                            int max_iter = 1000) {
  const auto n = g.size();
  std::vector<double> x(n, 0.0);
  std::vector<std::size_t> stack{s};
  x[s] = 1.0;
  std::size_t size = 1;
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (auto v : g.neighbors(u))
      if (x[v] == 0.0) {
        x[v] = 1.0;
        ++size;
        stack.push_back(v);
      }
  }
  const double start = 1.0 / std::sqrt(static_cast<double>(size));
  for (auto& v : x) v *= start;
  return detail::power_iterate(g, std::move(x), tol, max_iter);
}

/// Mean local clustering coefficient; nodes of degree < 2 contribute 0.
inline double average_clustering(const Graph& g) {
  const auto n = g.size();
  if (n == 0) return 0.0;
  double total = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    const auto& nb = g.neighbors(u);
    const auto d = nb.size();
    if (d < 2) continue;
    std::size_t links = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (g.has_edge(nb[i], nb[j])) ++links;
    total += static_cast<double>(links) / (static_cast<double>(d) * static_cast<double>(d - 1) / 2.0);
  }
  return total / static_cast<double>(n);
}

/// Newman modularity of a partition of the unweighted graph.
/// `community[u]` is any label; labels need not be contiguous.
inline double modularity(const Graph& g, const std::vector<std::size_t>& community) {
  const double m = static_cast<double>(g.edge_count());
  if (m == 0.0) return 0.0;
  const auto n = g.size();
  std::size_t max_label = 0;
  for (auto c : community) max_label = std::max(max_label, c);
  std::vector<double> internal(max_label + 1, 0.0), degree(max_label + 1, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    degree[community[u]] += static_cast<double>(g.degree(u));
    for (auto v : g.neighbors(u))
      if (u < v && community[u] == community[v]) internal[community[u]] += 1.0;
  }
  double q = 0.0;
  for (std::size_t c = 0; c <= max_label; ++c) {
    const double share = degree[c] / (2.0 * m);
    q += internal[c] / m - share * share;
  }
  return q;
}

struct CommunityPartition {
  std::vector<std::size_t> community;  // label = smallest node index in the community
  double modularity = 0.0;
};

/// Greedy agglomerative modularity maximization on the unweighted graph.
/// Starts from singletons and repeatedly merges the pair with the largest
/// gain (ties: smallest community indices) until no merge has positive gain.
/// Gains are compared in exact integer arithmetic.
inline CommunityPartition greedy_modularity(const Graph& g) {
  const auto n = g.size();
  CommunityPartition out;
  out.community.resize(n);
  for (std::size_t u = 0; u < n; ++u) out.community[u] = u;
  const auto m = static_cast<std::int64_t>(g.edge_count());
  if (m == 0) return out;

  // links[i][j]: edges between communities i and j (i != j).
  std::vector<std::vector<std::int64_t>> links(n, std::vector<std::int64_t>(n, 0));
  std::vector<std::int64_t> deg(n);
  std::vector<char> alive(n, 1);
  for (std::size_t u = 0; u < n; ++u) {
    deg[u] = static_cast<std::int64_t>(g.degree(u));
    for (auto v : g.neighbors(u)) links[u][v] = 1;
  }
  for (;;) {
    // 2 m^2 * dQ = 2 m L_ij - D_i D_j
    std::int64_t best_gain = 0;
    std::size_t bi = n, bj = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!alive[j] || links[i][j] == 0) continue;
        const std::int64_t gain = 2 * m * links[i][j] - deg[i] * deg[j];
        if (gain > best_gain) {
          best_gain = gain;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi == n) break;
    alive[bj] = 0;
    deg[bi] += deg[bj];
    for (std::size_t k = 0; k < n; ++k) {
      if (k == bi || k == bj) continue;
      links[bi][k] += links[bj][k];
      links[k][bi] = links[bi][k];
    }
    for (auto& c : out.community)
      if (c == bj) c = bi;
  }
  out.modularity = modularity(g, out.community);
  return out;
}

}  // namespace hyporank
