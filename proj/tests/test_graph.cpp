#include <cmath>

#include <gtest/gtest.h>

#include "hyporank/graph.hpp"
#include "oracles.hpp"

using namespace hyporank;

namespace {

Graph make(std::size_t n, std::initializer_list<WeightedEdge> edges) {
  Graph g(n);
  for (const auto& e : edges) g.add_edge(e.u, e.v, e.weight);
  return g;
}

Graph path3() { return make(3, {{0, 2, 1.0}, {2, 1, 1.0}}); }  // a=0, c=1, t1=2
Graph triangle() { return make(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}); }

double mean_over(const std::vector<double>& v, const std::vector<std::size_t>& p) {
  double s = 0.0;
  for (auto i : p) s += v[i];
  return s / static_cast<double>(p.size());
}

}  // namespace

TEST(GraphBasics, RejectsSelfLoopsAndBadWeights) {
  Graph g(3);
  EXPECT_THROW(g.add_edge(1, 1, 1.0), DomainError);
  EXPECT_THROW(g.add_edge(0, 1, 0.0), DomainError);
  EXPECT_THROW(g.add_edge(0, 1, -1.0), DomainError);
  g.add_edge(0, 1, 2.0);
  g.add_edge(1, 0, 2.0);  // re-adding an edge is idempotent
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_EQ(g.weight(1, 0), 2.0);
}

TEST(ShortestPath, PathGraph) {
  auto g = path3();
  auto p = shortest_path(g, 0, 1);
  EXPECT_EQ(p, (std::vector<std::size_t>{0, 2, 1}));
  EXPECT_EQ(path_weight(g, p), 2.0);
  auto all = oracle::all_shortest_paths(g, 0, 1);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0], p);
}

TEST(ShortestPath, DirectEdgeBeatsDetour) {
  auto g = make(3, {{0, 1, 0.5}, {0, 2, 1.0}, {2, 1, 1.0}});
  EXPECT_EQ(shortest_path(g, 0, 1), (std::vector<std::size_t>{0, 1}));
}

TEST(ShortestPath, TieGoesToSmallerIndex) {
  auto g = make(4, {{0, 3, 1.0}, {3, 1, 1.0}, {0, 2, 1.0}, {2, 1, 1.0}});
  EXPECT_EQ(shortest_path(g, 0, 1), (std::vector<std::size_t>{0, 2, 1}));
}

TEST(ShortestPath, MatchesEnumerationOnRandomGraphs) {
  oracle::Rng rng(3);
  for (int it = 0; it < 300; ++it) {
    const auto n = 2 + rng.below(7);
    auto g = oracle::random_graph(rng, n, 0.5);
    if (!connected(g, 0, 1)) continue;
    const auto all = oracle::all_shortest_paths(g, 0, 1);
    const auto p = shortest_path(g, 0, 1);
    EXPECT_EQ(path_weight(g, p), oracle::weight_of(g, all.front()));
    // The tie rule picks the lexicographically smallest shortest path.
    EXPECT_EQ(p, *std::min_element(all.begin(), all.end()));
  }
}

TEST(Betweenness, Examples) {
  auto p = path3();
  auto bc = betweenness_centrality(p);
  EXPECT_EQ(bc, (std::vector<double>{0.0, 0.0, 1.0}));
  EXPECT_NEAR(mean_over(bc, {0, 2, 1}), 1.0 / 3.0, 1e-12);

  auto t = betweenness_centrality(triangle());
  EXPECT_EQ(t, (std::vector<double>{0.0, 0.0, 0.0}));

  // 4-node star, hub 2, a=0 and c=1 among the leaves.
  auto star = make(4, {{0, 2, 1.0}, {1, 2, 1.0}, {3, 2, 1.0}});
  auto sb = betweenness_centrality(star);
  EXPECT_NEAR(sb[2], 1.0, 1e-12);
  EXPECT_EQ(sb[0], 0.0);
  EXPECT_NEAR(mean_over(sb, shortest_path(star, 0, 1)), 1.0 / 3.0, 1e-12);
}

TEST(Betweenness, MatchesPathEnumerationOnRandomGraphs) {
  oracle::Rng rng(7);
  for (int it = 0; it < 300; ++it) {
    const auto n = 1 + rng.below(9);
    auto g = oracle::random_graph(rng, n, 0.2 + 0.6 * rng.uniform());
    const auto got = betweenness_centrality(g);
    const auto want = oracle::betweenness(g);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(got[i], want[i], 1e-9) << "n=" << n << " node " << i;
  }
}

TEST(Eigenvector, Examples) {
  for (double v : eigenvector_centrality(triangle())) EXPECT_NEAR(v, 1.0 / std::sqrt(3.0), 1e-9);

  auto p = eigenvector_centrality(path3());
  EXPECT_NEAR(p[0], 0.5, 1e-9);
  EXPECT_NEAR(p[2], std::sqrt(2.0) / 2.0, 1e-9);
  EXPECT_NEAR(mean_over(p, {0, 2, 1}), (2.0 + std::sqrt(2.0)) / 6.0, 1e-9);

  auto c4 = make(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}});
  for (double v : eigenvector_centrality(c4)) EXPECT_NEAR(v, 0.5, 1e-9);
}

TEST(Eigenvector, ComponentOnlySeesItsOwnNodes) {
  // triangle 0-1-2 next to a 4-clique 3..6 whose spectral radius is larger
  auto g = make(7, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {3, 4, 1}, {3, 5, 1}, {3, 6, 1},
                    {4, 5, 1}, {4, 6, 1}, {5, 6, 1}});
  auto c = component_eigenvector_centrality(g, 1);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(c[i], 1.0 / std::sqrt(3.0), 1e-9);
  for (std::size_t i = 3; i < 7; ++i) EXPECT_EQ(c[i], 0.0);
  auto d = component_eigenvector_centrality(g, 5);
  for (std::size_t i = 3; i < 7; ++i) EXPECT_NEAR(d[i], 0.5, 1e-9);

  // whole-graph iteration drains the triangle
  auto whole = eigenvector_centrality(g);
  EXPECT_LT(whole[0], 1e-6);

  auto single = component_eigenvector_centrality(Graph(3), 2);
  EXPECT_EQ(single, (std::vector<double>{0.0, 0.0, 1.0}));
}

TEST(Eigenvector, ComponentMatchesWholeGraphWhenConnected) {
  EXPECT_EQ(component_eigenvector_centrality(path3(), 0), eigenvector_centrality(path3()));
}

TEST(Eigenvector, MatchesIndependentIterationOnConnectedGraphs) {
  oracle::Rng rng(9);
  int checked = 0;
  while (checked < 100) {
    const auto n = 3 + rng.below(8);
    auto g = oracle::random_graph(rng, n, 0.5);
    bool conn = true;
    for (std::size_t v = 1; v < n; ++v) conn = conn && connected(g, 0, v);
    if (!conn) continue;
    ++checked;
    const auto got = eigenvector_centrality(g);
    const auto want = oracle::principal_eigenvector(g);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(got[i], want[i], 1e-8);
    double nrm = 0.0;
    for (double v : got) nrm += v * v;
    EXPECT_NEAR(nrm, 1.0, 1e-12);
  }
}

TEST(Clustering, Examples) {
  EXPECT_NEAR(average_clustering(triangle()), 1.0, 1e-12);
  EXPECT_EQ(average_clustering(path3()), 0.0);
  auto tp = make(4, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {2, 3, 1}});
  EXPECT_NEAR(average_clustering(tp), (1.0 + 1.0 + 1.0 / 3.0 + 0.0) / 4.0, 1e-12);
  EXPECT_NEAR(average_clustering(tp), 0.5833, 1e-4);
}

TEST(Clustering, MatchesTriangleCountOracle) {
  oracle::Rng rng(13);
  for (int it = 0; it < 300; ++it) {
    auto g = oracle::random_graph(rng, 1 + rng.below(10), rng.uniform());
    EXPECT_NEAR(average_clustering(g), oracle::clustering(g), 1e-12);
  }
}

TEST(Modularity, Examples) {
  auto t = greedy_modularity(triangle());
  EXPECT_EQ(t.community, (std::vector<std::size_t>{0, 0, 0}));
  EXPECT_NEAR(t.modularity, 0.0, 1e-12);

  auto two = make(6, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}, {2, 3, 1}});
  auto r = greedy_modularity(two);
  EXPECT_EQ(r.community, (std::vector<std::size_t>{0, 0, 0, 3, 3, 3}));
  EXPECT_NEAR(r.modularity, 5.0 / 14.0, 1e-12);
  EXPECT_NEAR(r.modularity, oracle::best_modularity(two), 1e-12);
  EXPECT_NEAR(r.modularity, 0.3571, 1e-4);
}

TEST(Modularity, PathOfThreeMatchesExhaustiveSearch) {
  // Exhaustive search over the five partitions of three nodes: splitting off
  // an end node gives Q = -1/8, singletons -3/8, the whole path 0.
  auto g = path3();
  EXPECT_NEAR(oracle::best_modularity(g), 0.0, 1e-12);
  EXPECT_NEAR(greedy_modularity(g).modularity, oracle::best_modularity(g), 1e-12);
  EXPECT_NEAR(modularity(g, {0, 1, 0}), -0.125, 1e-12);
}

TEST(Modularity, DefinitionAndGreedyBounds) {
  oracle::Rng rng(17);
  for (int it = 0; it < 150; ++it) {
    const auto n = 1 + rng.below(8);
    auto g = oracle::random_graph(rng, n, 0.2 + 0.6 * rng.uniform());
    std::vector<std::size_t> part(n);
    for (auto& c : part) c = rng.below(n);
    EXPECT_NEAR(modularity(g, part), oracle::modularity(g, part), 1e-12);
    const auto greedy = greedy_modularity(g);
    EXPECT_NEAR(greedy.modularity, oracle::modularity(g, greedy.community), 1e-12);
    EXPECT_LE(greedy.modularity, oracle::best_modularity(g) + 1e-12);
    EXPECT_GE(greedy.modularity, 0.0 - 1e-12);
    EXPECT_LE(greedy.modularity, 1.0);
  }
}
