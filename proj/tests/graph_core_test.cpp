#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ost/generators.hpp"
#include "ost/graph.hpp"
#include "ost/metric.hpp"
#include "ost/shortest_path.hpp"
#include "ost/tree.hpp"
#include "ost/union_find.hpp"
#include "support.hpp"

namespace ost {
namespace {

WeightedGraph path_abc() { return WeightedGraph::undirected(3, {{0, 1, 2}, {1, 2, 3}}); }

TEST(WeightedGraph, RejectsBadInput) {
  EXPECT_THROW(WeightedGraph::undirected(2, {{0, 0, 1}}), GraphError);
  EXPECT_THROW(WeightedGraph::undirected(2, {{0, 1, -1}}), GraphError);
  EXPECT_THROW(WeightedGraph::undirected(2, {{0, 2, 1}}), GraphError);
  EXPECT_THROW(WeightedGraph::undirected(2, {{0, 1, kInfinity}}), GraphError);
  EXPECT_THROW(WeightedGraph::directed(2, {{0, 1, 1}}, 5), GraphError);
}

TEST(WeightedGraph, DirectedArcsRunOneWay) {
  const auto g = WeightedGraph::directed(3, {{1, 0, 2}, {2, 1, 3}}, 0);
  EXPECT_EQ(g.out_arcs(1).size(), 1u);
  EXPECT_EQ(g.out_arcs(1)[0].to, 0);
  EXPECT_EQ(g.in_arcs(1).size(), 1u);
  EXPECT_EQ(g.in_arcs(1)[0].to, 2);
  EXPECT_TRUE(std::isinf(shortest_path(g, 0, 2).cost));
  EXPECT_EQ(shortest_path(g, 2, 0).cost, 5);
}

TEST(ShortestPath, PathGraph) {
  const auto g = path_abc();
  const PathResult r = shortest_path(g, 0, 2);
  EXPECT_EQ(r.cost, 5);
  EXPECT_EQ(r.edges, (std::vector<EdgeId>{0, 1}));
  const PathResult self = shortest_path(g, 0, 0);
  EXPECT_EQ(self.cost, 0);
  EXPECT_TRUE(self.edges.empty());
  EXPECT_THROW(shortest_path(g, 0, 3), GraphError);
}

TEST(ShortestPath, MatchesPathEnumeration) {
  const auto g = testing::random_connected(8, 10, 1, 20, 7);
  for (NodeId u = 0; u < 8; ++u) {
    for (NodeId v = 0; v < 8; ++v) {
      const PathResult r = shortest_path(g, u, v);
      EXPECT_EQ(r.cost, testing::enumerate_paths(g, u, v)) << u << "->" << v;
      EXPECT_EQ(g.total_cost(r.edges), r.cost);
    }
  }
}

TEST(ShortestPath, ReverseOrientationFollowsArcsToSource) {
  Rng rng(4);
  const auto g = gen_random_digraph(9, 12, 2, 9, rng);
  const auto fw = testing::floyd_warshall(g);
  const ShortestPathTree t = dijkstra(g, 0, Orientation::reverse);
  for (NodeId v = 0; v < 9; ++v) {
    EXPECT_EQ(t.distance(v), fw[static_cast<std::size_t>(v)][0]);
    NodeId at = v;
    for (EdgeId e : t.path_edges(v)) {
      ASSERT_EQ(g.edge(e).u, at);
      at = g.edge(e).v;
    }
    EXPECT_EQ(at, 0);
  }
}

TEST(MetricView, TriangleInequalityAndWitnessCost) {
  const auto g = testing::random_connected(12, 20, 1, 50, 11);
  MetricView view(g);
  for (NodeId u = 0; u < 12; ++u) {
    for (NodeId v = 0; v < 12; ++v) {
      EXPECT_EQ(g.total_cost(view.witness(u, v)), view.dist(u, v));
      for (NodeId w = 0; w < 12; ++w) {
        EXPECT_LE(view.dist(u, w), view.dist(u, v) + view.dist(v, w) + kCostTolerance);
      }
    }
  }
  EXPECT_EQ(view.cached_sources(), 12u);
}

TEST(MetricClosure, ShortcutsAndFixedPoint) {
  const auto tri = WeightedGraph::undirected(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 5}});
  const std::vector<NodeId> all{0, 1, 2};
  const MetricClosure c = metric_closure(tri, all);
  EXPECT_EQ(c.weight_between(0, 2), 2);
  EXPECT_EQ(c.witness(0, 2), (std::vector<EdgeId>{0, 1}));
  EXPECT_EQ(c.witness(2, 0), (std::vector<EdgeId>{1, 0}));

  const auto metric = WeightedGraph::undirected(3, {{0, 1, 2}, {1, 2, 3}, {0, 2, 4}});
  const MetricClosure m = metric_closure(metric, all);
  EXPECT_EQ(m.weight_between(0, 1), 2);
  EXPECT_EQ(m.weight_between(1, 2), 3);
  EXPECT_EQ(m.weight_between(0, 2), 4);
}

TEST(MetricClosure, HardInstanceSpokeWeight) {
  const HardInstance h = gen_hard_instance(10);
  const std::vector<NodeId> ends{0, 9};
  EXPECT_EQ(metric_closure(*h.instance.graph, ends).weight(0, 1), 1.015625);
}

TEST(MetricClosure, Errors) {
  const auto split = WeightedGraph::undirected(4, {{0, 1, 1}, {2, 3, 1}});
  const std::vector<NodeId> s{0, 2};
  EXPECT_THROW(metric_closure(split, s), GraphError);
  const auto d = WeightedGraph::directed(2, {{1, 0, 1}}, 0);
  const std::vector<NodeId> both{0, 1};
  EXPECT_THROW(metric_closure(d, both), GraphError);
}

TEST(UnionFind, Basics) {
  UnionFind uf(5);
  EXPECT_TRUE(uf.unite(0, 1));
  EXPECT_TRUE(uf.unite(3, 4));
  EXPECT_FALSE(uf.unite(1, 0));
  EXPECT_TRUE(uf.same(0, 1));
  EXPECT_FALSE(uf.same(1, 3));
  EXPECT_TRUE(uf.unite(1, 4));
  EXPECT_TRUE(uf.same(0, 3));
}

DenseCompleteGraph four_cycle() {
  // Cycle 0-1-2-3-0 with costs 1,2,3,4; diagonals too expensive to use.
  DenseCompleteGraph g{{0, 1, 2, 3}, std::vector<Cost>(16, 100)};
  const auto set = [&](std::size_t i, std::size_t j, Cost c) {
    g.weights[i * 4 + j] = c;
    g.weights[j * 4 + i] = c;
  };
  for (std::size_t i = 0; i < 4; ++i) g.weights[i * 4 + i] = 0;
  set(0, 1, 1);
  set(1, 2, 2);
  set(2, 3, 3);
  set(3, 0, 4);
  return g;
}

TEST(Mst, DropsHeaviestCycleEdge) {
  const Tree t = mst(four_cycle());
  EXPECT_EQ(t.total_cost(), 6);
  EXPECT_EQ(t.edges().size(), 3u);
  for (const TreeEdge& e : t.edges()) EXPECT_NE(e.cost, 4);
}

TEST(Mst, SingleNodeAndEmpty) {
  const Tree t = mst(DenseCompleteGraph{{7}, {0}});
  EXPECT_TRUE(t.edges().empty());
  EXPECT_EQ(t.total_cost(), 0);
  EXPECT_THROW(mst(DenseCompleteGraph{}), GraphError);
}

TEST(Mst, HardInstancePredictionTreeIsTheDashCycle) {
  const HardInstance h = gen_hard_instance(10);
  const MetricClosure c = metric_closure(*h.instance.graph, h.prediction.nodes());
  const Tree t = mst(c);
  EXPECT_EQ(t.total_cost(), 9);
  for (const TreeEdge& e : t.edges()) EXPECT_EQ(e.cost, 1);
  // v10 -> v1 runs the long way round the cycle.
  const auto p = tree_path(t, 9, 0);
  EXPECT_EQ(p.size(), 9u);
  Cost along = 0;
  for (std::size_t e : p) along += t.edges()[e].cost;
  EXPECT_EQ(along, 9);
}

TEST(Mst, CyclePropertyOnRandomMetrics) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(seed);
    const auto n = static_cast<NodeId>(std::uniform_int_distribution<int>(2, 12)(rng));
    const auto g = testing::random_connected(n, static_cast<std::size_t>(n) * 2, 1, 30, seed + 100);
    std::vector<NodeId> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    const MetricClosure c = metric_closure(g, all);
    const Tree t = mst(c);
    const auto fw = testing::floyd_warshall(g);
    EXPECT_NEAR(t.total_cost(), testing::prim_weight(fw, all), 1e-9) << "seed " << seed;
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        Cost heaviest = 0;
        for (std::size_t e : tree_path(t, u, v)) heaviest = std::max(heaviest, t.edges()[e].cost);
        EXPECT_GE(c.weight_between(u, v) + kCostTolerance, heaviest);
      }
    }
    for (const TreeEdge& e : t.edges()) EXPECT_EQ(g.total_cost(e.witness), e.cost);
  }
}

TEST(Mst, WeightInvariantUnderEdgePermutation) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 10; ++round) {
    const auto base = testing::random_connected(10, 15, 1, 5, 40 + round);
    std::vector<Edge> edges = base.edges();
    std::shuffle(edges.begin(), edges.end(), rng);
    const auto shuffled = WeightedGraph::undirected(10, edges);
    std::vector<NodeId> all(10);
    std::iota(all.begin(), all.end(), 0);
    EXPECT_EQ(mst(metric_closure(base, all)).total_cost(),
              mst(metric_closure(shuffled, all)).total_cost());
  }
}

TEST(TreePath, StarAndIdentity) {
  const Tree star({0, 1, 2}, {{0, 1, 1, {}}, {0, 2, 1, {}}});
  const auto p = tree_path(star, 1, 2);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(star.edges()[p[0]].v, 1);
  EXPECT_EQ(star.edges()[p[1]].v, 2);
  EXPECT_TRUE(tree_path(star, 1, 1).empty());
  EXPECT_THROW(tree_path(star, 1, 5), GraphError);
}

TEST(Tree, RejectsCycles) {
  EXPECT_THROW(Tree({0, 1, 2}, {{0, 1, 1, {}}, {1, 0, 1, {}}}), GraphError);
}

TEST(GraphRadius, Examples) {
  EXPECT_EQ(graph_radius(WeightedGraph::undirected(3, {{0, 1, 1}, {1, 2, 1}})), 1);
  EXPECT_EQ(graph_radius(WeightedGraph::undirected(1, {})), 0);
  EXPECT_THROW(graph_radius(WeightedGraph::undirected(2, {})), GraphError);
}

TEST(GraphRadius, MatchesAllPairs) {
  const auto g = testing::random_connected(10, 12, 1, 40, 3);
  const auto fw = testing::floyd_warshall(g);
  Cost best = kInfinity;
  for (const auto& row : fw) best = std::min(best, *std::max_element(row.begin(), row.end()));
  EXPECT_EQ(graph_radius(g), best);
}

}  // namespace
}  // namespace ost
