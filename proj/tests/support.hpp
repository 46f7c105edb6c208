#pragma once

// Test-side oracles. These deliberately avoid the library's own shortest
// path and MST code so the comparisons are independent.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "ost/graph.hpp"

namespace ost::testing {

using Matrix = std::vector<std::vector<Cost>>;

inline Matrix floyd_warshall(const WeightedGraph& g) {
  const auto n = static_cast<std::size_t>(g.node_count());
  Matrix d(n, std::vector<Cost>(n, kInfinity));
  for (std::size_t v = 0; v < n; ++v) d[v][v] = 0;
  for (const Edge& e : g.edges()) {
    const auto u = static_cast<std::size_t>(e.u);
    const auto v = static_cast<std::size_t>(e.v);
    d[u][v] = std::min(d[u][v], e.cost);
    if (!g.is_directed()) d[v][u] = std::min(d[v][u], e.cost);
  }
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (d[i][m] + d[m][j] < d[i][j]) d[i][j] = d[i][m] + d[m][j];
      }
    }
  }
  return d;
}

/// Cheapest simple u -> v path by exhaustive DFS.
inline Cost enumerate_paths(const WeightedGraph& g, NodeId u, NodeId v) {
  const auto n = static_cast<std::size_t>(g.node_count());
  std::vector<char> on_path(n, 0);
  Cost best = kInfinity;
  std::function<void(NodeId, Cost)> dfs = [&](NodeId x, Cost acc) {
    if (x == v) {
      best = std::min(best, acc);
      return;
    }
    on_path[static_cast<std::size_t>(x)] = 1;
    for (const Edge& e : g.edges()) {
      NodeId next = -1;
      if (e.u == x) next = e.v;
      else if (!g.is_directed() && e.v == x) next = e.u;
      if (next >= 0 && !on_path[static_cast<std::size_t>(next)]) dfs(next, acc + e.cost);
    }
    on_path[static_cast<std::size_t>(x)] = 0;
  };
  dfs(u, 0);
  return best;
}

/// Connected undirected graph: random spanning tree plus extra edges, integer
/// costs in [lo, hi].
inline WeightedGraph random_connected(NodeId n, std::size_t extra, int lo, int hi,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> cost(lo, hi);
  std::vector<Edge> edges;
  std::vector<std::vector<char>> used(static_cast<std::size_t>(n),
                                      std::vector<char>(static_cast<std::size_t>(n), 0));
  for (NodeId v = 1; v < n; ++v) {
    const auto u = static_cast<NodeId>(std::uniform_int_distribution<int>(0, v - 1)(rng));
    edges.push_back({u, v, static_cast<Cost>(cost(rng))});
    used[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
    used[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
  }
  const std::size_t max_edges = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  const std::size_t target = std::min(max_edges, edges.size() + extra);
  std::uniform_int_distribution<int> node(0, n - 1);
  while (edges.size() < target) {
    const NodeId a = node(rng);
    const NodeId b = node(rng);
    if (a == b || used[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) continue;
    used[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
    used[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = 1;
    edges.push_back({std::min(a, b), std::max(a, b), static_cast<Cost>(cost(rng))});
  }
  return WeightedGraph::undirected(n, std::move(edges));
}

/// k distinct nodes drawn from [0, n) by a plain shuffle.
inline std::vector<NodeId> random_terminals(NodeId n, std::size_t k, std::uint64_t seed,
                                            NodeId exclude = -1) {
  std::mt19937_64 rng(seed);
  std::vector<NodeId> all;
  for (NodeId v = 0; v < n; ++v) {
    if (v != exclude) all.push_back(v);
  }
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min(k, all.size()));
  return all;
}

/// Prim's algorithm on a dense matrix restricted to `nodes`.
inline Cost prim_weight(const Matrix& d, const std::vector<NodeId>& nodes) {
  if (nodes.size() <= 1) return 0;
  std::vector<Cost> key(nodes.size(), kInfinity);
  std::vector<char> in(nodes.size(), 0);
  key[0] = 0;
  Cost total = 0;
  for (std::size_t round = 0; round < nodes.size(); ++round) {
    std::size_t pick = nodes.size();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!in[i] && (pick == nodes.size() || key[i] < key[pick])) pick = i;
    }
    in[pick] = 1;
    total += key[pick];
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Cost w = d[static_cast<std::size_t>(nodes[pick])][static_cast<std::size_t>(nodes[i])];
      if (!in[i] && w < key[i]) key[i] = w;
    }
  }
  return total;
}

}  // namespace ost::testing
