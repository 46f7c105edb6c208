#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ost/graph.hpp"
#include "ost/metric.hpp"
#include "ost/shortest_path.hpp"
#include "ost/tree.hpp"
#include "ost/union_find.hpp"

namespace ost {

class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Offline optimum: cost and the realizing edge set.
struct OracleResult {
  Cost cost = 0;
  std::vector<EdgeId> edges;
  std::vector<NodeId> terminals;
};

inline constexpr std::size_t kSteinerTerminalGuard = 14;
inline constexpr std::size_t kDirectedTerminalGuard = 12;
inline constexpr std::size_t kBruteForceNodeGuard = 9;
inline constexpr std::size_t kBruteForceArcGuard = 22;
/// Upper bound on subset-DP table entries (2^terminals * nodes).
inline constexpr std::size_t kDpStateGuard = std::size_t{1} << 26;

namespace detail {

inline std::vector<NodeId> sorted_unique(std::span<const NodeId> nodes) {
  std::vector<NodeId> out(nodes.begin(), nodes.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Removes cycles and non-terminal leaves from an undirected edge set.
inline std::vector<EdgeId> prune_undirected(const WeightedGraph& g, std::vector<EdgeId> edges,
                                            std::span<const NodeId> terminals) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  const auto n = static_cast<std::size_t>(g.node_count());
  UnionFind uf(n);
  std::vector<EdgeId> forest;
  for (EdgeId e : edges) {
    if (uf.unite(static_cast<std::size_t>(g.edge(e).u), static_cast<std::size_t>(g.edge(e).v))) {
      forest.push_back(e);
    }
  }
  std::vector<char> keep_node(n, 0);
  for (NodeId t : terminals) keep_node[static_cast<std::size_t>(t)] = 1;
  std::vector<int> degree(n, 0);
  for (EdgeId e : forest) {
    ++degree[static_cast<std::size_t>(g.edge(e).u)];
    ++degree[static_cast<std::size_t>(g.edge(e).v)];
  }
  std::vector<char> alive(forest.size(), 1);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < forest.size(); ++i) {
      if (!alive[i]) continue;
      const Edge& e = g.edge(forest[i]);
      for (NodeId x : {e.u, e.v}) {
        const auto xi = static_cast<std::size_t>(x);
        if (degree[xi] == 1 && !keep_node[xi]) {
          alive[i] = 0;
          --degree[static_cast<std::size_t>(e.u)];
          --degree[static_cast<std::size_t>(e.v)];
          changed = true;
          break;
        }
      }
    }
  }
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < forest.size(); ++i) {
    if (alive[i]) out.push_back(forest[i]);
  }
  return out;
}

/// Reduces a directed edge set to an in-arborescence: each terminal keeps
/// one path to the root (shortest in hops, then smallest arc id).
inline std::vector<EdgeId> prune_directed(const WeightedGraph& g, std::vector<EdgeId> edges,
                                          std::span<const NodeId> terminals, NodeId root) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  const auto n = static_cast<std::size_t>(g.node_count());
  std::vector<std::vector<EdgeId>> into(n);
  for (EdgeId e : edges) into[static_cast<std::size_t>(g.edge(e).v)].push_back(e);
  std::vector<EdgeId> next_arc(n, -1);
  std::vector<char> seen(n, 0);
  std::vector<NodeId> frontier{root};
  seen[static_cast<std::size_t>(root)] = 1;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    for (EdgeId e : into[static_cast<std::size_t>(frontier[head])]) {
      const auto u = static_cast<std::size_t>(g.edge(e).u);
      if (seen[u]) continue;
      seen[u] = 1;
      next_arc[u] = e;
      frontier.push_back(g.edge(e).u);
    }
  }
  std::vector<char> used(n, 0);
  std::vector<EdgeId> out;
  for (NodeId t : terminals) {
    for (NodeId x = t; x != root && !used[static_cast<std::size_t>(x)];) {
      used[static_cast<std::size_t>(x)] = 1;
      const EdgeId e = next_arc[static_cast<std::size_t>(x)];
      if (e < 0) throw GraphError("terminal " + std::to_string(t) + " cannot reach the root");
      out.push_back(e);
      x = g.edge(e).v;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Dreyfus-Wagner style DP over terminal subsets. dp[S][v] is the cheapest
/// edge set through which every terminal in S reaches v (arcs are followed
/// forward, so for directed graphs this builds an in-tree toward v).
/// Returns the union of edges realizing dp[all][sink].
inline std::vector<EdgeId> subset_dp(const WeightedGraph& g, std::span<const NodeId> terms,
                                     NodeId sink, Cost& optimum) {
  const std::size_t q = terms.size();
  const auto n = static_cast<std::size_t>(g.node_count());
  const std::size_t subsets = std::size_t{1} << q;
  if (subsets * n > kDpStateGuard) {
    throw GuardExceeded("subset DP table too large (" + std::to_string(q) + " terminals, " +
                        std::to_string(n) + " nodes)");
  }
  constexpr std::int32_t kBase = -1;
  constexpr std::int32_t kArc = -2;
  struct Back {
    std::int32_t kind = 0;  // split submask (> 0), kBase or kArc
    EdgeId edge = -1;
  };
  std::vector<Cost> dp(subsets * n, kInfinity);
  std::vector<Back> back(subsets * n);
  const auto at = [n](std::size_t mask, std::size_t v) { return mask * n + v; };

  using Entry = std::pair<Cost, NodeId>;
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    const std::size_t low = mask & (~mask + 1);
    if (mask == low) {
      const std::size_t i = static_cast<std::size_t>(std::countr_zero(mask));
      const auto t = static_cast<std::size_t>(terms[i]);
      dp[at(mask, t)] = 0;
      back[at(mask, t)] = {kBase, -1};
    } else {
      for (std::size_t v = 0; v < n; ++v) {
        Cost best = dp[at(mask, v)];
        std::int32_t split = 0;
        for (std::size_t sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
          if (!(sub & low)) continue;
          const Cost c = dp[at(sub, v)] + dp[at(mask ^ sub, v)];
          if (c < best) {
            best = c;
            split = static_cast<std::int32_t>(sub);
          }
        }
        if (split > 0) {
          dp[at(mask, v)] = best;
          back[at(mask, v)] = {split, -1};
        }
      }
    }
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (std::size_t v = 0; v < n; ++v) {
      if (dp[at(mask, v)] < kInfinity) heap.emplace(dp[at(mask, v)], static_cast<NodeId>(v));
    }
    std::vector<char> settled(n, 0);
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      const auto ui = static_cast<std::size_t>(u);
      if (settled[ui] || d > dp[at(mask, ui)]) continue;
      settled[ui] = 1;
      for (const Arc& a : g.out_arcs(u)) {
        const auto vi = static_cast<std::size_t>(a.to);
        const Cost nd = d + a.cost;
        if (nd < dp[at(mask, vi)]) {
          dp[at(mask, vi)] = nd;
          back[at(mask, vi)] = {kArc, a.edge};
          heap.emplace(nd, a.to);
        }
      }
    }
  }

  const std::size_t full = subsets - 1;
  optimum = dp[at(full, static_cast<std::size_t>(sink))];
  if (optimum == kInfinity) throw GraphError("terminals cannot all be connected");

  std::vector<EdgeId> edges;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{full, static_cast<std::size_t>(sink)}};
  while (!stack.empty()) {
    const auto [mask, v] = stack.back();
    stack.pop_back();
    const Back b = back[at(mask, v)];
    if (b.kind == kBase) continue;
    if (b.kind == kArc) {
      edges.push_back(b.edge);
      const Edge& e = g.edge(b.edge);
      // The arc was relaxed from its tail (forward) toward v.
      const NodeId tail = g.is_directed() ? e.u : opposite(e, static_cast<NodeId>(v));
      stack.emplace_back(mask, static_cast<std::size_t>(tail));
    } else {
      const auto sub = static_cast<std::size_t>(b.kind);
      stack.emplace_back(sub, v);
      stack.emplace_back(mask ^ sub, v);
    }
  }
  return edges;
}

}  // namespace detail

/// Exact minimum Steiner tree over an undirected graph (Steiner points
/// allowed). At most kSteinerTerminalGuard terminals.
inline OracleResult exact_steiner(const WeightedGraph& g, std::span<const NodeId> terms) {
  if (g.is_directed()) throw GraphError("exact_steiner needs an undirected graph");
  OracleResult r;
  r.terminals = detail::sorted_unique(terms);
  for (NodeId t : r.terminals) g.check_node(t);
  if (r.terminals.size() > kSteinerTerminalGuard) {
    throw GuardExceeded("exact_steiner supports at most " +
                        std::to_string(kSteinerTerminalGuard) + " terminals");
  }
  if (r.terminals.size() <= 1) return r;
  // The last terminal acts as the sink; the DP ranges over the others.
  const NodeId sink = r.terminals.back();
  const std::span<const NodeId> others(r.terminals.data(), r.terminals.size() - 1);
  Cost optimum = 0;
  auto edges = detail::subset_dp(g, others, sink, optimum);
  r.edges = detail::prune_undirected(g, std::move(edges), r.terminals);
  r.cost = g.total_cost(r.edges);
  return r;
}

/// Exact minimum directed Steiner tree: every terminal gets a directed
/// path to the root. At most kDirectedTerminalGuard terminals.
inline OracleResult exact_mdst(const WeightedGraph& g, std::span<const NodeId> terms) {
  if (!g.is_directed()) throw GraphError("exact_mdst needs a directed graph with a root");
  const NodeId root = *g.root();
  OracleResult r;
  r.terminals = detail::sorted_unique(terms);
  for (NodeId t : r.terminals) g.check_node(t);
  std::vector<NodeId> sources;
  for (NodeId t : r.terminals) {
    if (t != root) sources.push_back(t);
  }
  if (sources.size() > kDirectedTerminalGuard) {
    throw GuardExceeded("exact_mdst supports at most " +
                        std::to_string(kDirectedTerminalGuard) + " terminals");
  }
  if (sources.empty()) return r;
  Cost optimum = 0;
  auto edges = detail::subset_dp(g, sources, root, optimum);
  r.edges = detail::prune_directed(g, std::move(edges), sources, root);
  r.cost = g.total_cost(r.edges);
  return r;
}

/// Exhaustive optimum for tiny graphs, independent of the subset DP.
/// Undirected: minimum over Steiner-point subsets of the metric MST of
/// terminals plus Steiner points. Directed: minimum over all arc subsets
/// that give every terminal a path to the root.
inline OracleResult brute_force(const WeightedGraph& g, std::span<const NodeId> terms,
                                std::optional<NodeId> root = std::nullopt) {
  if (static_cast<std::size_t>(g.node_count()) > kBruteForceNodeGuard) {
    throw GuardExceeded("brute_force supports at most " +
                        std::to_string(kBruteForceNodeGuard) + " nodes");
  }
  OracleResult r;
  r.terminals = detail::sorted_unique(terms);
  for (NodeId t : r.terminals) g.check_node(t);
  const auto n = static_cast<std::size_t>(g.node_count());

  if (g.is_directed()) {
    const NodeId sink = root.value_or(g.root().value_or(0));
    g.check_node(sink);
    const auto m = static_cast<std::size_t>(g.edge_count());
    if (m > kBruteForceArcGuard) {
      throw GuardExceeded("brute_force supports at most " +
                          std::to_string(kBruteForceArcGuard) + " arcs");
    }
    Cost best = kInfinity;
    std::uint32_t best_mask = 0;
    std::vector<char> reach(n);
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
      Cost c = 0;
      for (std::size_t e = 0; e < m; ++e) {
        if (mask >> e & 1U) c += g.edge_cost(static_cast<EdgeId>(e));
      }
      if (c >= best) continue;
      // Fixed point of "u reaches the root if some chosen arc u->v has v reaching it".
      std::fill(reach.begin(), reach.end(), 0);
      reach[static_cast<std::size_t>(sink)] = 1;
      for (bool grew = true; grew;) {
        grew = false;
        for (std::size_t e = 0; e < m; ++e) {
          if (!(mask >> e & 1U)) continue;
          const Edge& edge = g.edge(static_cast<EdgeId>(e));
          if (reach[static_cast<std::size_t>(edge.v)] && !reach[static_cast<std::size_t>(edge.u)]) {
            reach[static_cast<std::size_t>(edge.u)] = 1;
            grew = true;
          }
        }
      }
      const bool ok = std::all_of(r.terminals.begin(), r.terminals.end(),
                                  [&](NodeId t) { return reach[static_cast<std::size_t>(t)] != 0; });
      if (ok) {
        best = c;
        best_mask = mask;
      }
    }
    if (best == kInfinity) throw GraphError("terminals cannot all reach the root");
    r.cost = best;
    for (std::size_t e = 0; e < m; ++e) {
      if (best_mask >> e & 1U) r.edges.push_back(static_cast<EdgeId>(e));
    }
    return r;
  }

  if (r.terminals.size() <= 1) return r;
  MetricView view(g);
  std::vector<NodeId> optional_nodes;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!std::binary_search(r.terminals.begin(), r.terminals.end(), v)) optional_nodes.push_back(v);
  }
  Cost best = kInfinity;
  Tree best_tree;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << optional_nodes.size()); ++mask) {
    std::vector<NodeId> chosen = r.terminals;
    for (std::size_t i = 0; i < optional_nodes.size(); ++i) {
      if (mask >> i & 1U) chosen.push_back(optional_nodes[i]);
    }
    MetricClosure closure = metric_closure(view, chosen);
    Tree tree = mst(closure);
    if (tree.total_cost() < best) {
      best = tree.total_cost();
      best_tree = std::move(tree);
    }
  }
  r.cost = best;
  for (const TreeEdge& e : best_tree.edges()) {
    r.edges.insert(r.edges.end(), e.witness.begin(), e.witness.end());
  }
  std::sort(r.edges.begin(), r.edges.end());
  r.edges.erase(std::unique(r.edges.begin(), r.edges.end()), r.edges.end());
  return r;
}

/// Metric MST over the terminals, halved: a lower bound on the optimum.
inline Cost opt_lower_bound(MetricView& view, std::span<const NodeId> terms) {
  const auto nodes = detail::sorted_unique(terms);
  if (nodes.size() <= 1) return 0;
  return mst(metric_closure(view, nodes)).total_cost() / 2;
}

inline Cost opt_lower_bound(const WeightedGraph& g, std::span<const NodeId> terms) {
  MetricView view(g);
  return opt_lower_bound(view, terms);
}

}  // namespace ost
