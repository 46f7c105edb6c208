#pragma once

#include <algorithm>
#include <concepts>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "ost/graph.hpp"
#include "ost/union_find.hpp"

namespace ost {

/// A tree edge in some metric; `witness` holds the base-graph edges that
/// realize it (empty when the tree is not tied to a base graph).
struct TreeEdge {
  NodeId u = 0;
  NodeId v = 0;
  Cost cost = 0;
  std::vector<EdgeId> witness;
};

/// Acyclic edge set spanning exactly its node set.
class Tree {
 public:
  Tree() = default;

  Tree(std::vector<NodeId> nodes, std::vector<TreeEdge> edges)
      : nodes_(std::move(nodes)), edges_(std::move(edges)) {
    std::sort(nodes_.begin(), nodes_.end());
    if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) {
      throw GraphError("tree node set has duplicates");
    }
    if (!nodes_.empty() && edges_.size() != nodes_.size() - 1) {
      throw GraphError("tree needs exactly |nodes| - 1 edges");
    }
    adjacency_.assign(nodes_.size(), {});
    UnionFind uf(nodes_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const std::size_t a = local(edges_[e].u);
      const std::size_t b = local(edges_[e].v);
      if (!uf.unite(a, b)) throw GraphError("tree edges contain a cycle");
      adjacency_[a].push_back(e);
      adjacency_[b].push_back(e);
    }
  }

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<TreeEdge>& edges() const { return edges_; }
  bool empty() const { return nodes_.empty(); }

  bool contains(NodeId v) const { return std::binary_search(nodes_.begin(), nodes_.end(), v); }

  Cost total_cost() const {
    Cost sum = 0;
    for (const TreeEdge& e : edges_) sum += e.cost;
    return sum;
  }

  /// Indices into edges() along the unique u -> v path, in travel order.
  std::vector<std::size_t> path(NodeId u, NodeId v) const {
    const std::size_t src = local(u);
    const std::size_t dst = local(v);
    std::vector<std::size_t> via_edge(nodes_.size(), kNone);
    std::vector<char> seen(nodes_.size(), 0);
    std::vector<std::size_t> stack{dst};
    seen[dst] = 1;
    // Walk from v so that following via_edge from u leads toward v.
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      if (x == src) break;
      for (std::size_t e : adjacency_[x]) {
        const std::size_t y = local(other(edges_[e], nodes_[x]));
        if (seen[y]) continue;
        seen[y] = 1;
        via_edge[y] = e;
        stack.push_back(y);
      }
    }
    std::vector<std::size_t> out;
    for (std::size_t x = src; x != dst;) {
      const std::size_t e = via_edge[x];
      out.push_back(e);
      x = local(other(edges_[e], nodes_[x]));
    }
    return out;
  }

  /// Tree-metric distance from u to every tree node (ordered as nodes()).
  std::vector<Cost> distances_from(NodeId u) const {
    std::vector<Cost> dist(nodes_.size(), kInfinity);
    std::vector<std::size_t> stack{local(u)};
    dist[stack.back()] = 0;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t e : adjacency_[x]) {
        const std::size_t y = local(other(edges_[e], nodes_[x]));
        if (dist[y] != kInfinity) continue;
        dist[y] = dist[x] + edges_[e].cost;
        stack.push_back(y);
      }
    }
    return dist;
  }

  /// Position of v in nodes(); throws if v is not a tree node.
  std::size_t local(NodeId v) const {
    const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), v);
    if (it == nodes_.end() || *it != v) {
      throw GraphError("node " + std::to_string(v) + " is not in the tree");
    }
    return static_cast<std::size_t>(it - nodes_.begin());
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  static NodeId other(const TreeEdge& e, NodeId x) { return e.u == x ? e.v : e.u; }

  std::vector<NodeId> nodes_;
  std::vector<TreeEdge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

/// Unique u -> v path in t as edge indices in travel order.
inline std::vector<std::size_t> tree_path(const Tree& t, NodeId u, NodeId v) {
  return t.path(u, v);
}

/// A complete graph given by a node list and a symmetric weight lookup.
template <class G>
concept CompleteGraph = requires(const G& g, std::size_t i) {
  { g.size() } -> std::convertible_to<std::size_t>;
  { g.node(i) } -> std::convertible_to<NodeId>;
  { g.weight(i, i) } -> std::convertible_to<Cost>;
};

/// Plain dense complete graph, for metric inputs with no base graph.
struct DenseCompleteGraph {
  std::vector<NodeId> nodes;
  std::vector<Cost> weights;  // row-major |nodes| x |nodes|

  std::size_t size() const { return nodes.size(); }
  NodeId node(std::size_t i) const { return nodes[i]; }
  Cost weight(std::size_t i, std::size_t j) const { return weights[i * nodes.size() + j]; }
};

/// Kruskal over all pairs. Ties after cost are broken by the
/// (min node id, max node id) key, so the tree is fully deterministic.
/// Witness paths are attached when the input provides them.
template <CompleteGraph G>
Tree mst(const G& complete) {
  const std::size_t s = complete.size();
  if (s == 0) throw GraphError("minimum spanning tree of an empty node set");
  struct Candidate {
    Cost cost;
    NodeId lo;
    NodeId hi;
    std::size_t i;
    std::size_t j;
  };
  std::vector<Candidate> pairs;
  pairs.reserve(s * (s - 1) / 2);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i + 1; j < s; ++j) {
      const NodeId a = complete.node(i);
      const NodeId b = complete.node(j);
      pairs.push_back({complete.weight(i, j), std::min(a, b), std::max(a, b), i, j});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Candidate& x, const Candidate& y) {
    return std::tie(x.cost, x.lo, x.hi) < std::tie(y.cost, y.lo, y.hi);
  });
  UnionFind uf(s);
  std::vector<TreeEdge> edges;
  edges.reserve(s - 1);
  for (const Candidate& c : pairs) {
    if (edges.size() + 1 == s) break;
    if (!uf.unite(c.i, c.j)) continue;
    TreeEdge e{complete.node(c.i), complete.node(c.j), c.cost, {}};
    if constexpr (requires { complete.witness(c.i, c.j); }) {
      e.witness = complete.witness(c.i, c.j);
    }
    edges.push_back(std::move(e));
  }
  std::vector<NodeId> nodes(s);
  for (std::size_t i = 0; i < s; ++i) nodes[i] = complete.node(i);
  return Tree(std::move(nodes), std::move(edges));
}

}  // namespace ost
