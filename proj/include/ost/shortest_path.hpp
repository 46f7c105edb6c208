#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <queue>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ost/graph.hpp"

namespace ost {

enum class Orientation {
  forward,  // distances from the source along arcs
  reverse,  // distances to the source against arcs (v -> source)
};

/// Single-source shortest-path tree. For forward orientation `parent[v]` is
/// the predecessor of v on the source->v path; for reverse orientation it is
/// the next hop of v on the v->source path.
struct ShortestPathTree {
  NodeId source = 0;
  Orientation orientation = Orientation::forward;
  std::vector<Cost> dist;
  std::vector<NodeId> parent;
  std::vector<EdgeId> parent_edge;

  bool reaches(NodeId v) const { return dist[static_cast<std::size_t>(v)] < kInfinity; }
  Cost distance(NodeId v) const { return dist[static_cast<std::size_t>(v)]; }

  /// Original edges along the tree path. Forward: source -> v in travel
  /// order. Reverse: v -> source in travel order. Empty if unreachable.
  std::vector<EdgeId> path_edges(NodeId v) const {
    std::vector<EdgeId> out;
    if (!reaches(v)) return out;
    for (NodeId x = v; x != source; x = parent[static_cast<std::size_t>(x)]) {
      out.push_back(parent_edge[static_cast<std::size_t>(x)]);
    }
    if (orientation == Orientation::forward) std::reverse(out.begin(), out.end());
    return out;
  }
};

/// Dijkstra with deterministic ties: among equal-cost predecessors the
/// smaller node id wins (then the smaller edge id).
inline ShortestPathTree dijkstra(const WeightedGraph& g, NodeId source,
                                 Orientation orientation = Orientation::forward) {
  g.check_node(source);
  const auto n = static_cast<std::size_t>(g.node_count());
  ShortestPathTree t;
  t.source = source;
  t.orientation = orientation;
  t.dist.assign(n, kInfinity);
  t.parent.assign(n, -1);
  t.parent_edge.assign(n, -1);
  std::vector<char> settled(n, 0);

  using Entry = std::pair<Cost, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  t.dist[static_cast<std::size_t>(source)] = 0;
  heap.emplace(0, source);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    const auto ui = static_cast<std::size_t>(u);
    if (settled[ui]) continue;
    settled[ui] = 1;
    const auto arcs =
        orientation == Orientation::forward ? g.out_arcs(u) : g.in_arcs(u);
    for (const Arc& a : arcs) {
      const auto vi = static_cast<std::size_t>(a.to);
      if (settled[vi]) continue;
      const Cost nd = d + a.cost;
      if (nd < t.dist[vi]) {
        t.dist[vi] = nd;
        t.parent[vi] = u;
        t.parent_edge[vi] = a.edge;
        heap.emplace(nd, a.to);
      } else if (nd == t.dist[vi] &&
                 std::pair{u, a.edge} < std::pair{t.parent[vi], t.parent_edge[vi]}) {
        t.parent[vi] = u;
        t.parent_edge[vi] = a.edge;
      }
    }
  }
  return t;
}

struct PathResult {
  Cost cost = kInfinity;
  std::vector<EdgeId> edges;

  bool reachable() const { return cost < kInfinity; }
};

/// Minimum-cost u -> v path; cost is kInfinity when v is unreachable.
inline PathResult shortest_path(const WeightedGraph& g, NodeId u, NodeId v) {
  g.check_node(u);
  g.check_node(v);
  const ShortestPathTree t = dijkstra(g, u);
  return {t.distance(v), t.path_edges(v)};
}

/// On-demand shortest-path distances with per-source memoization. Not
/// synchronized: confine one view to one thread.
class MetricView {
 public:
  explicit MetricView(const WeightedGraph& g) : graph_(&g) {}

  const WeightedGraph& graph() const { return *graph_; }

  const ShortestPathTree& from(NodeId source) { return *shared_from(source); }

  std::shared_ptr<const ShortestPathTree> shared_from(NodeId source) {
    auto it = cache_.find(source);
    if (it == cache_.end()) {
      it = cache_
               .emplace(source, std::make_shared<const ShortestPathTree>(
                                    dijkstra(*graph_, source)))
               .first;
    }
    return it->second;
  }

  Cost dist(NodeId u, NodeId v) {
    graph_->check_node(v);
    return from(u).distance(v);
  }

  /// Original edges of the cached u -> v shortest path, in travel order.
  std::vector<EdgeId> witness(NodeId u, NodeId v) {
    graph_->check_node(v);
    return from(u).path_edges(v);
  }

  std::size_t cached_sources() const { return cache_.size(); }

 private:
  const WeightedGraph* graph_;
  std::unordered_map<NodeId, std::shared_ptr<const ShortestPathTree>> cache_;
};

}  // namespace ost
