#pragma once

#include <algorithm>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ost/graph.hpp"
#include "ost/shortest_path.hpp"

namespace ost {

/// Complete weighted graph over a node subset of an undirected base graph,
/// weighted by shortest-path distance. Each pair keeps a witness path of
/// original edges whose costs sum to the pair weight.
class MetricClosure {
 public:
  MetricClosure() = default;

  std::size_t size() const { return nodes_.size(); }
  const std::vector<NodeId>& nodes() const { return nodes_; }
  NodeId node(std::size_t i) const { return nodes_[i]; }

  Cost weight(std::size_t i, std::size_t j) const { return weights_[i * nodes_.size() + j]; }

  /// Index of v among nodes(), or -1.
  std::ptrdiff_t index_of(NodeId v) const {
    const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), v);
    if (it == nodes_.end() || *it != v) return -1;
    return it - nodes_.begin();
  }

  Cost weight_between(NodeId u, NodeId v) const {
    const auto i = index_of(u);
    const auto j = index_of(v);
    if (i < 0 || j < 0) throw GraphError("node not in metric closure");
    return weight(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }

  /// Original edges from node(i) to node(j) in travel order.
  std::vector<EdgeId> witness(std::size_t i, std::size_t j) const {
    if (i == j) return {};
    if (i < j) return trees_[i]->path_edges(nodes_[j]);
    auto path = trees_[j]->path_edges(nodes_[i]);
    std::reverse(path.begin(), path.end());
    return path;
  }

  friend MetricClosure metric_closure(MetricView& view, std::span<const NodeId> subset);

 private:
  std::vector<NodeId> nodes_;
  std::vector<Cost> weights_;
  std::vector<std::shared_ptr<const ShortestPathTree>> trees_;
};

/// Builds the closure over `subset` (duplicates ignored) using the view's
/// memoized shortest-path trees. Throws GraphError if the base graph is
/// directed or some pair is disconnected.
inline MetricClosure metric_closure(MetricView& view, std::span<const NodeId> subset) {
  const WeightedGraph& g = view.graph();
  if (g.is_directed()) throw GraphError("metric closure needs an undirected graph");
  MetricClosure mc;
  mc.nodes_.assign(subset.begin(), subset.end());
  std::sort(mc.nodes_.begin(), mc.nodes_.end());
  mc.nodes_.erase(std::unique(mc.nodes_.begin(), mc.nodes_.end()), mc.nodes_.end());
  for (NodeId v : mc.nodes_) g.check_node(v);
  const std::size_t s = mc.nodes_.size();
  mc.weights_.assign(s * s, 0);
  mc.trees_.reserve(s);
  for (std::size_t i = 0; i < s; ++i) {
    mc.trees_.push_back(view.shared_from(mc.nodes_[i]));
  }
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i + 1; j < s; ++j) {
      const Cost d = mc.trees_[i]->distance(mc.nodes_[j]);
      if (d == kInfinity) {
        throw GraphError("nodes " + std::to_string(mc.nodes_[i]) + " and " +
                         std::to_string(mc.nodes_[j]) + " are disconnected");
      }
      mc.weights_[i * s + j] = d;
      mc.weights_[j * s + i] = d;
    }
  }
  return mc;
}

inline MetricClosure metric_closure(const WeightedGraph& g, std::span<const NodeId> subset) {
  MetricView view(g);
  return metric_closure(view, subset);
}

/// Eccentricity of a center: min over v of max over u of dist(v, u).
inline Cost graph_radius(const WeightedGraph& g) {
  if (g.is_directed()) throw GraphError("radius needs an undirected graph");
  if (g.node_count() == 0) throw GraphError("radius of an empty graph");
  Cost best = kInfinity;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const ShortestPathTree t = dijkstra(g, v);
    const Cost ecc = *std::max_element(t.dist.begin(), t.dist.end());
    if (ecc == kInfinity) throw GraphError("radius of a disconnected graph");
    best = std::min(best, ecc);
  }
  return best;
}

}  // namespace ost
