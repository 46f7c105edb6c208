#pragma once

#include <algorithm>
#include <memory>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "ost/graph.hpp"

namespace ost {

/// A graph plus the online terminal arrival sequence t_1..t_k.
struct OnlineInstance {
  std::shared_ptr<const WeightedGraph> graph;
  std::vector<NodeId> arrivals;

  OnlineInstance() = default;

  OnlineInstance(std::shared_ptr<const WeightedGraph> g, std::vector<NodeId> order)
      : graph(std::move(g)), arrivals(std::move(order)) {
    validate();
  }

  std::size_t k() const { return arrivals.size(); }

  void validate() const {
    if (!graph) throw GraphError("instance has no graph");
    if (arrivals.empty()) throw GraphError("instance needs at least one terminal");
    std::unordered_set<NodeId> seen;
    for (NodeId t : arrivals) {
      graph->check_node(t);
      if (!seen.insert(t).second) {
        throw GraphError("terminal " + std::to_string(t) + " arrives twice");
      }
    }
  }
};

/// Predicted terminal set. Kept sorted and duplicate-free.
class PredictionSet {
 public:
  PredictionSet() = default;

  explicit PredictionSet(std::vector<NodeId> nodes) : nodes_(std::move(nodes)) {
    std::sort(nodes_.begin(), nodes_.end());
    nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  }

  const std::vector<NodeId>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  bool contains(NodeId v) const { return std::binary_search(nodes_.begin(), nodes_.end(), v); }

  void check_against(const WeightedGraph& g) const {
    for (NodeId v : nodes_) g.check_node(v);
  }

 private:
  std::vector<NodeId> nodes_;
};

}  // namespace ost
