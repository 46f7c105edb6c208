#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ost {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;
using Cost = double;

inline constexpr Cost kInfinity = std::numeric_limits<Cost>::infinity();
/// Tolerance for cost comparisons along floating-point paths.
inline constexpr Cost kCostTolerance = 1e-9;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  Cost cost = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Outgoing adjacency record. For undirected graphs every edge appears as
/// an arc in both endpoints' lists.
struct Arc {
  NodeId to = 0;
  EdgeId edge = 0;
  Cost cost = 0;
};

/// Immutable node/edge store with nonnegative costs. Directed graphs carry
/// a root; arcs run u -> v.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  static WeightedGraph undirected(NodeId node_count, std::vector<Edge> edges) {
    return WeightedGraph(node_count, std::move(edges), false, std::nullopt);
  }

  static WeightedGraph directed(NodeId node_count, std::vector<Edge> edges,
                                NodeId root) {
    return WeightedGraph(node_count, std::move(edges), true, root);
  }

  NodeId node_count() const { return node_count_; }
  EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }
  bool is_directed() const { return directed_; }
  std::optional<NodeId> root() const { return root_; }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_.at(static_cast<std::size_t>(id)); }
  Cost edge_cost(EdgeId id) const { return edge(id).cost; }

  std::span<const Arc> out_arcs(NodeId v) const {
    return span_of(out_offsets_, out_arcs_, v);
  }

  /// Arcs entering v, reported with `to` set to the tail. Same as out_arcs
  /// for undirected graphs.
  std::span<const Arc> in_arcs(NodeId v) const {
    if (!directed_) return out_arcs(v);
    return span_of(in_offsets_, in_arcs_, v);
  }

  bool contains(NodeId v) const { return v >= 0 && v < node_count_; }

  void check_node(NodeId v) const {
    if (!contains(v)) {
      throw GraphError("node id " + std::to_string(v) + " out of range [0, " +
                       std::to_string(node_count_) + ")");
    }
  }

  Cost total_cost(std::span<const EdgeId> ids) const {
    Cost sum = 0;
    for (EdgeId id : ids) sum += edge_cost(id);
    return sum;
  }

 private:
  WeightedGraph(NodeId node_count, std::vector<Edge> edges, bool directed,
                std::optional<NodeId> root)
      : node_count_(node_count),
        edges_(std::move(edges)),
        directed_(directed),
        root_(root) {
    if (node_count_ < 0) throw GraphError("negative node count");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      check_node(e.u);
      check_node(e.v);
      if (e.u == e.v) {
        throw GraphError("self-loop at node " + std::to_string(e.u));
      }
      if (!(e.cost >= 0) || e.cost == kInfinity) {
        throw GraphError("edge " + std::to_string(i) +
                         " has negative or non-finite cost");
      }
    }
    if (directed_) {
      if (!root_) throw GraphError("directed graph requires a root");
      check_node(*root_);
    }
    build_adjacency();
  }

  static std::span<const Arc> span_of(const std::vector<std::size_t>& offsets,
                                      const std::vector<Arc>& arcs, NodeId v) {
    const auto i = static_cast<std::size_t>(v);
    return {arcs.data() + offsets[i], offsets[i + 1] - offsets[i]};
  }

  // CSR layout; arcs within a node are ordered by edge id.
  void build_adjacency() {
    const auto n = static_cast<std::size_t>(node_count_);
    out_offsets_.assign(n + 1, 0);
    in_offsets_.assign(directed_ ? n + 1 : 0, 0);
    for (const Edge& e : edges_) {
      ++out_offsets_[static_cast<std::size_t>(e.u) + 1];
      if (directed_) {
        ++in_offsets_[static_cast<std::size_t>(e.v) + 1];
      } else {
        ++out_offsets_[static_cast<std::size_t>(e.v) + 1];
      }
    }
    for (std::size_t i = 0; i < n; ++i) out_offsets_[i + 1] += out_offsets_[i];
    if (directed_) {
      for (std::size_t i = 0; i < n; ++i) in_offsets_[i + 1] += in_offsets_[i];
    }
    out_arcs_.resize(out_offsets_[n]);
    if (directed_) in_arcs_.resize(in_offsets_[n]);
    std::vector<std::size_t> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
    std::vector<std::size_t> in_fill =
        directed_ ? std::vector<std::size_t>(in_offsets_.begin(), in_offsets_.end() - 1)
                  : std::vector<std::size_t>{};
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      const auto id = static_cast<EdgeId>(i);
      out_arcs_[out_fill[static_cast<std::size_t>(e.u)]++] = {e.v, id, e.cost};
      if (directed_) {
        in_arcs_[in_fill[static_cast<std::size_t>(e.v)]++] = {e.u, id, e.cost};
      } else {
        out_arcs_[out_fill[static_cast<std::size_t>(e.v)]++] = {e.u, id, e.cost};
      }
    }
  }

  NodeId node_count_ = 0;
  std::vector<Edge> edges_;
  bool directed_ = false;
  std::optional<NodeId> root_;
  std::vector<std::size_t> out_offsets_;
  std::vector<Arc> out_arcs_;
  std::vector<std::size_t> in_offsets_;
  std::vector<Arc> in_arcs_;
};

/// The other endpoint of an undirected edge.
inline NodeId opposite(const Edge& e, NodeId v) { return e.u == v ? e.v : e.u; }

}  // namespace ost
