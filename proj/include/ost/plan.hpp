#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "ost/graph.hpp"
#include "ost/instance.hpp"
#include "ost/shortest_path.hpp"
#include "ost/union_find.hpp"

namespace ost {

/// Which ledger a purchase is charged to: A1 for greedy-style connections,
/// A2 for prediction-driven ones.
enum class Ledger { a1, a2 };

/// How an arrival was served.
enum class Branch {
  none,       // first arrival, nothing to connect
  greedy,     // connected greedily, charged to A1
  predicted,  // connected through the prediction structure, charged to A2
};

struct ArrivalRecord {
  NodeId terminal = 0;
  Branch branch = Branch::none;
  Cost connect_cost = 0;  // cheapest metric connection available on arrival
  Cost paid_a1 = 0;
  Cost paid_a2 = 0;
  std::vector<EdgeId> bought;    // newly paid at this arrival
  std::vector<EdgeId> reserved;  // newly reserved at this arrival

  Cost delta() const { return paid_a1 + paid_a2; }
};

/// The growing set of bought (and reserved) original-graph edges, with the
/// A1/A2 cost ledger and a per-arrival trace. Each edge is paid at most once.
class PurchasePlan {
 public:
  PurchasePlan() = default;

  explicit PurchasePlan(const WeightedGraph& g)
      : graph_(&g),
        bought_(static_cast<std::size_t>(g.edge_count()), 0),
        reserved_(static_cast<std::size_t>(g.edge_count()), 0),
        components_(static_cast<std::size_t>(g.node_count())) {}

  void begin_arrival(NodeId terminal, Branch branch, Cost connect_cost = 0) {
    arrivals_.push_back({terminal, branch, connect_cost, 0, 0, {}, {}});
  }

  /// Pays for e unless already bought; returns the amount paid.
  Cost buy(EdgeId e, Ledger ledger) {
    const auto i = static_cast<std::size_t>(e);
    if (bought_.at(i)) return 0;
    bought_[i] = 1;
    reserved_[i] = 0;
    const Edge& edge = graph_->edge(e);
    components_.unite(static_cast<std::size_t>(edge.u), static_cast<std::size_t>(edge.v));
    bought_order_.push_back(e);
    ArrivalRecord& rec = current();
    rec.bought.push_back(e);
    if (ledger == Ledger::a1) {
      a1_ += edge.cost;
      rec.paid_a1 += edge.cost;
    } else {
      a2_ += edge.cost;
      rec.paid_a2 += edge.cost;
    }
    return edge.cost;
  }

  Cost buy_path(std::span<const EdgeId> path, Ledger ledger) {
    Cost paid = 0;
    for (EdgeId e : path) paid += buy(e, ledger);
    return paid;
  }

  /// Marks e as reserved (unpaid) unless it is already bought or reserved.
  void reserve(EdgeId e) {
    const auto i = static_cast<std::size_t>(e);
    if (bought_.at(i) || reserved_[i]) return;
    reserved_[i] = 1;
    current().reserved.push_back(e);
  }

  bool is_bought(EdgeId e) const { return bought_.at(static_cast<std::size_t>(e)) != 0; }
  bool is_reserved(EdgeId e) const { return reserved_.at(static_cast<std::size_t>(e)) != 0; }

  /// Undirected connectivity over bought edges.
  bool connected(NodeId u, NodeId v) {
    return components_.same(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
  }

  Cost a1_cost() const { return a1_; }
  Cost a2_cost() const { return a2_; }
  Cost total() const { return a1_ + a2_; }

  const std::vector<EdgeId>& bought_edges() const { return bought_order_; }

  std::vector<EdgeId> reserved_edges() const {
    std::vector<EdgeId> out;
    for (std::size_t i = 0; i < reserved_.size(); ++i) {
      if (reserved_[i]) out.push_back(static_cast<EdgeId>(i));
    }
    return out;
  }

  const std::vector<ArrivalRecord>& arrivals() const { return arrivals_; }
  const WeightedGraph& graph() const { return *graph_; }

 private:
  ArrivalRecord& current() {
    if (arrivals_.empty()) throw GraphError("purchase outside an arrival");
    return arrivals_.back();
  }

  const WeightedGraph* graph_ = nullptr;
  std::vector<char> bought_;
  std::vector<char> reserved_;
  std::vector<EdgeId> bought_order_;
  std::vector<ArrivalRecord> arrivals_;
  UnionFind components_;
  Cost a1_ = 0;
  Cost a2_ = 0;
};

/// Replays a plan against its instance and reports every broken invariant:
/// terminals connected after each arrival (to each other, or to the root
/// for directed graphs), each edge paid once, ledgers summing to the cost of
/// the distinct bought edges. An empty result means the plan is sound.
inline std::vector<std::string> audit_plan(const OnlineInstance& inst, const PurchasePlan& plan) {
  std::vector<std::string> problems;
  const WeightedGraph& g = *inst.graph;
  if (plan.arrivals().size() != inst.arrivals.size()) {
    problems.push_back("plan records " + std::to_string(plan.arrivals().size()) +
                       " arrivals, instance has " + std::to_string(inst.arrivals.size()));
    return problems;
  }
  std::vector<char> paid(static_cast<std::size_t>(g.edge_count()), 0);
  std::vector<EdgeId> built;
  UnionFind uf(static_cast<std::size_t>(g.node_count()));
  Cost sum_a1 = 0;
  Cost sum_a2 = 0;
  for (std::size_t i = 0; i < inst.arrivals.size(); ++i) {
    const ArrivalRecord& rec = plan.arrivals()[i];
    if (rec.terminal != inst.arrivals[i]) {
      problems.push_back("arrival " + std::to_string(i) + " records the wrong terminal");
    }
    Cost step = 0;
    for (EdgeId e : rec.bought) {
      auto& flag = paid.at(static_cast<std::size_t>(e));
      if (flag) problems.push_back("edge " + std::to_string(e) + " paid twice");
      flag = 1;
      built.push_back(e);
      step += g.edge_cost(e);
      const Edge& edge = g.edge(e);
      uf.unite(static_cast<std::size_t>(edge.u), static_cast<std::size_t>(edge.v));
    }
    if (std::abs(step - rec.delta()) > kCostTolerance * (1 + step)) {
      problems.push_back("arrival " + std::to_string(i) + " ledger delta mismatch");
    }
    sum_a1 += rec.paid_a1;
    sum_a2 += rec.paid_a2;

    if (g.is_directed()) {
      // Reverse search from the root over bought arcs.
      std::vector<std::vector<NodeId>> into(static_cast<std::size_t>(g.node_count()));
      for (EdgeId e : built) {
        into[static_cast<std::size_t>(g.edge(e).v)].push_back(g.edge(e).u);
      }
      std::vector<char> reach(static_cast<std::size_t>(g.node_count()), 0);
      std::vector<NodeId> stack{*g.root()};
      reach[static_cast<std::size_t>(*g.root())] = 1;
      while (!stack.empty()) {
        const NodeId x = stack.back();
        stack.pop_back();
        for (NodeId y : into[static_cast<std::size_t>(x)]) {
          if (!reach[static_cast<std::size_t>(y)]) {
            reach[static_cast<std::size_t>(y)] = 1;
            stack.push_back(y);
          }
        }
      }
      for (std::size_t j = 0; j <= i; ++j) {
        if (!reach[static_cast<std::size_t>(inst.arrivals[j])]) {
          problems.push_back("after arrival " + std::to_string(i) + ", terminal " +
                             std::to_string(inst.arrivals[j]) + " cannot reach the root");
        }
      }
    } else {
      const auto anchor = static_cast<std::size_t>(inst.arrivals[0]);
      for (std::size_t j = 1; j <= i; ++j) {
        if (!uf.same(anchor, static_cast<std::size_t>(inst.arrivals[j]))) {
          problems.push_back("after arrival " + std::to_string(i) + ", terminal " +
                             std::to_string(inst.arrivals[j]) + " is disconnected");
        }
      }
    }
  }
  Cost distinct = 0;
  for (EdgeId e : built) distinct += g.edge_cost(e);
  const Cost scale = 1 + distinct;
  if (std::abs(distinct - plan.total()) > kCostTolerance * scale ||
      std::abs(sum_a1 - plan.a1_cost()) > kCostTolerance * scale ||
      std::abs(sum_a2 - plan.a2_cost()) > kCostTolerance * scale) {
    problems.push_back("ledger totals disagree with the bought edges");
  }
  return problems;
}

}  // namespace ost
