#pragma once

#include <algorithm>
#include <functional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ost/graph.hpp"
#include "ost/instance.hpp"
#include "ost/metric.hpp"
#include "ost/plan.hpp"
#include "ost/shortest_path.hpp"
#include "ost/tree.hpp"
#include "ost/union_find.hpp"

namespace ost {

enum class IoaptMode {
  eager,  // buy P' and, if still disconnected, e_i
  lazy,   // when e_i is bought, only reserve P'; pay reserved edges on first use
};

namespace detail {

struct Nearest {
  NodeId node = -1;
  Cost cost = kInfinity;
};

/// Cheapest metric connection from `from` into `targets`; ties go to the
/// smallest node id.
inline Nearest nearest(MetricView& metric, NodeId from, std::span<const NodeId> targets) {
  const ShortestPathTree& t = metric.from(from);
  Nearest best;
  for (NodeId x : targets) {
    const Cost d = t.distance(x);
    if (d < best.cost || (d == best.cost && d < kInfinity && x < best.node)) {
      best = {x, d};
    }
  }
  if (best.cost == kInfinity) {
    throw GraphError("terminal " + std::to_string(from) +
                     " cannot reach any earlier terminal");
  }
  return best;
}

inline void require_undirected(const OnlineInstance& inst) {
  inst.validate();
  if (inst.graph->is_directed()) {
    throw GraphError("undirected online algorithm given a directed graph");
  }
}

/// MST over the metric closure of the prediction; empty tree for empty T̂.
inline Tree prediction_tree(MetricView& metric, const PredictionSet& pred) {
  pred.check_against(metric.graph());
  if (pred.empty()) return {};
  return mst(metric_closure(metric, pred.nodes()));
}

/// Arrivals seen so far and the predicted ones among them.
struct ArrivalLog {
  std::vector<NodeId> all;
  std::vector<NodeId> predicted;
};

/// Buys the witness path to the nearest earlier terminal and returns it.
inline std::vector<EdgeId> connect_greedily(MetricView& metric, PurchasePlan& plan, NodeId t,
                                            const ArrivalLog& log) {
  if (log.all.empty()) {
    plan.begin_arrival(t, Branch::none);
    return {};
  }
  const Nearest near = nearest(metric, t, log.all);
  plan.begin_arrival(t, Branch::greedy, near.cost);
  std::vector<EdgeId> path = metric.witness(t, near.node);
  plan.buy_path(path, Ledger::a1);
  return path;
}

}  // namespace detail

/// Online greedy: each arrival buys the shortest path to the nearest
/// earlier terminal.
inline PurchasePlan run_greedy(const OnlineInstance& inst, MetricView& metric) {
  detail::require_undirected(inst);
  PurchasePlan plan(*inst.graph);
  detail::ArrivalLog log;
  for (NodeId t : inst.arrivals) {
    detail::connect_greedily(metric, plan, t, log);
    log.all.push_back(t);
  }
  return plan;
}

inline PurchasePlan run_greedy(const OnlineInstance& inst) {
  MetricView metric(*inst.graph);
  return run_greedy(inst, metric);
}

/// OAPT. Unpredicted arrivals, and the first predicted one, connect
/// greedily (A1). Later predicted arrivals buy the MST(T̂) path to the
/// nearest (in tree cost) earlier predicted terminal (A2).
inline PurchasePlan run_oapt(const OnlineInstance& inst, const PredictionSet& pred,
                             MetricView& metric) {
  detail::require_undirected(inst);
  const Tree tree = detail::prediction_tree(metric, pred);
  PurchasePlan plan(*inst.graph);
  detail::ArrivalLog log;
  for (NodeId t : inst.arrivals) {
    const bool predicted = pred.contains(t);
    if (!predicted || log.predicted.empty()) {
      detail::connect_greedily(metric, plan, t, log);
    } else {
      const std::vector<Cost> dist = tree.distances_from(t);
      NodeId target = -1;
      Cost best = kInfinity;
      for (NodeId x : log.predicted) {
        const Cost d = dist[tree.local(x)];
        if (d < best || (d == best && x < target)) {
          best = d;
          target = x;
        }
      }
      plan.begin_arrival(t, Branch::predicted, detail::nearest(metric, t, log.all).cost);
      for (std::size_t e : tree.path(t, target)) {
        plan.buy_path(tree.edges()[e].witness, Ledger::a2);
      }
    }
    log.all.push_back(t);
    if (predicted) log.predicted.push_back(t);
  }
  return plan;
}

inline PurchasePlan run_oapt(const OnlineInstance& inst, const PredictionSet& pred) {
  MetricView metric(*inst.graph);
  return run_oapt(inst, pred, metric);
}

/// Length of the shortest prefix of `path_costs` whose total reaches
/// `threshold`. When every edge costs at most the threshold the prefix
/// total lies in [threshold, 2 * threshold]; if the whole path falls short,
/// the whole path is returned.
inline std::size_t subpath_select(std::span<const Cost> path_costs, Cost threshold) {
  if (path_costs.empty()) {
    if (threshold > 0) throw GraphError("empty path cannot reach a positive threshold");
    return 0;
  }
  Cost total = 0;
  for (std::size_t i = 0; i < path_costs.size(); ++i) {
    if (total >= threshold - kCostTolerance) return i;
    total += path_costs[i];
  }
  return path_costs.size();
}

namespace detail {

/// Cheapest route from `from` to the bought component of `anchor`, using
/// only edges flagged in `usable`; already-bought edges are free. Returns
/// the edges in travel order.
inline std::vector<EdgeId> cheapest_route(const WeightedGraph& g, PurchasePlan& plan,
                                          const std::vector<char>& usable, NodeId from,
                                          NodeId anchor) {
  const auto n = static_cast<std::size_t>(g.node_count());
  std::vector<Cost> dist(n, kInfinity);
  std::vector<NodeId> parent(n, -1);
  std::vector<EdgeId> parent_edge(n, -1);
  std::vector<char> settled(n, 0);
  using Entry = std::pair<Cost, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[static_cast<std::size_t>(from)] = 0;
  heap.emplace(0, from);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    const auto ui = static_cast<std::size_t>(u);
    if (settled[ui]) continue;
    settled[ui] = 1;
    if (plan.connected(u, anchor)) {
      std::vector<EdgeId> route;
      for (NodeId x = u; x != from; x = parent[static_cast<std::size_t>(x)]) {
        route.push_back(parent_edge[static_cast<std::size_t>(x)]);
      }
      std::reverse(route.begin(), route.end());
      return route;
    }
    for (const Arc& a : g.out_arcs(u)) {
      if (!usable[static_cast<std::size_t>(a.edge)]) continue;
      const auto vi = static_cast<std::size_t>(a.to);
      if (settled[vi]) continue;
      const Cost nd = d + (plan.is_bought(a.edge) ? 0 : a.cost);
      if (nd < dist[vi] ||
          (nd == dist[vi] && std::pair{u, a.edge} < std::pair{parent[vi], parent_edge[vi]})) {
        const bool improved = nd < dist[vi];
        dist[vi] = nd;
        parent[vi] = u;
        parent_edge[vi] = a.edge;
        if (improved) heap.emplace(nd, a.to);
      }
    }
  }
  throw GraphError("no route to the arrived component");
}

}  // namespace detail

/// IOAPT. Case 1 as in OAPT. Case 2: e_i is the cheapest metric edge from
/// t_i to an earlier predicted terminal t_j; P_i is the MST(T̂) path from
/// t_i to t_j, and P'_i its prefix with cost in [c(e_i), 2 c(e_i)].
///
/// Eager mode buys P'_i, then e_i if t_i is still disconnected. Lazy mode
/// tracks the eager edge set without paying for it: when eager would buy
/// e_i, only e_i is paid and P'_i stays reserved; otherwise t_i pays for
/// the cheapest route to the arrived terminals through the eager edge set,
/// which settles any reserved edges that route uses. Lazy never pays for an
/// edge eager did not buy.
inline PurchasePlan run_ioapt(const OnlineInstance& inst, const PredictionSet& pred,
                              IoaptMode mode, MetricView& metric) {
  detail::require_undirected(inst);
  const WeightedGraph& g = *inst.graph;
  const Tree tree = detail::prediction_tree(metric, pred);
  PurchasePlan plan(g);
  detail::ArrivalLog log;

  // Eager edge set, mirrored in lazy mode.
  std::vector<char> eager_edges(static_cast<std::size_t>(g.edge_count()), 0);
  UnionFind eager_components(static_cast<std::size_t>(g.node_count()));
  const auto mirror = [&](std::span<const EdgeId> path) {
    for (EdgeId e : path) {
      eager_edges[static_cast<std::size_t>(e)] = 1;
      const Edge& edge = g.edge(e);
      eager_components.unite(static_cast<std::size_t>(edge.u), static_cast<std::size_t>(edge.v));
    }
  };

  for (NodeId t : inst.arrivals) {
    const bool predicted = pred.contains(t);
    if (!predicted || log.predicted.empty()) {
      mirror(detail::connect_greedily(metric, plan, t, log));
    } else {
      const NodeId anchor = log.all.front();
      const detail::Nearest e_i = detail::nearest(metric, t, log.predicted);
      plan.begin_arrival(t, Branch::predicted, e_i.cost);

      const std::vector<std::size_t> path = tree.path(t, e_i.node);
      std::vector<Cost> costs;
      costs.reserve(path.size());
      for (std::size_t e : path) costs.push_back(tree.edges()[e].cost);
      const std::size_t prefix = subpath_select(costs, e_i.cost);

      std::vector<EdgeId> sub_path;
      for (std::size_t i = 0; i < prefix; ++i) {
        const auto& w = tree.edges()[path[i]].witness;
        sub_path.insert(sub_path.end(), w.begin(), w.end());
      }
      const std::vector<EdgeId> e_path = metric.witness(t, e_i.node);

      if (mode == IoaptMode::eager) {
        plan.buy_path(sub_path, Ledger::a2);
        if (!plan.connected(t, anchor)) plan.buy_path(e_path, Ledger::a2);
      } else {
        mirror(sub_path);
        if (eager_components.same(static_cast<std::size_t>(t), static_cast<std::size_t>(anchor))) {
          plan.buy_path(detail::cheapest_route(g, plan, eager_edges, t, anchor), Ledger::a2);
        } else {
          mirror(e_path);
          plan.buy_path(e_path, Ledger::a2);
        }
        for (EdgeId e : sub_path) plan.reserve(e);
      }
    }
    log.all.push_back(t);
    if (predicted) log.predicted.push_back(t);
  }
  return plan;
}

inline PurchasePlan run_ioapt(const OnlineInstance& inst, const PredictionSet& pred,
                              IoaptMode mode = IoaptMode::eager) {
  MetricView metric(*inst.graph);
  return run_ioapt(inst, pred, mode, metric);
}

}  // namespace ost
