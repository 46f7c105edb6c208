#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "ost/graph.hpp"
#include "ost/instance.hpp"
#include "ost/oracle.hpp"
#include "ost/plan.hpp"
#include "ost/shortest_path.hpp"

namespace ost {

/// Which set decides whether an arrival is routed through the MDST.
enum class MembershipTest {
  filtered,  // t ∈ T̂(λ)
  raw,       // t ∈ T̂
};

struct DirectedOptions {
  MembershipTest membership = MembershipTest::filtered;
};

/// One λ guess and the exact MDST built for it.
struct LambdaEpoch {
  Cost lambda = 1;
  std::vector<NodeId> members;  // T̂(λ)
  OracleResult mdst;
  std::size_t first_arrival = 0;  // index of the arrival that opened the epoch
};

struct DirectedRun {
  PurchasePlan plan;
  std::vector<LambdaEpoch> epochs;
  Cost beta = 0;  // max connect cost over all arrivals
};

/// Predicted terminals whose shortest path to the root costs at most
/// lambda, given distances to the root.
inline std::vector<NodeId> t_hat_lambda(const PredictionSet& pred, const ShortestPathTree& to_root,
                                        Cost lambda) {
  std::vector<NodeId> out;
  for (NodeId t : pred.nodes()) {
    if (to_root.distance(t) <= lambda) out.push_back(t);
  }
  return out;
}

inline std::vector<NodeId> t_hat_lambda(const PredictionSet& pred, const WeightedGraph& g,
                                        Cost lambda) {
  if (!g.is_directed() || !g.root()) throw GraphError("T̂(λ) needs a directed graph with a root");
  pred.check_against(g);
  return t_hat_lambda(pred, dijkstra(g, *g.root(), Orientation::reverse), lambda);
}

/// Online directed Steiner tree with predictions and λ-doubling. λ starts
/// at 1 and doubles until it covers β_i, the largest root connection cost
/// seen so far; every change rebuilds T̂(λ) and its exact MDST. Arrivals
/// outside the chosen membership set buy their shortest path to the root
/// (A1); the others buy their MDST path (A2).
inline DirectedRun run_directed(const OnlineInstance& inst, const PredictionSet& pred,
                                const DirectedOptions& options = {}) {
  inst.validate();
  const WeightedGraph& g = *inst.graph;
  if (!g.is_directed() || !g.root()) throw GraphError("run_directed needs a directed graph with a root");
  pred.check_against(g);
  const NodeId root = *g.root();
  const ShortestPathTree to_root = dijkstra(g, root, Orientation::reverse);
  for (NodeId t : inst.arrivals) {
    if (!to_root.reaches(t)) {
      throw GraphError("terminal " + std::to_string(t) + " cannot reach the root");
    }
  }

  DirectedRun run;
  run.plan = PurchasePlan(g);
  std::vector<EdgeId> next_arc(static_cast<std::size_t>(g.node_count()), -1);
  const auto open_epoch = [&](Cost lambda, std::size_t arrival) {
    LambdaEpoch epoch;
    epoch.lambda = lambda;
    epoch.members = t_hat_lambda(pred, to_root, lambda);
    epoch.mdst = exact_mdst(g, epoch.members);
    epoch.first_arrival = arrival;
    std::fill(next_arc.begin(), next_arc.end(), -1);
    for (EdgeId e : epoch.mdst.edges) next_arc[static_cast<std::size_t>(g.edge(e).u)] = e;
    run.epochs.push_back(std::move(epoch));
  };

  Cost lambda = 1;
  open_epoch(lambda, 0);
  for (std::size_t i = 0; i < inst.arrivals.size(); ++i) {
    const NodeId t = inst.arrivals[i];
    const Cost connect = to_root.distance(t);
    run.beta = std::max(run.beta, connect);
    if (run.beta > lambda) {
      while (run.beta > lambda) lambda *= 2;
      open_epoch(lambda, i);
    }
    const auto& members = run.epochs.back().members;
    const bool in_filtered = std::binary_search(members.begin(), members.end(), t);
    const bool use_tree =
        options.membership == MembershipTest::filtered ? in_filtered : pred.contains(t);
    // Under loop doubling λ >= c(t, r), so t ∈ T̂ already implies t ∈ T̂(λ).
    if (use_tree && in_filtered && t != root) {
      run.plan.begin_arrival(t, Branch::predicted, connect);
      for (NodeId x = t; x != root;) {
        const EdgeId e = next_arc[static_cast<std::size_t>(x)];
        run.plan.buy(e, Ledger::a2);
        x = g.edge(e).v;
      }
    } else {
      run.plan.begin_arrival(t, t == root ? Branch::none : Branch::greedy, connect);
      run.plan.buy_path(to_root.path_edges(t), Ledger::a1);
    }
  }
  return run;
}

}  // namespace ost
