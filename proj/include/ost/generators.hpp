#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "ost/graph.hpp"
#include "ost/instance.hpp"
#include "ost/predictions.hpp"
#include "ost/random.hpp"

namespace ost {

/// Random undirected graph: m distinct uniform pairs with integer costs in
/// [cost_lo, cost_hi]; when `filler_cost` is set, every other pair is added
/// at that cost so the graph is complete. Edges are listed in
/// lexicographic pair order.
inline WeightedGraph gen_random_graph(NodeId n, std::size_t m, int cost_lo, int cost_hi,
                                      std::optional<Cost> filler_cost, Rng& rng) {
  if (n < 1) throw std::invalid_argument("graph needs at least one node");
  if (cost_lo < 0 || cost_lo > cost_hi) throw std::invalid_argument("bad cost range");
  const auto nn = static_cast<std::uint64_t>(n);
  const std::uint64_t pairs = nn * (nn - 1) / 2;
  if (m > pairs) {
    throw std::invalid_argument("m = " + std::to_string(m) + " exceeds n(n-1)/2 = " +
                                std::to_string(pairs));
  }
  std::vector<char> chosen(pairs, 0);
  if (m * 2 <= pairs) {
    for (std::size_t picked = 0; picked < m;) {
      const std::uint64_t p = std::uniform_int_distribution<std::uint64_t>(0, pairs - 1)(rng);
      if (!chosen[p]) {
        chosen[p] = 1;
        ++picked;
      }
    }
  } else {
    std::vector<std::uint64_t> all(pairs);
    for (std::uint64_t p = 0; p < pairs; ++p) all[p] = p;
    for (std::uint64_t p : sample_without_replacement<std::uint64_t>(all, m, rng)) chosen[p] = 1;
  }
  std::uniform_int_distribution<int> cost(cost_lo, cost_hi);
  std::vector<Edge> edges;
  edges.reserve(filler_cost ? pairs : m);
  std::uint64_t p = 0;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v, ++p) {
      if (chosen[p]) {
        edges.push_back({u, v, static_cast<Cost>(cost(rng))});
      } else if (filler_cost) {
        edges.push_back({u, v, *filler_cost});
      }
    }
  }
  return WeightedGraph::undirected(n, std::move(edges));
}

/// Random digraph rooted at node 0 in which every node reaches the root: a
/// random in-tree plus `extra_arcs` further distinct arcs, with integer costs
/// in [cost_lo, cost_hi].
inline WeightedGraph gen_random_digraph(NodeId n, std::size_t extra_arcs, int cost_lo,
                                        int cost_hi, Rng& rng) {
  if (n < 1) throw std::invalid_argument("graph needs at least one node");
  if (cost_lo < 0 || cost_lo > cost_hi) throw std::invalid_argument("bad cost range");
  const auto nn = static_cast<std::uint64_t>(n);
  if ((n - 1) + extra_arcs > nn * (nn - 1)) throw std::invalid_argument("too many arcs");
  std::uniform_int_distribution<int> cost(cost_lo, cost_hi);
  std::vector<NodeId> order;
  for (NodeId v = 1; v < n; ++v) order.push_back(v);
  shuffle_in_place(order, rng);
  order.insert(order.begin(), 0);
  std::unordered_set<std::uint64_t> used;
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < order.size(); ++i) {
    const NodeId to = order[uniform_index(rng, i)];
    edges.push_back({order[i], to, static_cast<Cost>(cost(rng))});
    used.insert(static_cast<std::uint64_t>(order[i]) * nn + static_cast<std::uint64_t>(to));
  }
  while (edges.size() < static_cast<std::size_t>(n - 1) + extra_arcs) {
    const auto u = static_cast<NodeId>(uniform_index(rng, static_cast<std::size_t>(n)));
    const auto v = static_cast<NodeId>(uniform_index(rng, static_cast<std::size_t>(n)));
    if (u == v) continue;
    if (!used.insert(static_cast<std::uint64_t>(u) * nn + static_cast<std::uint64_t>(v)).second) continue;
    edges.push_back({u, v, static_cast<Cost>(cost(rng))});
  }
  return WeightedGraph::directed(n, std::move(edges), 0);
}

struct HardInstance {
  OnlineInstance instance;
  PredictionSet prediction;
};

/// The 2k-2 node instance on which OAPT pays η times the optimum. Node
/// v_i has id i-1. Spokes v1-v_i (2 <= i <= k-1) cost 1/(k-2)^2, v1-v_k
/// costs 1 + 1/(k-2)^2, and the cycle v_k, ..., v_{2k-2}, v1 closes with
/// unit edges. Arrivals are v1, v_k, v2, ..., v_{k-1}; the prediction is
/// {v1, v_k, ..., v_{2k-2}}.
inline HardInstance gen_hard_instance(int k) {
  if (k < 4) throw std::invalid_argument("hard instance needs k >= 4");
  const Cost spoke = 1.0 / (static_cast<Cost>(k - 2) * static_cast<Cost>(k - 2));
  const NodeId n = 2 * k - 2;
  const auto v = [](int i) { return static_cast<NodeId>(i - 1); };
  std::vector<Edge> edges;
  for (int i = 2; i <= k - 1; ++i) edges.push_back({v(1), v(i), spoke});
  edges.push_back({v(1), v(k), 1 + spoke});
  for (int i = k; i < 2 * k - 2; ++i) edges.push_back({v(i), v(i + 1), 1});
  edges.push_back({v(2 * k - 2), v(1), 1});

  std::vector<NodeId> arrivals{v(1), v(k)};
  for (int i = 2; i <= k - 1; ++i) arrivals.push_back(v(i));
  std::vector<NodeId> predicted{v(1)};
  for (int i = k; i <= 2 * k - 2; ++i) predicted.push_back(v(i));

  auto graph = std::make_shared<const WeightedGraph>(WeightedGraph::undirected(n, std::move(edges)));
  return {OnlineInstance(std::move(graph), std::move(arrivals)), PredictionSet(std::move(predicted))};
}

/// Source of terminal sets for the learning experiments. Samples come back
/// in uniformly random arrival order.
class TerminalDistribution {
 public:
  enum class Kind { uniform, two_class, clustered };

  static TerminalDistribution uniform(NodeId n, std::size_t k) {
    if (k > static_cast<std::size_t>(n)) throw std::invalid_argument("k exceeds node count");
    TerminalDistribution d(Kind::uniform, k);
    for (NodeId v = 0; v < n; ++v) d.cold_.push_back(v);
    return d;
  }

  /// V_h of `hot_size` nodes fixed from `rng`; each sample takes k/2
  /// terminals from V_h and the rest from V \ V_h.
  static TerminalDistribution two_class(NodeId n, std::size_t hot_size, std::size_t k, Rng& rng) {
    if (hot_size > static_cast<std::size_t>(n) || k / 2 > hot_size ||
        k - k / 2 > static_cast<std::size_t>(n) - hot_size) {
      throw std::invalid_argument("two-class distribution has too few nodes");
    }
    TerminalDistribution d(Kind::two_class, k);
    std::vector<NodeId> all;
    for (NodeId v = 0; v < n; ++v) all.push_back(v);
    d.hot_ = sample_without_replacement<NodeId>(all, hot_size, rng);
    std::sort(d.hot_.begin(), d.hot_.end());
    for (NodeId v : all) {
      if (!std::binary_search(d.hot_.begin(), d.hot_.end(), v)) d.cold_.push_back(v);
    }
    return d;
  }

  static TerminalDistribution clustered(Clustering clustering, std::size_t x, std::size_t budget) {
    TerminalDistribution d(Kind::clustered, (budget / x) * x);
    d.clustering_ = std::move(clustering);
    d.x_ = x;
    d.budget_ = budget;
    return d;
  }

  Kind kind() const { return kind_; }
  std::size_t k() const { return k_; }
  const std::vector<NodeId>& hot_nodes() const { return hot_; }
  const Clustering& clustering() const { return clustering_; }

  std::vector<NodeId> sample(Rng& rng) const {
    std::vector<NodeId> out;
    switch (kind_) {
      case Kind::uniform:
        out = sample_without_replacement<NodeId>(cold_, k_, rng);
        break;
      case Kind::two_class: {
        out = sample_without_replacement<NodeId>(hot_, k_ / 2, rng);
        const auto rest = sample_without_replacement<NodeId>(cold_, k_ - k_ / 2, rng);
        out.insert(out.end(), rest.begin(), rest.end());
        break;
      }
      case Kind::clustered:
        out = sample_clustered_terminals(clustering_, x_, budget_, rng);
        break;
    }
    shuffle_in_place(out, rng);
    return out;
  }

 private:
  TerminalDistribution(Kind kind, std::size_t k) : kind_(kind), k_(k) {}

  Kind kind_;
  std::size_t k_;
  std::vector<NodeId> hot_;
  std::vector<NodeId> cold_;
  Clustering clustering_;
  std::size_t x_ = 1;
  std::size_t budget_ = 0;
};

/// Terminal set drawn from a fresh two-class distribution (V_h fixed by
/// `rng` first, then one sample).
inline std::vector<NodeId> gen_two_class(NodeId n, std::size_t hot_size, std::size_t k, Rng& rng) {
  return TerminalDistribution::two_class(n, hot_size, k, rng).sample(rng);
}

}  // namespace ost
