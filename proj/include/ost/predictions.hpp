#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ost/algorithms.hpp"
#include "ost/graph.hpp"
#include "ost/instance.hpp"
#include "ost/metric.hpp"
#include "ost/random.hpp"
#include "ost/shortest_path.hpp"

namespace ost {

/// η' = max(|T̂|, |T|) - |T̂ ∩ T|.
inline std::size_t prediction_error(std::span<const NodeId> actual, const PredictionSet& pred) {
  std::vector<NodeId> truth(actual.begin(), actual.end());
  std::sort(truth.begin(), truth.end());
  truth.erase(std::unique(truth.begin(), truth.end()), truth.end());
  std::size_t hits = 0;
  for (NodeId t : truth) hits += pred.contains(t) ? 1 : 0;
  return std::max(truth.size(), pred.size()) - hits;
}

/// Prediction with accuracy `accuracy`: ⌊k·accuracy⌋ nodes drawn from the
/// actual terminals, the remaining k - ⌊k·accuracy⌋ from universe \ actual.
inline PredictionSet mix_prediction(std::span<const NodeId> actual, std::span<const NodeId> universe,
                                    double accuracy, Rng& rng) {
  if (accuracy < 0 || accuracy > 1) throw std::invalid_argument("accuracy must lie in [0, 1]");
  std::vector<NodeId> truth(actual.begin(), actual.end());
  std::sort(truth.begin(), truth.end());
  truth.erase(std::unique(truth.begin(), truth.end()), truth.end());
  const std::size_t k = truth.size();
  // Nudge so that e.g. 10 * 0.3 lands on 3 despite binary rounding.
  const auto correct = static_cast<std::size_t>(std::floor(static_cast<double>(k) * accuracy + 1e-9));
  const std::size_t wrong = k - correct;
  std::vector<NodeId> others;
  for (NodeId v : universe) {
    if (!std::binary_search(truth.begin(), truth.end(), v)) others.push_back(v);
  }
  std::sort(others.begin(), others.end());
  others.erase(std::unique(others.begin(), others.end()), others.end());
  if (others.size() < wrong) {
    throw std::invalid_argument("universe has " + std::to_string(others.size()) +
                                " non-terminals, need " + std::to_string(wrong));
  }
  std::vector<NodeId> picked = sample_without_replacement<NodeId>(truth, correct, rng);
  const auto extra = sample_without_replacement<NodeId>(others, wrong, rng);
  picked.insert(picked.end(), extra.begin(), extra.end());
  return PredictionSet(std::move(picked));
}

/// f(v): number of training terminal sets containing v, out of s.
class FrequencyTable {
 public:
  FrequencyTable(NodeId node_count, std::span<const std::vector<NodeId>> samples)
      : counts_(static_cast<std::size_t>(node_count), 0), samples_(samples.size()) {
    for (const auto& sample : samples) {
      std::vector<NodeId> unique(sample);
      std::sort(unique.begin(), unique.end());
      unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
      for (NodeId v : unique) ++counts_.at(static_cast<std::size_t>(v));
    }
  }

  std::size_t count(NodeId v) const { return counts_[static_cast<std::size_t>(v)]; }
  std::size_t samples() const { return samples_; }
  NodeId node_count() const { return static_cast<NodeId>(counts_.size()); }

  /// Keeps each v with f(v) > θ·s independently with probability f(v)/s.
  PredictionSet draw(double theta, Rng& rng) const {
    std::vector<NodeId> chosen;
    const double s = static_cast<double>(samples_);
    for (std::size_t v = 0; v < counts_.size(); ++v) {
      const auto f = static_cast<double>(counts_[v]);
      if (f > theta * s && bernoulli(rng, f / s)) chosen.push_back(static_cast<NodeId>(v));
    }
    return PredictionSet(std::move(chosen));
  }

 private:
  std::vector<std::size_t> counts_;
  std::size_t samples_;
};

inline constexpr std::array<double, 6> kDefaultThetas{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};

struct LearnedPrediction {
  PredictionSet prediction;
  double theta = 0;
  std::size_t evaluation_sample = 0;  // index of the training set used to pick θ
  std::vector<Cost> candidate_costs;  // one per θ
};

/// Learns a prediction from training arrival sequences. One training
/// sequence is drawn uniformly; each θ's candidate is scored by running
/// `algo` on it and the cheapest candidate wins (ties go to the smaller θ).
/// Candidates draw from independent per-θ streams.
inline LearnedPrediction learn_terminals(std::shared_ptr<const WeightedGraph> graph,
                                         std::span<const std::vector<NodeId>> samples,
                                         Algorithm algo, Rng& rng, MetricView& metric,
                                         std::span<const double> thetas = kDefaultThetas) {
  if (samples.empty()) throw std::invalid_argument("learn_terminals needs at least one sample");
  if (thetas.empty()) throw std::invalid_argument("learn_terminals needs at least one θ");
  const FrequencyTable table(graph->node_count(), samples);
  LearnedPrediction best;
  best.evaluation_sample = uniform_index(rng, samples.size());
  const OnlineInstance eval(graph, samples[best.evaluation_sample]);
  const std::uint64_t stream_base = rng();
  Cost best_cost = kInfinity;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    Rng stream(derive_seed(stream_base, {i}));
    PredictionSet candidate = table.draw(thetas[i], stream);
    const Cost cost = run_algorithm(algo, eval, candidate, metric).total();
    best.candidate_costs.push_back(cost);
    if (cost < best_cost) {
      best_cost = cost;
      best.prediction = std::move(candidate);
      best.theta = thetas[i];
    }
  }
  return best;
}

inline LearnedPrediction learn_terminals(std::shared_ptr<const WeightedGraph> graph,
                                         std::span<const std::vector<NodeId>> samples,
                                         Algorithm algo, Rng& rng) {
  MetricView metric(*graph);
  return learn_terminals(std::move(graph), samples, algo, rng, metric);
}

struct Cluster {
  NodeId center = 0;
  std::vector<NodeId> members;  // sorted, includes the center
};

struct Clustering {
  std::vector<Cluster> clusters;
  double sigma = 0;
  Cost radius_used = 0;

  Cost threshold() const { return sigma * radius_used; }
};

/// Farthest-first threshold clustering. Repeatedly opens the unassigned
/// node farthest from the open centers (smallest id first, and on ties) and
/// assigns to it every unassigned node within σ·radius.
inline Clustering greedy_cluster(const WeightedGraph& g, double sigma,
                                 std::optional<Cost> radius = std::nullopt) {
  if (!(sigma > 0)) throw std::invalid_argument("sigma must be positive");
  Clustering out;
  out.sigma = sigma;
  out.radius_used = radius ? *radius : graph_radius(g);
  const Cost limit = out.threshold() + kCostTolerance;
  const auto n = static_cast<std::size_t>(g.node_count());
  std::vector<char> assigned(n, 0);
  std::vector<Cost> to_centers(n, 0);  // d(v, ∅) = 0
  std::size_t remaining = n;
  while (remaining > 0) {
    NodeId pick = -1;
    for (std::size_t v = 0; v < n; ++v) {
      if (assigned[v]) continue;
      if (pick < 0 || to_centers[v] > to_centers[static_cast<std::size_t>(pick)]) {
        pick = static_cast<NodeId>(v);
      }
    }
    const ShortestPathTree t = dijkstra(g, pick);
    Cluster cluster{pick, {}};
    for (std::size_t u = 0; u < n; ++u) {
      const Cost d = t.dist[u];
      to_centers[u] = out.clusters.empty() ? d : std::min(to_centers[u], d);
      if (!assigned[u] && d <= limit) {
        assigned[u] = 1;
        --remaining;
        cluster.members.push_back(static_cast<NodeId>(u));
      }
    }
    out.clusters.push_back(std::move(cluster));
  }
  return out;
}

/// Terminals from ⌊budget/x⌋ distinct clusters (of size >= x) chosen
/// uniformly, with x members sampled uniformly from each.
inline std::vector<NodeId> sample_clustered_terminals(const Clustering& clustering, std::size_t x,
                                                      std::size_t budget, Rng& rng) {
  if (x == 0) throw std::invalid_argument("x must be positive");
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < clustering.clusters.size(); ++i) {
    if (clustering.clusters[i].members.size() >= x) eligible.push_back(i);
  }
  const std::size_t wanted = budget / x;
  if (eligible.size() < wanted) {
    throw std::invalid_argument("only " + std::to_string(eligible.size()) +
                                " clusters have at least " + std::to_string(x) +
                                " members, need " + std::to_string(wanted));
  }
  std::vector<NodeId> terminals;
  for (std::size_t c : sample_without_replacement<std::size_t>(eligible, wanted, rng)) {
    const auto picked =
        sample_without_replacement<NodeId>(clustering.clusters[c].members, x, rng);
    terminals.insert(terminals.end(), picked.begin(), picked.end());
  }
  return terminals;
}

}  // namespace ost
