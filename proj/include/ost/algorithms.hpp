#pragma once

#include <array>
#include <string>
#include <string_view>

#include "ost/instance.hpp"
#include "ost/online_directed.hpp"
#include "ost/online_undirected.hpp"
#include "ost/plan.hpp"
#include "ost/shortest_path.hpp"

namespace ost {

enum class Algorithm { greedy, oapt, ioapt, ioapt_lazy, directed };

inline constexpr std::array<std::pair<Algorithm, std::string_view>, 5> kAlgorithmNames{{
    {Algorithm::greedy, "greedy"},
    {Algorithm::oapt, "oapt"},
    {Algorithm::ioapt, "ioapt"},
    {Algorithm::ioapt_lazy, "ioapt-lazy"},
    {Algorithm::directed, "directed"},
}};

inline std::string_view to_string(Algorithm a) {
  for (const auto& [algo, name] : kAlgorithmNames) {
    if (algo == a) return name;
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view name) {
  for (const auto& [algo, n] : kAlgorithmNames) {
    if (n == name) return algo;
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

/// Runs one algorithm. Undirected algorithms share `metric` so repeated
/// runs on one graph reuse shortest-path trees.
inline PurchasePlan run_algorithm(Algorithm algo, const OnlineInstance& inst,
                                  const PredictionSet& pred, MetricView& metric) {
  switch (algo) {
    case Algorithm::greedy:
      return run_greedy(inst, metric);
    case Algorithm::oapt:
      return run_oapt(inst, pred, metric);
    case Algorithm::ioapt:
      return run_ioapt(inst, pred, IoaptMode::eager, metric);
    case Algorithm::ioapt_lazy:
      return run_ioapt(inst, pred, IoaptMode::lazy, metric);
    case Algorithm::directed:
      return run_directed(inst, pred).plan;
  }
  throw std::invalid_argument("unknown algorithm");
}

inline PurchasePlan run_algorithm(Algorithm algo, const OnlineInstance& inst,
                                  const PredictionSet& pred) {
  MetricView metric(*inst.graph);
  return run_algorithm(algo, inst, pred, metric);
}

}  // namespace ost
