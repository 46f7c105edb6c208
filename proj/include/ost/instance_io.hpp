#pragma once

#include <fstream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ost/graph.hpp"
#include "ost/instance.hpp"

namespace ost {

/// On-disk instance: {nodes, edges: [[u, v, cost]], arrivals, prediction,
/// root?}. A root marks the graph as directed.
struct InstanceFile {
  std::shared_ptr<const WeightedGraph> graph;
  std::vector<NodeId> arrivals;
  PredictionSet prediction;
};

inline nlohmann::json to_json(const WeightedGraph& g, std::span<const NodeId> arrivals,
                              const PredictionSet& prediction) {
  nlohmann::json j;
  j["nodes"] = g.node_count();
  auto edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, e.cost});
  j["edges"] = std::move(edges);
  j["arrivals"] = std::vector<NodeId>(arrivals.begin(), arrivals.end());
  j["prediction"] = prediction.nodes();
  if (g.root()) j["root"] = *g.root();
  return j;
}

inline InstanceFile instance_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("nodes").get<NodeId>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw std::runtime_error("edge must be [u, v, cost]");
      edges.push_back({e[0].get<NodeId>(), e[1].get<NodeId>(), e[2].get<Cost>()});
    }
    InstanceFile out;
    if (j.contains("root") && !j["root"].is_null()) {
      out.graph = std::make_shared<const WeightedGraph>(
          WeightedGraph::directed(n, std::move(edges), j["root"].get<NodeId>()));
    } else {
      out.graph = std::make_shared<const WeightedGraph>(WeightedGraph::undirected(n, std::move(edges)));
    }
    if (j.contains("arrivals")) out.arrivals = j["arrivals"].get<std::vector<NodeId>>();
    if (j.contains("prediction")) {
      out.prediction = PredictionSet(j["prediction"].get<std::vector<NodeId>>());
      out.prediction.check_against(*out.graph);
    }
    for (NodeId t : out.arrivals) out.graph->check_node(t);
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed instance JSON: ") + e.what());
  }
}

inline InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return instance_from_json(j);
}

inline void save_instance(const std::string& path, const WeightedGraph& g,
                          std::span<const NodeId> arrivals, const PredictionSet& prediction) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json(g, arrivals, prediction).dump() << '\n';
}

}  // namespace ost
