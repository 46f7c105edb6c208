#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ost/dimacs.hpp"
#include "ost/experiment.hpp"
#include "ost/generators.hpp"
#include "ost/instance_io.hpp"
#include "support.hpp"

namespace ost {
namespace {

TEST(GenRandomGraph, EdgeCounts) {
  Rng rng(1);
  const auto filled = gen_random_graph(10, 20, 1, 1000, 100000.0, rng);
  EXPECT_EQ(filled.edge_count(), 45u);
  const auto real = std::count_if(filled.edges().begin(), filled.edges().end(),
                                  [](const Edge& e) { return e.cost != 100000; });
  EXPECT_EQ(real, 20);
  for (const Edge& e : filled.edges()) {
    EXPECT_TRUE(e.cost == 100000 || (e.cost >= 1 && e.cost <= 1000));
  }
  const auto sparse = gen_random_graph(10, 20, 1, 1000, std::nullopt, rng);
  EXPECT_EQ(sparse.edge_count(), 20u);
  EXPECT_EQ(gen_random_graph(3, 3, 1, 5, std::nullopt, rng).edge_count(), 3u);
  EXPECT_THROW(gen_random_graph(3, 4, 1, 5, std::nullopt, rng), std::invalid_argument);
}

TEST(GenRandomGraph, SameSeedSameGraph) {
  Rng a(42), b(42);
  const auto g1 = gen_random_graph(30, 100, 1, 50, 1000.0, a);
  const auto g2 = gen_random_graph(30, 100, 1, 50, 1000.0, b);
  ASSERT_EQ(g1.edge_count(), g2.edge_count());
  for (std::size_t i = 0; i < g1.edges().size(); ++i) {
    EXPECT_EQ(g1.edges()[i].u, g2.edges()[i].u);
    EXPECT_EQ(g1.edges()[i].v, g2.edges()[i].v);
    EXPECT_EQ(g1.edges()[i].cost, g2.edges()[i].cost);
  }
}

TEST(GenRandomDigraph, EveryNodeReachesRoot) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const auto g = gen_random_digraph(15, 20, 2, 9, rng);
    EXPECT_EQ(g.edge_count(), 34u);
    const auto fw = testing::floyd_warshall(g);
    for (std::size_t v = 0; v < 15; ++v) EXPECT_LT(fw[v][0], kInfinity);
  }
}

TEST(GenHardInstance, Shape) {
  const HardInstance h = gen_hard_instance(6);
  EXPECT_EQ(h.instance.graph->node_count(), 10);
  EXPECT_EQ(h.instance.graph->edge_count(), 10u);
  EXPECT_EQ(h.instance.arrivals, (std::vector<NodeId>{0, 5, 1, 2, 3, 4}));
  EXPECT_EQ(h.prediction.nodes(), (std::vector<NodeId>{0, 5, 6, 7, 8, 9}));
  EXPECT_THROW(gen_hard_instance(3), std::invalid_argument);
}

TEST(TwoClass, HalfFromHotSet) {
  Rng rng(9);
  const auto d = TerminalDistribution::two_class(500, 40, 20, rng);
  ASSERT_EQ(d.hot_nodes().size(), 40u);
  for (int i = 0; i < 20; ++i) {
    const auto s = d.sample(rng);
    EXPECT_EQ(s.size(), 20u);
    EXPECT_EQ(std::set<NodeId>(s.begin(), s.end()).size(), 20u);
    const auto hot = std::count_if(s.begin(), s.end(), [&](NodeId v) {
      return std::binary_search(d.hot_nodes().begin(), d.hot_nodes().end(), v);
    });
    EXPECT_EQ(hot, 10);
  }
  EXPECT_THROW(TerminalDistribution::two_class(30, 5, 20, rng), std::invalid_argument);
}

TEST(Dimacs, ParsesAndMergesParallelArcs) {
  std::istringstream gr(
      "c road\n"
      "p sp 3 5\n"
      "a 1 2 7\n"
      "a 2 1 4\n"
      "a 2 3 1\n"
      "a 3 3 9\n"
      "a 3 2 2\n");
  std::istringstream co("p aux sp co 3\nv 1 0 0\nv 2 1 0\nv 3 2 0\n");
  const RoadNetwork net = parse_dimacs(gr, "t.gr", &co, "t.co");
  EXPECT_EQ(net.graph.node_count(), 3);
  EXPECT_EQ(net.declared_arcs, 5u);
  ASSERT_EQ(net.graph.edge_count(), 2u);
  EXPECT_EQ(net.graph.edges()[0].cost, 4);
  EXPECT_EQ(net.graph.edges()[1].cost, 1);
  ASSERT_TRUE(net.has_coords());
  EXPECT_EQ(net.coords[2].x, 2);
}

TEST(Dimacs, ErrorsCarryLineNumbers) {
  const auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      parse_dimacs(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("p sp 2 1\nc ok\na 1 3 5\n"), 3u);
  EXPECT_EQ(line_of("a 1 2 5\n"), 1u);
  EXPECT_EQ(line_of("p sp 2 1\na 1 2 x\n"), 2u);
  EXPECT_EQ(line_of("p sp 2 1\na 1 2 -1\n"), 2u);
  EXPECT_EQ(line_of("p sp 2 1\nz\n"), 2u);
  EXPECT_EQ(line_of("p sp 2 1\np sp 2 1\n"), 2u);
  std::istringstream empty("c nothing\n");
  EXPECT_THROW(parse_dimacs(empty), ParseError);
}

RoadNetwork grid(int side) {
  RoadNetwork net;
  std::vector<Edge> edges;
  const auto id = [side](int x, int y) { return static_cast<NodeId>(y * side + x); };
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      net.coords.push_back({static_cast<double>(x), static_cast<double>(y)});
      if (x + 1 < side) edges.push_back({id(x, y), id(x + 1, y), 1});
      if (y + 1 < side) edges.push_back({id(x, y), id(x, y + 1), 1});
    }
  }
  net.graph = WeightedGraph::undirected(static_cast<NodeId>(side * side), std::move(edges));
  return net;
}

TEST(RectangleSample, FullAndPartial) {
  const RoadNetwork net = grid(10);
  Rng rng(3);
  const RoadNetwork all = sample_rectangle_subgraph(net, 1, 1, rng);
  EXPECT_EQ(all.graph.node_count(), 100);
  EXPECT_EQ(all.graph.edge_count(), net.graph.edge_count());
  for (int round = 0; round < 10; ++round) {
    const RoadNetwork part = sample_rectangle_subgraph(net, 0.5, 0.5, rng);
    EXPECT_GE(part.graph.node_count(), 1);
    EXPECT_LE(part.graph.node_count(), 36);
    EXPECT_EQ(part.coords.size(), static_cast<std::size_t>(part.graph.node_count()));
    EXPECT_NO_THROW(graph_radius(part.graph));
  }
  RoadNetwork bare;
  bare.graph = net.graph;
  EXPECT_THROW(sample_rectangle_subgraph(bare, 1, 1, rng), std::invalid_argument);
  EXPECT_THROW(sample_rectangle_subgraph(net, 0, 1, rng), std::invalid_argument);
}

TEST(InstanceIo, RoundTrip) {
  Rng rng(2);
  const auto g = gen_random_digraph(6, 4, 2, 9, rng);
  const std::vector<NodeId> arrivals{3, 1};
  const PredictionSet pred({1, 5});
  const InstanceFile back = instance_from_json(to_json(g, arrivals, pred));
  EXPECT_TRUE(back.graph->is_directed());
  EXPECT_EQ(back.graph->root(), g.root());
  EXPECT_EQ(back.graph->edge_count(), g.edge_count());
  EXPECT_EQ(back.arrivals, arrivals);
  EXPECT_EQ(back.prediction.nodes(), pred.nodes());

  const auto path = std::filesystem::temp_directory_path() / "ost_roundtrip.json";
  const auto u = testing::random_connected(5, 3, 1, 9, 1);
  save_instance(path.string(), u, arrivals, PredictionSet({1, 4}));
  const InstanceFile loaded = load_instance(path.string());
  std::filesystem::remove(path);
  EXPECT_FALSE(loaded.graph->is_directed());
  for (std::size_t i = 0; i < u.edges().size(); ++i) {
    EXPECT_EQ(loaded.graph->edges()[i].cost, u.edges()[i].cost);
  }
  EXPECT_THROW(instance_from_json(nlohmann::json::parse(R"({"nodes": 2})")), std::runtime_error);
  EXPECT_THROW(instance_from_json(nlohmann::json::parse(
                   R"({"nodes": 2, "edges": [[0, 1, 1]], "arrivals": [4]})")),
               GraphError);
}

ExperimentConfig small_robustness() {
  ExperimentConfig cfg;
  cfg.graph = "random:n=40,m=150";
  cfg.k = 6;
  cfg.trials = 2;
  cfg.seed = 5;
  return cfg;
}

TEST(Experiment, RobustnessRowsAndBounds) {
  const ExperimentConfig cfg = small_robustness();
  const ExperimentResult r = run_experiment(cfg);
  EXPECT_EQ(r.records.size(), 11u * 2u * 3u);
  EXPECT_EQ(r.audit_violations, 0u);
  EXPECT_EQ(r.bound_violations, 0u);
  for (const TrialRecord& rec : r.records) {
    EXPECT_FALSE(rec.failed);
    EXPECT_GE(rec.cost, rec.oracle_bound - 1e-9);
    EXPECT_NE(rec.experiment.find("robustness/"), std::string::npos);
  }
  const std::string csv = to_csv(r.records);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kCsvHeader);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 67);
}

TEST(Experiment, RerunsAreByteIdentical) {
  const ExperimentConfig cfg = small_robustness();
  EXPECT_EQ(to_csv(run_experiment(cfg).records), to_csv(run_experiment(cfg).records));
  ExperimentConfig other = cfg;
  other.seed = 6;
  EXPECT_NE(to_csv(run_experiment(cfg).records), to_csv(run_experiment(other).records));
}

TEST(Experiment, HardInstanceRatio) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::hard_instance;
  cfg.k = 10;
  cfg.algorithms = {Algorithm::greedy, Algorithm::oapt};
  const ExperimentResult r = run_experiment(cfg);
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[0].cost, 1.140625);
  EXPECT_EQ(r.records[1].cost, 9.125);
  EXPECT_EQ(r.records[1].oracle_bound, 1.140625);
  EXPECT_NEAR(r.records[1].ratio_oracle, 8, 1e-9);
  EXPECT_EQ(r.records[1].eta, 8u);
}

TEST(Experiment, LearnabilityGrid) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::learnability;
  cfg.graph = "random:n=40,m=150";
  cfg.k = 6;
  cfg.trials = 1;
  cfg.training_grid = {1, 5};
  cfg.algorithms = {Algorithm::ioapt};
  const ExperimentResult r = run_experiment(cfg);
  EXPECT_EQ(r.audit_violations, 0u);
  EXPECT_EQ(r.bound_violations, 0u);
  std::set<double> grid;
  for (const TrialRecord& rec : r.records) grid.insert(rec.grid_value);
  EXPECT_EQ(grid, (std::set<double>{1, 5}));
}

TEST(Experiment, DirectedCheck) {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::directed_check;
  cfg.graph = "digraph:n=12,m=24";
  cfg.k = 4;
  cfg.trials = 3;
  cfg.lambda_grid = {0, 0.5, 1};
  cfg.algorithms = {Algorithm::directed};
  const ExperimentResult r = run_experiment(cfg);
  EXPECT_EQ(r.records.size(), 9u);
  EXPECT_EQ(r.audit_violations, 0u);
  EXPECT_EQ(r.bound_violations, 0u);
}

TEST(Experiment, ConfigValidation) {
  ExperimentConfig cfg;
  cfg.trials = 0;
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
  cfg.trials = 1;
  cfg.algorithms.clear();
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
  EXPECT_THROW(load_graph("nonsense", 1), std::invalid_argument);
}

}  // namespace
}  // namespace ost
