#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "ost/ost.hpp"

namespace {

using namespace ost;

struct Common {
  std::string graph = "random:n=500,m=5000";
  std::size_t k = 50;
  std::uint64_t seed = 1;
  std::size_t trials = 10;
  double lambda = 1.0;  // prediction accuracy for single-instance commands
  std::string algo = "ioapt";
  std::string out;
  std::vector<double> lambda_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::vector<double> theta_grid{kDefaultThetas.begin(), kDefaultThetas.end()};
  std::vector<std::size_t> train_grid{1, 5, 10, 50};
  std::string dist = "uniform";
  std::size_t hot = 40;
  double sigma = 0.1;
  std::size_t x = 10;
};

struct BuiltInstance {
  LoadedGraph loaded;
  OnlineInstance instance;
  PredictionSet prediction;
};

// Uses the source's own arrivals and prediction when it has them; otherwise
// samples k terminals and a prediction of the given accuracy.
BuiltInstance build_instance(const Common& c) {
  BuiltInstance b;
  b.loaded = load_graph(c.graph, c.seed);
  const WeightedGraph& g = *b.loaded.graph;
  std::vector<NodeId> universe;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!g.root() || v != *g.root()) universe.push_back(v);
  }
  std::vector<NodeId> arrivals = b.loaded.arrivals;
  if (arrivals.empty()) {
    Rng rng(derive_seed(c.seed, {1, 0}));
    arrivals = sample_without_replacement<NodeId>(universe, std::min(c.k, universe.size()), rng);
  }
  b.instance = OnlineInstance(b.loaded.graph, arrivals);
  if (!b.loaded.arrivals.empty()) {
    b.prediction = b.loaded.prediction;
  } else {
    Rng rng(derive_seed(c.seed, {2, 0}));
    b.prediction = mix_prediction(b.instance.arrivals, universe, c.lambda, rng);
  }
  return b;
}

void emit(const Common& c, const ExperimentResult& result) {
  if (c.out.empty()) {
    write_csv(std::cout, result.records);
  } else {
    std::ofstream out(c.out);
    if (!out) throw std::runtime_error("cannot write " + c.out);
    write_csv(out, result.records);
  }
  std::ostream& log = c.out.empty() ? std::cerr : std::cout;
  for (const auto& [key, s] : summarize(result.records)) {
    log << fmt::format("{:>8g} {:<11} n={:<3} mean_eta={:<8.3f} ratio_baseline={:.4f} ratio_oracle={:.4f}\n",
                       key.first, key.second, s.count, s.mean_eta, s.mean_ratio_baseline,
                       s.mean_ratio_oracle);
  }
  for (const std::string& p : result.problems) std::cerr << "problem: " << p << '\n';
  log << fmt::format("audit violations: {}, bound violations: {}\n", result.audit_violations,
                     result.bound_violations);
}

std::vector<Algorithm> parse_algorithms(const std::string& list) {
  std::vector<Algorithm> out;
  std::stringstream in(list);
  for (std::string name; std::getline(in, name, ',');) out.push_back(parse_algorithm(name));
  return out;
}

int cmd_gen(const Common& c) {
  const BuiltInstance b = build_instance(c);
  const auto json = to_json(*b.loaded.graph, b.instance.arrivals, b.prediction).dump();
  if (c.out.empty()) {
    std::cout << json << '\n';
  } else {
    save_instance(c.out, *b.loaded.graph, b.instance.arrivals, b.prediction);
    std::cout << fmt::format("wrote {} ({} nodes, {} edges, {} arrivals, {} predicted)\n", c.out,
                             b.loaded.graph->node_count(), b.loaded.graph->edge_count(),
                             b.instance.k(), b.prediction.size());
  }
  return 0;
}

int cmd_run(const Common& c) {
  const BuiltInstance b = build_instance(c);
  const Algorithm algo = parse_algorithm(c.algo);
  const PurchasePlan plan = run_algorithm(algo, b.instance, b.prediction);
  std::cout << fmt::format("graph {} algorithm {} k {} eta {}\n", b.loaded.id, to_string(algo),
                           b.instance.k(), prediction_error(b.instance.arrivals, b.prediction));
  for (std::size_t i = 0; i < plan.arrivals().size(); ++i) {
    const ArrivalRecord& r = plan.arrivals()[i];
    const char* branch = r.branch == Branch::none ? "-" : r.branch == Branch::greedy ? "A1" : "A2";
    std::cout << fmt::format("  {:>4} t={:<7} {:<2} paid={:.12g} edges={}\n", i, r.terminal, branch,
                             r.delta(), r.bought.size());
  }
  std::cout << fmt::format("cost {:.12g} (A1 {:.12g}, A2 {:.12g})\n", plan.total(), plan.a1_cost(),
                           plan.a2_cost());
  const auto problems = audit_plan(b.instance, plan);
  for (const std::string& p : problems) std::cerr << "audit: " << p << '\n';
  return problems.empty() ? 0 : 1;
}

int cmd_oracle(const Common& c) {
  const BuiltInstance b = build_instance(c);
  const WeightedGraph& g = *b.loaded.graph;
  const OracleResult r =
      g.is_directed() ? exact_mdst(g, b.instance.arrivals) : exact_steiner(g, b.instance.arrivals);
  std::cout << fmt::format("OPT {:.12g} ({} edges, {} terminals)\n", r.cost, r.edges.size(),
                           r.terminals.size());
  return 0;
}

int cmd_hard(const Common& c) {
  const HardInstance hard = gen_hard_instance(static_cast<int>(c.k));
  const OnlineInstance& inst = hard.instance;
  const Cost opt = exact_steiner(*inst.graph, inst.arrivals).cost;
  std::cout << fmt::format("hard instance k={}: {} nodes, {} edges, eta {}\n", c.k,
                           inst.graph->node_count(), inst.graph->edge_count(),
                           prediction_error(inst.arrivals, hard.prediction));
  std::cout << fmt::format("OPT {:.12g}\n", opt);
  MetricView metric(*inst.graph);
  int status = 0;
  for (Algorithm algo : {Algorithm::greedy, Algorithm::oapt, Algorithm::ioapt, Algorithm::ioapt_lazy}) {
    const PurchasePlan plan = run_algorithm(algo, inst, hard.prediction, metric);
    std::cout << fmt::format("{:<10} cost {:.12g} ratio {:.6f}\n", to_string(algo), plan.total(),
                             plan.total() / opt);
    if (!audit_plan(inst, plan).empty()) status = 1;
  }
  if (!c.out.empty()) {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::hard_instance;
    cfg.k = c.k;
    cfg.seed = c.seed;
    cfg.algorithms = {Algorithm::greedy, Algorithm::oapt, Algorithm::ioapt, Algorithm::ioapt_lazy};
    std::ofstream out(c.out);
    write_csv(out, run_experiment(cfg).records);
  }
  return status;
}

ExperimentConfig base_config(const Common& c, ExperimentKind kind) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.graph = c.graph;
  cfg.k = c.k;
  cfg.seed = c.seed;
  cfg.trials = c.trials;
  cfg.lambda_grid = c.lambda_grid;
  cfg.theta_grid = c.theta_grid;
  cfg.training_grid = c.train_grid;
  return cfg;
}

int finish(const Common& c, const ExperimentResult& result) {
  emit(c, result);
  return result.audit_violations == 0 && result.bound_violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online Steiner tree algorithms with predicted terminals"};
  app.require_subcommand(1);
  Common c;
  std::string algos = "greedy,oapt,ioapt,ioapt-lazy";

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--graph", c.graph, "graph spec or instance file (.json, .gr)");
    sub->add_option("--k", c.k, "number of terminals");
    sub->add_option("--seed", c.seed, "base seed");
    sub->add_option("--out", c.out, "output file");
  };
  const auto add_trials = [&](CLI::App* sub) {
    sub->add_option("--trials", c.trials, "trials per grid point")->check(CLI::PositiveNumber);
    sub->add_option("--algo", algos, "comma-separated algorithms");
  };

  auto* gen = app.add_subcommand("gen", "generate an instance as JSON");
  add_common(gen);
  gen->add_option("--lambda", c.lambda, "prediction accuracy")->check(CLI::Range(0.0, 1.0));

  auto* run = app.add_subcommand("run", "run one algorithm on one instance");
  add_common(run);
  run->add_option("--lambda", c.lambda, "prediction accuracy")->check(CLI::Range(0.0, 1.0));
  run->add_option("--algo", c.algo, "greedy, oapt, ioapt, ioapt-lazy or directed");

  auto* oracle = app.add_subcommand("oracle", "exact optimum for an instance's terminals");
  add_common(oracle);

  auto* hard = app.add_subcommand("hard", "the k-terminal lower-bound instance");
  hard->add_option("--k", c.k, "k >= 4")->default_val(10);
  hard->add_option("--seed", c.seed);
  hard->add_option("--out", c.out, "also write CSV here");

  auto* sweep = app.add_subcommand("sweep", "robustness sweep over prediction accuracy");
  add_common(sweep);
  add_trials(sweep);
  sweep->add_option("--lambda-grid", c.lambda_grid, "accuracies")->delimiter(',');

  auto* learn = app.add_subcommand("learn", "learnability over training-set counts");
  add_common(learn);
  add_trials(learn);
  learn->add_option("--theta-grid", c.theta_grid, "frequency thresholds tried when learning")->delimiter(',');
  learn->add_option("--train-grid", c.train_grid, "training-set counts s")->delimiter(',');
  learn->add_option("--dist", c.dist)->check(CLI::IsMember({"uniform", "two-class", "clustered"}));
  learn->add_option("--hot", c.hot, "|V_h| for two-class");
  learn->add_option("--sigma", c.sigma, "cluster radius fraction");
  learn->add_option("--x", c.x, "terminals per cluster");

  auto* directed = app.add_subcommand("directed-check", "check every lambda epoch's MDST bound");
  add_common(directed);
  add_trials(directed);
  directed->add_option("--lambda-grid", c.lambda_grid, "prediction accuracies")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(c);
    if (*run) return cmd_run(c);
    if (*oracle) return cmd_oracle(c);
    if (*hard) return cmd_hard(c);
    if (*sweep) {
      ExperimentConfig cfg = base_config(c, ExperimentKind::robustness);
      cfg.algorithms = parse_algorithms(algos);
      return finish(c, run_experiment(cfg));
    }
    if (*learn) {
      ExperimentConfig cfg = base_config(c, ExperimentKind::learnability);
      cfg.algorithms = parse_algorithms(algos);
      cfg.distribution.kind = c.dist == "uniform"     ? TerminalDistribution::Kind::uniform
                              : c.dist == "two-class" ? TerminalDistribution::Kind::two_class
                                                      : TerminalDistribution::Kind::clustered;
      cfg.distribution.hot_size = c.hot;
      cfg.distribution.sigma = c.sigma;
      cfg.distribution.x = c.x;
      return finish(c, run_experiment(cfg));
    }
    if (*directed) {
      ExperimentConfig cfg = base_config(c, ExperimentKind::directed_check);
      if (directed->count("--graph") == 0) cfg.graph = "digraph:n=18,m=40";
      if (directed->count("--k") == 0) cfg.k = 6;
      cfg.algorithms = {Algorithm::directed};
      return finish(c, run_experiment(cfg));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
