#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "ost/algorithms.hpp"
#include "ost/dimacs.hpp"
#include "ost/generators.hpp"
#include "ost/instance.hpp"
#include "ost/instance_io.hpp"
#include "ost/oracle.hpp"
#include "ost/plan.hpp"
#include "ost/predictions.hpp"
#include "ost/random.hpp"

namespace ost {

/// A graph resolved from a `--graph` spec, plus whatever instance data the
/// source carries (hard instances and JSON files bring arrivals and a
/// prediction).
struct LoadedGraph {
  std::shared_ptr<const WeightedGraph> graph;
  std::string id;
  std::vector<NodeId> arrivals;
  PredictionSet prediction;
};

namespace detail {

inline std::map<std::string, std::string> parse_params(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

template <class T>
T param(const std::map<std::string, std::string>& p, const std::string& key, T fallback) {
  const auto it = p.find(key);
  if (it == p.end()) return fallback;
  std::istringstream in(it->second);
  T value{};
  in >> value;
  if (!in) throw std::invalid_argument("bad value for '" + key + "': " + it->second);
  return value;
}

inline bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace detail

/// Resolves a graph spec:
///   random:n=500,m=5000[,lo=1,hi=1000,filler=100000]
///   hard:k=10
///   digraph:n=14,m=30[,lo=2,hi=20]         (m extra arcs beyond an in-tree)
///   road:gr=<file>[,co=<file>,w=0.05,h=0.05]
///   <file>.json | <file>.gr
/// Random sources draw from `seed`.
inline LoadedGraph load_graph(const std::string& spec, std::uint64_t seed) {
  LoadedGraph out;
  const auto colon = spec.find(':');
  const std::string kind = colon == std::string::npos ? "" : spec.substr(0, colon);
  const auto params = colon == std::string::npos ? std::map<std::string, std::string>{}
                                                 : detail::parse_params(spec.substr(colon + 1));
  Rng rng(derive_seed(seed, {0x67726170ULL}));
  if (kind == "random") {
    const auto n = detail::param<NodeId>(params, "n", 500);
    const auto m = detail::param<std::size_t>(params, "m", 5000);
    const auto lo = detail::param<int>(params, "lo", 1);
    const auto hi = detail::param<int>(params, "hi", 1000);
    const auto filler = detail::param<Cost>(params, "filler", 100000);
    out.graph = std::make_shared<const WeightedGraph>(
        gen_random_graph(n, m, lo, hi, filler > 0 ? std::optional<Cost>(filler) : std::nullopt, rng));
    out.id = fmt::format("random-n{}-m{}-s{}", n, m, seed);
  } else if (kind == "hard") {
    const auto k = detail::param<int>(params, "k", 10);
    HardInstance hard = gen_hard_instance(k);
    out.graph = hard.instance.graph;
    out.arrivals = hard.instance.arrivals;
    out.prediction = hard.prediction;
    out.id = fmt::format("hard-k{}", k);
  } else if (kind == "digraph") {
    const auto n = detail::param<NodeId>(params, "n", 14);
    const auto m = detail::param<std::size_t>(params, "m", 30);
    const auto lo = detail::param<int>(params, "lo", 2);
    const auto hi = detail::param<int>(params, "hi", 20);
    out.graph = std::make_shared<const WeightedGraph>(gen_random_digraph(n, m, lo, hi, rng));
    out.id = fmt::format("digraph-n{}-m{}-s{}", n, m, seed);
  } else if (kind == "road" || (kind.empty() && detail::ends_with(spec, ".gr"))) {
    const std::string gr = kind.empty() ? spec : params.at("gr");
    std::optional<std::string> co;
    if (params.count("co")) co = params.at("co");
    RoadNetwork net = parse_dimacs(gr, co);
    if (net.has_coords()) {
      net = sample_rectangle_subgraph(net, detail::param<double>(params, "w", 1.0),
                                      detail::param<double>(params, "h", 1.0), rng);
    }
    out.graph = std::make_shared<const WeightedGraph>(std::move(net.graph));
    out.id = fmt::format("road-{}-s{}", std::filesystem::path(gr).stem().string(), seed);
  } else if (kind.empty() && detail::ends_with(spec, ".json")) {
    InstanceFile file = load_instance(spec);
    out.graph = file.graph;
    out.arrivals = std::move(file.arrivals);
    out.prediction = std::move(file.prediction);
    out.id = std::filesystem::path(spec).stem().string();
  } else {
    throw std::invalid_argument("unrecognized graph spec '" + spec + "'");
  }
  return out;
}

enum class ExperimentKind { robustness, learnability, hard_instance, directed_check };

inline std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::robustness: return "robustness";
    case ExperimentKind::learnability: return "learnability";
    case ExperimentKind::hard_instance: return "hard";
    case ExperimentKind::directed_check: return "directed-check";
  }
  return "?";
}

struct DistributionSpec {
  TerminalDistribution::Kind kind = TerminalDistribution::Kind::uniform;
  std::size_t hot_size = 40;  // |V_h| for two-class
  double sigma = 0.1;         // clustered
  std::size_t x = 10;         // terminals per cluster
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::robustness;
  std::string graph = "random:n=500,m=5000";
  std::size_t k = 50;
  std::vector<double> lambda_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::vector<std::size_t> training_grid{1, 5, 10, 50};
  std::vector<double> theta_grid{kDefaultThetas.begin(), kDefaultThetas.end()};
  DistributionSpec distribution;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::vector<Algorithm> algorithms{Algorithm::oapt, Algorithm::ioapt, Algorithm::ioapt_lazy};

  void validate() const {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (algorithms.empty()) throw std::invalid_argument("no algorithms selected");
    if ((kind == ExperimentKind::robustness || kind == ExperimentKind::directed_check) &&
        lambda_grid.empty()) {
      throw std::invalid_argument("empty lambda grid");
    }
    if (kind == ExperimentKind::learnability && (training_grid.empty() || theta_grid.empty())) {
      throw std::invalid_argument("empty training or theta grid");
    }
  }
};

/// One CSV row.
struct TrialRecord {
  std::string experiment;  // "<kind>/<grid point>/<oracle kind>"
  std::string graph_id;
  std::uint64_t seed = 0;
  std::string algorithm;
  std::size_t k = 0;
  std::size_t eta = 0;
  Cost cost = 0;
  Cost baseline_cost = 0;
  Cost oracle_bound = 0;
  double ratio_baseline = 0;
  double ratio_oracle = 0;
  double grid_value = 0;
  bool failed = false;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  std::size_t audit_violations = 0;  // broken feasibility or ledger invariants
  std::size_t bound_violations = 0;  // cost below the oracle bound, or a failed epoch bound check
  std::vector<std::string> problems;
};

inline constexpr std::string_view kCsvHeader =
    "experiment,graph_id,seed,algorithm,k,eta,cost,baseline_cost,oracle_bound,ratio_baseline,"
    "ratio_oracle";

inline std::string format_cost(double v) { return fmt::format("{:.12g}", v); }

inline void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << kCsvHeader << '\n';
  for (const TrialRecord& r : records) {
    if (r.failed) {
      out << r.experiment << ',' << r.graph_id << ',' << r.seed << ',' << r.algorithm << ','
          << r.k << ",NA,NA,NA,NA,NA,NA\n";
      continue;
    }
    out << r.experiment << ',' << r.graph_id << ',' << r.seed << ',' << r.algorithm << ',' << r.k
        << ',' << r.eta << ',' << format_cost(r.cost) << ',' << format_cost(r.baseline_cost) << ','
        << format_cost(r.oracle_bound) << ',' << format_cost(r.ratio_baseline) << ','
        << format_cost(r.ratio_oracle) << '\n';
  }
}

inline std::string to_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  write_csv(out, records);
  return out.str();
}

namespace detail {

inline double safe_ratio(Cost num, Cost den) {
  if (den > 0) return num / den;
  return num > 0 ? kInfinity : 1.0;
}

struct OracleValue {
  Cost value = 0;
  std::string kind;
};

inline OracleValue undirected_oracle(const WeightedGraph& g, MetricView& metric,
                                     std::span<const NodeId> terms) {
  if (terms.size() <= kSteinerTerminalGuard) {
    try {
      return {exact_steiner(g, terms).cost, "exact"};
    } catch (const GuardExceeded&) {
    }
  }
  return {opt_lower_bound(metric, terms), "mst-lb"};
}

inline std::string grid_label(const char* name, double value) {
  return fmt::format("{}={:g}", name, value);
}

class Recorder {
 public:
  Recorder(const ExperimentConfig& cfg, ExperimentResult& result, std::string graph_id)
      : cfg_(cfg), result_(result), graph_id_(std::move(graph_id)) {}

  void add(const std::string& grid, double grid_value, std::uint64_t seed, Algorithm algo,
           const OnlineInstance& inst, const PurchasePlan& plan, std::size_t eta, Cost baseline,
           const OracleValue& oracle) {
    for (const std::string& p : audit_plan(inst, plan)) {
      ++result_.audit_violations;
      result_.problems.push_back(fmt::format("{} {} seed {}: {}", grid, to_string(algo), seed, p));
    }
    if (plan.total() < oracle.value - kCostTolerance * (1 + oracle.value)) {
      ++result_.bound_violations;
      result_.problems.push_back(
          fmt::format("{} {} seed {}: cost below oracle bound", grid, to_string(algo), seed));
    }
    TrialRecord r;
    r.experiment = fmt::format("{}/{}/{}", to_string(cfg_.kind), grid, oracle.kind);
    r.graph_id = graph_id_;
    r.seed = seed;
    r.algorithm = std::string(to_string(algo));
    r.k = inst.k();
    r.eta = eta;
    r.cost = plan.total();
    r.baseline_cost = baseline;
    r.oracle_bound = oracle.value;
    r.ratio_baseline = safe_ratio(r.cost, baseline);
    r.ratio_oracle = safe_ratio(r.cost, oracle.value);
    r.grid_value = grid_value;
    result_.records.push_back(std::move(r));
  }

  void fail(const std::string& grid, double grid_value, std::uint64_t seed, Algorithm algo,
            const std::string& what) {
    TrialRecord r;
    r.experiment = fmt::format("{}/{}/error", to_string(cfg_.kind), grid);
    r.graph_id = graph_id_;
    r.seed = seed;
    r.algorithm = std::string(to_string(algo));
    r.k = cfg_.k;
    r.grid_value = grid_value;
    r.failed = true;
    result_.records.push_back(std::move(r));
    result_.problems.push_back(fmt::format("{} {} seed {}: {}", grid, to_string(algo), seed, what));
  }

 private:
  const ExperimentConfig& cfg_;
  ExperimentResult& result_;
  std::string graph_id_;
};

inline std::vector<NodeId> all_nodes(const WeightedGraph& g) {
  std::vector<NodeId> out(static_cast<std::size_t>(g.node_count()));
  for (NodeId v = 0; v < g.node_count(); ++v) out[static_cast<std::size_t>(v)] = v;
  return out;
}

inline void run_robustness(const ExperimentConfig& cfg, ExperimentResult& result) {
  const LoadedGraph loaded = load_graph(cfg.graph, cfg.seed);
  const auto universe = all_nodes(*loaded.graph);
  Recorder rec(cfg, result, loaded.id);
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    // The terminal sequence is shared by every grid point of a trial.
    Rng inst_rng(derive_seed(cfg.seed, {1, trial}));
    auto arrivals = sample_without_replacement<NodeId>(universe, cfg.k, inst_rng);
    const OnlineInstance inst(loaded.graph, arrivals);
    MetricView metric(*loaded.graph);
    const PurchasePlan baseline = run_greedy(inst, metric);
    const OracleValue oracle = undirected_oracle(*loaded.graph, metric, inst.arrivals);
    for (std::size_t gi = 0; gi < cfg.lambda_grid.size(); ++gi) {
      const double lambda = cfg.lambda_grid[gi];
      const std::string grid = grid_label("lambda", lambda);
      const std::uint64_t seed = derive_seed(cfg.seed, {2, gi, trial});
      Rng pred_rng(seed);
      const PredictionSet pred = mix_prediction(inst.arrivals, universe, lambda, pred_rng);
      const std::size_t eta = prediction_error(inst.arrivals, pred);
      for (Algorithm algo : cfg.algorithms) {
        try {
          const PurchasePlan plan =
              algo == Algorithm::greedy ? baseline : run_algorithm(algo, inst, pred, metric);
          rec.add(grid, lambda, seed, algo, inst, plan,
                  algo == Algorithm::greedy ? prediction_error(inst.arrivals, {}) : eta,
                  baseline.total(), oracle);
        } catch (const std::exception& e) {
          rec.fail(grid, lambda, seed, algo, e.what());
        }
      }
    }
  }
}

inline TerminalDistribution make_distribution(const ExperimentConfig& cfg, const WeightedGraph& g) {
  Rng rng(derive_seed(cfg.seed, {4}));
  switch (cfg.distribution.kind) {
    case TerminalDistribution::Kind::uniform:
      return TerminalDistribution::uniform(g.node_count(), cfg.k);
    case TerminalDistribution::Kind::two_class:
      return TerminalDistribution::two_class(g.node_count(), cfg.distribution.hot_size, cfg.k, rng);
    case TerminalDistribution::Kind::clustered:
      return TerminalDistribution::clustered(greedy_cluster(g, cfg.distribution.sigma),
                                             cfg.distribution.x, cfg.k);
  }
  throw std::invalid_argument("unknown distribution");
}

inline void run_learnability(const ExperimentConfig& cfg, ExperimentResult& result) {
  const LoadedGraph loaded = load_graph(cfg.graph, cfg.seed);
  const TerminalDistribution dist = make_distribution(cfg, *loaded.graph);
  Recorder rec(cfg, result, loaded.id);
  for (std::size_t gi = 0; gi < cfg.training_grid.size(); ++gi) {
    const std::size_t s = cfg.training_grid[gi];
    const std::string grid = grid_label("s", static_cast<double>(s));
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
      const std::uint64_t seed = derive_seed(cfg.seed, {3, gi, trial});
      Rng rng(seed);
      std::vector<std::vector<NodeId>> training;
      for (std::size_t i = 0; i < s; ++i) training.push_back(dist.sample(rng));
      const OnlineInstance inst(loaded.graph, dist.sample(rng));
      MetricView metric(*loaded.graph);
      const PurchasePlan baseline = run_greedy(inst, metric);
      const OracleValue oracle = undirected_oracle(*loaded.graph, metric, inst.arrivals);
      for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
        const Algorithm algo = cfg.algorithms[ai];
        try {
          if (algo == Algorithm::greedy) {
            rec.add(grid, static_cast<double>(s), seed, algo, inst, baseline,
                    prediction_error(inst.arrivals, {}), baseline.total(), oracle);
            continue;
          }
          Rng learn_rng(derive_seed(seed, {5, ai}));
          const LearnedPrediction learned =
              learn_terminals(loaded.graph, training, algo, learn_rng, metric, cfg.theta_grid);
          const PurchasePlan plan = run_algorithm(algo, inst, learned.prediction, metric);
          rec.add(grid, static_cast<double>(s), seed, algo, inst, plan,
                  prediction_error(inst.arrivals, learned.prediction), baseline.total(), oracle);
        } catch (const std::exception& e) {
          rec.fail(grid, static_cast<double>(s), seed, algo, e.what());
        }
      }
    }
  }
}

inline void run_hard(const ExperimentConfig& cfg, ExperimentResult& result) {
  const LoadedGraph loaded = load_graph(fmt::format("hard:k={}", cfg.k), cfg.seed);
  const OnlineInstance inst(loaded.graph, loaded.arrivals);
  MetricView metric(*loaded.graph);
  const PurchasePlan baseline = run_greedy(inst, metric);
  const OracleValue oracle{exact_steiner(*loaded.graph, inst.arrivals).cost, "exact"};
  const std::size_t eta = prediction_error(inst.arrivals, loaded.prediction);
  Recorder rec(cfg, result, loaded.id);
  const std::string grid = fmt::format("k={}", cfg.k);
  for (Algorithm algo : cfg.algorithms) {
    const PurchasePlan plan =
        algo == Algorithm::greedy ? baseline : run_algorithm(algo, inst, loaded.prediction, metric);
    rec.add(grid, static_cast<double>(cfg.k), cfg.seed, algo, inst, plan,
            algo == Algorithm::greedy ? prediction_error(inst.arrivals, {}) : eta, baseline.total(),
            oracle);
  }
}

/// Random rooted digraphs; checks every λ epoch's MDST against OPT + λ·η'.
inline void run_directed_check(const ExperimentConfig& cfg, ExperimentResult& result) {
  const std::string spec = cfg.graph.rfind("digraph", 0) == 0 ? cfg.graph : "digraph:n=18,m=40";
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    const LoadedGraph loaded = load_graph(spec, derive_seed(cfg.seed, {6, trial}));
    Recorder rec(cfg, result, loaded.id);
    const WeightedGraph& g = *loaded.graph;
    std::vector<NodeId> candidates;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (v != *g.root()) candidates.push_back(v);
    }
    Rng inst_rng(derive_seed(cfg.seed, {7, trial}));
    const OnlineInstance inst(loaded.graph, sample_without_replacement<NodeId>(candidates, cfg.k, inst_rng));
    const Cost opt = exact_mdst(g, inst.arrivals).cost;
    const OracleValue oracle{opt, "exact"};
    const DirectedRun baseline = run_directed(inst, {});
    for (std::size_t gi = 0; gi < cfg.lambda_grid.size(); ++gi) {
      const double accuracy = cfg.lambda_grid[gi];
      const std::string grid = grid_label("lambda", accuracy);
      const std::uint64_t seed = derive_seed(cfg.seed, {8, gi, trial});
      Rng pred_rng(seed);
      const PredictionSet pred = mix_prediction(inst.arrivals, candidates, accuracy, pred_rng);
      const std::size_t eta = prediction_error(inst.arrivals, pred);
      try {
        const DirectedRun run = run_directed(inst, pred);
        for (const LambdaEpoch& epoch : run.epochs) {
          const Cost bound = opt + epoch.lambda * static_cast<Cost>(eta);
          if (epoch.mdst.cost > bound + kCostTolerance * (1 + bound)) {
            ++result.bound_violations;
            result.problems.push_back(fmt::format("{} seed {}: MDST at lambda {} costs {} > {}", grid,
                                                  seed, epoch.lambda, epoch.mdst.cost, bound));
          }
        }
        rec.add(grid, accuracy, seed, Algorithm::directed, inst, run.plan, eta,
                baseline.plan.total(), oracle);
      } catch (const std::exception& e) {
        rec.fail(grid, accuracy, seed, Algorithm::directed, e.what());
      }
    }
  }
}

}  // namespace detail

/// Runs every grid point x trial of the configured experiment. Rows come
/// out in grid, trial, algorithm order; the same config and seed always
/// yield the same rows.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult result;
  switch (cfg.kind) {
    case ExperimentKind::robustness:
      detail::run_robustness(cfg, result);
      break;
    case ExperimentKind::learnability:
      detail::run_learnability(cfg, result);
      break;
    case ExperimentKind::hard_instance:
      detail::run_hard(cfg, result);
      break;
    case ExperimentKind::directed_check:
      detail::run_directed_check(cfg, result);
      break;
  }
  return result;
}

struct RatioSummary {
  std::size_t count = 0;
  double mean_ratio_baseline = 0;
  double mean_ratio_oracle = 0;
  double mean_eta = 0;
};

/// Means per (grid value, algorithm), skipping failed rows.
inline std::map<std::pair<double, std::string>, RatioSummary> summarize(
    const std::vector<TrialRecord>& records) {
  std::map<std::pair<double, std::string>, RatioSummary> out;
  for (const TrialRecord& r : records) {
    if (r.failed) continue;
    RatioSummary& s = out[{r.grid_value, r.algorithm}];
    ++s.count;
    s.mean_ratio_baseline += r.ratio_baseline;
    s.mean_ratio_oracle += r.ratio_oracle;
    s.mean_eta += static_cast<double>(r.eta);
  }
  for (auto& [key, s] : out) {
    const auto c = static_cast<double>(s.count);
    s.mean_ratio_baseline /= c;
    s.mean_ratio_oracle /= c;
    s.mean_eta /= c;
  }
  return out;
}

}  // namespace ost
