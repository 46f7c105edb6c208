#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ost/graph.hpp"
#include "ost/random.hpp"
#include "ost/union_find.hpp"

namespace ost {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Point {
  double x = 0;
  double y = 0;
};

/// Undirected road graph with optional node coordinates.
struct RoadNetwork {
  WeightedGraph graph;
  std::vector<Point> coords;  // empty when no coordinate file was given
  std::size_t declared_arcs = 0;

  bool has_coords() const { return !coords.empty(); }
};

namespace detail {

inline std::vector<std::string> split_tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

template <class T>
T parse_number(const std::string& tok, const std::string& source, std::size_t line) {
  T value{};
  std::istringstream in(tok);
  in >> value;
  if (!in || !in.eof()) throw ParseError(source, line, "bad number '" + tok + "'");
  return value;
}

}  // namespace detail

/// Reads a 9th-DIMACS-challenge shortest-path graph ("p sp n m", "a u v w")
/// and, optionally, its coordinates ("v id x y"). Ids become 0-based; arcs
/// (u,v) and (v,u) merge into one undirected edge of the smaller weight.
inline RoadNetwork parse_dimacs(std::istream& gr, const std::string& gr_name = "gr",
                                std::istream* co = nullptr, const std::string& co_name = "co") {
  std::int64_t n = -1;
  std::vector<Edge> edges;
  std::unordered_map<std::uint64_t, std::size_t> edge_index;
  std::size_t arcs = 0;
  std::string line;
  for (std::size_t lineno = 1; std::getline(gr, line); ++lineno) {
    const auto tok = detail::split_tokens(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (tok.size() != 4 || tok[1] != "sp") throw ParseError(gr_name, lineno, "expected 'p sp n m'");
      if (n >= 0) throw ParseError(gr_name, lineno, "duplicate problem line");
      n = detail::parse_number<std::int64_t>(tok[2], gr_name, lineno);
      detail::parse_number<std::int64_t>(tok[3], gr_name, lineno);
      if (n < 0 || n > std::numeric_limits<NodeId>::max()) {
        throw ParseError(gr_name, lineno, "node count out of range");
      }
      continue;
    }
    if (tok[0] != "a") throw ParseError(gr_name, lineno, "unknown line type '" + tok[0] + "'");
    if (n < 0) throw ParseError(gr_name, lineno, "arc before problem line");
    if (tok.size() != 4) throw ParseError(gr_name, lineno, "expected 'a u v w'");
    const auto u = detail::parse_number<std::int64_t>(tok[1], gr_name, lineno);
    const auto v = detail::parse_number<std::int64_t>(tok[2], gr_name, lineno);
    const auto w = detail::parse_number<double>(tok[3], gr_name, lineno);
    if (u < 1 || u > n || v < 1 || v > n) throw ParseError(gr_name, lineno, "node id out of range");
    if (w < 0) throw ParseError(gr_name, lineno, "negative arc weight");
    ++arcs;
    if (u == v) continue;
    const auto a = static_cast<NodeId>(std::min(u, v) - 1);
    const auto b = static_cast<NodeId>(std::max(u, v) - 1);
    const std::uint64_t key = static_cast<std::uint64_t>(a) << 32 | static_cast<std::uint32_t>(b);
    const auto [it, fresh] = edge_index.emplace(key, edges.size());
    if (fresh) {
      edges.push_back({a, b, w});
    } else {
      edges[it->second].cost = std::min(edges[it->second].cost, w);
    }
  }
  if (n < 0) throw ParseError(gr_name, 0, "missing problem line");

  RoadNetwork net;
  net.graph = WeightedGraph::undirected(static_cast<NodeId>(n), std::move(edges));
  net.declared_arcs = arcs;
  if (co != nullptr) {
    net.coords.assign(static_cast<std::size_t>(n), Point{});
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (std::size_t lineno = 1; std::getline(*co, line); ++lineno) {
      const auto tok = detail::split_tokens(line);
      if (tok.empty() || tok[0] == "c" || tok[0] == "p") continue;
      if (tok[0] != "v" || tok.size() != 4) throw ParseError(co_name, lineno, "expected 'v id x y'");
      const auto id = detail::parse_number<std::int64_t>(tok[1], co_name, lineno);
      if (id < 1 || id > n) throw ParseError(co_name, lineno, "node id out of range");
      const auto i = static_cast<std::size_t>(id - 1);
      net.coords[i] = {detail::parse_number<double>(tok[2], co_name, lineno),
                       detail::parse_number<double>(tok[3], co_name, lineno)};
      seen[i] = 1;
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
      throw ParseError(co_name, 0, "coordinates missing for some nodes");
    }
  }
  return net;
}

inline RoadNetwork parse_dimacs(const std::string& gr_path,
                                const std::optional<std::string>& co_path = std::nullopt) {
  std::ifstream gr(gr_path);
  if (!gr) throw std::runtime_error("cannot open " + gr_path);
  if (!co_path) return parse_dimacs(gr, gr_path);
  std::ifstream co(*co_path);
  if (!co) throw std::runtime_error("cannot open " + *co_path);
  return parse_dimacs(gr, gr_path, &co, *co_path);
}

/// Induced subgraph of the nodes inside a uniformly placed rectangle whose
/// sides are the given fractions of the bounding box, reduced to its
/// largest connected component (ties: the one with the smallest node).
/// Node ids are compacted in original order.
inline RoadNetwork sample_rectangle_subgraph(const RoadNetwork& net, double width_frac,
                                             double height_frac, Rng& rng) {
  if (!net.has_coords()) throw std::invalid_argument("rectangle sampling needs coordinates");
  if (!(width_frac > 0 && width_frac <= 1 && height_frac > 0 && height_frac <= 1)) {
    throw std::invalid_argument("rectangle fractions must lie in (0, 1]");
  }
  const auto n = static_cast<std::size_t>(net.graph.node_count());
  double xmin = net.coords[0].x, xmax = xmin, ymin = net.coords[0].y, ymax = ymin;
  for (const Point& p : net.coords) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double w = (xmax - xmin) * width_frac;
  const double h = (ymax - ymin) * height_frac;
  const double x0 = std::uniform_real_distribution<double>(xmin, std::max(xmin, xmax - w))(rng);
  const double y0 = std::uniform_real_distribution<double>(ymin, std::max(ymin, ymax - h))(rng);

  std::vector<char> inside(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    const Point& p = net.coords[v];
    inside[v] = p.x >= x0 && p.x <= x0 + w && p.y >= y0 && p.y <= y0 + h;
  }
  UnionFind uf(n);
  for (const Edge& e : net.graph.edges()) {
    if (inside[static_cast<std::size_t>(e.u)] && inside[static_cast<std::size_t>(e.v)]) {
      uf.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v));
    }
  }
  std::vector<std::size_t> comp_size(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (inside[v]) ++comp_size[uf.find(v)];
  }
  std::size_t best_root = n;
  for (std::size_t v = 0; v < n; ++v) {
    if (!inside[v]) continue;
    const std::size_t r = uf.find(v);
    if (best_root == n || comp_size[r] > comp_size[best_root]) best_root = r;
  }
  if (best_root == n) throw std::runtime_error("rectangle contains no nodes");

  std::vector<NodeId> remap(n, -1);
  RoadNetwork out;
  for (std::size_t v = 0; v < n; ++v) {
    if (inside[v] && uf.find(v) == best_root) {
      remap[v] = static_cast<NodeId>(out.coords.size());
      out.coords.push_back(net.coords[v]);
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : net.graph.edges()) {
    const NodeId a = remap[static_cast<std::size_t>(e.u)];
    const NodeId b = remap[static_cast<std::size_t>(e.v)];
    if (a >= 0 && b >= 0) edges.push_back({a, b, e.cost});
  }
  out.declared_arcs = edges.size();
  out.graph = WeightedGraph::undirected(static_cast<NodeId>(out.coords.size()), std::move(edges));
  return out;
}

}  // namespace ost
