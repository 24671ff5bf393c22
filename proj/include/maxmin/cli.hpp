#pragma once

// Command dispatch for the maxmin_cli tool: one solve per invocation, a JSON
// result with a fixed key set, optional figures and oracle cross-checks.
// Needs nlohmann/json (vendored as json.hpp).

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "maxmin/curve3d.hpp"
#include "maxmin/degeneracy.hpp"
#include "maxmin/errors.hpp"
#include "maxmin/graph_cycles.hpp"
#include "maxmin/io.hpp"
#include "maxmin/oracles.hpp"
#include "maxmin/polar_cycles.hpp"
#include "maxmin/polygon2d.hpp"
#include "maxmin/polyhedron3d.hpp"

namespace maxmin::cli {

enum ExitCode : int { kOk = 0, kParseError = 2, kInfeasible = 3, kInternal = 4 };

enum class Format { Json, Svg, Obj, Text };

struct RunConfig {
  std::string command;  // polygon2d | polyhedron3d | curve3d | degeneracy | cycle | gen
  std::string input;
  std::string output;  // empty: standard output
  Format format = Format::Json;
  Direction direction = Direction::MaxMin;
  std::string kind;  // cycle: graph kind; gen: instance kind
  bool allow_repeated_segments = false;
  bool include_straight = false;
  bool allow_large = false;
  bool oracle = false;
  bool degrees = false;
  std::uint64_t seed = 1;
  int gen_n = 10;
  int gen_m = 20;
};

/// Usage errors share the parse-error exit code.
class UsageError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

inline std::optional<Format> parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "svg") return Format::Svg;
  if (s == "obj") return Format::Obj;
  if (s == "text") return Format::Text;
  return std::nullopt;
}

namespace detail {

using nlohmann::json;

inline json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline json number(Quality q) { return number(q.to_double()); }

inline std::vector<int> remap(const std::vector<int>& ids, const std::vector<int>& original) {
  std::vector<int> out;
  out.reserve(ids.size());
  for (int i : ids) out.push_back(original[static_cast<std::size_t>(i)]);
  return out;
}

struct Outcome {
  json result;
  std::string figure;  // svg or obj body when requested
  std::optional<bool> agreement;
};

inline json envelope(Direction dir, json value, json elements, json witness, std::string mode,
                     const std::vector<std::string>& diagnostics) {
  return json{{"objective", dir == Direction::MaxMin ? "maxmin" : "minmax"},
              {"value", std::move(value)},
              {"elements", std::move(elements)},
              {"witness", std::move(witness)},
              {"mode", std::move(mode)},
              {"diagnostics", diagnostics}};
}

/// Runs `check` when the oracle flag is set; over-budget inputs are reported,
/// not failed.
inline void cross_check(const RunConfig& c, Outcome& o, const std::function<std::pair<bool, std::string>()>& check) {
  if (!c.oracle) return;
  try {
    auto [agree, detail] = check();
    o.agreement = agree;
    o.result["diagnostics"].push_back(std::string("agreement: ") + (agree ? "true" : "false") + " (" + detail + ")");
  } catch (const BudgetExceeded& e) {
    o.result["diagnostics"].push_back(std::string("oracle skipped: ") + e.what());
  }
}

inline bool close(double a, double b) { return std::abs(a - b) <= kOracleTolerance; }

inline std::string describe(double a, double b) {
  std::ostringstream os;
  os.precision(17);
  os << "solver " << a << ", oracle " << b;
  return os.str();
}

inline Outcome run_polygon(const RunConfig& c) {
  const auto pts = io::parse_points_file(c.input);
  if (pts.dimension != 2) throw io::ParseError(c.input, 0, "polygon2d needs 2 coordinates per point");
  PolygonOptions opt;
  opt.include_straight = c.include_straight;
  const auto r = maxmin_angle_polygon(pts.points2, opt);
  Outcome o;
  json removals = json::array();
  for (const auto& x : r.trace.removals) removals.push_back(r.original_index[static_cast<std::size_t>(x.element)]);
  o.result = envelope(Direction::MaxMin, r.theta, remap(r.bottleneck_subset, r.original_index),
                      {{"polygon", remap(r.polygon, r.original_index)}, {"removal_order", removals}},
                      c.include_straight ? "convex-polygon-with-straight" : "convex-polygon", r.diagnostics);
  if (c.format == Format::Svg) o.figure = io::svg_polygon(r.points, r.polygon, r.theta);
  cross_check(c, o, [&] {
    const auto q = polygon_subset_oracle(r.points);
    return std::pair{close(q.theta, r.theta) && q.subset == r.bottleneck_subset, describe(r.theta, q.theta)};
  });
  return o;
}

inline Outcome run_polyhedron(const RunConfig& c) {
  const auto pts = io::parse_points_file(c.input);
  if (pts.dimension != 3) throw io::ParseError(c.input, 0, "polyhedron3d needs 3 coordinates per point");
  const auto r = maxmin_solid_angle_polyhedron(pts.points3);
  Outcome o;
  json faces = json::array();
  for (const auto& f : r.hull.faces)
    faces.push_back(remap(std::vector<int>(f.begin(), f.end()), r.original_index));
  o.result = envelope(Direction::MaxMin, r.theta, remap(r.bottleneck_subset, r.original_index),
                      {{"hull_vertices", remap(r.hull.vertices, r.original_index)}, {"faces", faces}}, "convex-polyhedron",
                      r.diagnostics);
  if (c.format == Format::Obj) o.figure = io::obj_hull(r.points, r.hull);
  cross_check(c, o, [&] {
    const auto q = polyhedron_subset_oracle(r.points);
    return std::pair{close(q.theta, r.theta) && q.subset == r.bottleneck_subset, describe(r.theta, q.theta)};
  });
  return o;
}

inline Outcome run_curve(const RunConfig& c) {
  const auto pts = io::parse_points_file(c.input);
  if (pts.dimension != 3) throw io::ParseError(c.input, 0, "curve3d needs 3 coordinates per point");
  CurveOptions opt;
  opt.allow_repeated_segments = c.allow_repeated_segments;
  opt.allow_large = c.allow_large;
  const auto r = maxmin_angle_closed_curve(pts.points3, opt);
  Outcome o;
  const auto curve = remap(r.curve, r.original_index);
  o.result = envelope(Direction::MaxMin, r.theta, curve, {{"curve", curve}, {"turn_angles", r.turn_angles}},
                      to_string(r.mode), r.diagnostics);
  cross_check(c, o, [&] {
    const auto q = curve_enumeration_oracle(r.points, c.allow_repeated_segments);
    return std::pair{close(q.theta, r.theta), describe(r.theta, q.theta)};
  });
  return o;
}

inline Outcome run_degeneracy(const RunConfig& c) {
  const auto g = io::parse_graph_file(c.input);
  if (g.kind != io::GraphKind::Undirected) throw io::ParseError(c.input, 1, "degeneracy needs an undirected graph");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.edges.size());
  for (const auto& e : g.edges) edges.emplace_back(e.u, e.v);
  const auto r = degeneracy(SimpleGraph(g.n, edges));
  Outcome o;
  o.result = envelope(Direction::MaxMin, r.degeneracy, r.core, {{"ordering", r.ordering}, {"removal_degree", r.removal_degree}},
                      "k-core", {});
  cross_check(c, o, [&] {
    const auto q = degeneracy_oracle(g.n, edges);
    return std::pair{q.degeneracy == r.degeneracy && q.core == r.core, describe(r.degeneracy, q.degeneracy)};
  });
  return o;
}

inline json cycle_witness(const CycleResult& r) {
  json w{{"vertices", r.vertices}, {"edges", r.edges}};
  if (!r.entry_poles.empty()) {
    w["entry_poles"] = r.entry_poles;
    w["exit_poles"] = r.exit_poles;
  }
  return w;
}

inline Outcome run_cycle(const RunConfig& c) {
  const auto g = io::parse_graph_file(c.input);
  if (!c.kind.empty() && c.kind != io::to_string(g.kind))
    throw io::ParseError(c.input, 1, "file holds a " + std::string(io::to_string(g.kind)) + " graph, not " + c.kind);
  const Direction dir = c.direction;
  CycleResult r;
  std::function<std::optional<CycleResult>()> oracle;
  std::vector<std::string> diagnostics;
  switch (g.kind) {
    case io::GraphKind::Undirected: {
      auto mg = io::to_multigraph(g);
      r = bottleneck_cycle_undirected(mg, dir);
      oracle = [mg, dir] { return undirected_cycle_oracle(mg, dir); };
      break;
    }
    case io::GraphKind::Directed: {
      auto dg = io::to_digraph(g);
      DirectedDriverStats stats;
      r = bottleneck_cycle_directed(dg, dir, &stats);
      diagnostics.push_back("refinement rounds: " + std::to_string(stats.rounds));
      oracle = [dg, dir] { return directed_cycle_oracle(dg, dir); };
      break;
    }
    case io::GraphKind::Mixed: {
      auto mg = io::to_mixed(g);
      r = bottleneck_cycle_mixed(mg, dir);
      oracle = [mg, dir] { return mixed_cycle_oracle(mg, dir); };
      break;
    }
    case io::GraphKind::Polar: {
      auto pg = io::to_polar(g);
      r = bottleneck_regular_cycle(pg, dir);
      oracle = [pg, dir] { return regular_cycle_oracle(pg, dir); };
      break;
    }
  }
  diagnostics.insert(diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
  Outcome o;
  o.result = envelope(dir, number(r.value), r.edges, cycle_witness(r), io::to_string(g.kind), diagnostics);
  cross_check(c, o, [&] {
    const auto q = oracle();
    if (!q) return std::pair{false, std::string("oracle found no cycle")};
    return std::pair{q->value == r.value, "solver " + r.value.to_string() + ", oracle " + q->value.to_string()};
  });
  return o;
}

/// Seeded random instance in the input format of the matching command.
inline std::string generate(const RunConfig& c) {
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto pick = [&](int hi) { return std::uniform_int_distribution<int>(0, hi - 1)(rng); };
  auto weight = [&] { return Quality::finite(std::round(unit(rng) * 1000.0) / 10.0); };
  const int n = c.gen_n, m = c.gen_m;
  if (n < 1 || m < 0) throw UsageError("gen: need n >= 1 and m >= 0");
  std::ostringstream os;
  if (c.kind == "points2" || c.kind == "points3") {
    io::PointSet p;
    p.dimension = c.kind == "points2" ? 2 : 3;
    for (int i = 0; i < n; ++i) {
      if (p.dimension == 2) {
        p.points2.push_back({unit(rng), unit(rng)});
      } else {
        p.points3.push_back({unit(rng), unit(rng), unit(rng)});
      }
    }
    io::write_points(os, p);
    return os.str();
  }
  io::GraphFile g;
  g.n = n;
  if (c.kind == "simple") {
    // Undirected, no loops or parallel edges: input for degeneracy.
    const long long pairs = static_cast<long long>(n) * (n - 1) / 2;
    if (m > pairs) throw UsageError("gen: too many edges for a simple graph");
    std::set<std::pair<int, int>> seen;
    while (static_cast<int>(g.edges.size()) < m) {
      int u = pick(n), v = pick(n);
      if (u == v) continue;
      if (u > v) std::swap(u, v);
      if (seen.insert({u, v}).second) g.edges.push_back({u, v, Quality::finite(1.0)});
    }
  } else if (c.kind == "undirected" || c.kind == "directed") {
    g.kind = c.kind == "directed" ? io::GraphKind::Directed : io::GraphKind::Undirected;
    for (int i = 0; i < m; ++i) g.edges.push_back({pick(n), pick(n), weight()});
  } else if (c.kind == "mixed") {
    g.kind = io::GraphKind::Mixed;
    while (static_cast<int>(g.mixed.size()) < m) {
      MixedEdge e{pick(n), pick(n), weight(), unit(rng) < 0.5};
      if (!e.directed && e.u == e.v) continue;
      g.mixed.push_back(e);
    }
  } else if (c.kind == "polar") {
    g.kind = io::GraphKind::Polar;
    if (n < 2 && m > 0) throw UsageError("gen: polar edges need two vertices");
    while (static_cast<int>(g.polar.size()) < m) {
      PolarEdge e{{pick(n), pick(2)}, {pick(n), pick(2)}, weight()};
      if (e.a.vertex != e.b.vertex) g.polar.push_back(e);
    }
  } else {
    throw UsageError("gen: unknown kind '" + c.kind + "' (points2, points3, simple, undirected, directed, mixed, polar)");
  }
  io::write_graph(os, g);
  return os.str();
}

/// `degrees` converts the value for display; only angles are converted.
inline std::string text_summary(const json& r, bool degrees) {
  std::ostringstream os;
  os.precision(12);
  os << "objective: " << r["objective"].get<std::string>() << '\n' << "mode: " << r["mode"].get<std::string>() << '\n';
  const auto& v = r["value"];
  if (v.is_number() && degrees) {
    os << "value: " << v.get<double>() * 180.0 / kPi << " deg\n";
  } else {
    os << "value: " << v.dump() << '\n';
  }
  os << "elements:";
  for (const auto& e : r["elements"]) os << ' ' << e.dump();
  os << '\n';
  for (const auto& d : r["diagnostics"]) os << "note: " << d.get<std::string>() << '\n';
  return os.str();
}

inline void write_to(const std::string& path, std::ostream& fallback, const std::string& body) {
  if (path.empty()) {
    fallback << body;
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << body;
}

}  // namespace detail

/// Runs one command. The JSON result goes to `config.output` (or `out`);
/// with an svg or obj format the figure goes there instead and the JSON to
/// `out`. Returns the process exit code; messages go to `err`.
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto& cmd = config.command;
    if (config.format == Format::Svg && cmd != "polygon2d") throw UsageError("--format svg is only available for polygon2d");
    if (config.format == Format::Obj && cmd != "polyhedron3d")
      throw UsageError("--format obj is only available for polyhedron3d");
    if (cmd != "cycle" && config.direction != Direction::MaxMin) throw UsageError("--objective applies to cycle only");
    if (cmd == "gen") {
      detail::write_to(config.output, out, detail::generate(config));
      return kOk;
    }
    detail::Outcome o;
    if (cmd == "polygon2d") {
      o = detail::run_polygon(config);
    } else if (cmd == "polyhedron3d") {
      o = detail::run_polyhedron(config);
    } else if (cmd == "curve3d") {
      o = detail::run_curve(config);
    } else if (cmd == "degeneracy") {
      o = detail::run_degeneracy(config);
    } else if (cmd == "cycle") {
      o = detail::run_cycle(config);
    } else {
      throw UsageError("unknown command '" + cmd + "'");
    }
    const bool angular = cmd != "degeneracy" && cmd != "cycle";
    if (config.degrees && angular)
      o.result["diagnostics"].push_back("value in degrees: " + std::to_string(o.result["value"].get<double>() * 180.0 / kPi));
    std::string body = config.format == Format::Text ? detail::text_summary(o.result, config.degrees && angular)
                                                     : o.result.dump(2) + "\n";
    if (!o.figure.empty()) {
      detail::write_to(config.output, out, o.figure);
      if (!config.output.empty()) out << body;
    } else {
      detail::write_to(config.output, out, body);
    }
    if (o.agreement) err << "agreement: " << (*o.agreement ? "true" : "false") << '\n';
    if (o.agreement && !*o.agreement) return kInternal;
    return kOk;
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace maxmin::cli
