#pragma once

// Plain-text instance formats and figure emitters.
//
// Points: one point per line, 2 or 3 whitespace-separated decimals, every
// line the same width. Graphs: a header `directed|undirected|mixed|polar n m`
// followed by m edge lines. '#' starts a comment anywhere on a line; blank
// lines are ignored. Edge weights are optional and default to 1; `inf` and
// `-inf` are accepted.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "maxmin/errors.hpp"
#include "maxmin/geometry.hpp"
#include "maxmin/graph_types.hpp"
#include "maxmin/hull3.hpp"
#include "maxmin/quality.hpp"

namespace maxmin::io {

/// Malformed input; `line` is 1-based, 0 when the problem is not tied to a line.
class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : InvalidInput(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct PointSet {
  int dimension = 0;  // 2 or 3
  std::vector<Point2> points2;
  std::vector<Point3> points3;
  std::size_t size() const { return dimension == 2 ? points2.size() : points3.size(); }
};

enum class GraphKind { Undirected, Directed, Mixed, Polar };

inline const char* to_string(GraphKind k) {
  switch (k) {
    case GraphKind::Undirected: return "undirected";
    case GraphKind::Directed: return "directed";
    case GraphKind::Mixed: return "mixed";
    default: return "polar";
  }
}

/// A parsed graph file. Exactly one of `edges`, `mixed`, `polar` is filled,
/// matching `kind`; edge ids are line order.
struct GraphFile {
  GraphKind kind = GraphKind::Undirected;
  int n = 0;
  std::vector<WeightedEdge> edges;
  std::vector<MixedEdge> mixed;
  std::vector<PolarEdge> polar;
  std::size_t edge_count() const {
    return kind == GraphKind::Mixed ? mixed.size() : kind == GraphKind::Polar ? polar.size() : edges.size();
  }
};

namespace detail {

/// Splits a line into tokens after dropping any comment.
inline std::vector<std::string_view> tokens(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

struct LineReader {
  std::istream& in;
  std::string source;
  int number = 0;
  std::string text;

  /// Next line with at least one token; false at end of input.
  bool next(std::vector<std::string_view>& tok) {
    while (std::getline(in, text)) {
      ++number;
      tok = tokens(text);
      if (!tok.empty()) return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source, number, what); }
};

inline double parse_double(const LineReader& r, std::string_view s, bool allow_infinite) {
  double v = 0.0;
  std::string_view body = s;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (ec != std::errc() || ptr != body.data() + body.size() || body.empty())
    r.fail("expected a number, got '" + std::string(s) + "'");
  if (std::isnan(v) || (!allow_infinite && std::isinf(v))) r.fail("non-finite value '" + std::string(s) + "'");
  return v;
}

inline int parse_int(const LineReader& r, std::string_view s, int lo, int hi, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) r.fail(std::string("expected an integer ") + what + ", got '" + std::string(s) + "'");
  if (v < lo || v > hi)
    r.fail(std::string(what) + " " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

inline std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return in;
}

inline std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

}  // namespace detail

inline PointSet parse_points(std::istream& in, const std::string& source = "<input>") {
  detail::LineReader r{in, source, 0, {}};
  PointSet out;
  std::vector<std::string_view> tok;
  while (r.next(tok)) {
    const int width = static_cast<int>(tok.size());
    if (width != 2 && width != 3) r.fail("expected 2 or 3 coordinates, got " + std::to_string(width));
    if (out.dimension == 0) out.dimension = width;
    if (width != out.dimension)
      r.fail("expected " + std::to_string(out.dimension) + " coordinates like the first point, got " + std::to_string(width));
    double c[3] = {0, 0, 0};
    for (int i = 0; i < width; ++i) c[i] = detail::parse_double(r, tok[static_cast<std::size_t>(i)], false);
    if (width == 2) {
      out.points2.push_back({c[0], c[1]});
    } else {
      out.points3.push_back({c[0], c[1], c[2]});
    }
  }
  if (out.dimension == 0) throw ParseError(source, 0, "no points");
  return out;
}

inline PointSet parse_points_file(const std::string& path) {
  auto in = detail::open(path);
  return parse_points(in, path);
}

inline GraphFile parse_graph(std::istream& in, const std::string& source = "<input>") {
  detail::LineReader r{in, source, 0, {}};
  GraphFile g;
  std::vector<std::string_view> tok;
  if (!r.next(tok)) throw ParseError(source, 0, "empty graph file");
  if (tok.size() != 3) r.fail("header must be '<directed|undirected|mixed|polar> <n> <m>'");
  if (tok[0] == "undirected") {
    g.kind = GraphKind::Undirected;
  } else if (tok[0] == "directed") {
    g.kind = GraphKind::Directed;
  } else if (tok[0] == "mixed") {
    g.kind = GraphKind::Mixed;
  } else if (tok[0] == "polar") {
    g.kind = GraphKind::Polar;
  } else {
    r.fail("unknown graph kind '" + std::string(tok[0]) + "'");
  }
  constexpr int kMax = std::numeric_limits<int>::max();
  g.n = detail::parse_int(r, tok[1], 0, kMax, "vertex count");
  const int m = detail::parse_int(r, tok[2], 0, kMax, "edge count");
  const int hi = std::max(0, g.n - 1);
  auto vertex = [&](std::string_view s) {
    if (g.n == 0) r.fail("edge in a graph with no vertices");
    return detail::parse_int(r, s, 0, hi, "vertex");
  };
  // Optional trailing weight at position `at`.
  auto weight = [&](std::size_t at) {
    if (tok.size() == at) return Quality::finite(1.0);
    if (tok.size() != at + 1) r.fail("too many fields");
    return Quality::from_double(detail::parse_double(r, tok[at], true));
  };
  for (int i = 0; i < m; ++i) {
    if (!r.next(tok)) throw ParseError(source, r.number, "expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    switch (g.kind) {
      case GraphKind::Undirected:
      case GraphKind::Directed: {
        if (tok.size() < 2) r.fail("edge line must be 'u v [w]'");
        g.edges.push_back({vertex(tok[0]), vertex(tok[1]), weight(2)});
        break;
      }
      case GraphKind::Mixed: {
        if (tok.size() < 3) r.fail("mixed edge line must be 'u v <--|-> [w]'");
        bool directed = false;
        if (tok[2] == "->") {
          directed = true;
        } else if (tok[2] != "--") {
          r.fail("mixed edge marker must be '--' or '->', got '" + std::string(tok[2]) + "'");
        }
        const MixedEdge e{vertex(tok[0]), vertex(tok[1]), weight(3), directed};
        if (!directed && e.u == e.v) r.fail("undirected self-loop");
        g.mixed.push_back(e);
        break;
      }
      case GraphKind::Polar: {
        if (tok.size() < 4) r.fail("polar edge line must be 'u pu v pv [w]'");
        const PolarEdge e{{vertex(tok[0]), detail::parse_int(r, tok[1], 0, 1, "pole")},
                          {vertex(tok[2]), detail::parse_int(r, tok[3], 0, 1, "pole")},
                          weight(4)};
        if (e.a.vertex == e.b.vertex) r.fail("polar self-loop");
        g.polar.push_back(e);
        break;
      }
    }
  }
  if (r.next(tok)) r.fail("unexpected content after " + std::to_string(m) + " edges");
  return g;
}

inline GraphFile parse_graph_file(const std::string& path) {
  auto in = detail::open(path);
  return parse_graph(in, path);
}

inline void write_points(std::ostream& out, const PointSet& p) {
  if (p.dimension == 2) {
    for (const auto& q : p.points2) out << detail::format_double(q.x) << ' ' << detail::format_double(q.y) << '\n';
  } else {
    for (const auto& q : p.points3)
      out << detail::format_double(q.x) << ' ' << detail::format_double(q.y) << ' ' << detail::format_double(q.z) << '\n';
  }
}

inline void write_graph(std::ostream& out, const GraphFile& g) {
  out << to_string(g.kind) << ' ' << g.n << ' ' << g.edge_count() << '\n';
  auto w = [](Quality q) { return detail::format_double(q.to_double()); };
  switch (g.kind) {
    case GraphKind::Undirected:
    case GraphKind::Directed:
      for (const auto& e : g.edges) out << e.u << ' ' << e.v << ' ' << w(e.weight) << '\n';
      break;
    case GraphKind::Mixed:
      for (const auto& e : g.mixed) out << e.u << ' ' << e.v << (e.directed ? " -> " : " -- ") << w(e.weight) << '\n';
      break;
    case GraphKind::Polar:
      for (const auto& e : g.polar)
        out << e.a.vertex << ' ' << e.a.pole << ' ' << e.b.vertex << ' ' << e.b.pole << ' ' << w(e.weight) << '\n';
      break;
  }
}

inline WeightedMultigraph to_multigraph(const GraphFile& g) { return WeightedMultigraph(g.n, g.edges); }
inline WeightedDigraph to_digraph(const GraphFile& g) { return WeightedDigraph(g.n, g.edges); }
inline MixedGraph to_mixed(const GraphFile& g) { return MixedGraph(g.n, g.mixed); }
inline PolarGraph to_polar(const GraphFile& g) { return PolarGraph(g.n, g.polar); }

/// All points as dots, the polygon (indices into `points`, in order) as the
/// single highlighted closed path. The y axis points up.
inline std::string svg_polygon(const std::vector<Point2>& points, const std::vector<int>& polygon, double theta) {
  double lo_x = points.front().x, hi_x = lo_x, lo_y = points.front().y, hi_y = lo_y;
  for (const auto& p : points) {
    lo_x = std::min(lo_x, p.x), hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y), hi_y = std::max(hi_y, p.y);
  }
  constexpr double kSize = 512.0, kMargin = 16.0;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-300});
  const double s = (kSize - 2 * kMargin) / span;
  auto X = [&](double x) { return kMargin + (x - lo_x) * s; };
  auto Y = [&](double y) { return kSize - kMargin - (y - lo_y) * s; };
  std::ostringstream os;
  os << std::setprecision(10);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize << "\" viewBox=\"0 0 "
     << kSize << ' ' << kSize << "\">\n"
     << "  <title>max-min angle convex polygon, theta = " << theta << " rad</title>\n"
     << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "  <polygon class=\"optimal\" fill=\"rgb(255,235,200)\" stroke=\"rgb(200,60,0)\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const auto& p = points[static_cast<std::size_t>(polygon[i])];
    os << (i ? " " : "") << X(p.x) << ',' << Y(p.y);
  }
  os << "\"/>\n  <g class=\"points\" fill=\"black\">\n";
  for (std::size_t i = 0; i < points.size(); ++i)
    os << "    <circle class=\"point\" data-index=\"" << i << "\" cx=\"" << X(points[i].x) << "\" cy=\"" << Y(points[i].y)
       << "\" r=\"3\"/>\n";
  os << "  </g>\n</svg>\n";
  return os.str();
}

/// Wavefront OBJ of a hull: its vertices (in ascending point order) and its
/// outward-oriented triangles.
inline std::string obj_hull(const std::vector<Point3>& points, const Hull3& hull) {
  std::ostringstream os;
  os << "# convex hull: " << hull.vertices.size() << " vertices, " << hull.faces.size() << " faces\n";
  std::vector<int> local(points.size(), 0);
  int next = 1;
  for (int v : hull.vertices) {
    const auto& p = points[static_cast<std::size_t>(v)];
    os << "v " << detail::format_double(p.x) << ' ' << detail::format_double(p.y) << ' ' << detail::format_double(p.z) << '\n';
    local[static_cast<std::size_t>(v)] = next++;
  }
  for (const auto& f : hull.faces)
    os << "f " << local[static_cast<std::size_t>(f[0])] << ' ' << local[static_cast<std::size_t>(f[1])] << ' '
       << local[static_cast<std::size_t>(f[2])] << '\n';
  return os.str();
}

}  // namespace maxmin::io
