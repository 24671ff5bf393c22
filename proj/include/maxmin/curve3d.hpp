#pragma once

// Max-min-angle closed polygonal curves through a 3D point set.
//
// The polar graph G(S) has one vertex per segment {i, j} (pole 0 at point i,
// pole 1 at point j, i < j) and one edge per chain a-b-c with a != c,
// attached at pole b of both segments and weighted by the angle at b.
// Curves that may repeat segments are directed cycles of its double cover;
// curves that repeat points only are its regular cycles.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "maxmin/errors.hpp"
#include "maxmin/geometry.hpp"
#include "maxmin/graph_cycles.hpp"
#include "maxmin/polar_cycles.hpp"
#include "maxmin/quality.hpp"

namespace maxmin {

/// Angle at b between rays b->a and b->c, in [0, pi].
inline double angle_at(const Point3& a, const Point3& b, const Point3& c) {
  if (a == b || c == b) throw InvalidInput("angle_at: coincident points");
  return vector_angle(a - b, c - b);
}

/// Vertex id of segment {i, j} among n points.
inline int segment_id(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  if (i == j || i < 0 || j >= n) throw InvalidInput("segment_id: invalid segment");
  // Segments (0,1..n-1), (1,2..n-1), ... in order.
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

struct SegmentGraph {
  PolarGraph graph;
  std::vector<std::pair<int, int>> segments;  // per vertex: (i, j), i < j
  std::vector<std::array<int, 3>> chains;     // per edge: (a, b, c), a < c
};

/// Refuses larger inputs unless explicitly allowed; G(S) has 3 * C(n, 3) edges.
inline constexpr std::size_t kMaxCurvePoints = 400;

/// G(S) for distinct points.
inline SegmentGraph build_polar_graph(const std::vector<Point3>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 3) throw InvalidInput("build_polar_graph: need at least 3 points");
  SegmentGraph sg;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) sg.segments.emplace_back(i, j);
  std::vector<PolarEdge> edges;
  const std::size_t nn = static_cast<std::size_t>(n);
  edges.reserve(nn * (nn - 1) * (nn - 2) / 2);
  sg.chains.reserve(edges.capacity());
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) {
      if (a == b) continue;
      for (int c = a + 1; c < n; ++c) {
        if (c == b) continue;
        const PolarEndpoint ea{segment_id(a, b, n), b < a ? 0 : 1};
        const PolarEndpoint ec{segment_id(b, c, n), b < c ? 0 : 1};
        edges.push_back({ea, ec, Quality::finite(angle_at(points[static_cast<std::size_t>(a)],
                                                          points[static_cast<std::size_t>(b)],
                                                          points[static_cast<std::size_t>(c)]))});
        sg.chains.push_back({a, b, c});
      }
    }
  sg.graph = PolarGraph(static_cast<int>(sg.segments.size()), std::move(edges));
  return sg;
}

enum class CurveMode { RepeatedSegmentsAllowed, RepeatedPointsOnly };

inline const char* to_string(CurveMode m) {
  return m == CurveMode::RepeatedSegmentsAllowed ? "repeated-segments-allowed" : "repeated-points-only";
}

struct CurveOptions {
  bool allow_repeated_segments = false;
  /// Lift the kMaxCurvePoints guard.
  bool allow_large = false;
  PolarEngine engine = PolarEngine::Auto;
};

struct CurveResult {
  double theta = 0.0;
  std::vector<int> curve;         // cyclic point sequence, indices into `points`
  std::vector<double> turn_angles;  // angle at curve[i]
  CurveMode mode = CurveMode::RepeatedPointsOnly;
  std::vector<Point3> points;     // deduplicated input
  std::vector<int> original_index;
  std::vector<int> input_to_point;
  std::vector<std::string> diagnostics;
};

/// Angles at every point of a cyclic point sequence.
inline std::vector<double> curve_turn_angles(const std::vector<Point3>& points, const std::vector<int>& curve) {
  const std::size_t k = curve.size();
  std::vector<double> out(k);
  for (std::size_t i = 0; i < k; ++i)
    out[i] = angle_at(points[static_cast<std::size_t>(curve[(i + k - 1) % k])], points[static_cast<std::size_t>(curve[i])],
                      points[static_cast<std::size_t>(curve[(i + 1) % k])]);
  return out;
}

/// Closed curve through the points maximizing its sharpest angle, either
/// allowing segments to repeat or only points.
inline CurveResult maxmin_angle_closed_curve(const std::vector<Point3>& input, const CurveOptions& options = {}) {
  CurveResult out;
  out.mode = options.allow_repeated_segments ? CurveMode::RepeatedSegmentsAllowed : CurveMode::RepeatedPointsOnly;
  auto dedup = deduplicate(input);
  if (dedup.duplicates > 0)
    out.diagnostics.push_back("removed " + std::to_string(dedup.duplicates) + " duplicate point(s)");
  out.points = dedup.points;
  out.original_index = dedup.original;
  out.input_to_point = dedup.to_unique;
  if (out.points.size() < 3) throw NoCurve("fewer than 3 distinct points");
  if (out.points.size() > kMaxCurvePoints && !options.allow_large)
    throw InvalidInput("curve3d: more than " + std::to_string(kMaxCurvePoints) + " points; pass the large-input override");

  const SegmentGraph sg = build_polar_graph(out.points);
  std::vector<int> middles;
  try {
    if (options.allow_repeated_segments) {
      const DoubleCover dc = double_cover(sg.graph);
      const auto cyc = bottleneck_cycle_directed(dc.digraph);
      for (int arc : cyc.edges) middles.push_back(sg.chains[static_cast<std::size_t>(dc.source_edge[static_cast<std::size_t>(arc)])][1]);
    } else {
      const auto cyc = bottleneck_regular_cycle(sg.graph, Direction::MaxMin, options.engine);
      for (const auto& d : cyc.diagnostics) out.diagnostics.push_back(d);
      for (int id : cyc.edges) middles.push_back(sg.chains[static_cast<std::size_t>(id)][1]);
    }
  } catch (const NoCycle& e) {
    throw NoCurve(e.what());
  }
  out.curve = std::move(middles);
  out.turn_angles = curve_turn_angles(out.points, out.curve);
  out.theta = kPi;
  for (double a : out.turn_angles) out.theta = std::min(out.theta, a);
  return out;
}

}  // namespace maxmin
