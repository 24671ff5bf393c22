#pragma once

// Max-min-angle polygon through a planar point set.
//
// Quality of a point in a surviving set: its interior angle if it is a
// vertex of the convex hull, pi if it lies on the hull boundary without
// being a vertex, 2*pi if it is strictly inside. A set whose hull has fewer
// than three vertices has no polygon and every point gets quality 0.

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "maxmin/bottleneck.hpp"
#include "maxmin/errors.hpp"
#include "maxmin/geometry.hpp"
#include "maxmin/quality.hpp"

namespace maxmin {

namespace detail {

/// Monotone chain over indices already sorted by (x, y, index). Collinear
/// boundary points are dropped. Output is counterclockwise starting at the
/// lowest point in that order.
inline std::vector<int> monotone_chain(std::span<const Point2> pts, std::span<const int> sorted) {
  std::vector<int> h;
  if (sorted.empty()) return h;
  if (sorted.size() == 1) return {sorted[0]};
  h.reserve(2 * sorted.size());
  for (int i : sorted) {
    while (h.size() >= 2 && orient(pts[h[h.size() - 2]], pts[h.back()], pts[i]) <= 0) h.pop_back();
    h.push_back(i);
  }
  const std::size_t lower = h.size() + 1;
  for (auto it = sorted.rbegin() + 1; it != sorted.rend(); ++it) {
    int i = *it;
    while (h.size() >= lower && orient(pts[h[h.size() - 2]], pts[h.back()], pts[i]) <= 0) h.pop_back();
    h.push_back(i);
  }
  h.pop_back();  // first point repeated
  if (h.size() == 2 && pts[h[0]] == pts[h[1]]) h.pop_back();
  return h;
}

inline std::vector<int> sorted_indices(std::span<const Point2> pts) {
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
    if (pts[a].y != pts[b].y) return pts[a].y < pts[b].y;
    return a < b;
  });
  return order;
}

}  // namespace detail

/// Counterclockwise convex hull vertex indices. Points on hull edges that
/// are not corners are excluded.
inline std::vector<int> convex_hull_2d(std::span<const Point2> points) {
  if (points.empty()) throw InvalidInput("convex_hull_2d: no points");
  auto order = detail::sorted_indices(points);
  return detail::monotone_chain(points, order);
}

/// Interior angle at position `i` of a counterclockwise hull cycle.
inline double interior_angle(std::span<const Point2> points, std::span<const int> hull, std::size_t i) {
  if (hull.size() < 3) throw InvalidState("interior_angle: hull has fewer than 3 vertices");
  const std::size_t k = hull.size();
  const Point2& v = points[hull[i]];
  const Point2& prev = points[hull[(i + k - 1) % k]];
  const Point2& next = points[hull[(i + 1) % k]];
  if (prev == v || next == v) throw InvalidState("interior_angle: repeated neighbor coordinates");
  return vector_angle(prev - v, next - v);
}

/// Convex hull of a shrinking point set. Points are sorted once; every
/// deletion rebuilds the hull of the survivors with one linear monotone-chain
/// pass.
class RebuildHull2 {
 public:
  explicit RebuildHull2(std::shared_ptr<const std::vector<Point2>> points)
      : points_(std::move(points)), alive_(points_->size(), 1), alive_count_(points_->size()),
        order_(detail::sorted_indices(*points_)) {
    rebuild();
  }

  std::size_t point_count() const { return points_->size(); }
  std::span<const Point2> points() const { return *points_; }
  bool alive(int x) const { return alive_[x] != 0; }
  std::size_t alive_count() const { return alive_count_; }

  void remove(int x) {
    if (!alive_[x]) throw InvalidInput("RebuildHull2::remove: point already removed");
    alive_[x] = 0;
    --alive_count_;
    rebuild();
  }

  /// Counterclockwise hull vertices of the survivors.
  const std::vector<int>& vertices() const { return hull_; }
  bool degenerate() const { return hull_.size() < 3; }
  bool is_vertex(int x) const { return position_[x] >= 0; }
  /// Position of x in `vertices()`, or -1.
  int position(int x) const { return position_[x]; }

 private:
  void rebuild() {
    std::vector<int> live;
    live.reserve(alive_count_);
    for (int i : order_)
      if (alive_[i]) live.push_back(i);
    hull_ = detail::monotone_chain(*points_, live);
    position_.assign(points_->size(), -1);
    for (std::size_t i = 0; i < hull_.size(); ++i) position_[hull_[i]] = static_cast<int>(i);
  }

  std::shared_ptr<const std::vector<Point2>> points_;
  std::vector<char> alive_;
  std::size_t alive_count_;
  std::vector<int> order_;
  std::vector<int> hull_;
  std::vector<int> position_;
};

/// Quality of a surviving point `x` given the current hull state.
template <class Hull>
Quality point_quality_2d(int x, const Hull& hull) {
  if (!hull.alive(x)) throw InvalidInput("point_quality_2d: point is not alive");
  if (hull.degenerate()) return Quality::finite(0.0);
  const auto pts = hull.points();
  const auto& h = hull.vertices();
  if (hull.is_vertex(x)) return Quality::finite(interior_angle(pts, h, static_cast<std::size_t>(hull.position(x))));
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Point2& a = pts[h[i]];
    const Point2& b = pts[h[(i + 1) % h.size()]];
    if (orient(a, b, pts[x]) == 0.0) return Quality::finite(kPi);
  }
  return Quality::finite(2.0 * kPi);
}

/// Bottleneck instance over planar points with hull-angle quality.
class PolygonInstance {
 public:
  explicit PolygonInstance(std::vector<Point2> points)
      : hull_(std::make_shared<const std::vector<Point2>>(std::move(points))) {}
  int size() const { return static_cast<int>(hull_.point_count()); }
  Quality quality(int x) const { return point_quality_2d(x, hull_); }
  void remove(int x) { hull_.remove(x); }

 private:
  RebuildHull2 hull_;
};

struct PolygonOptions {
  /// Also list collinear boundary points (quality pi) on the polygon.
  bool include_straight = false;
};

struct PolygonResult {
  double theta = 0.0;
  std::vector<int> polygon;            // counterclockwise, indices into `points`
  std::vector<int> bottleneck_subset;  // ascending
  GreedyTrace trace;                   // removal order with angle at removal
  std::vector<Point2> points;          // deduplicated input
  std::vector<int> original_index;     // points[i] == input[original_index[i]]
  std::vector<int> input_to_point;     // input[j] == points[input_to_point[j]]
  std::vector<std::string> diagnostics;
};

namespace detail {

template <class Hull>
std::pair<double, int> sharpest_vertex(const Hull& hull) {
  const auto& h = hull.vertices();
  std::vector<double> angle(h.size());
  double sharpest = 2.0 * kPi;
  for (std::size_t i = 0; i < h.size(); ++i) {
    angle[i] = interior_angle(hull.points(), h, i);
    sharpest = std::min(sharpest, angle[i]);
  }
  // Lowest index among vertices tied with the sharpest angle.
  int arg = -1;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (angle[i] <= sharpest + kAngleTieTolerance && (arg < 0 || h[i] < arg)) arg = h[i];
  return {sharpest, arg};
}

}  // namespace detail

/// Counterclockwise polygon through the hull of `subset`, optionally
/// including collinear boundary points.
inline std::vector<int> hull_polygon(std::span<const Point2> pts, const std::vector<int>& subset,
                                     bool include_straight) {
  std::vector<Point2> sub;
  for (int i : subset) sub.push_back(pts[i]);
  auto local = convex_hull_2d(sub);
  std::vector<int> poly;
  for (int i : local) poly.push_back(subset[i]);
  if (!include_straight || poly.size() < 3) return poly;
  std::vector<int> with;
  for (std::size_t e = 0; e < poly.size(); ++e) {
    const Point2 a = pts[poly[e]];
    const Point2 b = pts[poly[(e + 1) % poly.size()]];
    with.push_back(poly[e]);
    std::vector<std::pair<double, int>> on;
    for (int i : subset) {
      if (std::find(poly.begin(), poly.end(), i) != poly.end()) continue;
      const Point2 p = pts[i];
      if (orient(a, b, p) == 0.0 && dot(p - a, b - a) > 0 && dot(p - b, a - b) > 0)
        on.emplace_back(dot(p - a, b - a), i);
    }
    std::sort(on.begin(), on.end());
    for (auto& [t, i] : on) with.push_back(i);
  }
  return with;
}

/// Greedily deletes the sharpest hull vertex, remembering the best sharpest
/// angle seen and how many deletions preceded it. The hull of the survivors
/// at that moment is a convex polygon maximizing the minimum angle over all
/// closed polygonal curves through the points.
template <class Hull = RebuildHull2>
PolygonResult maxmin_angle_polygon(const std::vector<Point2>& input, const PolygonOptions& options = {}) {
  PolygonResult out;
  auto dedup = deduplicate(input);
  if (dedup.duplicates > 0)
    out.diagnostics.push_back("removed " + std::to_string(dedup.duplicates) + " duplicate point(s)");
  out.points = dedup.points;
  out.original_index = dedup.original;
  out.input_to_point = dedup.to_unique;
  if (out.points.size() < 3) throw NoPolygon("fewer than 3 distinct points");

  auto shared = std::make_shared<const std::vector<Point2>>(out.points);
  Hull hull(shared);
  if (hull.degenerate()) throw NoPolygon("all points are collinear");

  double theta = detail::sharpest_vertex(hull).first;
  std::size_t best_prefix = 0;
  out.trace.best_value = Quality::finite(theta);
  while (!hull.degenerate()) {
    auto [angle, v] = detail::sharpest_vertex(hull);
    out.trace.removals.push_back({v, Quality::finite(angle), Quality::finite(theta)});
    hull.remove(v);
    if (hull.degenerate()) break;
    const double next = detail::sharpest_vertex(hull).first;
    if (next > theta + kAngleTieTolerance) {
      theta = next;
      best_prefix = out.trace.removals.size();
    }
  }
  out.theta = theta;
  out.trace.best_value = Quality::finite(theta);
  out.trace.best_prefix = best_prefix;

  std::vector<char> keep(out.points.size(), 1);
  for (std::size_t i = 0; i < best_prefix; ++i) keep[out.trace.removals[i].element] = 0;
  for (std::size_t i = 0; i < keep.size(); ++i)
    if (keep[i]) out.bottleneck_subset.push_back(static_cast<int>(i));
  out.polygon = hull_polygon(out.points, out.bottleneck_subset, options.include_straight);
  return out;
}

}  // namespace maxmin
