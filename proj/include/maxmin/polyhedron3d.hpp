#pragma once

// Max-min-solid-angle convex polyhedron through a 3D point set.
//
// Quality of a surviving point: its solid angle if it is a hull vertex,
// 4*pi strictly inside, 2*pi on the relative interior of a facet, and twice
// the interior dihedral angle on the relative interior of an edge. A set
// with zero hull volume gives every point quality 0.

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
#include "maxmin/hull3.hpp"
#include "maxmin/quality.hpp"

namespace maxmin {

/// Relative distance under which a point counts as lying on a facet plane.
inline constexpr double kPlaneTolerance = 1e-9;

/// Convex hull of a shrinking 3D point set, rebuilt after every deletion.
class RebuildHull3 {
 public:
  explicit RebuildHull3(std::shared_ptr<const std::vector<Point3>> points)
      : points_(std::move(points)), alive_(points_->size(), 1), alive_count_(points_->size()) {
    rebuild();
  }

  std::size_t point_count() const { return points_->size(); }
  std::span<const Point3> points() const { return *points_; }
  bool alive(int x) const { return alive_[static_cast<std::size_t>(x)] != 0; }
  std::size_t alive_count() const { return alive_count_; }

  void remove(int x) {
    if (!alive(x)) throw InvalidInput("RebuildHull3::remove: point already removed");
    alive_[static_cast<std::size_t>(x)] = 0;
    --alive_count_;
    rebuild();
  }

  std::vector<int> alive_points() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < alive_.size(); ++i)
      if (alive_[i]) out.push_back(static_cast<int>(i));
    return out;
  }

  const Hull3& hull() const { return hull_; }
  bool degenerate() const { return degenerate_; }
  bool is_vertex(int x) const { return !degenerate_ && hull_.is_vertex(x); }
  /// Diameter of the alive bounding box; scale for plane tolerances.
  double scale() const { return scale_; }

 private:
  void rebuild() {
    auto live = alive_points();
    hull_ = Hull3{};
    degenerate_ = true;
    scale_ = live.empty() ? 1.0 : detail::extent(*points_, live);
    if (live.size() < 4) return;
    try {
      hull_ = convex_hull_3d(*points_, live);
      degenerate_ = false;
    } catch (const DegenerateHull&) {
      hull_ = Hull3{};
    }
  }

  std::shared_ptr<const std::vector<Point3>> points_;
  std::vector<char> alive_;
  std::size_t alive_count_;
  Hull3 hull_;
  bool degenerate_ = true;
  double scale_ = 1.0;
};

/// Interior dihedral angle between two facets with outward normals n1, n2.
inline double interior_dihedral(const Point3& n1, const Point3& n2) {
  return kPi - vector_angle(n1, n2);
}

/// Quality of a surviving point `x` given the current hull state.
template <class Hull>
Quality point_quality_3d(int x, const Hull& state) {
  if (!state.alive(x)) throw InvalidInput("point_quality_3d: point is not alive");
  if (state.degenerate()) return Quality::finite(0.0);
  const auto pts = state.points();
  const Hull3& h = state.hull();
  if (h.is_vertex(x)) return Quality::finite(vertex_solid_angle(pts, h, x));

  // Planes through x; x is inside the hull, so these are the facets holding x.
  std::vector<Point3> normals;
  const double tol = kPlaneTolerance * state.scale();
  for (const auto& f : h.faces) {
    const Point3 n = detail::face_normal(pts, f);
    const double len = norm(n);
    if (len == 0.0) continue;
    if (std::abs(dot(n, pts[x] - pts[f[0]])) / len <= tol) normals.push_back((1.0 / len) * n);
  }
  if (normals.empty()) return Quality::finite(4.0 * kPi);
  double widest = 0.0;
  for (std::size_t i = 0; i < normals.size(); ++i)
    for (std::size_t j = i + 1; j < normals.size(); ++j) widest = std::max(widest, vector_angle(normals[i], normals[j]));
  if (widest <= 1e-9) return Quality::finite(2.0 * kPi);
  return Quality::finite(2.0 * (kPi - widest));
}

/// Bottleneck instance over 3D points with hull solid-angle quality.
class PolyhedronInstance {
 public:
  explicit PolyhedronInstance(std::vector<Point3> points)
      : hull_(std::make_shared<const std::vector<Point3>>(std::move(points))) {}
  int size() const { return static_cast<int>(hull_.point_count()); }
  Quality quality(int x) const { return point_quality_3d(x, hull_); }
  void remove(int x) { hull_.remove(x); }

 private:
  RebuildHull3 hull_;
};

/// Largest distance by which any of `subset` lies outside a facet plane of
/// `hull`, relative to the subset's extent (0 when all are inside).
inline double max_hull_violation(std::span<const Point3> points, const Hull3& hull, std::span<const int> subset) {
  if (subset.empty()) return 0.0;
  const double scale = detail::extent(points, subset);
  double worst = 0.0;
  for (const auto& f : hull.faces) {
    const Point3 n = detail::face_normal(points, f);
    const double len = norm(n);
    if (len == 0.0) continue;
    for (int p : subset) worst = std::max(worst, dot(n, points[p] - points[f[0]]) / len / scale);
  }
  return worst;
}

struct PolyhedronResult {
  double theta = 0.0;                  // steradians
  Hull3 hull;                          // hull of the bottleneck subset
  std::vector<int> bottleneck_subset;  // ascending, indices into `points`
  GreedyTrace trace;
  std::vector<Point3> points;          // deduplicated input
  std::vector<int> original_index;
  std::vector<int> input_to_point;
  std::vector<std::string> diagnostics;
};

namespace detail {

template <class Hull>
std::pair<double, int> sharpest_solid_vertex(const Hull& state) {
  const Hull3& h = state.hull();
  std::vector<double> angle(h.vertices.size());
  double sharpest = 4.0 * kPi;
  for (std::size_t i = 0; i < h.vertices.size(); ++i) {
    angle[i] = vertex_solid_angle(state.points(), h, h.vertices[i]);
    sharpest = std::min(sharpest, angle[i]);
  }
  int arg = -1;
  for (std::size_t i = 0; i < h.vertices.size(); ++i)
    if (angle[i] <= sharpest + kAngleTieTolerance && (arg < 0 || h.vertices[i] < arg)) arg = h.vertices[i];
  return {sharpest, arg};
}

}  // namespace detail

/// Greedily deletes the hull vertex with the sharpest solid angle while the
/// hull has volume, remembering the best sharpest angle and the deletion
/// count that preceded it.
template <class Hull = RebuildHull3>
PolyhedronResult maxmin_solid_angle_polyhedron(const std::vector<Point3>& input) {
  PolyhedronResult out;
  auto dedup = deduplicate(input);
  if (dedup.duplicates > 0)
    out.diagnostics.push_back("removed " + std::to_string(dedup.duplicates) + " duplicate point(s)");
  out.points = dedup.points;
  out.original_index = dedup.original;
  out.input_to_point = dedup.to_unique;
  if (out.points.size() < 4) throw NoPolyhedron("fewer than 4 distinct points");

  Hull state(std::make_shared<const std::vector<Point3>>(out.points));
  if (state.degenerate()) throw NoPolyhedron("all points are coplanar");

  double theta = detail::sharpest_solid_vertex(state).first;
  std::size_t best_prefix = 0;
  while (!state.degenerate()) {
    auto [angle, v] = detail::sharpest_solid_vertex(state);
    out.trace.removals.push_back({v, Quality::finite(angle), Quality::finite(theta)});
    state.remove(v);
    if (state.degenerate()) break;
    const double next = detail::sharpest_solid_vertex(state).first;
    if (next > theta + kAngleTieTolerance) {
      theta = next;
      best_prefix = out.trace.removals.size();
    }
  }
  out.theta = theta;
  out.trace.best_value = Quality::finite(theta);
  out.trace.best_prefix = best_prefix;

  std::vector<char> keep(out.points.size(), 1);
  for (std::size_t i = 0; i < best_prefix; ++i) keep[static_cast<std::size_t>(out.trace.removals[i].element)] = 0;
  for (std::size_t i = 0; i < keep.size(); ++i)
    if (keep[i]) out.bottleneck_subset.push_back(static_cast<int>(i));
  out.hull = convex_hull_3d(out.points, out.bottleneck_subset);
  return out;
}

}  // namespace maxmin
