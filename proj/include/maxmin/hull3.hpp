#pragma once

// Explicit 3D convex hulls: incremental construction over a shuffled
// insertion order, triangulated outward-oriented facets, and per-vertex
// solid angles.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <unordered_map>
#include <vector>

#include "maxmin/errors.hpp"
#include "maxmin/geometry.hpp"

namespace maxmin {

struct Hull3 {
  /// Triangles, counterclockwise seen from outside, smallest index first.
  std::vector<std::array<int, 3>> faces;
  /// Extreme points of the input subset, ascending.
  std::vector<int> vertices;
  /// incident[p] lists faces containing point p (empty for non-vertices).
  std::vector<std::vector<int>> incident;

  bool is_vertex(int p) const {
    return p >= 0 && static_cast<std::size_t>(p) < incident.size() && !incident[p].empty();
  }
};

namespace detail {

inline std::array<int, 3> canonical_face(int a, int b, int c) {
  if (b < a && b < c) return {b, c, a};
  if (c < a && c < b) return {c, a, b};
  return {a, b, c};
}

inline Point3 face_normal(std::span<const Point3> pts, const std::array<int, 3>& f) {
  return cross(pts[f[1]] - pts[f[0]], pts[f[2]] - pts[f[0]]);
}

inline double extent(std::span<const Point3> pts, std::span<const int> subset) {
  Point3 lo = pts[subset[0]], hi = pts[subset[0]];
  for (int i : subset) {
    const Point3& p = pts[i];
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  return std::max(norm(hi - lo), 1e-300);
}

/// Relative tolerance on six-times-volume plane tests.
inline constexpr double kVolumeTolerance = 1e-12;

/// Incremental hull of `subset`; may leave flat (non-extreme) vertices.
inline std::vector<std::array<int, 3>> incremental_hull(std::span<const Point3> pts,
                                                        std::vector<int> subset) {
  if (subset.size() < 4) throw DegenerateHull("3D hull needs at least 4 points");
  const double scale = extent(pts, subset);
  const double tol = kVolumeTolerance * scale * scale * scale;

  // Initial simplex from extreme choices.
  int p0 = subset[0];
  for (int i : subset) {
    const Point3 &a = pts[i], &b = pts[p0];
    if (std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z)) p0 = i;
  }
  int p1 = -1;
  double best = -1;
  for (int i : subset) {
    double d = norm(pts[i] - pts[p0]);
    if (d > best) best = d, p1 = i;
  }
  int p2 = -1;
  best = -1;
  for (int i : subset) {
    double d = norm(cross(pts[p1] - pts[p0], pts[i] - pts[p0]));
    if (d > best) best = d, p2 = i;
  }
  int p3 = -1;
  best = -1;
  for (int i : subset) {
    double d = std::abs(orient3(pts[p0], pts[p1], pts[p2], pts[i]));
    if (d > best) best = d, p3 = i;
  }
  if (best <= tol) throw DegenerateHull("points are coplanar");
  if (orient3(pts[p0], pts[p1], pts[p2], pts[p3]) > 0) std::swap(p1, p2);

  std::vector<std::array<int, 3>> faces;
  std::vector<char> face_alive;
  std::unordered_map<std::uint64_t, int> edge_face;
  auto key = [](int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
  };
  auto add_face = [&](int a, int b, int c) {
    int id = static_cast<int>(faces.size());
    faces.push_back(canonical_face(a, b, c));
    face_alive.push_back(1);
    edge_face[key(a, b)] = id;
    edge_face[key(b, c)] = id;
    edge_face[key(c, a)] = id;
  };
  auto visible = [&](int f, int p) {
    const auto& t = faces[f];
    return orient3(pts[t[0]], pts[t[1]], pts[t[2]], pts[p]) > tol;
  };

  // p3 lies below plane (p0, p1, p2), so that face is outward as written.
  add_face(p0, p1, p2);
  add_face(p0, p3, p1);
  add_face(p1, p3, p2);
  add_face(p2, p3, p0);

  std::vector<int> rest;
  for (int i : subset)
    if (i != p0 && i != p1 && i != p2 && i != p3) rest.push_back(i);
  std::mt19937_64 rng(0x5eedULL + subset.size());
  std::shuffle(rest.begin(), rest.end(), rng);

  std::vector<int> vis;
  std::vector<std::array<int, 2>> horizon;
  for (int p : rest) {
    vis.clear();
    for (int f = 0; f < static_cast<int>(faces.size()); ++f)
      if (face_alive[f] && visible(f, p)) vis.push_back(f);
    if (vis.empty()) continue;
    horizon.clear();
    for (int f : vis) face_alive[f] = 2;  // mark visible
    for (int f : vis) {
      const auto& t = faces[f];
      for (int e = 0; e < 3; ++e) {
        int a = t[e], b = t[(e + 1) % 3];
        auto it = edge_face.find(key(b, a));
        if (it == edge_face.end()) throw InvalidState("3D hull: open edge");
        if (face_alive[it->second] != 2) horizon.push_back({a, b});
      }
    }
    for (int f : vis) {
      const auto& t = faces[f];
      for (int e = 0; e < 3; ++e) {
        auto it = edge_face.find(key(t[e], t[(e + 1) % 3]));
        if (it != edge_face.end() && it->second == f) edge_face.erase(it);
      }
      face_alive[f] = 0;
    }
    for (auto [a, b] : horizon) add_face(a, b, p);
  }

  std::vector<std::array<int, 3>> out;
  for (std::size_t f = 0; f < faces.size(); ++f)
    if (face_alive[f]) out.push_back(faces[f]);
  return out;
}

/// True when the unit normals of the faces around `v` span three
/// dimensions, i.e. v is a corner rather than a point on a facet or edge.
inline bool is_corner(std::span<const Point3> pts, const std::vector<std::array<int, 3>>& faces,
                      const std::vector<int>& around) {
  std::vector<Point3> normals;
  for (int f : around) normals.push_back(normalized(face_normal(pts, faces[f])));
  for (std::size_t i = 0; i < normals.size(); ++i)
    for (std::size_t j = i + 1; j < normals.size(); ++j)
      for (std::size_t k = j + 1; k < normals.size(); ++k)
        if (std::abs(dot(normals[i], cross(normals[j], normals[k]))) > 1e-13) return true;
  return false;
}

}  // namespace detail

/// Convex hull of the given subset of `points` (all points when `subset`
/// is empty). Throws DegenerateHull for fewer than 4 points or coplanar
/// input. Points lying on facets or edges are never reported as vertices.
inline Hull3 convex_hull_3d(std::span<const Point3> points, std::vector<int> subset = {}) {
  if (subset.empty()) {
    subset.resize(points.size());
    std::iota(subset.begin(), subset.end(), 0);
  }
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());

  for (;;) {
    auto faces = detail::incremental_hull(points, subset);
    std::vector<std::vector<int>> incident(points.size());
    for (std::size_t f = 0; f < faces.size(); ++f)
      for (int p : faces[f]) incident[p].push_back(static_cast<int>(f));
    std::vector<int> corners;
    bool flat = false;
    for (int p : subset) {
      if (incident[p].empty()) continue;
      if (detail::is_corner(points, faces, incident[p]))
        corners.push_back(p);
      else
        flat = true;
    }
    if (flat) {
      // Rebuild from corners only; flat points stay on the boundary.
      subset = corners;
      continue;
    }
    Hull3 h;
    h.faces = std::move(faces);
    h.vertices = std::move(corners);
    h.incident = std::move(incident);
    return h;
  }
}

/// Interior solid angle (steradians) at hull vertex `v`, as the sum of the
/// Van Oosterom-Strackee solid angles of the fan of triangles spanned by an
/// interior axis and consecutive neighbors of v.
inline double vertex_solid_angle(std::span<const Point3> points, const Hull3& hull, int v) {
  if (!hull.is_vertex(v)) throw InvalidState("vertex_solid_angle: not a hull vertex");
  const auto& around = hull.incident[v];
  if (around.size() < 3) throw InvalidState("vertex_solid_angle: fewer than 3 incident faces");
  // Each incident face (v, a, b) contributes the directed neighbor edge a -> b.
  std::unordered_map<int, int> next;
  int start = -1;
  for (int f : around) {
    const auto& t = hull.faces[f];
    int i = static_cast<int>(std::find(t.begin(), t.end(), v) - t.begin());
    int a = t[(i + 1) % 3], b = t[(i + 2) % 3];
    if (!next.emplace(a, b).second) throw InvalidState("vertex_solid_angle: inconsistent incidence");
    if (start < 0 || a < start) start = a;
  }
  std::vector<int> ring{start};
  for (int cur = next.at(start); cur != start;) {
    ring.push_back(cur);
    auto it = next.find(cur);
    if (it == next.end() || ring.size() > around.size())
      throw InvalidState("vertex_solid_angle: broken neighbor ring");
    cur = it->second;
  }
  if (ring.size() != around.size()) throw InvalidState("vertex_solid_angle: incident faces form several rings");

  const Point3 apex = points[v];
  Point3 axis{};
  for (int w : ring) axis = axis + normalized(points[w] - apex);
  axis = normalized(axis);
  double total = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point3 a = points[ring[i]] - apex;
    const Point3 b = points[ring[(i + 1) % ring.size()]] - apex;
    total += signed_triangle_solid_angle(axis, a, b);
  }
  return std::abs(total);
}

}  // namespace maxmin
