#pragma once

// Exhaustive reference solvers for small inputs. They use only the shared
// types and geometric primitives, never the solvers they are checked against.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maxmin/bottleneck.hpp"
#include "maxmin/errors.hpp"
#include "maxmin/geometry.hpp"
#include "maxmin/graph_types.hpp"
#include "maxmin/quality.hpp"

namespace maxmin {

/// Hard size limits, checked before any enumeration starts.
struct OracleBudget {
  int max_universe = 12;        // subset oracles
  int max_graph_vertices = 8;   // undirected, directed and mixed cycles
  int max_polar_vertices = 9;   // regular cycles
  int max_curve_points = 6;     // closed curves
};

/// Values closer than this are treated as equal by the geometric oracles.
inline constexpr double kOracleTolerance = 1e-9;

struct SubsetOracleResult {
  Quality theta;
  std::vector<int> subset;  // union of all maximizing subsets, ascending
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw BudgetExceeded(what);
}

inline std::vector<int> mask_members(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if (mask >> i & 1u) out.push_back(i);
  return out;
}

}  // namespace detail

/// Every nonempty subset is evaluated by removing its complement from a
/// fresh copy of the instance and taking the least member quality.
template <BottleneckInstance I>
SubsetOracleResult bottleneck_subset_oracle(const I& instance, const OracleBudget& budget = {}) {
  const int n = static_cast<int>(instance.size());
  detail::require(n >= 1 && n <= budget.max_universe, "subset oracle: universe size outside budget");
  const std::uint32_t full = (1u << n) - 1u;
  Quality best = Quality::neg_inf();
  std::uint32_t best_union = 0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    I copy = instance;
    for (int x = 0; x < n; ++x)
      if (!(mask >> x & 1u)) copy.remove(x);
    Quality q = Quality::pos_inf();
    for (int x = 0; x < n; ++x)
      if (mask >> x & 1u) q = std::min(q, copy.quality(x));
    if (q > best) {
      best = q;
      best_union = mask;
    } else if (q == best) {
      best_union |= mask;
    }
  }
  return {best, detail::mask_members(best_union)};
}

struct GeometricOracleResult {
  double theta = 0.0;
  std::vector<int> subset;  // union of subsets within tolerance of theta
};

namespace detail {

/// Keeps the running maximum and the union of subsets tied with it.
struct BestUnion {
  double best = -1.0;
  std::uint32_t mask = 0;
  void offer(double q, std::uint32_t m) {
    if (q > best + kOracleTolerance) {
      best = q;
      mask = m;
    } else if (q >= best - kOracleTolerance) {
      mask |= m;
      best = std::max(best, q);
    }
  }
};

/// Gift-wrapping hull of the indexed points; collinear boundary points are
/// skipped by always wrapping to the farthest candidate.
inline std::vector<int> gift_wrap(const std::vector<Point2>& pts, const std::vector<int>& ids) {
  int start = ids.front();
  for (int i : ids)
    if (pts[static_cast<std::size_t>(i)].y < pts[static_cast<std::size_t>(start)].y ||
        (pts[static_cast<std::size_t>(i)].y == pts[static_cast<std::size_t>(start)].y &&
         pts[static_cast<std::size_t>(i)].x < pts[static_cast<std::size_t>(start)].x))
      start = i;
  std::vector<int> hull;
  int p = start;
  do {
    hull.push_back(p);
    int q = -1;
    for (int r : ids) {
      if (r == p) continue;
      if (q < 0) {
        q = r;
        continue;
      }
      const Point2 &P = pts[static_cast<std::size_t>(p)], &Qp = pts[static_cast<std::size_t>(q)], &R = pts[static_cast<std::size_t>(r)];
      const double o = orient(P, Qp, R);
      if (o < 0 || (o == 0 && norm(R - P) > norm(Qp - P))) q = r;
    }
    p = q;
    if (hull.size() > ids.size()) throw InvalidState("gift_wrap: did not close");
  } while (p != start);
  return hull;
}

}  // namespace detail

/// Max over subsets of the sharpest hull angle (0 for collinear subsets).
inline GeometricOracleResult polygon_subset_oracle(const std::vector<Point2>& pts, const OracleBudget& budget = {}) {
  const int n = static_cast<int>(pts.size());
  detail::require(n >= 1 && n <= budget.max_universe, "polygon oracle: point count outside budget");
  detail::BestUnion acc;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto ids = detail::mask_members(mask);
    double q = 0.0;
    if (ids.size() >= 3) {
      const auto hull = detail::gift_wrap(pts, ids);
      if (hull.size() >= 3) {
        q = 2.0 * kPi;
        for (std::size_t i = 0; i < hull.size(); ++i) {
          const Point2& v = pts[static_cast<std::size_t>(hull[i])];
          const Point2& a = pts[static_cast<std::size_t>(hull[(i + hull.size() - 1) % hull.size()])];
          const Point2& b = pts[static_cast<std::size_t>(hull[(i + 1) % hull.size()])];
          q = std::min(q, vector_angle(a - v, b - v));
        }
      }
    }
    acc.offer(q, mask);
  }
  return {acc.best, detail::mask_members(acc.mask)};
}

namespace detail {

/// Solid angles at the extreme points of a 3D point subset, from the
/// supporting planes through point triples. A vertex's solid angle is 2*pi
/// minus the perimeter of the spherical polygon of its facet normals.
/// Returns an empty list when the subset is flat.
inline std::vector<std::pair<int, double>> brute_vertex_solid_angles(const std::vector<Point3>& pts,
                                                                     const std::vector<int>& ids) {
  Point3 lo = pts[static_cast<std::size_t>(ids[0])], hi = lo;
  for (int i : ids) {
    const Point3& p = pts[static_cast<std::size_t>(i)];
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  const double tol = kOracleTolerance * std::max(norm(hi - lo), 1e-300);

  struct Plane {
    Point3 normal;
    double offset;
  };
  std::vector<Plane> planes;
  bool flat = true;
  const std::size_t k = ids.size();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      for (std::size_t c = b + 1; c < k; ++c) {
        const Point3& A = pts[static_cast<std::size_t>(ids[a])];
        Point3 nrm = cross(pts[static_cast<std::size_t>(ids[b])] - A, pts[static_cast<std::size_t>(ids[c])] - A);
        if (norm(nrm) == 0.0) continue;
        nrm = normalized(nrm);
        bool above = false, below = false;
        for (int r : ids) {
          const double d = dot(nrm, pts[static_cast<std::size_t>(r)] - A);
          above = above || d > tol;
          below = below || d < -tol;
        }
        if (above && below) continue;
        if (!above && !below) continue;  // every point on this plane
        flat = false;
        if (above) nrm = -1.0 * nrm;
        bool seen = false;
        for (const auto& p : planes) seen = seen || norm(p.normal - nrm) < 1e-9;
        if (!seen) planes.push_back({nrm, dot(nrm, A)});
      }
  std::vector<std::pair<int, double>> out;
  if (flat) return out;
  for (int v : ids) {
    const Point3& P = pts[static_cast<std::size_t>(v)];
    std::vector<Point3> normals;
    for (const auto& pl : planes)
      if (std::abs(dot(pl.normal, P) - pl.offset) <= tol) normals.push_back(pl.normal);
    if (normals.size() < 3) continue;
    Point3 mean{};
    for (const auto& nn : normals) mean = mean + nn;
    mean = normalized(mean);
    const Point3 helper = std::abs(mean.x) < 0.9 ? Point3{1, 0, 0} : Point3{0, 1, 0};
    const Point3 e1 = normalized(cross(mean, helper));
    const Point3 e2 = cross(mean, e1);
    std::sort(normals.begin(), normals.end(), [&](const Point3& x, const Point3& y) {
      return std::atan2(dot(x, e2), dot(x, e1)) < std::atan2(dot(y, e2), dot(y, e1));
    });
    double perimeter = 0.0;
    for (std::size_t i = 0; i < normals.size(); ++i)
      perimeter += vector_angle(normals[i], normals[(i + 1) % normals.size()]);
    out.emplace_back(v, 2.0 * kPi - perimeter);
  }
  return out;
}

}  // namespace detail

/// Max over subsets of the sharpest vertex solid angle (0 for flat subsets).
inline GeometricOracleResult polyhedron_subset_oracle(const std::vector<Point3>& pts, const OracleBudget& budget = {}) {
  const int n = static_cast<int>(pts.size());
  detail::require(n >= 1 && n <= budget.max_universe, "polyhedron oracle: point count outside budget");
  detail::BestUnion acc;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto ids = detail::mask_members(mask);
    double q = 0.0;
    if (ids.size() >= 4) {
      const auto angles = detail::brute_vertex_solid_angles(pts, ids);
      if (!angles.empty()) {
        q = 4.0 * kPi;
        for (const auto& [v, a] : angles) q = std::min(q, a);
      }
    }
    acc.offer(q, mask);
  }
  return {acc.best, detail::mask_members(acc.mask)};
}

/// Solid angles at the vertices of the hull of all points, by the same
/// supporting-plane construction. Empty when the points are flat.
inline std::vector<std::pair<int, double>> brute_solid_angles(const std::vector<Point3>& pts) {
  std::vector<int> ids(pts.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  return detail::brute_vertex_solid_angles(pts, ids);
}

struct DegeneracyOracleResult {
  int degeneracy = 0;
  std::vector<int> core;
};

/// Max over vertex subsets of the least induced degree.
inline DegeneracyOracleResult degeneracy_oracle(int n, const std::vector<std::pair<int, int>>& edges,
                                                const OracleBudget& budget = {}) {
  detail::require(n >= 1 && n <= budget.max_universe, "degeneracy oracle: vertex count outside budget");
  int best = -1;
  std::uint32_t best_union = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (auto [u, v] : edges)
      if ((mask >> u & 1u) && (mask >> v & 1u)) ++deg[static_cast<std::size_t>(u)], ++deg[static_cast<std::size_t>(v)];
    int q = n;
    for (int x = 0; x < n; ++x)
      if (mask >> x & 1u) q = std::min(q, deg[static_cast<std::size_t>(x)]);
    if (q > best) {
      best = q;
      best_union = mask;
    } else if (q == best) {
      best_union |= mask;
    }
  }
  return {best, detail::mask_members(best_union)};
}

namespace detail {

struct Arc {
  int edge;
  int to;
};

/// Best cycle among all vertex-simple, edge-simple cycles reachable through
/// `arcs`. Each cycle is rooted at its smallest vertex.
inline std::optional<CycleResult> best_simple_cycle(int n, const std::vector<std::vector<Arc>>& arcs,
                                                    const std::function<Quality(int)>& weight, Direction dir) {
  std::optional<CycleResult> best;
  auto better = [&](Quality v) {
    if (!best) return true;
    return dir == Direction::MaxMin ? v > best->value : v < best->value;
  };
  std::vector<int> verts, edges;
  std::vector<char> on_path(static_cast<std::size_t>(n), 0);
  std::vector<int> used_edges;
  std::function<void(int, int)> dfs = [&](int s, int x) {
    for (const Arc& a : arcs[static_cast<std::size_t>(x)]) {
      if (std::find(used_edges.begin(), used_edges.end(), a.edge) != used_edges.end()) continue;
      if (a.to == s) {
        edges.push_back(a.edge);
        Quality v = weight(edges.front());
        for (int e : edges) v = dir == Direction::MaxMin ? std::min(v, weight(e)) : std::max(v, weight(e));
        if (better(v)) best = CycleResult{v, dir, verts, edges, {}, {}, {}};
        edges.pop_back();
        continue;
      }
      if (a.to < s || on_path[static_cast<std::size_t>(a.to)]) continue;
      on_path[static_cast<std::size_t>(a.to)] = 1;
      verts.push_back(a.to);
      edges.push_back(a.edge);
      used_edges.push_back(a.edge);
      dfs(s, a.to);
      used_edges.pop_back();
      edges.pop_back();
      verts.pop_back();
      on_path[static_cast<std::size_t>(a.to)] = 0;
    }
  };
  for (int s = 0; s < n; ++s) {
    verts = {s};
    on_path[static_cast<std::size_t>(s)] = 1;
    dfs(s, s);
    on_path[static_cast<std::size_t>(s)] = 0;
  }
  return best;
}

}  // namespace detail

/// Best simple cycle of an undirected multigraph (self-loops and parallel
/// pairs count), or nullopt for a forest.
inline std::optional<CycleResult> undirected_cycle_oracle(const WeightedMultigraph& g, Direction dir,
                                                          const OracleBudget& budget = {}) {
  detail::require(g.vertex_count() <= budget.max_graph_vertices, "cycle oracle: too many vertices");
  std::vector<std::vector<detail::Arc>> arcs(static_cast<std::size_t>(g.vertex_count()));
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edges()[i];
    arcs[static_cast<std::size_t>(e.u)].push_back({static_cast<int>(i), e.v});
    if (e.u != e.v) arcs[static_cast<std::size_t>(e.v)].push_back({static_cast<int>(i), e.u});
  }
  return detail::best_simple_cycle(g.vertex_count(), arcs, [&](int id) { return g.edge(id).weight; }, dir);
}

/// Best simple directed cycle, or nullopt for a DAG.
inline std::optional<CycleResult> directed_cycle_oracle(const WeightedDigraph& g, Direction dir,
                                                        const OracleBudget& budget = {}) {
  detail::require(g.vertex_count() <= budget.max_graph_vertices, "cycle oracle: too many vertices");
  std::vector<std::vector<detail::Arc>> arcs(static_cast<std::size_t>(g.vertex_count()));
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edges()[i];
    arcs[static_cast<std::size_t>(e.u)].push_back({static_cast<int>(i), e.v});
  }
  return detail::best_simple_cycle(g.vertex_count(), arcs, [&](int id) { return g.edge(id).weight; }, dir);
}

/// Best simple cycle that follows directed edges forward and undirected
/// edges either way, using each edge at most once.
inline std::optional<CycleResult> mixed_cycle_oracle(const MixedGraph& g, Direction dir, const OracleBudget& budget = {}) {
  detail::require(g.vertex_count() <= budget.max_graph_vertices, "cycle oracle: too many vertices");
  std::vector<std::vector<detail::Arc>> arcs(static_cast<std::size_t>(g.vertex_count()));
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edges()[i];
    arcs[static_cast<std::size_t>(e.u)].push_back({static_cast<int>(i), e.v});
    if (!e.directed) arcs[static_cast<std::size_t>(e.v)].push_back({static_cast<int>(i), e.u});
  }
  return detail::best_simple_cycle(g.vertex_count(), arcs, [&](int id) { return g.edge(id).weight; }, dir);
}

/// Best regular cycle: vertex-simple, entering and leaving every vertex
/// through opposite poles. Rooted at its smallest vertex, leaving it through
/// either pole.
inline std::optional<CycleResult> regular_cycle_oracle(const PolarGraph& g, Direction dir,
                                                       const OracleBudget& budget = {}) {
  detail::require(g.vertex_count() <= budget.max_polar_vertices, "regular cycle oracle: too many vertices");
  const int n = g.vertex_count();
  std::optional<CycleResult> best;
  std::vector<char> on_path(static_cast<std::size_t>(n), 0);
  CycleResult cur;
  std::function<void(int, int, int, int)> dfs = [&](int s, int s_exit, int x, int exit_pole) {
    for (int id : g.incident(x, exit_pole)) {
      const auto& to = g.edge(id).other(x);
      if (to.vertex == s) {
        if (to.pole == s_exit) continue;
        cur.edges.push_back(id);
        cur.exit_poles.push_back(exit_pole);
        Quality v = g.edge(cur.edges.front()).weight;
        for (int e : cur.edges) v = dir == Direction::MaxMin ? std::min(v, g.edge(e).weight) : std::max(v, g.edge(e).weight);
        const bool improves = !best || (dir == Direction::MaxMin ? v > best->value : v < best->value);
        if (improves) {
          best = cur;
          best->value = v;
          best->direction = dir;
          best->entry_poles.assign(best->vertices.size(), 0);
          for (std::size_t i = 0; i < best->vertices.size(); ++i) best->entry_poles[i] = 1 - best->exit_poles[i];
        }
        cur.exit_poles.pop_back();
        cur.edges.pop_back();
        continue;
      }
      if (to.vertex < s || on_path[static_cast<std::size_t>(to.vertex)]) continue;
      on_path[static_cast<std::size_t>(to.vertex)] = 1;
      cur.vertices.push_back(to.vertex);
      cur.edges.push_back(id);
      cur.exit_poles.push_back(exit_pole);
      dfs(s, s_exit, to.vertex, 1 - to.pole);
      cur.exit_poles.pop_back();
      cur.edges.pop_back();
      cur.vertices.pop_back();
      on_path[static_cast<std::size_t>(to.vertex)] = 0;
    }
  };
  for (int s = 0; s < n; ++s)
    for (int pole = 0; pole < 2; ++pole) {
      cur = {};
      cur.vertices = {s};
      on_path[static_cast<std::size_t>(s)] = 1;
      dfs(s, pole, s, pole);
      on_path[static_cast<std::size_t>(s)] = 0;
    }
  return best;
}

struct CurveOracleResult {
  double theta = -1.0;
  std::vector<int> curve;  // cyclic point sequence
};

/// Best closed curve through distinct points, by branch and bound over point
/// sequences rooted at their smallest point. Without repeated segments no
/// unordered segment is used twice; with them no directed segment is used
/// twice and the curve never immediately reverses.
inline CurveOracleResult curve_enumeration_oracle(const std::vector<Point3>& pts, bool allow_repeated_segments,
                                                  const OracleBudget& budget = {}) {
  const int n = static_cast<int>(pts.size());
  detail::require(n >= 3 && n <= budget.max_curve_points, "curve oracle: point count outside budget");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (pts[static_cast<std::size_t>(i)] == pts[static_cast<std::size_t>(j)]) throw InvalidInput("curve oracle: repeated point");
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<double> angle(nn * nn * nn, 0.0);
  auto ang = [&](int a, int b, int c) -> double& {
    return angle[(static_cast<std::size_t>(a) * nn + static_cast<std::size_t>(b)) * nn + static_cast<std::size_t>(c)];
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (a != b && c != b)
          ang(a, b, c) = vector_angle(pts[static_cast<std::size_t>(a)] - pts[static_cast<std::size_t>(b)],
                                      pts[static_cast<std::size_t>(c)] - pts[static_cast<std::size_t>(b)]);

  auto seg = [&](int a, int b) {
    if (!allow_repeated_segments && a > b) std::swap(a, b);
    return static_cast<std::size_t>(a) * nn + static_cast<std::size_t>(b);
  };
  CurveOracleResult best;
  std::vector<char> used(nn * nn, 0);
  std::vector<int> seq;
  std::function<void(double)> dfs = [&](double low) {
    const int a = seq[seq.size() - 2], b = seq.back(), s = seq.front();
    // Try the widest turns first so that good bounds appear early.
    std::vector<int> next;
    for (int c = s; c < n; ++c)
      if (c != b && c != a && !used[seg(b, c)]) next.push_back(c);
    std::sort(next.begin(), next.end(), [&](int x, int y) { return ang(a, b, x) > ang(a, b, y); });
    for (int c : next) {
      const double here = std::min(low, ang(a, b, c));
      if (here <= best.theta) break;
      if (c == s && seq[1] != b) {
        const double closed = std::min(here, ang(b, s, seq[1]));
        if (closed > best.theta) {
          best.theta = closed;
          best.curve = seq;
        }
      }
      used[seg(b, c)] = 1;
      seq.push_back(c);
      dfs(here);
      seq.pop_back();
      used[seg(b, c)] = 0;
    }
  };
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      seq = {s, t};
      used[seg(s, t)] = 1;
      dfs(kPi);
      used[seg(s, t)] = 0;
    }
  return best;
}

}  // namespace maxmin
