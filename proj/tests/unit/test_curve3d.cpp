#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <utility>
#include <vector>

#include "maxmin/curve3d.hpp"
#include "maxmin/oracles.hpp"
#include "maxmin/polygon2d.hpp"
#include "support/generators.hpp"

namespace {

using namespace maxmin;
using maxmin::testing::Rng;
using maxmin::testing::uniform_int;

constexpr double kTol = 1e-9;

const std::vector<Point3> kSquare{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
const std::vector<Point3> kTetra{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};

// Curve is closed, has no zero-length step, and repeats segments only as
// the mode permits; the reported angles and theta match the geometry.
std::string check_curve(const CurveResult& r) {
  const std::size_t k = r.curve.size();
  if (k < 3) return "curve shorter than 3 steps";
  std::set<std::pair<int, int>> used;
  for (std::size_t i = 0; i < k; ++i) {
    int a = r.curve[i], b = r.curve[(i + 1) % k];
    if (a == b) return "zero-length step";
    if (r.mode == CurveMode::RepeatedPointsOnly && a > b) std::swap(a, b);
    if (!used.insert({a, b}).second) return "segment repeated";
  }
  auto angles = curve_turn_angles(r.points, r.curve);
  double theta = kPi;
  for (std::size_t i = 0; i < k; ++i) {
    if (std::abs(angles[i] - r.turn_angles[i]) > kTol) return "turn angle mismatch";
    theta = std::min(theta, angles[i]);
  }
  if (std::abs(theta - r.theta) > kTol) return "theta mismatch";
  return {};
}

CurveResult solve(const std::vector<Point3>& p, bool segments, PolarEngine engine = PolarEngine::Auto) {
  CurveOptions o;
  o.allow_repeated_segments = segments;
  o.engine = engine;
  return maxmin_angle_closed_curve(p, o);
}

TEST(AngleAt, Basics) {
  EXPECT_NEAR(angle_at({1, 0, 0}, {0, 0, 0}, {0, 1, 0}), kPi / 2, kTol);
  EXPECT_NEAR(angle_at({-1, 0, 0}, {0, 0, 0}, {3, 0, 0}), kPi, kTol);
  EXPECT_NEAR(angle_at({2, 0, 0}, {0, 0, 0}, {5, 0, 0}), 0.0, kTol);
  EXPECT_THROW(angle_at({0, 0, 0}, {0, 0, 0}, {1, 0, 0}), InvalidInput);
}

TEST(AngleAt, LawOfCosines) {
  Rng rng(71);
  for (int t = 0; t < 500; ++t) {
    auto p = maxmin::testing::random_points3(rng, 3);
    const double a = norm(p[0] - p[1]), c = norm(p[2] - p[1]), b = norm(p[0] - p[2]);
    const double expect = std::acos(std::clamp((a * a + c * c - b * b) / (2 * a * c), -1.0, 1.0));
    EXPECT_NEAR(angle_at(p[0], p[1], p[2]), expect, 1e-7);
  }
}

TEST(SegmentGraph, SizesFollowClosedForm) {
  Rng rng(72);
  for (int n = 3; n <= 12; ++n) {
    auto sg = build_polar_graph(maxmin::testing::random_points3(rng, n));
    const std::size_t nn = static_cast<std::size_t>(n);
    EXPECT_EQ(sg.graph.vertex_count(), n * (n - 1) / 2);
    EXPECT_EQ(sg.graph.edge_count(), 3 * nn * (nn - 1) * (nn - 2) / 6);
    // Each pole of segment {i, j} touches the n - 2 chains through its end.
    for (int v = 0; v < sg.graph.vertex_count(); ++v)
      for (int pole = 0; pole < 2; ++pole) EXPECT_EQ(sg.graph.incident(v, pole).size(), nn - 2);
  }
  auto three = build_polar_graph({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
  EXPECT_EQ(three.graph.vertex_count(), 3);
  EXPECT_EQ(three.graph.edge_count(), 3u);
  auto four = build_polar_graph(kSquare);
  EXPECT_EQ(four.graph.vertex_count(), 6);
  EXPECT_EQ(four.graph.edge_count(), 12u);
}

TEST(SegmentGraph, EdgesJoinSegmentsAtSharedPoint) {
  Rng rng(73);
  const auto pts = maxmin::testing::random_points3(rng, 7);
  const auto sg = build_polar_graph(pts);
  for (std::size_t i = 0; i < sg.graph.edge_count(); ++i) {
    const auto& e = sg.graph.edge(static_cast<int>(i));
    const auto [a, b, c] = sg.chains[i];
    auto end_at = [&](const PolarEndpoint& p) {
      const auto [x, y] = sg.segments[static_cast<std::size_t>(p.vertex)];
      return p.pole == 0 ? x : y;
    };
    EXPECT_EQ(end_at(e.a), b);
    EXPECT_EQ(end_at(e.b), b);
    EXPECT_EQ(e.a.vertex, segment_id(a, b, 7));
    EXPECT_EQ(e.b.vertex, segment_id(b, c, 7));
    EXPECT_NEAR(e.weight.to_double(), angle_at(pts[static_cast<std::size_t>(a)], pts[static_cast<std::size_t>(b)],
                                           pts[static_cast<std::size_t>(c)]),
                0.0);
  }
}

TEST(Curve3d, SquareAndTetrahedron) {
  for (bool seg : {false, true}) {
    auto sq = solve(kSquare, seg);
    EXPECT_NEAR(sq.theta, kPi / 2, kTol);
    EXPECT_EQ(check_curve(sq), "");
    auto te = solve(kTetra, seg);
    EXPECT_NEAR(te.theta, kPi / 3, kTol);
    EXPECT_EQ(check_curve(te), "");
  }
}

TEST(Curve3d, CollinearPointsForceAReversal) {
  std::vector<Point3> line{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {5, 0, 0}};
  // Every closed curve on a line turns back somewhere, at angle 0.
  for (bool seg : {false, true}) {
    auto r = solve(line, seg);
    EXPECT_NEAR(r.theta, 0.0, kTol);
    EXPECT_EQ(check_curve(r), "");
  }
}

TEST(Curve3d, InfeasibleInputs) {
  EXPECT_THROW(solve({{0, 0, 0}, {1, 0, 0}}, false), NoCurve);
  EXPECT_THROW(solve({{0, 0, 0}, {1, 0, 0}, {0, 0, 0}}, true), NoCurve);
  EXPECT_THROW(solve({{0, 0, 0}, {1, 0, 0}, {0, std::nan(""), 0}}, false), InvalidInput);
}

TEST(Curve3d, DuplicatesAreReported) {
  auto p = kSquare;
  p.push_back(kSquare[2]);
  auto r = solve(p, false);
  EXPECT_EQ(r.points.size(), 4u);
  EXPECT_EQ(r.input_to_point[4], r.input_to_point[2]);
  EXPECT_FALSE(r.diagnostics.empty());
  EXPECT_NEAR(r.theta, kPi / 2, kTol);
}

TEST(Curve3d, SizeGuard) {
  Rng rng(74);
  auto big = maxmin::testing::random_points3(rng, static_cast<int>(kMaxCurvePoints) + 1);
  EXPECT_THROW(solve(big, false), InvalidInput);
}

TEST(Curve3d, MatchesOracle) {
  Rng rng(75);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = uniform_int(rng, 3, 6);
    auto p = trial % 2 ? maxmin::testing::random_points3(rng, n) : maxmin::testing::grid_points3(rng, n, 2);
    for (bool seg : {false, true}) {
      auto o = curve_enumeration_oracle(p, seg);
      auto r = solve(p, seg);
      EXPECT_NEAR(r.theta, o.theta, kTol) << "trial " << trial << " segments " << seg;
      EXPECT_EQ(check_curve(r), "") << "trial " << trial;
    }
  }
}

TEST(Curve3d, EnginesAgree) {
  Rng rng(76);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = maxmin::testing::random_points3(rng, uniform_int(rng, 5, 12));
    auto a = solve(p, false, PolarEngine::Stepwise);
    auto b = solve(p, false, PolarEngine::PrefixSearch);
    EXPECT_NEAR(a.theta, b.theta, kTol);
    EXPECT_EQ(check_curve(a), "");
    EXPECT_EQ(check_curve(b), "");
  }
}

// Allowing repeated segments only enlarges the family of curves.
TEST(Curve3d, ModeMonotonicity) {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    auto p = maxmin::testing::random_points3(rng, uniform_int(rng, 3, 14));
    EXPECT_GE(solve(p, true).theta, solve(p, false).theta - kTol);
  }
}

// A convex polygon is a closed curve whose turn angles are its interior
// angles, so in the plane the curve optimum dominates the polygon optimum.
TEST(Curve3d, PlanarDominatesConvexPolygon) {
  Rng rng(78);
  for (int trial = 0; trial < 40; ++trial) {
    auto p2 = maxmin::testing::random_points2(rng, uniform_int(rng, 3, 12));
    std::vector<Point3> p3;
    for (const auto& q : p2) p3.push_back({q.x, q.y, 0.0});
    const double poly = maxmin_angle_polygon(p2).theta;
    EXPECT_GE(solve(p3, false).theta, poly - kTol);
  }
}

TEST(Curve3d, RigidMotionInvariance) {
  Rng rng(79);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = maxmin::testing::random_points3(rng, uniform_int(rng, 3, 10));
    const auto m = maxmin::testing::random_motion(rng);
    std::vector<Point3> q;
    for (const auto& x : p) q.push_back(m(x));
    for (bool seg : {false, true}) EXPECT_NEAR(solve(p, seg).theta, solve(q, seg).theta, 1e-7);
  }
}

}  // namespace
