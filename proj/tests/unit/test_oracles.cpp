#include <gtest/gtest.h>

#include <fstream>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "maxmin/oracles.hpp"
#include "support/generators.hpp"

#ifndef MAXMIN_INCLUDE_DIR
#error "MAXMIN_INCLUDE_DIR must name the library include directory"
#endif

namespace {

using namespace maxmin;
using maxmin::testing::Rng;

constexpr double kTol = 1e-9;

std::vector<int> iota_ids(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

// The oracles must stay independent of the solvers they check.
TEST(Oracles, IncludeOnlySharedPrimitives) {
  std::ifstream in(std::string(MAXMIN_INCLUDE_DIR) + "/maxmin/oracles.hpp");
  ASSERT_TRUE(in);
  const std::set<std::string> allowed{"bottleneck.hpp", "errors.hpp", "geometry.hpp", "graph_types.hpp", "quality.hpp"};
  const std::regex inc(R"(#include\s+"maxmin/([^"]+)\")");
  std::string line;
  int seen = 0;
  while (std::getline(in, line)) {
    std::smatch m;
    if (!std::regex_search(line, m, inc)) continue;
    ++seen;
    EXPECT_TRUE(allowed.count(m[1].str())) << "oracles.hpp includes " << m[1].str();
  }
  EXPECT_GT(seen, 0);
}

TEST(Oracles, BudgetsAreEnforced) {
  Rng rng(81);
  EXPECT_THROW(polygon_subset_oracle(maxmin::testing::random_points2(rng, 13)), BudgetExceeded);
  EXPECT_THROW(polyhedron_subset_oracle(maxmin::testing::random_points3(rng, 13)), BudgetExceeded);
  EXPECT_THROW(degeneracy_oracle(13, {}), BudgetExceeded);
  EXPECT_THROW(curve_enumeration_oracle(maxmin::testing::random_points3(rng, 7), false), BudgetExceeded);
  EXPECT_THROW(directed_cycle_oracle(WeightedDigraph(9, {}), Direction::MaxMin), BudgetExceeded);
  EXPECT_THROW(undirected_cycle_oracle(WeightedMultigraph(9, {}), Direction::MaxMin), BudgetExceeded);
  EXPECT_THROW(mixed_cycle_oracle(MixedGraph(9, {}), Direction::MaxMin), BudgetExceeded);
  EXPECT_THROW(regular_cycle_oracle(PolarGraph(10, {}), Direction::MaxMin), BudgetExceeded);
  OracleBudget wide;
  wide.max_graph_vertices = 9;
  EXPECT_FALSE(directed_cycle_oracle(WeightedDigraph(9, {}), Direction::MaxMin, wide));
}

TEST(Oracles, Deterministic) {
  Rng rng(82);
  const auto p2 = maxmin::testing::grid_points2(rng, 9, 3);
  const auto a = polygon_subset_oracle(p2), b = polygon_subset_oracle(p2);
  EXPECT_EQ(a.theta, b.theta);
  EXPECT_EQ(a.subset, b.subset);
  const auto g = maxmin::testing::random_digraph(rng, 7, 14);
  const auto c = directed_cycle_oracle(g, Direction::MaxMin), d = directed_cycle_oracle(g, Direction::MaxMin);
  ASSERT_EQ(c.has_value(), d.has_value());
  if (c) {
    EXPECT_EQ(c->edges, d->edges);
  }
}

TEST(Oracles, PolygonHandValues) {
  const std::vector<Point2> square_center{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
  const auto r = polygon_subset_oracle(square_center);
  EXPECT_NEAR(r.theta, kPi / 2, kTol);
  EXPECT_EQ(r.subset, iota_ids(5));
  // Equilateral triangle beats any subset containing the flat midpoint corner.
  const std::vector<Point2> tri{{0, 0}, {2, 0}, {1, std::sqrt(3.0)}, {1, 0}};
  const auto t = polygon_subset_oracle(tri);
  EXPECT_NEAR(t.theta, kPi / 3, kTol);
  EXPECT_EQ(t.subset, iota_ids(4));
  EXPECT_NEAR(polygon_subset_oracle({{0, 0}, {1, 1}, {2, 2}}).theta, 0.0, kTol);
}

TEST(Oracles, GiftWrapOrdersHull) {
  const std::vector<Point2> pts{{0, 0}, {2, 0}, {1, 1}, {2, 2}, {0, 2}, {1, 0}};
  auto h = detail::gift_wrap(pts, iota_ids(6));
  ASSERT_EQ(h.size(), 4u);
  std::set<int> s(h.begin(), h.end());
  EXPECT_EQ(s, (std::set<int>{0, 1, 3, 4}));
  double area = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto& a = pts[static_cast<std::size_t>(h[i])];
    const auto& b = pts[static_cast<std::size_t>(h[(i + 1) % h.size()])];
    area += a.x * b.y - a.y * b.x;
  }
  EXPECT_GT(area, 0);
}

TEST(Oracles, PolyhedronHandValues) {
  std::vector<Point3> cube;
  for (int i = 0; i < 8; ++i) cube.push_back({double(i & 1), double(i >> 1 & 1), double(i >> 2 & 1)});
  auto angles = brute_solid_angles(cube);
  ASSERT_EQ(angles.size(), 8u);
  for (const auto& [v, a] : angles) EXPECT_NEAR(a, kPi / 2, 1e-9);
  cube.push_back({0.5, 0.5, 0.5});
  const auto r = polyhedron_subset_oracle(cube);
  EXPECT_NEAR(r.theta, kPi / 2, 1e-9);
  EXPECT_EQ(r.subset, iota_ids(9));
  EXPECT_TRUE(brute_solid_angles({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}}).empty());
}

TEST(Oracles, DegeneracyHandValues) {
  const std::vector<std::pair<int, int>> k4{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  auto with_tail = k4;
  with_tail.push_back({3, 4});
  const auto r = degeneracy_oracle(5, with_tail);
  EXPECT_EQ(r.degeneracy, 3);
  EXPECT_EQ(r.core, (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(degeneracy_oracle(3, {}).degeneracy, 0);
}

TEST(Oracles, CycleHandValues) {
  auto q = [](double x) { return Quality::finite(x); };
  WeightedDigraph tri(3, {{0, 1, q(5)}, {1, 2, q(2)}, {2, 0, q(7)}, {1, 0, q(9)}});
  auto d = directed_cycle_oracle(tri, Direction::MaxMin);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->value, q(5));  // the 2-cycle 0 -> 1 -> 0
  auto dm = directed_cycle_oracle(tri, Direction::MinMax);
  ASSERT_TRUE(dm);
  EXPECT_EQ(dm->value, q(7));

  WeightedMultigraph pair(2, {{0, 1, q(4)}, {0, 1, q(6)}});
  auto u = undirected_cycle_oracle(pair, Direction::MaxMin);
  ASSERT_TRUE(u);
  EXPECT_EQ(u->value, q(4));
  EXPECT_FALSE(undirected_cycle_oracle(WeightedMultigraph(3, {{0, 1, q(1)}, {1, 2, q(1)}}), Direction::MaxMin));

  // A single undirected edge cannot be walked both ways.
  MixedGraph m(2, {{0, 1, q(3), false}});
  EXPECT_FALSE(mixed_cycle_oracle(m, Direction::MaxMin));
  MixedGraph m2(2, {{0, 1, q(3), false}, {0, 1, q(8), true}});
  auto mc = mixed_cycle_oracle(m2, Direction::MaxMin);
  ASSERT_TRUE(mc);
  EXPECT_EQ(mc->value, q(3));

  PolarGraph ring(3, {{{0, 1}, {1, 0}, q(3)}, {{1, 1}, {2, 0}, q(1)}, {{2, 1}, {0, 0}, q(4)}});
  auto pr = regular_cycle_oracle(ring, Direction::MaxMin);
  ASSERT_TRUE(pr);
  EXPECT_EQ(pr->value, q(1));
  EXPECT_EQ(pr->entry_poles.size(), 3u);
}

TEST(Oracles, CurveHandValues) {
  const std::vector<Point3> sq{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  for (bool seg : {false, true}) {
    auto r = curve_enumeration_oracle(sq, seg);
    EXPECT_NEAR(r.theta, kPi / 2, kTol);
    EXPECT_EQ(r.curve.size(), 4u);
  }
  // Equilateral triangle with its center: the triangle itself is best.
  const double h = std::sqrt(3.0);
  const std::vector<Point3> tc{{0, 0, 0}, {2, 0, 0}, {1, h, 0}, {1, h / 3, 0}};
  EXPECT_NEAR(curve_enumeration_oracle(tc, false).theta, kPi / 3, kTol);
  EXPECT_THROW(curve_enumeration_oracle({{0, 0, 0}, {0, 0, 0}, {1, 0, 0}}, false), InvalidInput);
}

}  // namespace
