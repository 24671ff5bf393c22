#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "maxmin/oracles.hpp"
#include "maxmin/polar_cycles.hpp"
#include "support/cycle_check.hpp"
#include "support/generators.hpp"

namespace {

using namespace maxmin;
using maxmin::testing::check_cycle;
using maxmin::testing::Rng;
using maxmin::testing::uniform_int;

Quality w(double x) { return Quality::finite(x); }

// Alternating ring: each edge leaves vertex i at pole 1 and enters i+1 at pole 0.
PolarGraph ring(const std::vector<double>& weights) {
  const int n = static_cast<int>(weights.size());
  std::vector<PolarEdge> e;
  for (int i = 0; i < n; ++i) e.push_back({{i, 1}, {(i + 1) % n, 0}, w(weights[static_cast<std::size_t>(i)])});
  return PolarGraph(n, e);
}

// Vertex 0 with `d` edges to distinct leaves, split between its poles; each
// leaf is closed into a regular cycle back through vertex 0.
PolarGraph hub(int on_pole0, int on_pole1) {
  std::vector<PolarEdge> e;
  int next = 1;
  for (int k = 0; k < on_pole0; ++k, ++next) e.push_back({{0, 0}, {next, 0}, w(next)});
  for (int k = 0; k < on_pole1; ++k, ++next) e.push_back({{0, 1}, {next, 0}, w(next)});
  return PolarGraph(next, e);
}

int max_degree(const PolarGraph& g) {
  int d = 0;
  for (int v = 0; v < g.vertex_count(); ++v) d = std::max(d, g.degree(v));
  return d;
}

TEST(PolarGraph, Validation) {
  EXPECT_THROW(PolarGraph(2, {{{0, 0}, {0, 1}, w(1)}}), InvalidInput);
  EXPECT_THROW(PolarGraph(2, {{{0, 2}, {1, 1}, w(1)}}), InvalidInput);
  EXPECT_THROW(PolarGraph(2, {{{0, 0}, {2, 1}, w(1)}}), InvalidInput);
  auto g = ring({1, 2, 3});
  EXPECT_EQ(g.incident(0, 1), std::vector<int>{0});
  EXPECT_EQ(g.incident(0, 0), std::vector<int>{2});
}

TEST(ExpandDegree3, IdentityWhenDegreesSmall) {
  auto g = ring({3, 1, 4, 1});
  auto x = expand_degree3(g);
  EXPECT_EQ(x.graph.vertex_count(), 4);
  EXPECT_EQ(x.graph.edges(), g.edges());
  EXPECT_EQ(x.added_vertices, 0u);
  EXPECT_EQ(x.added_edges, 0u);
}

TEST(ExpandDegree3, DegreeSixBecomesTreeOfFourVertices) {
  for (auto [p0, p1] : {std::pair{3, 3}, std::pair{5, 1}, std::pair{6, 0}, std::pair{4, 2}}) {
    auto g = hub(p0, p1);
    auto x = expand_degree3(g);
    // d - 2 = 4 tree vertices (the original plus 3 new), joined by d - 3 = 3 edges.
    EXPECT_EQ(x.added_vertices, 3u);
    EXPECT_EQ(x.added_edges, 3u);
    EXPECT_EQ(x.graph.vertex_count(), g.vertex_count() + 3);
    EXPECT_EQ(x.graph.edge_count(), g.edge_count() + 3);
    EXPECT_LE(max_degree(x.graph), 3);
    int owned = 0;
    for (int v = 0; v < x.graph.vertex_count(); ++v) owned += x.owner[static_cast<std::size_t>(v)] == 0;
    EXPECT_EQ(owned, 4);
    for (std::size_t i = 0; i < x.graph.edge_count(); ++i) {
      if (x.source_edge[i] < 0) {
        EXPECT_EQ(x.graph.edges()[i].weight, Quality::pos_inf());
      } else {
        EXPECT_EQ(x.source_edge[i], static_cast<int>(i));
      }
    }
  }
}

TEST(ExpandDegree3, PreservesOracleOptimum) {
  Rng rng(61);
  int dense = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = uniform_int(rng, 2, 6);
    auto g = maxmin::testing::random_polar(rng, n, uniform_int(rng, 0, 12));
    auto x = expand_degree3(g);
    EXPECT_LE(max_degree(x.graph), 3);
    if (x.graph.vertex_count() > 9) continue;
    dense += x.added_vertices > 0;
    for (auto dir : {Direction::MaxMin, Direction::MinMax}) {
      auto before = regular_cycle_oracle(g, dir);
      // Tree edges must never bind: neutral weight for the requested direction.
      auto edges = x.graph.edges();
      if (dir == Direction::MinMax) {
        for (std::size_t i = 0; i < edges.size(); ++i)
          if (x.source_edge[i] < 0) edges[i].weight = Quality::neg_inf();
      }
      auto after = regular_cycle_oracle(PolarGraph(x.graph.vertex_count(), edges), dir);
      ASSERT_EQ(before.has_value(), after.has_value()) << "trial " << trial;
      if (before) {
        EXPECT_EQ(before->value, after->value) << "trial " << trial;
      }
    }
  }
  EXPECT_GT(dense, 10);
}

TEST(DoubleCover, SingleEdge) {
  PolarGraph g(2, {{{0, 1}, {1, 0}, w(5)}});
  auto dc = double_cover(g);
  EXPECT_EQ(dc.digraph.vertex_count(), 4);
  ASSERT_EQ(dc.digraph.edge_count(), 2u);
  // Leave 0 through pole 1 (entered at 0), arrive at 1 through pole 0.
  EXPECT_EQ(dc.digraph.edge(0).u, DoubleCover::copy(0, 0));
  EXPECT_EQ(dc.digraph.edge(0).v, DoubleCover::copy(1, 0));
  EXPECT_EQ(dc.digraph.edge(1).u, DoubleCover::copy(1, 1));
  EXPECT_EQ(dc.digraph.edge(1).v, DoubleCover::copy(0, 1));
}

TEST(DoubleCover, InvolutionIsSkewSymmetric) {
  Rng rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = maxmin::testing::random_polar(rng, uniform_int(rng, 2, 9), uniform_int(rng, 0, 20));
    auto dc = double_cover(g);
    for (std::size_t i = 0; i < dc.digraph.edge_count(); ++i) {
      const int id = static_cast<int>(i);
      const int m = DoubleCover::mirror_edge(id);
      EXPECT_EQ(DoubleCover::mirror_edge(m), id);
      const auto& e = dc.digraph.edge(id);
      const auto& f = dc.digraph.edge(m);
      EXPECT_EQ(f.u, DoubleCover::mirror_vertex(e.v));
      EXPECT_EQ(f.v, DoubleCover::mirror_vertex(e.u));
      EXPECT_EQ(f.weight, e.weight);
      EXPECT_EQ(dc.source_edge[i], dc.source_edge[static_cast<std::size_t>(m)]);
    }
  }
}

TEST(DoubleCover, CyclesProjectToPolarWalks) {
  Rng rng(63);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = maxmin::testing::random_polar(rng, uniform_int(rng, 2, 4), uniform_int(rng, 1, 7));
    auto dc = double_cover(g);
    auto c = directed_cycle_oracle(dc.digraph, Direction::MaxMin);
    if (!c) continue;
    // Consecutive arcs: arrival pole at a vertex is opposite to the departure pole.
    const std::size_t k = c->edges.size();
    for (std::size_t i = 0; i < k; ++i) {
      const auto& in = dc.digraph.edge(c->edges[i]);
      const auto& out = dc.digraph.edge(c->edges[(i + 1) % k]);
      ASSERT_EQ(in.v, out.u);
      const int vertex = in.v / 2, entry = in.v % 2;
      const auto& pe = g.edge(dc.source_edge[static_cast<std::size_t>(c->edges[(i + 1) % k])]);
      const bool leaves_opposite = (pe.a.vertex == vertex && pe.a.pole == 1 - entry && (c->edges[(i + 1) % k] % 2 == 0)) ||
                                   (pe.b.vertex == vertex && pe.b.pole == 1 - entry && (c->edges[(i + 1) % k] % 2 == 1));
      EXPECT_TRUE(leaves_opposite);
    }
  }
}

TEST(RegularPath, DirectEdge) {
  PolarGraph g(2, {{{0, 1}, {1, 0}, w(1)}});
  auto p = regular_path(g, {0, 1}, {1, 0});
  ASSERT_TRUE(p);
  EXPECT_EQ(*p, std::vector<int>{0});
  EXPECT_FALSE(regular_path(g, {0, 0}, {1, 0}));
}

TEST(RegularPath, BlockedBySamePoleVertex) {
  // 0 -> 1 -> 2, but both edges at vertex 1 sit on pole 0.
  PolarGraph g(3, {{{0, 1}, {1, 0}, w(1)}, {{1, 0}, {2, 0}, w(1)}});
  EXPECT_FALSE(regular_path(g, {0, 1}, {2, 0}));
  PolarGraph ok(3, {{{0, 1}, {1, 0}, w(1)}, {{1, 1}, {2, 0}, w(1)}});
  auto p = regular_path(ok, {0, 1}, {2, 0});
  ASSERT_TRUE(p);
  EXPECT_EQ(*p, (std::vector<int>{0, 1}));
}

// Exhaustive search over vertex-simple pole-alternating paths.
bool brute_regular_path(const PolarGraph& g, PolarEndpoint s, PolarEndpoint t) {
  std::vector<char> on(static_cast<std::size_t>(g.vertex_count()), 0);
  std::function<bool(int, int)> go = [&](int x, int leave) {
    for (int id : g.incident(x, leave)) {
      const auto to = g.edge(id).other(x);
      if (on[static_cast<std::size_t>(to.vertex)]) continue;
      if (to == t) return true;
      on[static_cast<std::size_t>(to.vertex)] = 1;
      if (to.vertex != t.vertex && go(to.vertex, 1 - to.pole)) return true;
      on[static_cast<std::size_t>(to.vertex)] = 0;
    }
    return false;
  };
  on[static_cast<std::size_t>(s.vertex)] = 1;
  return go(s.vertex, s.pole);
}

TEST(RegularPath, ExistenceMatchesEnumeration) {
  Rng rng(64);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = uniform_int(rng, 2, 9);
    auto g = expand_degree3(maxmin::testing::random_polar(rng, n, uniform_int(rng, 1, 14))).graph;
    if (g.vertex_count() > 9) continue;
    const PolarEndpoint s{uniform_int(rng, 0, g.vertex_count() - 1), uniform_int(rng, 0, 1)};
    PolarEndpoint t{uniform_int(rng, 0, g.vertex_count() - 1), uniform_int(rng, 0, 1)};
    if (s.vertex == t.vertex) continue;
    const bool exists = brute_regular_path(g, s, t);
    auto p = regular_path(g, s, t);
    ASSERT_EQ(p.has_value(), exists) << "trial " << trial;
    if (!p) continue;
    // Validate the returned path.
    int at = s.vertex, leave = s.pole;
    std::set<int> seen{at};
    for (int id : *p) {
      const auto& e = g.edge(id);
      ASSERT_EQ(e.at(at).pole, leave);
      const auto& to = e.other(at);
      ASSERT_TRUE(seen.insert(to.vertex).second);
      at = to.vertex;
      leave = 1 - to.pole;
    }
    EXPECT_EQ(at, t.vertex);
    EXPECT_EQ(1 - leave, t.pole);
  }
}

TEST(RegularCycle, AlternatingRing) {
  auto g = ring({3, 1, 4, 1});
  auto r = bottleneck_regular_cycle(g);
  EXPECT_EQ(r.value, w(1));
  EXPECT_EQ(r.edges.size(), 4u);
  EXPECT_EQ(check_cycle(g, r), "");
  auto mm = bottleneck_regular_cycle(g, Direction::MinMax);
  EXPECT_EQ(mm.value, w(4));
}

TEST(RegularCycle, SinglePoleVertexHasNoCycle) {
  // Vertex 0 carries every edge on pole 0.
  PolarGraph g(3, {{{0, 0}, {1, 0}, w(1)}, {{0, 0}, {2, 1}, w(2)}, {{1, 1}, {2, 0}, w(3)}});
  EXPECT_THROW(bottleneck_regular_cycle(g), NoCycle);
  EXPECT_FALSE(regular_cycle_oracle(g, Direction::MaxMin));
}

TEST(RegularCycle, TwoEdgeCycle) {
  PolarGraph g(2, {{{0, 0}, {1, 1}, w(2)}, {{0, 1}, {1, 0}, w(7)}});
  auto r = bottleneck_regular_cycle(g);
  EXPECT_EQ(r.value, w(2));
  EXPECT_EQ(r.edges.size(), 2u);
  EXPECT_EQ(check_cycle(g, r), "");
}

TEST(RegularCycle, MatchesOracleBothEngines) {
  Rng rng(65);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = uniform_int(rng, 1, 9);
    auto g = maxmin::testing::random_polar(rng, n, uniform_int(rng, 0, 16));
    for (auto dir : {Direction::MaxMin, Direction::MinMax}) {
      auto o = regular_cycle_oracle(g, dir);
      for (auto engine : {PolarEngine::Stepwise, PolarEngine::PrefixSearch}) {
        if (!o) {
          EXPECT_THROW(bottleneck_regular_cycle(g, dir, engine), NoCycle) << "trial " << trial;
          continue;
        }
        auto r = bottleneck_regular_cycle(g, dir, engine);
        EXPECT_EQ(r.value, o->value) << "trial " << trial;
        EXPECT_EQ(check_cycle(g, r), "") << "trial " << trial;
      }
    }
  }
}

TEST(RegularCycle, EnginesAgreeOnLargerGraphs) {
  Rng rng(66);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = uniform_int(rng, 10, 80);
    auto g = maxmin::testing::random_polar(rng, n, uniform_int(rng, n, 3 * n));
    try {
      auto a = bottleneck_regular_cycle(g, Direction::MaxMin, PolarEngine::Stepwise);
      auto b = bottleneck_regular_cycle(g, Direction::MaxMin, PolarEngine::PrefixSearch);
      EXPECT_EQ(a.value, b.value);
      EXPECT_EQ(check_cycle(g, a), "");
      EXPECT_EQ(check_cycle(g, b), "");
    } catch (const NoCycle&) {
      EXPECT_THROW(bottleneck_regular_cycle(g, Direction::MaxMin, PolarEngine::PrefixSearch), NoCycle);
    }
  }
}

// Replays the stepwise trace on the expanded graph and re-checks each
// removal's justification.
TEST(RegularCycle, TraceRemovalsAreJustified) {
  Rng rng(67);
  int bridges = 0, singles = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(rng, 2, 12);
    auto p = maxmin::testing::random_polar(rng, n, uniform_int(rng, 1, 20));
    PolarGreedyTrace trace;
    try {
      bottleneck_regular_cycle(p, Direction::MaxMin, PolarEngine::Stepwise, &trace);
    } catch (const NoCycle&) {
    }
    EXPECT_EQ(trace.engine, PolarEngine::Stepwise);
    const auto g = expand_degree3(p).graph;
    std::vector<char> live(g.edge_count(), 1);
    auto connected_without = [&](int skip, int s, int t) {
      std::vector<int> seen{s};
      std::vector<char> mark(static_cast<std::size_t>(g.vertex_count()), 0);
      mark[static_cast<std::size_t>(s)] = 1;
      for (std::size_t h = 0; h < seen.size(); ++h)
        for (int pole = 0; pole < 2; ++pole)
          for (int id : g.incident(seen[h], pole)) {
            if (!live[static_cast<std::size_t>(id)] || id == skip) continue;
            const int y = g.edge(id).other(seen[h]).vertex;
            if (!mark[static_cast<std::size_t>(y)]) mark[static_cast<std::size_t>(y)] = 1, seen.push_back(y);
          }
      return mark[static_cast<std::size_t>(t)] != 0;
    };
    for (const auto& ev : trace.events) {
      if (ev.kind == PolarEvent::Kind::SinglePole) {
        ++singles;
        int used[2] = {0, 0};
        for (int pole = 0; pole < 2; ++pole)
          for (int id : g.incident(ev.id, pole)) used[pole] += live[static_cast<std::size_t>(id)];
        EXPECT_TRUE(used[0] + used[1] > 0 && (used[0] == 0 || used[1] == 0));
        for (int pole = 0; pole < 2; ++pole)
          for (int id : g.incident(ev.id, pole)) live[static_cast<std::size_t>(id)] = 0;
        continue;
      }
      ASSERT_TRUE(live[static_cast<std::size_t>(ev.id)]);
      if (ev.kind == PolarEvent::Kind::Bridge) {
        ++bridges;
        const auto& e = g.edge(ev.id);
        EXPECT_FALSE(connected_without(ev.id, e.a.vertex, e.b.vertex)) << "trial " << trial;
      }
      live[static_cast<std::size_t>(ev.id)] = 0;
    }
    EXPECT_TRUE(std::none_of(live.begin(), live.end(), [](char c) { return c != 0; }));
  }
  EXPECT_GT(bridges, 0);
  EXPECT_GT(singles, 0);
}

}  // namespace
