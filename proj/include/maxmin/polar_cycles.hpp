#pragma once

// Bottleneck regular cycles in polar graphs.
//
// Every edge end attaches to one of two poles of its vertex. A regular path
// or cycle is vertex-simple and enters and leaves each inner vertex through
// opposite poles.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maxmin/errors.hpp"
#include "maxmin/graph_cycles.hpp"
#include "maxmin/graph_types.hpp"
#include "maxmin/quality.hpp"

namespace maxmin {

/// Polar graph of maximum degree 3 whose regular cycles correspond to those
/// of the source graph.
struct PolarExpansion {
  PolarGraph graph;
  std::vector<int> source_edge;  // per edge: source edge id, or -1 for a tree edge
  std::vector<int> owner;        // per vertex: source vertex
  std::size_t added_vertices = 0;
  std::size_t added_edges = 0;
};

/// Replaces every vertex of degree d > 3 by a tree of d - 2 degree-3
/// vertices joined by d - 3 new edges of weight +inf. A vertex with at
/// least two edges on each pole is split into two vertices holding one pole
/// each, joined from the first one's free pole to the second one's; a vertex
/// with at most one edge on some pole has two edges of its busy pole peeled
/// onto a new vertex whose other pole connects back to that busy pole.
/// Source edges keep their ids; tree edges follow.
inline PolarExpansion expand_degree3(const PolarGraph& p) {
  PolarExpansion x;
  std::vector<PolarEdge> edges = p.edges();
  x.source_edge.resize(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) x.source_edge[i] = static_cast<int>(i);
  x.owner.resize(static_cast<std::size_t>(p.vertex_count()));
  for (int v = 0; v < p.vertex_count(); ++v) x.owner[static_cast<std::size_t>(v)] = v;
  int next_vertex = p.vertex_count();

  // An edge end is (edge id, which side); moving it rewrites that side.
  struct End {
    int edge;
    bool side_a;
  };
  auto place = [&](const End& e, int vertex, int pole) {
    auto& end = e.side_a ? edges[static_cast<std::size_t>(e.edge)].a : edges[static_cast<std::size_t>(e.edge)].b;
    end = {vertex, pole};
  };
  auto new_tree_edge = [&](PolarEndpoint from, PolarEndpoint to) {
    edges.push_back({from, to, Quality::pos_inf()});
    x.source_edge.push_back(-1);
    ++x.added_edges;
    return static_cast<int>(edges.size()) - 1;
  };

  struct Work {
    int vertex;
    std::vector<End> pole0, pole1;
  };
  std::vector<Work> stack;
  for (int v = 0; v < p.vertex_count(); ++v) {
    if (p.degree(v) <= 3) continue;
    Work w{v, {}, {}};
    for (int pole = 0; pole < 2; ++pole)
      for (int id : p.incident(v, pole)) {
        const auto& e = p.edge(id);
        (pole == 0 ? w.pole0 : w.pole1).push_back({id, e.a.vertex == v && e.a.pole == pole});
      }
    stack.push_back(std::move(w));
  }

  while (!stack.empty()) {
    Work w = std::move(stack.back());
    stack.pop_back();
    if (w.pole0.size() + w.pole1.size() <= 3) {
      for (const auto& e : w.pole0) place(e, w.vertex, 0);
      for (const auto& e : w.pole1) place(e, w.vertex, 1);
      continue;
    }
    const int fresh = next_vertex++;
    x.owner.push_back(x.owner[static_cast<std::size_t>(w.vertex)]);
    ++x.added_vertices;
    if (w.pole0.size() >= 2 && w.pole1.size() >= 2) {
      // w.vertex keeps pole 0; fresh takes pole 1; tree edge (w,1)-(fresh,0).
      const int t = new_tree_edge({w.vertex, 1}, {fresh, 0});
      stack.push_back({fresh, {{t, false}}, std::move(w.pole1)});
      stack.push_back({w.vertex, std::move(w.pole0), {{t, true}}});
      continue;
    }
    // Peel two edges of the busy pole onto fresh's pole 0; fresh's pole 1
    // connects back to the busy pole.
    const int busy = w.pole0.size() >= w.pole1.size() ? 0 : 1;
    auto& list = busy == 0 ? w.pole0 : w.pole1;
    place(list[list.size() - 1], fresh, 0);
    place(list[list.size() - 2], fresh, 0);
    list.resize(list.size() - 2);
    const int t = new_tree_edge({fresh, 1}, {w.vertex, busy});
    list.push_back({t, false});
    stack.push_back(std::move(w));
  }
  x.graph = PolarGraph(next_vertex, std::move(edges));
  return x;
}

/// Skew-symmetric digraph with copy 2v + p for "v entered through pole p".
/// Polar edge i gives directed edge 2i from the copy of its a-end vertex
/// that leaves through a.pole to the copy of b.vertex entered through b.pole,
/// and edge 2i + 1 the other way.
struct DoubleCover {
  WeightedDigraph digraph;
  std::vector<int> source_edge;  // per directed edge: polar edge id
  /// Swaps the two copies of each vertex.
  static int mirror_vertex(int c) { return c ^ 1; }
  /// Maps each directed edge to its reversed mirror image.
  static int mirror_edge(int id) { return id ^ 1; }
  static int copy(int vertex, int entry_pole) { return 2 * vertex + entry_pole; }
};

inline DoubleCover double_cover(const PolarGraph& p) {
  DoubleCover dc;
  std::vector<WeightedEdge> arcs;
  arcs.reserve(2 * p.edge_count());
  for (std::size_t i = 0; i < p.edge_count(); ++i) {
    const auto& e = p.edges()[i];
    arcs.push_back({DoubleCover::copy(e.a.vertex, 1 - e.a.pole), DoubleCover::copy(e.b.vertex, e.b.pole), e.weight});
    arcs.push_back({DoubleCover::copy(e.b.vertex, 1 - e.b.pole), DoubleCover::copy(e.a.vertex, e.a.pole), e.weight});
    dc.source_edge.push_back(static_cast<int>(i));
    dc.source_edge.push_back(static_cast<int>(i));
  }
  dc.digraph = WeightedDigraph(2 * p.vertex_count(), std::move(arcs));
  return dc;
}

/// Vertex count above which regular_path logs a size warning.
inline constexpr std::size_t kRegularPathWarnVertices = 10000;

/// Regular path that leaves `start.vertex` through `start.pole` and arrives
/// at `goal.vertex` through `goal.pole`, using only edges with allowed[id]
/// (all edges when `allowed` is empty). Exhaustive backtracking over vertex
/// sets, pruned by reachability in the double cover.
inline std::optional<std::vector<int>> regular_path(const PolarGraph& p, PolarEndpoint start, PolarEndpoint goal,
                                                    const std::vector<char>& allowed = {},
                                                    std::vector<std::string>* diagnostics = nullptr) {
  const int n = p.vertex_count();
  if (start.vertex == goal.vertex) throw InvalidInput("regular_path: start and goal must differ");
  if (diagnostics && static_cast<std::size_t>(n) > kRegularPathWarnVertices)
    diagnostics->push_back("regular path search on " + std::to_string(n) + " vertices may be slow");
  auto ok = [&](int id) { return allowed.empty() || allowed[static_cast<std::size_t>(id)]; };

  // Copies that can reach the goal copy in the double cover.
  std::vector<char> reach(2 * static_cast<std::size_t>(n), 0);
  {
    const int g = DoubleCover::copy(goal.vertex, goal.pole);
    std::vector<int> queue{g};
    reach[static_cast<std::size_t>(g)] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      // Predecessors of copy (w, q): edges at (w, q) arriving from (y, r),
      // whose tail copy is (y, 1 - r).
      const int w = queue[h] / 2, q = queue[h] % 2;
      for (int id : p.incident(w, q)) {
        if (!ok(id)) continue;
        const auto& from = p.edge(id).other(w);
        const int c = DoubleCover::copy(from.vertex, 1 - from.pole);
        if (!reach[static_cast<std::size_t>(c)]) {
          reach[static_cast<std::size_t>(c)] = 1;
          queue.push_back(c);
        }
      }
    }
  }
  if (!reach[static_cast<std::size_t>(DoubleCover::copy(start.vertex, 1 - start.pole))]) return std::nullopt;

  std::vector<char> used(static_cast<std::size_t>(n), 0);
  used[static_cast<std::size_t>(start.vertex)] = 1;
  struct Frame {
    int vertex;
    int exit_pole;
    std::size_t next;  // position in incident(vertex, exit_pole)
    int via;           // edge used to arrive (-1 at the start)
  };
  std::vector<Frame> stack{{start.vertex, start.pole, 0, -1}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& list = p.incident(f.vertex, f.exit_pole);
    if (f.next == list.size()) {
      used[static_cast<std::size_t>(f.vertex)] = f.vertex == start.vertex ? 1 : 0;
      stack.pop_back();
      continue;
    }
    const int id = list[f.next++];
    if (!ok(id)) continue;
    const auto& to = p.edge(id).other(f.vertex);
    if (to.vertex == goal.vertex) {
      if (to.pole != goal.pole) continue;
      std::vector<int> path;
      for (std::size_t k = 1; k < stack.size(); ++k) path.push_back(stack[k].via);
      path.push_back(id);
      return path;
    }
    if (used[static_cast<std::size_t>(to.vertex)] || !reach[static_cast<std::size_t>(DoubleCover::copy(to.vertex, to.pole))])
      continue;
    used[static_cast<std::size_t>(to.vertex)] = 1;
    stack.push_back({to.vertex, 1 - to.pole, 0, id});
  }
  return std::nullopt;
}

namespace detail {

/// Live edge set of a polar graph with per-(vertex, pole) live degrees.
class PolarLive {
 public:
  explicit PolarLive(const PolarGraph& g) : g_(&g), alive_(g.edge_count(), 1), deg_(2 * static_cast<std::size_t>(g.vertex_count()), 0) {
    for (int v = 0; v < g.vertex_count(); ++v)
      for (int q = 0; q < 2; ++q) deg_[slot(v, q)] = static_cast<int>(g.incident(v, q).size());
    live_ = g.edge_count();
  }
  bool alive(int id) const { return alive_[static_cast<std::size_t>(id)] != 0; }
  std::size_t live_count() const { return live_; }
  const std::vector<char>& mask() const { return alive_; }
  int degree(int v, int q) const { return deg_[slot(v, q)]; }
  bool single_pole(int v) const { return (degree(v, 0) == 0) != (degree(v, 1) == 0); }

  void kill(int id) {
    if (!alive_[static_cast<std::size_t>(id)]) return;
    alive_[static_cast<std::size_t>(id)] = 0;
    --live_;
    const auto& e = g_->edge(id);
    --deg_[slot(e.a.vertex, e.a.pole)];
    --deg_[slot(e.b.vertex, e.b.pole)];
  }

  /// Removes all live edges at v.
  void kill_vertex(int v) {
    for (int q = 0; q < 2; ++q)
      for (int id : g_->incident(v, q)) kill(id);
  }

  /// Peels single-pole vertices until none remain; returns peeled vertices.
  std::vector<int> peel(std::vector<int> candidates) {
    std::vector<int> peeled;
    while (!candidates.empty()) {
      const int v = candidates.back();
      candidates.pop_back();
      if (!single_pole(v)) continue;
      peeled.push_back(v);
      for (int q = 0; q < 2; ++q)
        for (int id : g_->incident(v, q)) {
          if (!alive(id)) continue;
          kill(id);
          candidates.push_back(g_->edge(id).other(v).vertex);
        }
    }
    return peeled;
  }

  std::vector<int> all_vertices() const {
    std::vector<int> v(static_cast<std::size_t>(g_->vertex_count()));
    for (int i = 0; i < g_->vertex_count(); ++i) v[static_cast<std::size_t>(i)] = i;
    return v;
  }

  /// Bridges of the live underlying multigraph, ascending by id.
  std::vector<int> bridges() const {
    const int n = g_->vertex_count();
    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<int> out;
    struct Frame {
      int v, parent_edge;
      int pole;
      std::size_t next;
    };
    int clock = 0;
    for (int root = 0; root < n; ++root) {
      if (disc[static_cast<std::size_t>(root)] >= 0 || degree(root, 0) + degree(root, 1) == 0) continue;
      std::vector<Frame> stack{{root, -1, 0, 0}};
      disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = clock++;
      while (!stack.empty()) {
        Frame& f = stack.back();
        const auto& list = g_->incident(f.v, f.pole);
        if (f.next == list.size()) {
          if (f.pole == 0) {
            f.pole = 1;
            f.next = 0;
            continue;
          }
          const Frame done = f;
          stack.pop_back();
          if (!stack.empty()) {
            const int parent = stack.back().v;
            auto& lp = low[static_cast<std::size_t>(parent)];
            lp = std::min(lp, low[static_cast<std::size_t>(done.v)]);
            if (low[static_cast<std::size_t>(done.v)] > disc[static_cast<std::size_t>(parent)]) out.push_back(done.parent_edge);
          }
          continue;
        }
        const int id = list[f.next++];
        if (!alive(id) || id == f.parent_edge) continue;
        const int w = g_->edge(id).other(f.v).vertex;
        if (disc[static_cast<std::size_t>(w)] < 0) {
          disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = clock++;
          stack.push_back({w, id, 0, 0});
        } else {
          auto& lv = low[static_cast<std::size_t>(f.v)];
          lv = std::min(lv, disc[static_cast<std::size_t>(w)]);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Removes single-pole vertices and bridges until neither remains.
  void reduce() {
    peel(all_vertices());
    for (;;) {
      auto br = bridges();
      if (br.empty()) return;
      std::vector<int> touched;
      for (int id : br) {
        kill(id);
        touched.push_back(g_->edge(id).a.vertex);
        touched.push_back(g_->edge(id).b.vertex);
      }
      peel(std::move(touched));
    }
  }

 private:
  std::size_t slot(int v, int q) const { return 2 * static_cast<std::size_t>(v) + static_cast<std::size_t>(q); }

  const PolarGraph* g_;
  std::vector<char> alive_;
  std::vector<int> deg_;
  std::size_t live_ = 0;
};

}  // namespace detail

/// How the bottleneck edge of a degree-3 polar graph is located.
enum class PolarEngine {
  /// Stepwise below kPolarStepwiseMaxEdges edges, PrefixSearch above.
  Auto,
  /// One removal at a time: single-pole vertices first, then a bridge, then
  /// the lightest live edge. Bridges are recomputed for every check.
  Stepwise,
  /// Binary search for the shortest prefix of the (weight, id) order whose
  /// removal, followed by exhaustive single-pole and bridge removal, empties
  /// the graph. Finds the same bottleneck edge and pre-removal state.
  PrefixSearch,
};

inline constexpr std::size_t kPolarStepwiseMaxEdges = 2000;

struct PolarEvent {
  enum class Kind { SinglePole, Bridge, Lightest };
  Kind kind;
  int id;  // vertex for SinglePole, edge otherwise
};

struct PolarGreedyTrace {
  std::vector<PolarEvent> events;  // Stepwise engine only
  PolarEngine engine = PolarEngine::Auto;
  std::size_t reductions = 0;      // PrefixSearch reduce() calls
};

namespace detail {

struct PolarBottleneck {
  int edge = -1;                 // -1 when there is no regular cycle
  std::vector<char> state;       // live edges just before `edge` was removed
};

inline PolarBottleneck polar_stepwise(const PolarGraph& g, PolarGreedyTrace& trace) {
  PolarLive live(g);
  std::vector<int> order(g.edge_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), weight_order(g.edges()));
  std::size_t cursor = 0;
  PolarBottleneck out;
  while (live.live_count() > 0) {
    int single = -1;
    for (int v = 0; v < g.vertex_count() && single < 0; ++v)
      if (live.single_pole(v)) single = v;
    if (single >= 0) {
      trace.events.push_back({PolarEvent::Kind::SinglePole, single});
      live.kill_vertex(single);
      continue;
    }
    auto br = live.bridges();
    if (!br.empty()) {
      trace.events.push_back({PolarEvent::Kind::Bridge, br.front()});
      live.kill(br.front());
      continue;
    }
    while (!live.alive(order[cursor])) ++cursor;
    out.edge = order[cursor];
    out.state = live.mask();
    trace.events.push_back({PolarEvent::Kind::Lightest, out.edge});
    live.kill(out.edge);
  }
  return out;
}

inline PolarBottleneck polar_prefix_search(const PolarGraph& g, PolarGreedyTrace& trace) {
  std::vector<int> order(g.edge_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), weight_order(g.edges()));
  auto reduced = [&](std::size_t t) {
    PolarLive live(g);
    for (std::size_t k = 0; k < t; ++k) live.kill(order[k]);
    live.reduce();
    ++trace.reductions;
    return live;
  };
  PolarBottleneck out;
  if (g.edge_count() == 0 || reduced(0).live_count() == 0) return out;
  std::size_t lo = 0, hi = g.edge_count();  // R(lo) nonempty, R(hi) empty
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (reduced(mid).live_count() > 0 ? lo : hi) = mid;
  }
  out.edge = order[hi - 1];
  out.state = reduced(lo).mask();
  if (!out.state[static_cast<std::size_t>(out.edge)]) throw InvalidState("polar prefix search: bottleneck edge not live");
  return out;
}

}  // namespace detail

/// Bottleneck regular cycle of a polar graph. Vertices of degree > 3 are
/// first expanded into trees; the bottleneck edge is located by the chosen
/// engine and the cycle is closed by a regular path, in the state just
/// before that edge was removed, between its two ends' opposite poles.
inline CycleResult bottleneck_regular_cycle(const PolarGraph& p, Direction dir = Direction::MaxMin,
                                            PolarEngine engine = PolarEngine::Auto,
                                            PolarGreedyTrace* trace = nullptr) {
  if (dir == Direction::MinMax) {
    auto edges = p.edges();
    for (auto& e : edges) e.weight = -e.weight;
    auto r = bottleneck_regular_cycle(PolarGraph(p.vertex_count(), std::move(edges)), Direction::MaxMin, engine, trace);
    r.value = -r.value;
    r.direction = Direction::MinMax;
    return r;
  }
  const PolarExpansion x = expand_degree3(p);
  const PolarGraph& g = x.graph;
  PolarGreedyTrace local;
  auto& tr = trace ? *trace : local;
  tr = {};
  if (engine == PolarEngine::Auto)
    engine = g.edge_count() <= kPolarStepwiseMaxEdges ? PolarEngine::Stepwise : PolarEngine::PrefixSearch;
  tr.engine = engine;
  auto found = engine == PolarEngine::Stepwise ? detail::polar_stepwise(g, tr) : detail::polar_prefix_search(g, tr);
  if (found.edge < 0) throw NoCycle("polar graph has no regular cycle");

  CycleResult r;
  const auto& star = g.edge(found.edge);
  auto allowed = found.state;
  allowed[static_cast<std::size_t>(found.edge)] = 0;
  // Cycle: a-end --star--> b-end, then from b's other pole back to a's other pole.
  auto path = regular_path(g, {star.b.vertex, 1 - star.b.pole}, {star.a.vertex, 1 - star.a.pole}, allowed,
                           &r.diagnostics);
  if (!path) throw InvalidState("bottleneck_regular_cycle: no regular path closes the bottleneck edge");

  // Walk the expanded cycle and keep source edges only.
  std::vector<int> cyc{found.edge};
  cyc.insert(cyc.end(), path->begin(), path->end());
  int at = star.a.vertex;
  r.value = Quality::pos_inf();
  for (int id : cyc) {
    const auto& e = g.edge(id);
    const PolarEndpoint from = e.at(at);
    const PolarEndpoint to = e.other(at);
    const int src = x.source_edge[static_cast<std::size_t>(id)];
    if (src >= 0) {
      const auto& se = p.edge(src);
      const int v = x.owner[static_cast<std::size_t>(from.vertex)];
      r.vertices.push_back(v);
      r.edges.push_back(src);
      r.exit_poles.push_back(se.at(v).pole);
      r.value = std::min(r.value, se.weight);
    }
    at = to.vertex;
  }
  if (r.edges.empty()) throw InvalidState("bottleneck_regular_cycle: cycle of tree edges only");
  const std::size_t k = r.edges.size();
  r.entry_poles.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& prev = p.edge(r.edges[(i + k - 1) % k]);
    r.entry_poles[i] = prev.at(r.vertices[i]).pole;
  }
  if (r.value != star.weight) throw InvalidState("bottleneck_regular_cycle: cycle value mismatch");
  r.direction = Direction::MaxMin;
  return r;
}

}  // namespace maxmin
