#pragma once

// Bottleneck cycles in undirected, directed and mixed graphs.
//
// MaxMin asks for the cycle whose lightest edge is heaviest; MinMax for the
// cycle whose heaviest edge is lightest. MinMax is solved as MaxMin on
// negated weights. Ties between equal weights are broken by edge id, so all
// edges are totally ordered by (weight, id).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maxmin/errors.hpp"
#include "maxmin/graph_types.hpp"
#include "maxmin/quality.hpp"

namespace maxmin {

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      int& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    parent_[static_cast<std::size_t>(a)] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

/// Strict total order on edge ids by (weight, id).
template <class Edges>
auto weight_order(const Edges& edges) {
  return [&edges](int a, int b) {
    const auto& wa = edges[static_cast<std::size_t>(a)].weight;
    const auto& wb = edges[static_cast<std::size_t>(b)].weight;
    if (wa != wb) return wa < wb;
    return a < b;
  };
}

inline std::vector<WeightedEdge> negated(std::vector<WeightedEdge> edges) {
  for (auto& e : edges) e.weight = -e.weight;
  return edges;
}

/// Undirected path from s to t using only edges with allowed[id], as edge ids.
inline std::optional<std::vector<int>> undirected_path(int n, const std::vector<WeightedEdge>& edges,
                                                       const std::vector<char>& allowed, int s, int t) {
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!allowed[i]) continue;
    adj[static_cast<std::size_t>(edges[i].u)].emplace_back(edges[i].v, static_cast<int>(i));
    adj[static_cast<std::size_t>(edges[i].v)].emplace_back(edges[i].u, static_cast<int>(i));
  }
  std::vector<int> via(static_cast<std::size_t>(n), -2);
  std::vector<int> queue{s};
  via[static_cast<std::size_t>(s)] = -1;
  for (std::size_t h = 0; h < queue.size() && via[static_cast<std::size_t>(t)] == -2; ++h) {
    int x = queue[h];
    for (auto [y, id] : adj[static_cast<std::size_t>(x)]) {
      if (via[static_cast<std::size_t>(y)] != -2) continue;
      via[static_cast<std::size_t>(y)] = id;
      queue.push_back(y);
    }
  }
  if (via[static_cast<std::size_t>(t)] == -2) return std::nullopt;
  std::vector<int> path;
  for (int x = t; x != s;) {
    int id = via[static_cast<std::size_t>(x)];
    path.push_back(id);
    const auto& e = edges[static_cast<std::size_t>(id)];
    x = e.u == x ? e.v : e.u;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

/// Directed path from s to t using only edges with allowed[id].
inline std::optional<std::vector<int>> directed_path(int n, const std::vector<WeightedEdge>& edges,
                                                     const std::vector<char>& allowed, int s, int t) {
  std::vector<std::size_t> off(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (allowed[i]) ++off[static_cast<std::size_t>(edges[i].u) + 1];
  for (int v = 0; v < n; ++v) off[static_cast<std::size_t>(v) + 1] += off[static_cast<std::size_t>(v)];
  std::vector<int> out(off.back());
  std::vector<std::size_t> fill(off.begin(), off.end() - 1);
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (allowed[i]) out[fill[static_cast<std::size_t>(edges[i].u)]++] = static_cast<int>(i);
  std::vector<int> via(static_cast<std::size_t>(n), -2);
  std::vector<int> queue{s};
  via[static_cast<std::size_t>(s)] = -1;
  for (std::size_t h = 0; h < queue.size() && via[static_cast<std::size_t>(t)] == -2; ++h) {
    int x = queue[h];
    for (std::size_t k = off[static_cast<std::size_t>(x)]; k < off[static_cast<std::size_t>(x) + 1]; ++k) {
      int id = out[k];
      int y = edges[static_cast<std::size_t>(id)].v;
      if (via[static_cast<std::size_t>(y)] != -2) continue;
      via[static_cast<std::size_t>(y)] = id;
      queue.push_back(y);
    }
  }
  if (via[static_cast<std::size_t>(t)] == -2) return std::nullopt;
  std::vector<int> path;
  for (int x = t; x != s;) {
    int id = via[static_cast<std::size_t>(x)];
    path.push_back(id);
    x = edges[static_cast<std::size_t>(id)].u;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

/// Cycle made of `first` followed by `path`, which returns to first's tail.
inline CycleResult close_cycle(const std::vector<WeightedEdge>& edges, int first, const std::vector<int>& path,
                               bool undirected) {
  CycleResult r;
  const auto& e = edges[static_cast<std::size_t>(first)];
  r.value = e.weight;
  r.edges.push_back(first);
  r.vertices.push_back(e.u);
  int at = e.v;
  for (int id : path) {
    r.vertices.push_back(at);
    r.edges.push_back(id);
    const auto& f = edges[static_cast<std::size_t>(id)];
    at = (undirected && f.v == at) ? f.u : f.v;
  }
  for (int id : r.edges) r.value = std::min(r.value, edges[static_cast<std::size_t>(id)].weight);
  return r;
}

/// Bottleneck edge of an undirected multigraph under the (weight, id) order:
/// the edge e such that the edges >= e contain a cycle and the edges > e do
/// not. Recurses on the heavier half when it has a cycle, otherwise
/// contracts it and recurses on the lighter half.
inline int undirected_bottleneck_edge(const WeightedMultigraph& g) {
  const auto& all = g.edges();
  const auto less = weight_order(all);
  struct Local {
    int u, v, id;
  };
  std::vector<Local> cur;
  cur.reserve(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) cur.push_back({all[i].u, all[i].v, static_cast<int>(i)});
  int labels = g.vertex_count();

  {
    UnionFind uf(labels);
    bool cyclic = false;
    for (const auto& e : cur) cyclic = !uf.unite(e.u, e.v) || cyclic;
    if (!cyclic) return -1;
  }
  // Invariant: `cur` contains a cycle.
  while (cur.size() > 1) {
    const std::size_t half = cur.size() / 2;
    std::nth_element(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(half), cur.end(),
                     [&](const Local& a, const Local& b) { return less(a.id, b.id); });
    std::vector<Local> light(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(half));
    std::vector<Local> heavy(cur.begin() + static_cast<std::ptrdiff_t>(half), cur.end());
    UnionFind uf(labels);
    bool cyclic = false;
    for (const auto& e : heavy) cyclic = !uf.unite(e.u, e.v) || cyclic;
    if (cyclic) {
      cur = std::move(heavy);
      continue;
    }
    // Heavy half is a forest: contract it and keep the light half.
    std::vector<int> relabel(static_cast<std::size_t>(labels), -1);
    int next = 0;
    for (int x = 0; x < labels; ++x) {
      int r = uf.find(x);
      if (relabel[static_cast<std::size_t>(r)] < 0) relabel[static_cast<std::size_t>(r)] = next++;
    }
    for (auto& e : light) {
      e.u = relabel[static_cast<std::size_t>(uf.find(e.u))];
      e.v = relabel[static_cast<std::size_t>(uf.find(e.v))];
    }
    labels = next;
    cur = std::move(light);
  }
  return cur.front().id;
}

}  // namespace detail

/// Bottleneck cycle of an undirected multigraph. Throws NoCycle on forests.
inline CycleResult bottleneck_cycle_undirected(const WeightedMultigraph& g, Direction dir = Direction::MaxMin) {
  if (dir == Direction::MinMax) {
    auto r = bottleneck_cycle_undirected(WeightedMultigraph(g.vertex_count(), detail::negated(g.edges())));
    r.value = -r.value;
    r.direction = Direction::MinMax;
    return r;
  }
  const int star = detail::undirected_bottleneck_edge(g);
  if (star < 0) throw NoCycle("graph is a forest");
  const auto& edges = g.edges();
  const auto less = detail::weight_order(edges);
  std::vector<char> heavier(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) heavier[i] = less(star, static_cast<int>(i));
  const auto& e = edges[static_cast<std::size_t>(star)];
  auto path = detail::undirected_path(g.vertex_count(), edges, heavier, e.v, e.u);
  if (!path) throw InvalidState("bottleneck_cycle_undirected: no path closes the bottleneck edge");
  auto r = detail::close_cycle(edges, star, *path, true);
  if (r.value != e.weight) throw InvalidState("bottleneck_cycle_undirected: cycle value mismatch");
  return r;
}

namespace detail {

struct SortedGreedyRun {
  int bottleneck = -1;              // last edge removed by the weight rule
  std::vector<int> removal_time;    // per edge, order of removal
  std::size_t edge_removals = 0;    // removals by the weight rule
};

/// Removes vertices with no incoming or no outgoing live edge while any
/// exist, otherwise the next live edge of `order`, until no edge is left.
inline SortedGreedyRun sorted_greedy(const WeightedDigraph& g, const std::vector<int>& order) {
  const int n = g.vertex_count();
  const auto& edges = g.edges();
  const std::size_t m = edges.size();
  if (order.size() != m) throw InvalidInput("sorted greedy: order must list every edge once");

  std::vector<std::size_t> out_off(static_cast<std::size_t>(n) + 1, 0), in_off(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : edges) {
    ++out_off[static_cast<std::size_t>(e.u) + 1];
    ++in_off[static_cast<std::size_t>(e.v) + 1];
  }
  for (int v = 0; v < n; ++v) {
    out_off[static_cast<std::size_t>(v) + 1] += out_off[static_cast<std::size_t>(v)];
    in_off[static_cast<std::size_t>(v) + 1] += in_off[static_cast<std::size_t>(v)];
  }
  std::vector<int> out_adj(m), in_adj(m);
  {
    std::vector<std::size_t> fo(out_off.begin(), out_off.end() - 1), fi(in_off.begin(), in_off.end() - 1);
    for (std::size_t i = 0; i < m; ++i) {
      out_adj[fo[static_cast<std::size_t>(edges[i].u)]++] = static_cast<int>(i);
      in_adj[fi[static_cast<std::size_t>(edges[i].v)]++] = static_cast<int>(i);
    }
  }

  SortedGreedyRun run;
  run.removal_time.assign(m, -1);
  std::vector<int> indeg(static_cast<std::size_t>(n)), outdeg(static_cast<std::size_t>(n));
  std::vector<char> vertex_alive(static_cast<std::size_t>(n), 1);
  std::vector<int> ready;
  for (int v = 0; v < n; ++v) {
    indeg[static_cast<std::size_t>(v)] = static_cast<int>(in_off[static_cast<std::size_t>(v) + 1] - in_off[static_cast<std::size_t>(v)]);
    outdeg[static_cast<std::size_t>(v)] = static_cast<int>(out_off[static_cast<std::size_t>(v) + 1] - out_off[static_cast<std::size_t>(v)]);
    if (indeg[static_cast<std::size_t>(v)] == 0 || outdeg[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
  }
  int clock = 0;
  std::size_t live_edges = m;
  auto drop_edge = [&](int id) {
    if (run.removal_time[static_cast<std::size_t>(id)] >= 0) return;
    run.removal_time[static_cast<std::size_t>(id)] = clock++;
    --live_edges;
    const auto& e = edges[static_cast<std::size_t>(id)];
    if (--outdeg[static_cast<std::size_t>(e.u)] == 0 && vertex_alive[static_cast<std::size_t>(e.u)]) ready.push_back(e.u);
    if (--indeg[static_cast<std::size_t>(e.v)] == 0 && vertex_alive[static_cast<std::size_t>(e.v)]) ready.push_back(e.v);
  };

  std::size_t cursor = 0;
  while (live_edges > 0) {
    if (!ready.empty()) {
      int v = ready.back();
      ready.pop_back();
      if (!vertex_alive[static_cast<std::size_t>(v)]) continue;
      vertex_alive[static_cast<std::size_t>(v)] = 0;
      for (std::size_t k = out_off[static_cast<std::size_t>(v)]; k < out_off[static_cast<std::size_t>(v) + 1]; ++k) drop_edge(out_adj[k]);
      for (std::size_t k = in_off[static_cast<std::size_t>(v)]; k < in_off[static_cast<std::size_t>(v) + 1]; ++k) drop_edge(in_adj[k]);
      continue;
    }
    while (run.removal_time[static_cast<std::size_t>(order[cursor])] >= 0) ++cursor;
    run.bottleneck = order[cursor];
    ++run.edge_removals;
    drop_edge(order[cursor]);
  }
  return run;
}

/// Directed cycle through `star` using only edges with allowed[id].
inline CycleResult directed_cycle_through(const WeightedDigraph& g, int star, const std::vector<char>& allowed) {
  const auto& e = g.edge(star);
  auto path = directed_path(g.vertex_count(), g.edges(), allowed, e.v, e.u);
  if (!path) throw InvalidState("directed bottleneck: no path closes the bottleneck edge");
  return close_cycle(g.edges(), star, *path, false);
}

}  // namespace detail

/// Linear-time greedy over a precomputed removal order: `order` lists every
/// edge, worst first (ascending weight for MaxMin, descending for MinMax).
/// The last edge removed by the order is the bottleneck; the cycle is closed
/// by a path from its head to its tail among the edges alive just before it
/// was removed.
inline CycleResult bottleneck_cycle_directed_sorted(const WeightedDigraph& g, const std::vector<int>& order,
                                                    Direction dir = Direction::MaxMin) {
  auto run = detail::sorted_greedy(g, order);
  if (run.bottleneck < 0) throw NoCycle("graph is acyclic");
  const int t = run.removal_time[static_cast<std::size_t>(run.bottleneck)];
  std::vector<char> allowed(g.edge_count());
  for (std::size_t i = 0; i < allowed.size(); ++i) allowed[i] = run.removal_time[i] > t;
  auto r = detail::directed_cycle_through(g, run.bottleneck, allowed);
  r.value = g.edge(run.bottleneck).weight;
  r.direction = dir;
  return r;
}

/// Sorts the edges by (weight, id), worst first for `dir`, and runs the
/// sorted greedy.
inline CycleResult bottleneck_cycle_directed_sorted(const WeightedDigraph& g, Direction dir = Direction::MaxMin) {
  std::vector<int> order(g.edge_count());
  std::iota(order.begin(), order.end(), 0);
  if (dir == Direction::MaxMin) {
    std::sort(order.begin(), order.end(), detail::weight_order(g.edges()));
  } else {
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const auto& wa = g.edge(a).weight;
      const auto& wb = g.edge(b).weight;
      if (wa != wb) return wa > wb;
      return a < b;
    });
  }
  return bottleneck_cycle_directed_sorted(g, order, dir);
}

/// alpha_1 = 1, alpha_{i+1} = 2^alpha_i, saturating at the largest size_t.
inline std::vector<std::size_t> alpha_schedule(std::size_t count) {
  std::vector<std::size_t> a;
  std::size_t cur = 1;
  for (std::size_t i = 0; i < count; ++i) {
    a.push_back(cur);
    cur = cur >= std::numeric_limits<std::size_t>::digits ? std::numeric_limits<std::size_t>::max() : std::size_t{1} << cur;
  }
  return a;
}

struct DirectedDriverStats {
  std::size_t rounds = 0;
  std::vector<std::size_t> alphas;       // alpha_i used by each round
  std::vector<std::size_t> block_sizes;  // block size entering each round
};

namespace detail {

/// Reorders ids[lo, hi) so that every chunk boundary base + j * chunk
/// inside the range separates smaller from larger elements.
template <class Less>
void multiselect(std::vector<int>& ids, std::size_t lo, std::size_t hi, std::size_t base, std::size_t chunk,
                 const Less& less) {
  const std::size_t first = (lo - base) / chunk + 1;  // boundaries strictly above lo
  const std::size_t last = (hi - base - 1) / chunk;   // boundaries strictly below hi
  if (hi - lo < 2 || first > last) return;
  const std::size_t cut = base + (first + (last - first) / 2) * chunk;
  std::nth_element(ids.begin() + static_cast<std::ptrdiff_t>(lo), ids.begin() + static_cast<std::ptrdiff_t>(cut),
                   ids.begin() + static_cast<std::ptrdiff_t>(hi), less);
  multiselect(ids, lo, cut, base, chunk, less);
  multiselect(ids, cut, hi, base, chunk, less);
}

}  // namespace detail

/// Weight-clustering driver. The block of edges known to contain the
/// bottleneck starts as all edges; each round splits it into sub-blocks of
/// at most m / alpha_{i+1} edges, renumbers every edge by sub-block (edges
/// below the block get key 0, above it the largest key), counting-sorts the
/// keys and runs the sorted greedy, whose bottleneck edge names the next
/// block. Stops when the block holds a single weight.
inline CycleResult bottleneck_cycle_directed(const WeightedDigraph& g, Direction dir = Direction::MaxMin,
                                             DirectedDriverStats* stats = nullptr) {
  if (dir == Direction::MinMax) {
    auto r = bottleneck_cycle_directed(WeightedDigraph(g.vertex_count(), detail::negated(g.edges())),
                                       Direction::MaxMin, stats);
    r.value = -r.value;
    r.direction = Direction::MinMax;
    return r;
  }
  const auto& edges = g.edges();
  const std::size_t m = edges.size();
  if (m == 0) throw NoCycle("graph has no edges");
  const auto less = detail::weight_order(edges);

  std::vector<int> ids(m);
  std::iota(ids.begin(), ids.end(), 0);
  std::size_t lo = 0, hi = m;  // current block is ids[lo, hi) in weight order
  std::vector<std::size_t> key(m);
  std::vector<int> order(m);
  DirectedDriverStats local;
  auto& st = stats ? *stats : local;
  st = {};
  const auto alphas = alpha_schedule(64);

  for (std::size_t round = 0;; ++round) {
    const std::size_t block = hi - lo;
    const std::size_t next_alpha = alphas[std::min(round + 1, alphas.size() - 1)];
    const std::size_t chunk = std::max<std::size_t>(1, m / next_alpha);
    st.rounds = round + 1;
    st.alphas.push_back(alphas[std::min(round, alphas.size() - 1)]);
    st.block_sizes.push_back(block);

    detail::multiselect(ids, lo, hi, lo, chunk, less);
    const std::size_t parts = (block + chunk - 1) / chunk;
    for (std::size_t k = 0; k < lo; ++k) key[static_cast<std::size_t>(ids[k])] = 0;
    for (std::size_t k = lo; k < hi; ++k) key[static_cast<std::size_t>(ids[k])] = 1 + (k - lo) / chunk;
    for (std::size_t k = hi; k < m; ++k) key[static_cast<std::size_t>(ids[k])] = parts + 1;

    // Counting sort by key.
    std::vector<std::size_t> count(parts + 3, 0);
    for (std::size_t i = 0; i < m; ++i) ++count[key[i] + 1];
    for (std::size_t k = 1; k < count.size(); ++k) count[k] += count[k - 1];
    for (std::size_t i = 0; i < m; ++i) order[count[key[i]]++] = static_cast<int>(i);

    auto run = detail::sorted_greedy(g, order);
    if (run.bottleneck < 0) throw NoCycle("graph is acyclic");
    const std::size_t k = key[static_cast<std::size_t>(run.bottleneck)];
    if (k == 0 || k == parts + 1) throw InvalidState("bottleneck_cycle_directed: bottleneck left its block");
    const std::size_t new_lo = lo + (k - 1) * chunk;
    hi = std::min(hi, new_lo + chunk);
    lo = new_lo;

    bool single_weight = true;
    const Quality w = edges[static_cast<std::size_t>(ids[lo])].weight;
    for (std::size_t j = lo + 1; j < hi && single_weight; ++j)
      single_weight = edges[static_cast<std::size_t>(ids[j])].weight == w;
    if (!single_weight) continue;

    // Final pass: edges of weight w in id order, lighter edges first and
    // heavier ones last. Its bottleneck is the exact bottleneck edge.
    std::vector<int> tail_order;
    tail_order.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
      if (edges[i].weight < w) tail_order.push_back(static_cast<int>(i));
    for (std::size_t i = 0; i < m; ++i)
      if (edges[i].weight == w) tail_order.push_back(static_cast<int>(i));
    for (std::size_t i = 0; i < m; ++i)
      if (edges[i].weight > w) tail_order.push_back(static_cast<int>(i));
    auto r = bottleneck_cycle_directed_sorted(g, tail_order, dir);
    if (r.value != w) throw InvalidState("bottleneck_cycle_directed: cycle value mismatch");
    return r;
  }
}

/// Directed graph equivalent to a mixed graph for closed u-turn-free walks.
struct MixedExpansion {
  WeightedDigraph digraph;
  /// Per expanded edge: the mixed edge it came from, or -1 for gadget edges.
  std::vector<int> source_edge;
  /// Per expanded edge: the mixed vertex it leaves (tail side), for original edges.
  std::vector<int> source_tail;
  /// Per expanded vertex: the mixed vertex whose gadget contains it.
  std::vector<int> owner;
};

/// Size bound: vertices + edges of the expansion never exceed
/// kMixedExpansionFactor * (n + edge count).
inline constexpr std::size_t kMixedExpansionFactor = 22;

/// Replaces every vertex with d >= 1 undirected edges by a gadget:
/// terminals in_k and out_k for its k-th undirected edge, an increasing
/// path I_0 .. I_d and a decreasing path D_{d-1} .. D_1. With edge k at
/// half-integer k + 1/2, in_k feeds the path vertices just above (I_{k+1})
/// and just below (D_k) it, and out_k is fed by I_k and D_{k+1}. A walk from
/// in_k can then reach out_j exactly for j != k. Directed edges enter at I_0
/// and leave from I_d. Gadget edges weigh +inf.
inline MixedExpansion mixed_to_directed(const MixedGraph& mg) {
  const int n = mg.vertex_count();
  const auto& edges = mg.edges();
  std::vector<std::vector<int>> und(static_cast<std::size_t>(n));  // undirected edge ids per vertex
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (!edges[i].directed) {
      und[static_cast<std::size_t>(edges[i].u)].push_back(static_cast<int>(i));
      und[static_cast<std::size_t>(edges[i].v)].push_back(static_cast<int>(i));
    }

  MixedExpansion x;
  auto& dg = x.digraph;
  auto new_vertex = [&](int owner) {
    x.owner.push_back(owner);
    return dg.add_vertex();
  };
  auto add = [&](int a, int b, Quality w, int src, int tail) {
    dg.add_edge(a, b, w);
    x.source_edge.push_back(src);
    x.source_tail.push_back(tail);
  };

  std::vector<int> entry(static_cast<std::size_t>(n)), exit(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> in_term(static_cast<std::size_t>(n)), out_term(static_cast<std::size_t>(n));
  const Quality gadget = Quality::pos_inf();
  for (int v = 0; v < n; ++v) {
    const int d = static_cast<int>(und[static_cast<std::size_t>(v)].size());
    if (d == 0) {
      entry[static_cast<std::size_t>(v)] = exit[static_cast<std::size_t>(v)] = new_vertex(v);
      continue;
    }
    std::vector<int> inc(static_cast<std::size_t>(d) + 1), dec(static_cast<std::size_t>(d), -1);
    for (int j = 0; j <= d; ++j) inc[static_cast<std::size_t>(j)] = new_vertex(v);
    for (int j = 1; j <= d - 1; ++j) dec[static_cast<std::size_t>(j)] = new_vertex(v);
    auto& ins = in_term[static_cast<std::size_t>(v)];
    auto& outs = out_term[static_cast<std::size_t>(v)];
    for (int k = 0; k < d; ++k) {
      ins.push_back(new_vertex(v));
      outs.push_back(new_vertex(v));
    }
    for (int j = 0; j < d; ++j) add(inc[static_cast<std::size_t>(j)], inc[static_cast<std::size_t>(j) + 1], gadget, -1, -1);
    for (int j = d - 1; j >= 2; --j) add(dec[static_cast<std::size_t>(j)], dec[static_cast<std::size_t>(j) - 1], gadget, -1, -1);
    for (int k = 0; k < d; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      add(ins[ku], inc[ku + 1], gadget, -1, -1);
      if (k >= 1) add(ins[ku], dec[ku], gadget, -1, -1);
      add(inc[ku], outs[ku], gadget, -1, -1);
      if (k + 1 <= d - 1) add(dec[ku + 1], outs[ku], gadget, -1, -1);
    }
    entry[static_cast<std::size_t>(v)] = inc.front();
    exit[static_cast<std::size_t>(v)] = inc.back();
  }

  auto slot = [&](int v, int id) {
    const auto& list = und[static_cast<std::size_t>(v)];
    return static_cast<std::size_t>(std::find(list.begin(), list.end(), id) - list.begin());
  };
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    const int id = static_cast<int>(i);
    if (e.directed) {
      add(exit[static_cast<std::size_t>(e.u)], entry[static_cast<std::size_t>(e.v)], e.weight, id, e.u);
      continue;
    }
    const std::size_t su = slot(e.u, id), sv = slot(e.v, id);
    add(out_term[static_cast<std::size_t>(e.u)][su], in_term[static_cast<std::size_t>(e.v)][sv], e.weight, id, e.u);
    add(out_term[static_cast<std::size_t>(e.v)][sv], in_term[static_cast<std::size_t>(e.u)][su], e.weight, id, e.v);
  }
  return x;
}

namespace detail {

struct WalkStep {
  int edge;  // mixed edge id
  int from;
  int to;
};

/// Extracts a vertex-simple, edge-simple mixed cycle from a closed u-turn-free
/// walk. If the walk's undirected edges contain a cycle, that cycle is
/// returned. Otherwise those edges form a forest: its trees are contracted,
/// a directed cycle among the contracted walk's directed edges is found, and
/// each visited tree is crossed along its unique path.
inline CycleResult mixed_cycle_from_walk(const MixedGraph& mg, const std::vector<WalkStep>& walk) {
  const int n = mg.vertex_count();
  const auto& edges = mg.edges();
  std::vector<int> und_ids, dir_steps;
  {
    std::vector<char> seen(edges.size(), 0);
    for (std::size_t s = 0; s < walk.size(); ++s) {
      const int id = walk[s].edge;
      if (edges[static_cast<std::size_t>(id)].directed) {
        dir_steps.push_back(static_cast<int>(s));
      } else if (!seen[static_cast<std::size_t>(id)]) {
        seen[static_cast<std::size_t>(id)] = 1;
        und_ids.push_back(id);
      }
    }
  }
  std::vector<WeightedEdge> as_und(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) as_und[i] = {edges[i].u, edges[i].v, edges[i].weight};

  UnionFind uf(n);
  std::vector<char> tree(edges.size(), 0);
  for (int id : und_ids) {
    const auto& e = edges[static_cast<std::size_t>(id)];
    if (uf.unite(e.u, e.v)) {
      tree[static_cast<std::size_t>(id)] = 1;
      continue;
    }
    // Undirected cycle: id plus the tree path between its endpoints.
    auto path = undirected_path(n, as_und, tree, e.v, e.u);
    if (!path) throw InvalidState("mixed cycle: forest path missing");
    return close_cycle(as_und, id, *path, true);
  }
  if (dir_steps.empty()) throw InvalidState("mixed cycle: closed walk in a forest");

  // Directed cycle over contracted components, following walk order.
  std::vector<int> next_step(static_cast<std::size_t>(n), -1);
  for (int s : dir_steps) next_step[static_cast<std::size_t>(uf.find(walk[static_cast<std::size_t>(s)].from))] = s;
  // Every component left by the walk is re-entered, so chasing next_step
  // from any directed step must revisit a component.
  std::vector<int> visit(static_cast<std::size_t>(n), -1);
  std::vector<int> chain;
  int s = dir_steps.front();
  while (true) {
    const int comp = uf.find(walk[static_cast<std::size_t>(s)].from);
    if (visit[static_cast<std::size_t>(comp)] >= 0) {
      chain.erase(chain.begin(), chain.begin() + visit[static_cast<std::size_t>(comp)]);
      break;
    }
    visit[static_cast<std::size_t>(comp)] = static_cast<int>(chain.size());
    chain.push_back(s);
    const int to_comp = uf.find(walk[static_cast<std::size_t>(s)].to);
    s = next_step[static_cast<std::size_t>(to_comp)];
    if (s < 0) throw InvalidState("mixed cycle: walk leaves a component without a directed edge");
  }

  CycleResult r;
  r.value = Quality::pos_inf();
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto& step = walk[static_cast<std::size_t>(chain[i])];
    const auto& nxt = walk[static_cast<std::size_t>(chain[(i + 1) % chain.size()])];
    r.vertices.push_back(step.from);
    r.edges.push_back(step.edge);
    int at = step.to;
    auto path = undirected_path(n, as_und, tree, at, nxt.from);
    if (!path) throw InvalidState("mixed cycle: component path missing");
    for (int id : *path) {
      r.vertices.push_back(at);
      r.edges.push_back(id);
      const auto& e = edges[static_cast<std::size_t>(id)];
      at = e.u == at ? e.v : e.u;
    }
  }
  for (int id : r.edges) r.value = std::min(r.value, edges[static_cast<std::size_t>(id)].weight);
  return r;
}

}  // namespace detail

/// Bottleneck cycle of a mixed graph: solve on the gadget expansion, map the
/// directed cycle back to a closed u-turn-free walk, and extract a simple
/// mixed cycle from it.
inline CycleResult bottleneck_cycle_mixed(const MixedGraph& mg, Direction dir = Direction::MaxMin) {
  if (dir == Direction::MinMax) {
    auto edges = mg.edges();
    for (auto& e : edges) e.weight = -e.weight;
    auto r = bottleneck_cycle_mixed(MixedGraph(mg.vertex_count(), std::move(edges)));
    r.value = -r.value;
    r.direction = Direction::MinMax;
    return r;
  }
  if (mg.edge_count() == 0) throw NoCycle("graph has no edges");
  const auto x = mixed_to_directed(mg);
  CycleResult dc;
  try {
    dc = bottleneck_cycle_directed(x.digraph);
  } catch (const NoCycle&) {
    throw NoCycle("mixed graph has no cycle");
  }
  std::vector<detail::WalkStep> walk;
  for (int id : dc.edges) {
    const int src = x.source_edge[static_cast<std::size_t>(id)];
    if (src < 0) continue;
    const auto& e = mg.edge(src);
    const int from = x.source_tail[static_cast<std::size_t>(id)];
    walk.push_back({src, from, from == e.u ? e.v : e.u});
  }
  if (walk.empty()) throw InvalidState("bottleneck_cycle_mixed: cycle inside a gadget");
  auto r = detail::mixed_cycle_from_walk(mg, walk);
  if (r.value != dc.value) throw InvalidState("bottleneck_cycle_mixed: extracted cycle lost the bottleneck value");
  r.direction = Direction::MaxMin;
  return r;
}

}  // namespace maxmin
