#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "maxmin/errors.hpp"
#include "maxmin/quality.hpp"

namespace maxmin {

/// Undirected simple graph in compressed adjacency form.
class SimpleGraph {
 public:
  SimpleGraph() = default;

  /// Throws InvalidInput on self-loops, parallel edges or bad endpoints.
  SimpleGraph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n) {
    if (n < 0) throw InvalidInput("SimpleGraph: negative vertex count");
    std::vector<std::size_t> deg(static_cast<std::size_t>(n), 0);
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n) throw InvalidInput("SimpleGraph: endpoint out of range");
      if (u == v) throw InvalidInput("SimpleGraph: self-loop");
      ++deg[static_cast<std::size_t>(u)];
      ++deg[static_cast<std::size_t>(v)];
    }
    offset_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 0; v < n; ++v) offset_[static_cast<std::size_t>(v) + 1] = offset_[static_cast<std::size_t>(v)] + deg[static_cast<std::size_t>(v)];
    adj_.resize(offset_.back());
    std::vector<std::size_t> fill(offset_.begin(), offset_.end() - 1);
    for (auto [u, v] : edges) {
      adj_[fill[static_cast<std::size_t>(u)]++] = v;
      adj_[fill[static_cast<std::size_t>(v)]++] = u;
    }
    for (int v = 0; v < n; ++v) {
      auto b = adj_.begin() + static_cast<std::ptrdiff_t>(offset_[static_cast<std::size_t>(v)]);
      auto e = adj_.begin() + static_cast<std::ptrdiff_t>(offset_[static_cast<std::size_t>(v) + 1]);
      std::sort(b, e);
      if (std::adjacent_find(b, e) != e) throw InvalidInput("SimpleGraph: parallel edge");
    }
    edges_ = edges;
  }

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  std::span<const int> neighbors(int v) const {
    return {adj_.data() + offset_[static_cast<std::size_t>(v)],
            offset_[static_cast<std::size_t>(v) + 1] - offset_[static_cast<std::size_t>(v)]};
  }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

 private:
  int n_ = 0;
  std::vector<std::size_t> offset_{0};
  std::vector<int> adj_;
  std::vector<std::pair<int, int>> edges_;
};

/// Bottleneck instance whose quality is the degree in the induced subgraph
/// of surviving vertices.
class DegreeInstance {
 public:
  explicit DegreeInstance(std::shared_ptr<const SimpleGraph> g)
      : g_(std::move(g)), alive_(static_cast<std::size_t>(g_->vertex_count()), 1),
        degree_(static_cast<std::size_t>(g_->vertex_count())) {
    for (int v = 0; v < g_->vertex_count(); ++v) degree_[static_cast<std::size_t>(v)] = g_->degree(v);
  }

  int size() const { return g_->vertex_count(); }
  Quality quality(int x) const { return Quality::finite(degree_[static_cast<std::size_t>(x)]); }
  void remove(int x) {
    alive_[static_cast<std::size_t>(x)] = 0;
    for (int u : g_->neighbors(x))
      if (alive_[static_cast<std::size_t>(u)]) --degree_[static_cast<std::size_t>(u)];
  }

 private:
  std::shared_ptr<const SimpleGraph> g_;
  std::vector<char> alive_;
  std::vector<int> degree_;
};

struct DegeneracyResult {
  int degeneracy = 0;
  std::vector<int> core;            // maximal vertex set of min degree `degeneracy`
  std::vector<int> ordering;        // removal order
  std::vector<int> removal_degree;  // live degree of ordering[i] when removed
  std::size_t queue_operations = 0;
};

/// Pushes, pops and bucket scans per vertex-plus-edge that the bucket queue
/// in `degeneracy` may perform: at most n+m pushes, n+m pops and 2n scan
/// steps.
inline constexpr std::size_t kQueueOpsPerElement = 4;

/// Matula-Beck minimum-degree elimination with buckets indexed by live
/// degree. Each bucket is a min-heap of vertex ids so that ties go to the
/// lowest id, which reproduces the generic greedy's default policy.
inline DegeneracyResult degeneracy(const SimpleGraph& g) {
  const int n = g.vertex_count();
  if (n < 1) throw InvalidInput("degeneracy: graph has no vertices");
  using Bucket = std::priority_queue<int, std::vector<int>, std::greater<int>>;

  DegeneracyResult out;
  std::vector<int> deg(static_cast<std::size_t>(n));
  std::vector<char> alive(static_cast<std::size_t>(n), 1);
  int max_deg = 0;
  for (int v = 0; v < n; ++v) {
    deg[static_cast<std::size_t>(v)] = g.degree(v);
    max_deg = std::max(max_deg, g.degree(v));
  }
  std::vector<Bucket> buckets(static_cast<std::size_t>(max_deg) + 1);
  for (int v = 0; v < n; ++v) {
    buckets[static_cast<std::size_t>(deg[static_cast<std::size_t>(v)])].push(v);
    ++out.queue_operations;
  }

  int best = -1;
  std::size_t best_prefix = 0;
  int cursor = 0;
  out.ordering.reserve(static_cast<std::size_t>(n));
  out.removal_degree.reserve(static_cast<std::size_t>(n));
  for (int removed = 0; removed < n; ++removed) {
    int v = -1;
    for (;;) {
      auto& b = buckets[static_cast<std::size_t>(cursor)];
      while (!b.empty()) {
        int top = b.top();
        if (alive[static_cast<std::size_t>(top)] && deg[static_cast<std::size_t>(top)] == cursor) break;
        b.pop();  // stale entry
        ++out.queue_operations;
      }
      if (!b.empty()) {
        v = b.top();
        b.pop();
        ++out.queue_operations;
        break;
      }
      ++cursor;
      ++out.queue_operations;
    }
    const int d = deg[static_cast<std::size_t>(v)];
    if (d > best) {
      best = d;
      best_prefix = out.ordering.size();
    }
    out.ordering.push_back(v);
    out.removal_degree.push_back(d);
    alive[static_cast<std::size_t>(v)] = 0;
    for (int u : g.neighbors(v)) {
      if (!alive[static_cast<std::size_t>(u)]) continue;
      int& du = deg[static_cast<std::size_t>(u)];
      --du;
      buckets[static_cast<std::size_t>(du)].push(u);
      ++out.queue_operations;
    }
    cursor = std::max(0, d - 1);
  }

  out.degeneracy = best;
  std::vector<char> in_core(static_cast<std::size_t>(n), 1);
  for (std::size_t i = 0; i < best_prefix; ++i) in_core[static_cast<std::size_t>(out.ordering[i])] = 0;
  for (int v = 0; v < n; ++v)
    if (in_core[static_cast<std::size_t>(v)]) out.core.push_back(v);
  return out;
}

/// Maximal vertex set inducing minimum degree >= k (empty if none).
inline std::vector<int> k_core(const SimpleGraph& g, int k) {
  if (k < 0) throw InvalidInput("k_core: k must be nonnegative");
  const int n = g.vertex_count();
  std::vector<int> deg(static_cast<std::size_t>(n));
  std::vector<char> alive(static_cast<std::size_t>(n), 1);
  std::vector<int> queue;
  for (int v = 0; v < n; ++v) {
    deg[static_cast<std::size_t>(v)] = g.degree(v);
    if (deg[static_cast<std::size_t>(v)] < k) {
      alive[static_cast<std::size_t>(v)] = 0;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    for (int u : g.neighbors(v)) {
      if (!alive[static_cast<std::size_t>(u)]) continue;
      if (--deg[static_cast<std::size_t>(u)] < k) {
        alive[static_cast<std::size_t>(u)] = 0;
        queue.push_back(u);
      }
    }
  }
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (alive[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

struct ComplexityReport {
  std::size_t operations = 0;
  std::size_t bound = 0;  // kQueueOpsPerElement * (n + m)
  bool within_bound() const { return operations <= bound; }
};

/// Runs the bucket-queue elimination and reports its operation count
/// against the linear bound.
inline ComplexityReport removal_complexity_check(const SimpleGraph& g) {
  ComplexityReport r;
  r.bound = kQueueOpsPerElement * (static_cast<std::size_t>(g.vertex_count()) + g.edge_count());
  if (g.vertex_count() == 0) return r;
  r.operations = degeneracy(g).queue_operations;
  return r;
}

}  // namespace maxmin
