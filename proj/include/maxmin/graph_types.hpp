#pragma once

// Graph containers shared by the cycle solvers and the oracles.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "maxmin/errors.hpp"
#include "maxmin/quality.hpp"

namespace maxmin {

struct WeightedEdge {
  int u = 0;  // tail for directed edges
  int v = 0;  // head for directed edges
  Quality weight = Quality::finite(0.0);
  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

namespace detail {

inline void check_edges(int n, const std::vector<WeightedEdge>& edges, const char* what) {
  if (n < 0) throw InvalidInput(std::string(what) + ": negative vertex count");
  for (const auto& e : edges)
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw InvalidInput(std::string(what) + ": endpoint out of range");
}

}  // namespace detail

/// Directed graph; parallel edges and self-loops are allowed.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;
  WeightedDigraph(int n, std::vector<WeightedEdge> edges) : n_(n), edges_(std::move(edges)) {
    detail::check_edges(n_, edges_, "WeightedDigraph");
  }
  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<WeightedEdge>& edges() const { return edges_; }
  const WeightedEdge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }
  int add_vertex() { return n_++; }
  int add_edge(int tail, int head, Quality w) {
    if (tail < 0 || head < 0 || tail >= n_ || head >= n_) throw InvalidInput("WeightedDigraph: endpoint out of range");
    edges_.push_back({tail, head, w});
    return static_cast<int>(edges_.size()) - 1;
  }

 private:
  int n_ = 0;
  std::vector<WeightedEdge> edges_;
};

/// Undirected multigraph; parallel edges and self-loops are allowed.
class WeightedMultigraph {
 public:
  WeightedMultigraph() = default;
  WeightedMultigraph(int n, std::vector<WeightedEdge> edges) : n_(n), edges_(std::move(edges)) {
    detail::check_edges(n_, edges_, "WeightedMultigraph");
  }
  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<WeightedEdge>& edges() const { return edges_; }
  const WeightedEdge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }

 private:
  int n_ = 0;
  std::vector<WeightedEdge> edges_;
};

struct MixedEdge {
  int u = 0;
  int v = 0;
  Quality weight = Quality::finite(0.0);
  bool directed = false;  // u -> v when directed
  friend bool operator==(const MixedEdge&, const MixedEdge&) = default;
};

/// Graph with both directed and undirected edges. Undirected self-loops are
/// rejected: traversing one is a u-turn.
class MixedGraph {
 public:
  MixedGraph() = default;
  MixedGraph(int n, std::vector<MixedEdge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw InvalidInput("MixedGraph: negative vertex count");
    for (const auto& e : edges_) {
      if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_) throw InvalidInput("MixedGraph: endpoint out of range");
      if (!e.directed && e.u == e.v) throw InvalidInput("MixedGraph: undirected self-loop");
    }
  }
  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<MixedEdge>& edges() const { return edges_; }
  const MixedEdge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }

 private:
  int n_ = 0;
  std::vector<MixedEdge> edges_;
};

/// A cycle as parallel vertex and edge sequences: edges[i] leads from
/// vertices[i] to vertices[(i + 1) % size]. Polar cycles also fill
/// entry_poles and exit_poles per vertex.
struct CycleResult {
  Quality value;
  Direction direction = Direction::MaxMin;
  std::vector<int> vertices;
  std::vector<int> edges;
  std::vector<int> entry_poles;
  std::vector<int> exit_poles;
  std::vector<std::string> diagnostics;
};

struct PolarEndpoint {
  int vertex = 0;
  int pole = 0;
  friend bool operator==(const PolarEndpoint&, const PolarEndpoint&) = default;
};

struct PolarEdge {
  PolarEndpoint a;
  PolarEndpoint b;
  Quality weight = Quality::finite(0.0);
  friend bool operator==(const PolarEdge&, const PolarEdge&) = default;

  /// End of this edge away from vertex `x`, and the end at `x`.
  const PolarEndpoint& other(int x) const { return a.vertex == x ? b : a; }
  const PolarEndpoint& at(int x) const { return a.vertex == x ? a : b; }
};

/// Polar graph with per-(vertex, pole) incidence lists. Self-loops are
/// rejected; parallel edges are allowed.
class PolarGraph {
 public:
  PolarGraph() = default;
  PolarGraph(int n, std::vector<PolarEdge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw InvalidInput("PolarGraph: negative vertex count");
    incidence_.assign(2 * static_cast<std::size_t>(n_), {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      for (const auto& end : {e.a, e.b}) {
        if (end.vertex < 0 || end.vertex >= n_) throw InvalidInput("PolarGraph: endpoint out of range");
        if (end.pole != 0 && end.pole != 1) throw InvalidInput("PolarGraph: pole must be 0 or 1");
      }
      if (e.a.vertex == e.b.vertex) throw InvalidInput("PolarGraph: self-loop");
      incidence_[slot(e.a)].push_back(static_cast<int>(i));
      incidence_[slot(e.b)].push_back(static_cast<int>(i));
    }
  }

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<PolarEdge>& edges() const { return edges_; }
  const PolarEdge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }
  const std::vector<int>& incident(int v, int pole) const { return incidence_[slot({v, pole})]; }
  int degree(int v) const { return static_cast<int>(incident(v, 0).size() + incident(v, 1).size()); }

 private:
  static std::size_t slot(const PolarEndpoint& p) { return 2 * static_cast<std::size_t>(p.vertex) + static_cast<std::size_t>(p.pole); }

  int n_ = 0;
  std::vector<PolarEdge> edges_;
  std::vector<std::vector<int>> incidence_;
};

}  // namespace maxmin
