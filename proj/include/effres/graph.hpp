// graph.hpp - immutable undirected simple graph in sorted-adjacency (CSR) form.
//
// Vertices are dense integers 0..n-1. Every adjacency list is sorted
// ascending, so "the i-th neighbor of v" is well defined and query
// transcripts are reproducible.
#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "effres/error.hpp"

namespace effres {

using Vertex = std::uint32_t;

/// Undirected edge with u < v.
struct EdgeId {
  Vertex u = 0;
  Vertex v = 0;

  static EdgeId make(Vertex a, Vertex b) {
    if (a == b) fail(ErrorCode::SelfLoop, "edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
    return a < b ? EdgeId{a, b} : EdgeId{b, a};
  }

  friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

inline std::string to_string(const EdgeId& e) {
  return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  /// Builds from an edge list. Rejects out-of-range endpoints, self-loops and
  /// duplicates (in either orientation).
  static Graph build(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
    std::vector<EdgeId> normalized;
    normalized.reserve(edges.size());
    for (const auto& [a, b] : edges) {
      if (a >= n || b >= n) {
        fail(ErrorCode::OutOfRange, "edge (" + std::to_string(a) + "," + std::to_string(b) +
                                        ") with n=" + std::to_string(n));
      }
      normalized.push_back(EdgeId::make(a, b));
    }
    return from_edge_ids(n, std::move(normalized));
  }

  static Graph build(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges) {
    return build(n, std::span<const std::pair<Vertex, Vertex>>(edges.begin(), edges.size()));
  }

  static Graph from_edge_ids(std::size_t n, std::vector<EdgeId> edges) {
    for (const auto& e : edges) {
      if (e.u >= n || e.v >= n) {
        fail(ErrorCode::OutOfRange, "edge " + to_string(e) + " with n=" + std::to_string(n));
      }
      if (e.u >= e.v) fail(ErrorCode::SelfLoop, "edge " + to_string(e));
    }
    std::sort(edges.begin(), edges.end());
    auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end()) fail(ErrorCode::DuplicateEdge, "edge " + to_string(*dup));

    Graph g;
    g.n_ = n;
    g.offsets_.assign(n + 1, 0);
    for (const auto& e : edges) {
      ++g.offsets_[e.u + 1];
      ++g.offsets_[e.v + 1];
    }
    for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
    g.targets_.resize(g.offsets_[n]);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    // With edges sorted by (u, v), vertex x first receives its smaller
    // neighbors (edges (u', x), u' < x) and then its larger ones, both in
    // ascending order, so every list comes out sorted.
    for (const auto& e : edges) {
      g.targets_[cursor[e.u]++] = e.v;
      g.targets_[cursor[e.v]++] = e.u;
    }
    g.edges_ = std::move(edges);
    return g;
  }

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::size_t degree(Vertex v) const {
    check_vertex(v);
    return offsets_[v + 1] - offsets_[v];
  }

  std::span<const Vertex> neighbors(Vertex v) const {
    check_vertex(v);
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  bool has_edge(Vertex a, Vertex b) const {
    if (a >= n_ || b >= n_ || a == b) return false;
    auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
  }

  /// All edges, ascending lexicographic (u, v) with u < v.
  const std::vector<EdgeId>& edges() const noexcept { return edges_; }

  /// Position of e in edges(), which is also its incidence-matrix row.
  std::optional<std::size_t> edge_index(const EdgeId& e) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
  }

  std::vector<std::size_t> degree_sequence() const {
    std::vector<std::size_t> d(n_);
    for (std::size_t v = 0; v < n_; ++v) d[v] = offsets_[v + 1] - offsets_[v];
    return d;
  }

  /// Copy with `removed` deleted and `added` inserted.
  Graph modified(std::span<const EdgeId> removed, std::span<const EdgeId> added) const {
    std::vector<EdgeId> next;
    next.reserve(edges_.size() + added.size());
    std::vector<EdgeId> drop(removed.begin(), removed.end());
    std::sort(drop.begin(), drop.end());
    for (const auto& e : drop) {
      if (!edge_index(e)) fail(ErrorCode::NotAnEdge, to_string(e));
    }
    std::set_difference(edges_.begin(), edges_.end(), drop.begin(), drop.end(),
                        std::back_inserter(next));
    next.insert(next.end(), added.begin(), added.end());
    return from_edge_ids(n_, std::move(next));
  }

  Graph without_edges(std::span<const EdgeId> removed) const { return modified(removed, {}); }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void check_vertex(Vertex v) const {
    if (v >= n_) {
      fail(ErrorCode::OutOfRange, "vertex " + std::to_string(v) + " with n=" + std::to_string(n_));
    }
  }

  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
  std::vector<EdgeId> edges_;
};

inline Graph build_graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
  return Graph::build(n, edges);
}

inline Graph build_graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges) {
  return Graph::build(n, edges);
}

/// Component label per vertex (labels are 0..c-1 in order of first vertex).
inline std::vector<std::size_t> connected_components(const Graph& g) {
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(g.num_vertices(), unset);
  std::vector<Vertex> stack;
  std::size_t next = 0;
  for (Vertex root = 0; root < g.num_vertices(); ++root) {
    if (label[root] != unset) continue;
    label[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v)) {
        if (label[w] == unset) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

inline bool is_connected(const Graph& g) {
  auto label = connected_components(g);
  return std::all_of(label.begin(), label.end(), [](std::size_t c) { return c == 0; });
}

inline bool same_component(const Graph& g, Vertex s, Vertex t) {
  auto label = connected_components(g);
  return label.at(s) == label.at(t);
}

}  // namespace effres
