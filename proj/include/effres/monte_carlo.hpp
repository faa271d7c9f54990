// monte_carlo.hpp - randomized oracles: commute times and uniform spanning trees.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "effres/error.hpp"
#include "effres/graph.hpp"
#include "effres/random.hpp"

namespace effres {

struct WalkStats {
  std::size_t trials = 0;
  double mean_commute = 0.0;
  double std_error = 0.0;
};

namespace detail {

inline std::uint64_t hitting_steps(const Graph& g, Vertex from, Vertex to, Rng& rng) {
  std::uint64_t steps = 0;
  Vertex cur = from;
  while (cur != to) {
    auto nb = g.neighbors(cur);
    std::uniform_int_distribution<std::size_t> pick(0, nb.size() - 1);
    cur = nb[pick(rng)];
    ++steps;
  }
  return steps;
}

inline void require_connected(const Graph& g) {
  if (!is_connected(g)) fail(ErrorCode::Disconnected, "graph is not connected");
}

}  // namespace detail

/// Mean length of simple random walks u -> v -> u; estimates 2m R(u,v).
inline WalkStats commute_time_mc(const Graph& g, Vertex u, Vertex v, std::size_t trials, std::uint64_t seed) {
  if (u >= g.num_vertices() || v >= g.num_vertices()) fail(ErrorCode::OutOfRange, "vertex out of range");
  if (u == v) fail(ErrorCode::SameVertex, "u = v = " + std::to_string(u));
  if (trials == 0) fail(ErrorCode::InvalidArgument, "trials must be positive");
  detail::require_connected(g);

  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng = make_rng(seed, i);
    const auto steps = static_cast<double>(detail::hitting_steps(g, u, v, rng) +
                                           detail::hitting_steps(g, v, u, rng));
    sum += steps;
    sum_sq += steps * steps;
  }
  WalkStats stats;
  stats.trials = trials;
  stats.mean_commute = sum / static_cast<double>(trials);
  if (trials > 1) {
    const double var = std::max(0.0, (sum_sq - sum * stats.mean_commute) / static_cast<double>(trials - 1));
    stats.std_error = std::sqrt(var / static_cast<double>(trials));
  }
  return stats;
}

/// Wilson's algorithm: loop-erased random walks towards a growing tree.
/// Returns the n-1 tree edges sorted ascending.
inline std::vector<EdgeId> wilson_spanning_tree(const Graph& g, Rng& rng) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return {};
  detail::require_connected(g);
  std::vector<bool> in_tree(n, false);
  std::vector<Vertex> next(n, 0);
  in_tree[0] = true;
  for (Vertex start = 0; start < n; ++start) {
    Vertex cur = start;
    while (!in_tree[cur]) {
      auto nb = g.neighbors(cur);
      std::uniform_int_distribution<std::size_t> pick(0, nb.size() - 1);
      next[cur] = nb[pick(rng)];
      cur = next[cur];
    }
    // Following the last exit from each vertex erases the loops.
    cur = start;
    while (!in_tree[cur]) {
      in_tree[cur] = true;
      cur = next[cur];
    }
  }
  std::vector<EdgeId> tree;
  tree.reserve(n - 1);
  for (Vertex v = 1; v < n; ++v) tree.push_back(EdgeId::make(v, next[v]));
  std::sort(tree.begin(), tree.end());
  return tree;
}

inline std::vector<EdgeId> wilson_spanning_tree(const Graph& g, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return wilson_spanning_tree(g, rng);
}

struct TreeStats {
  std::size_t trials = 0;
  std::size_t inclusion_count = 0;

  double frequency() const { return trials ? static_cast<double>(inclusion_count) / static_cast<double>(trials) : 0.0; }

  /// Binomial standard error at success probability p.
  double std_error(double p) const {
    return trials ? std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(trials)) : 0.0;
  }
};

/// Fraction of uniform spanning trees containing e; estimates R(e).
inline TreeStats edge_inclusion_frequency(const Graph& g, const EdgeId& e, std::size_t trials, std::uint64_t seed) {
  if (!g.edge_index(e)) fail(ErrorCode::NotAnEdge, to_string(e));
  if (trials == 0) fail(ErrorCode::InvalidArgument, "trials must be positive");
  detail::require_connected(g);
  TreeStats stats;
  stats.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng = make_rng(seed, i);
    const auto tree = wilson_spanning_tree(g, rng);
    if (std::binary_search(tree.begin(), tree.end(), e)) ++stats.inclusion_count;
  }
  return stats;
}

}  // namespace effres
