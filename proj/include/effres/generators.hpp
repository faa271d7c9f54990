// generators.hpp - instance families with embedded ground-truth predictions.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "effres/error.hpp"
#include "effres/graph.hpp"
#include "effres/matrices.hpp"
#include "effres/random.hpp"
#include "effres/spectral.hpp"

namespace effres {

/// d - 2.01 sqrt(d - 1): the near-Ramanujan spectral-gap target.
inline double near_ramanujan_bound(std::size_t d) {
  return static_cast<double>(d) - 2.01 * std::sqrt(static_cast<double>(d) - 1.0);
}

/// Second-smallest Laplacian eigenvalue.
inline double laplacian_lambda2(const Graph& g) {
  if (g.num_vertices() < 2) return 0.0;
  SpectralBundle bundle(laplacian(g));
  return bundle.eigenvalues()(1);
}

namespace detail {

inline std::uint64_t pair_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Pairs up stubs uniformly at random, re-drawing any pair that would form a
// loop, repeat an edge, or hit `forbidden`. Gives up (nullopt) when the
// remaining stubs keep failing, which the caller treats as a restart.
inline std::optional<std::vector<EdgeId>> random_stub_pairing(
    std::vector<Vertex> stubs, const std::unordered_set<std::uint64_t>& forbidden, Rng& rng) {
  std::unordered_set<std::uint64_t> used;
  std::vector<EdgeId> edges;
  edges.reserve(stubs.size() / 2);
  std::size_t consecutive_failures = 0;
  while (stubs.size() >= 2) {
    std::uniform_int_distribution<std::size_t> pick(0, stubs.size() - 1);
    std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    const Vertex a = stubs[i];
    const Vertex b = stubs[j];
    const auto key = pair_key(a, b);
    if (i == j || a == b || used.count(key) || forbidden.count(key)) {
      if (++consecutive_failures > 200 + 4 * stubs.size()) return std::nullopt;
      continue;
    }
    consecutive_failures = 0;
    used.insert(key);
    edges.push_back(EdgeId::make(a, b));
    if (i < j) std::swap(i, j);
    stubs[i] = stubs.back();
    stubs.pop_back();
    stubs[j] = stubs.back();
    stubs.pop_back();
  }
  if (!stubs.empty()) return std::nullopt;
  return edges;
}

inline std::vector<Vertex> uniform_stubs(std::size_t n, std::size_t per_vertex) {
  std::vector<Vertex> stubs;
  stubs.reserve(n * per_vertex);
  for (Vertex v = 0; v < n; ++v) stubs.insert(stubs.end(), per_vertex, v);
  return stubs;
}

inline std::vector<EdgeId> shifted(const std::vector<EdgeId>& edges, Vertex offset) {
  std::vector<EdgeId> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.push_back({e.u + offset, e.v + offset});
  return out;
}

}  // namespace detail

struct ExpanderCert {
  Graph graph;
  std::size_t degree = 0;
  double lambda2 = 0.0;
  double target = 0.0;
  std::size_t attempts = 0;
};

/// Random simple d-regular graph with a measured certificate
/// lambda_2(L) >= target (and > 0, so connected). Makes up to
/// 1 + max_retries independent attempts.
inline ExpanderCert random_regular_expander(std::size_t n, std::size_t d, double target,
                                            std::uint64_t seed, std::size_t max_retries = 100) {
  if (d < 3) fail(ErrorCode::InvalidArgument, "degree must be at least 3");
  if ((n * d) % 2 != 0) {
    fail(ErrorCode::ParityViolation, "n*d must be even (n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")");
  }
  if (d >= n) fail(ErrorCode::InvalidArgument, "degree must be below n");
  if (target > near_ramanujan_bound(d) + 1e-12) {
    fail(ErrorCode::InvalidArgument, "target exceeds d - 2.01 sqrt(d-1)");
  }
  const auto stubs = detail::uniform_stubs(n, d);
  for (std::size_t attempt = 0; attempt <= max_retries; ++attempt) {
    Rng rng = make_rng(seed, attempt);
    auto edges = detail::random_stub_pairing(stubs, {}, rng);
    if (!edges) continue;
    Graph g = Graph::from_edge_ids(n, std::move(*edges));
    const double lambda2 = laplacian_lambda2(g);
    if (lambda2 >= target && lambda2 > 1e-9) {
      return {std::move(g), d, lambda2, target, attempt + 1};
    }
  }
  fail(ErrorCode::RetriesExhausted, "no " + std::to_string(d) + "-regular graph on " +
                                        std::to_string(n) + " vertices met lambda2 >= " +
                                        std::to_string(target));
}

struct DumbbellPrediction {
  double r_g = 1.0;                         // (s,t) is a bridge
  double r_g_prime_bound = 0.99;            // predicted upper bound on R in G'
  std::optional<double> r_g_measured;       // exact, filled by the generator
  std::optional<double> r_g_prime_measured;
};

/// Two copies of an expander H (H_s on 0..half-1 containing s = 0, H_t on
/// half..n-1 containing t = half) joined by the bridge (s, t). G' rewires
/// pairs of within-side edges into cross edges.
struct DumbbellInstance {
  std::string family;
  std::uint64_t seed = 0;
  Graph g;
  std::optional<Graph> g_prime;
  Vertex s = 0;
  Vertex t = 0;
  std::size_t half = 0;
  double expander_lambda2 = 0.0;
  std::vector<EdgeId> candidates_s;  // edges eligible for removal on each side
  std::vector<EdgeId> candidates_t;
  std::vector<EdgeId> removed_edges;
  std::vector<EdgeId> added_edges;
  DumbbellPrediction predicted;
};

/// Edges with both endpoints in [lo, hi) whose resistance is at most `limit`.
inline std::vector<EdgeId> low_resistance_edges(const Graph& g, const ResistanceTable& table,
                                                Vertex lo, Vertex hi, double limit) {
  std::vector<EdgeId> out;
  for (const auto& e : g.edges()) {
    if (e.u < lo || e.v >= hi) continue;
    if (table.finite_resistance(e.u, e.v) <= limit + 1e-12) out.push_back(e);
  }
  return out;
}

/// Dumbbell on n vertices from a 3-regular expander of size n/2.
inline DumbbellInstance dumbbell(std::size_t n, std::uint64_t seed, std::size_t max_retries = 100) {
  if (n % 4 != 0) fail(ErrorCode::ParityViolation, "dumbbell needs n divisible by 4, got " + std::to_string(n));
  const std::size_t half = n / 2;
  auto cert = random_regular_expander(half, 3, near_ramanujan_bound(3), seed, max_retries);

  std::vector<EdgeId> edges = cert.graph.edges();
  auto copy = detail::shifted(cert.graph.edges(), static_cast<Vertex>(half));
  edges.insert(edges.end(), copy.begin(), copy.end());
  edges.push_back({0, static_cast<Vertex>(half)});

  DumbbellInstance inst;
  inst.family = "dumbbell";
  inst.seed = seed;
  inst.g = Graph::from_edge_ids(n, std::move(edges));
  inst.s = 0;
  inst.t = static_cast<Vertex>(half);
  inst.half = half;
  inst.expander_lambda2 = cert.lambda2;
  ResistanceTable table(inst.g);
  inst.predicted.r_g_measured = table.finite_resistance(inst.s, inst.t);
  inst.candidates_s = low_resistance_edges(inst.g, table, 0, static_cast<Vertex>(half), 0.75);
  inst.candidates_t = low_resistance_edges(inst.g, table, static_cast<Vertex>(half), static_cast<Vertex>(n), 0.75);
  return inst;
}

namespace detail {

// Cross edges (u, v), (u', v') for a removed pair (u, u') in H_s and
// (v, v') in H_t. The t-side orientation flips when the first choice would
// duplicate (s, t) or an earlier cross edge.
inline std::optional<std::pair<EdgeId, EdgeId>> cross_pair(EdgeId side_s, EdgeId side_t, bool flip_s,
                                                           bool flip_t,
                                                           const std::set<EdgeId>& taken) {
  Vertex u = side_s.u, u2 = side_s.v;
  if (flip_s) std::swap(u, u2);
  for (int attempt = 0; attempt < 2; ++attempt) {
    Vertex v = side_t.u, v2 = side_t.v;
    if (flip_t != (attempt == 1)) std::swap(v, v2);
    const EdgeId a = EdgeId::make(u, v);
    const EdgeId b = EdgeId::make(u2, v2);
    if (!taken.count(a) && !taken.count(b)) return std::make_pair(a, b);
  }
  return std::nullopt;
}

}  // namespace detail

/// Removes one uniform edge from each side's low-resistance set and adds the
/// two cross edges. Degree sequence is unchanged.
inline DumbbellInstance dumbbell_modified(const DumbbellInstance& base, std::uint64_t seed) {
  if (base.candidates_s.empty() || base.candidates_t.empty()) {
    fail(ErrorCode::EmptyCandidateSet, "no edge with R <= 3/4 on one side");
  }
  DumbbellInstance inst = base;
  Rng rng = make_rng(seed);
  std::uniform_int_distribution<std::size_t> pick_s(0, base.candidates_s.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_t(0, base.candidates_t.size() - 1);
  std::bernoulli_distribution coin(0.5);
  const EdgeId es = base.candidates_s[pick_s(rng)];
  const EdgeId et = base.candidates_t[pick_t(rng)];
  const bool flip_s = coin(rng);
  const bool flip_t = coin(rng);

  const std::set<EdgeId> taken{EdgeId::make(base.s, base.t)};
  auto cross = detail::cross_pair(es, et, flip_s, flip_t, taken);
  if (!cross) fail(ErrorCode::EmptyCandidateSet, "no valid cross orientation");
  inst.removed_edges = {es, et};
  inst.added_edges = {cross->first, cross->second};
  inst.g_prime = base.g.modified(inst.removed_edges, inst.added_edges);
  inst.predicted.r_g_prime_bound = 0.99;
  inst.predicted.r_g_prime_measured = effective_resistance(*inst.g_prime, inst.s, inst.t).value();
  return inst;
}

/// Large-degree pair: two copies of a floor(3d/4)-regular expander on n/2
/// vertices, each topped up to degree d by random extra edges E_s / E_t and
/// joined by the bridge (s, t). G' deletes l edges from each of E_s and E_t
/// (a prefix of one seeded shuffle, so larger l extends smaller l) and adds
/// 2l cross edges. Every vertex has degree d except s and t (d + 1).
inline DumbbellInstance large_degree_pair(std::size_t n, std::size_t d, std::size_t l, std::uint64_t seed,
                                          double c0 = 0.01, std::size_t max_retries = 100) {
  if (d < 4 || d > n) fail(ErrorCode::InvalidArgument, "d must lie in [4, n]");
  if (l < 4 || l > n) fail(ErrorCode::InvalidArgument, "l must lie in [4, n]");
  if (n % 2 != 0) fail(ErrorCode::ParityViolation, "n must be even");
  const std::size_t half = n / 2;
  const std::size_t dh = (3 * d) / 4;
  const std::size_t extra = d - dh;
  if (d >= half) fail(ErrorCode::InfeasibleRegularization, "d must be below n/2");
  if ((half * dh) % 2 != 0 || (half * extra) % 2 != 0) {
    fail(ErrorCode::ParityViolation, "n/2 * floor(3d/4) and n/2 * (d - floor(3d/4)) must be even");
  }
  if (l > half * extra / 2) fail(ErrorCode::InfeasibleRegularization, "l exceeds the extra edges per side");

  const double target = std::min(near_ramanujan_bound(dh), static_cast<double>(dh) / 2.0);
  auto cert = random_regular_expander(half, dh, target, seed, max_retries);

  std::unordered_set<std::uint64_t> forbidden;
  for (const auto& e : cert.graph.edges()) forbidden.insert(detail::pair_key(e.u, e.v));
  const auto stubs = detail::uniform_stubs(half, extra);
  auto top_up = [&](std::uint64_t stream) {
    for (std::size_t attempt = 0; attempt <= max_retries; ++attempt) {
      Rng rng = make_rng(derive_seed(seed, stream), attempt);
      if (auto e = detail::random_stub_pairing(stubs, forbidden, rng)) return std::move(*e);
    }
    fail(ErrorCode::InfeasibleRegularization, "could not top up to degree " + std::to_string(d));
  };
  const auto extra_s = top_up(1);
  const auto extra_t = detail::shifted(top_up(2), static_cast<Vertex>(half));

  std::vector<EdgeId> edges = cert.graph.edges();
  edges.insert(edges.end(), extra_s.begin(), extra_s.end());
  auto copy = detail::shifted(cert.graph.edges(), static_cast<Vertex>(half));
  edges.insert(edges.end(), copy.begin(), copy.end());
  edges.insert(edges.end(), extra_t.begin(), extra_t.end());
  edges.push_back({0, static_cast<Vertex>(half)});

  DumbbellInstance inst;
  inst.family = "large-degree";
  inst.seed = seed;
  inst.g = Graph::from_edge_ids(n, std::move(edges));
  inst.s = 0;
  inst.t = static_cast<Vertex>(half);
  inst.half = half;
  inst.expander_lambda2 = cert.lambda2;
  inst.candidates_s = extra_s;
  inst.candidates_t = extra_t;
  std::sort(inst.candidates_s.begin(), inst.candidates_s.end());
  std::sort(inst.candidates_t.begin(), inst.candidates_t.end());

  Rng rng = make_rng(derive_seed(seed, 3));
  std::vector<EdgeId> order_s = inst.candidates_s;
  std::vector<EdgeId> order_t = inst.candidates_t;
  std::shuffle(order_s.begin(), order_s.end(), rng);
  std::shuffle(order_t.begin(), order_t.end(), rng);
  std::bernoulli_distribution coin(0.5);
  std::set<EdgeId> taken{EdgeId::make(inst.s, inst.t)};
  for (std::size_t i = 0; i < l; ++i) {
    const bool flip_s = coin(rng);
    const bool flip_t = coin(rng);
    bool placed = false;
    for (auto it = order_t.begin(); it != order_t.end(); ++it) {
      auto cross = detail::cross_pair(order_s[i], *it, flip_s, flip_t, taken);
      if (!cross) continue;
      inst.removed_edges.push_back(order_s[i]);
      inst.removed_edges.push_back(*it);
      inst.added_edges.push_back(cross->first);
      inst.added_edges.push_back(cross->second);
      taken.insert(cross->first);
      taken.insert(cross->second);
      order_t.erase(it);
      placed = true;
      break;
    }
    if (!placed) fail(ErrorCode::InfeasibleRegularization, "could not place cross edges");
  }

  inst.g_prime = inst.g.modified(inst.removed_edges, inst.added_edges);
  ResistanceTable table(inst.g);
  inst.predicted.r_g_measured = table.finite_resistance(inst.s, inst.t);
  inst.predicted.r_g_prime_bound = 1.0 / (1.0 + c0 * static_cast<double>(std::min(l, d)));
  inst.predicted.r_g_prime_measured = effective_resistance(*inst.g_prime, inst.s, inst.t).value();
  return inst;
}

/// (1/R' - 1) / min(l, d): the constant c0 this instance certifies.
inline double measured_gain(const DumbbellInstance& inst, std::size_t l, std::size_t d) {
  return (1.0 / inst.predicted.r_g_prime_measured.value() - 1.0) / static_cast<double>(std::min(l, d));
}

inline Graph ring(std::size_t n) {
  if (n < 3) fail(ErrorCode::TooSmall, "ring needs n >= 3");
  std::vector<EdgeId> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  edges.push_back({0, static_cast<Vertex>(n - 1)});
  return Graph::from_edge_ids(n, std::move(edges));
}

inline Graph path(std::size_t n) {
  if (n < 2) fail(ErrorCode::TooSmall, "path needs n >= 2");
  std::vector<EdgeId> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return Graph::from_edge_ids(n, std::move(edges));
}

struct PendantExpander {
  Graph g;
  EdgeId pendant;
  double lambda2 = 0.0;
};

/// 3-regular expander on n-1 vertices plus vertex n-1 hanging off n-2.
inline PendantExpander pendant_expander(std::size_t n, std::uint64_t seed, double lambda2_threshold = 0.05,
                                        std::size_t max_retries = 100) {
  if (n < 5) fail(ErrorCode::TooSmall, "pendant expander needs n >= 5");
  if ((n - 1) % 2 != 0) fail(ErrorCode::ParityViolation, "n - 1 must be even");
  for (std::size_t attempt = 0; attempt <= max_retries; ++attempt) {
    auto cert = random_regular_expander(n - 1, 3, near_ramanujan_bound(3), derive_seed(seed, attempt),
                                        max_retries);
    std::vector<EdgeId> edges = cert.graph.edges();
    const EdgeId pendant{static_cast<Vertex>(n - 2), static_cast<Vertex>(n - 1)};
    edges.push_back(pendant);
    Graph g = Graph::from_edge_ids(n, std::move(edges));
    const double lambda2 = laplacian_lambda2(g);
    if (lambda2 > lambda2_threshold) return {std::move(g), pendant, lambda2};
  }
  fail(ErrorCode::RetriesExhausted, "pendant expander never cleared lambda2 > " + std::to_string(lambda2_threshold));
}

/// One path out of s: either reaching t after `length` edges, or a dead end
/// of `length` edges that never meets t.
struct PathSpec {
  std::size_t length = 1;
  bool reaches_target = true;

  static PathSpec to_target(std::size_t l) { return {l, true}; }
  static PathSpec dead_end(std::size_t l) { return {l, false}; }
};

struct ParallelPathsInstance {
  Graph g;
  Vertex s = 0;
  Vertex t = 1;
  double conductance = 0.0;  // sum of 1/length, in s's adjacency order
  Resistance resistance = Resistance::infinite();
  std::vector<PathSpec> paths;
  std::vector<std::size_t> tails;
};

/// s = 0 and t = 1 joined by internally disjoint paths; dead-end paths leave
/// s, and `tails` are dead-end stubs hanging off t.
inline ParallelPathsInstance parallel_paths(const std::vector<PathSpec>& paths,
                                            const std::vector<std::size_t>& tails = {}) {
  if (paths.empty()) fail(ErrorCode::EmptySpec, "at least one path is required");
  const Vertex s = 0, t = 1;
  Vertex next = 2;
  std::vector<EdgeId> edges;
  bool has_direct = false;
  std::vector<double> inverse_lengths;
  auto chain = [&](Vertex from, std::size_t internal) {
    Vertex prev = from;
    for (std::size_t i = 0; i < internal; ++i) {
      edges.push_back(EdgeId::make(prev, next));
      prev = next++;
    }
    return prev;
  };
  for (const auto& p : paths) {
    if (p.length == 0) fail(ErrorCode::InvalidArgument, "path length must be positive");
    if (p.reaches_target) {
      if (p.length == 1) {
        if (has_direct) fail(ErrorCode::DuplicateEdge, "two paths of length 1");
        has_direct = true;
        edges.push_back({s, t});
        continue;
      }
      edges.push_back(EdgeId::make(chain(s, p.length - 1), t));
      inverse_lengths.push_back(1.0 / static_cast<double>(p.length));
    } else {
      chain(s, p.length);
    }
  }
  for (std::size_t k : tails) {
    if (k == 0) fail(ErrorCode::InvalidArgument, "tail length must be positive");
    chain(t, k);
  }

  ParallelPathsInstance inst;
  inst.g = Graph::from_edge_ids(next, std::move(edges));
  inst.paths = paths;
  inst.tails = tails;
  // The direct edge is s's first neighbor (t = 1 precedes every internal id).
  double rho = has_direct ? 1.0 : 0.0;
  for (double x : inverse_lengths) rho += x;
  inst.conductance = rho;
  inst.resistance = rho > 0.0 ? Resistance(1.0 / rho) : Resistance::infinite();
  return inst;
}

/// Size of the symmetric difference of the two edge sets.
inline std::size_t edge_symmetric_difference(const Graph& a, const Graph& b) {
  std::vector<EdgeId> diff;
  std::set_symmetric_difference(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end(),
                                std::back_inserter(diff));
  return diff.size();
}

}  // namespace effres
