// local_estimator.hpp - sublinear s-t conductance estimation when every vertex
// other than s and t has degree at most 2.
//
// Such a graph is a bundle of internally disjoint s-t paths, some of them
// dead-ending, so 1/R(s,t) = sum over paths of 1/length. Round k samples every
// path out of s with probability 2^-k, walks it for at most 2^(k+1)*a steps
// and credits 1/(p_k * length) when the length falls in the round's window:
// (0, 2a] for k = 0 and (2^k a, 2^(k+1) a] afterwards.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "effres/error.hpp"
#include "effres/graph.hpp"
#include "effres/query_oracle.hpp"
#include "effres/random.hpp"
#include "effres/spectral.hpp"

namespace effres {

enum class ProbeOutcome { ReachedTarget, ReturnedToSource, DeadEnd, BudgetExhausted };

inline const char* to_string(ProbeOutcome o) {
  switch (o) {
    case ProbeOutcome::ReachedTarget: return "REACHED_T";
    case ProbeOutcome::ReturnedToSource: return "RETURNED_TO_S";
    case ProbeOutcome::DeadEnd: return "DEAD_END";
    case ProbeOutcome::BudgetExhausted: return "BUDGET_EXHAUSTED";
  }
  return "?";
}

struct PathProbe {
  Vertex start_neighbor = 0;
  ProbeOutcome outcome = ProbeOutcome::DeadEnd;
  std::size_t steps_used = 0;

  /// Path length when the probe reached t.
  std::optional<std::size_t> length() const {
    if (outcome == ProbeOutcome::ReachedTarget) return steps_used;
    return std::nullopt;
  }
};

/// Follows the path that leaves s through `first` (the step s -> first is
/// step 1 and its neighbor query is the caller's). Each later step costs one
/// degree query and one or two neighbor queries at the current vertex.
template <AdjacencyOracle Oracle>
PathProbe walk_path(Oracle& oracle, Vertex s, Vertex t, Vertex first, std::size_t budget) {
  if (budget == 0) fail(ErrorCode::InvalidArgument, "walk budget must be positive");
  PathProbe probe{first, ProbeOutcome::DeadEnd, 1};
  Vertex prev = s;
  Vertex cur = first;
  while (true) {
    if (cur == t) {
      probe.outcome = ProbeOutcome::ReachedTarget;
      return probe;
    }
    if (cur == s) {
      probe.outcome = ProbeOutcome::ReturnedToSource;
      return probe;
    }
    if (probe.steps_used >= budget) {
      probe.outcome = ProbeOutcome::BudgetExhausted;
      return probe;
    }
    const std::size_t d = oracle.degree(cur);
    if (d >= 3) {
      fail(ErrorCode::DegreeViolation,
           "internal vertex " + std::to_string(cur) + " has degree " + std::to_string(d));
    }
    if (d <= 1) {
      probe.outcome = ProbeOutcome::DeadEnd;
      return probe;
    }
    Vertex next = oracle.neighbor(cur, 0);
    if (next == prev) next = oracle.neighbor(cur, 1);
    prev = cur;
    cur = next;
    ++probe.steps_used;
  }
}

struct EstimatorConfig {
  double epsilon = 0.1;
  std::optional<double> delta;  // default epsilon / min(d(s), d(t))
  std::optional<std::uint64_t> a_override;
  std::uint64_t seed = 0;
  std::optional<std::size_t> max_rounds_override;

  void validate() const {
    if (!(epsilon > 0.0 && epsilon <= 0.1)) {
      fail(ErrorCode::InvalidArgument, "epsilon must lie in (0, 0.1], got " + std::to_string(epsilon));
    }
    if (delta && !(*delta > 0.0)) {
      fail(ErrorCode::InvalidArgument, "delta must be positive, got " + std::to_string(*delta));
    }
    if (a_override && *a_override == 0) fail(ErrorCode::InvalidArgument, "a must be positive");
  }
};

inline std::size_t ceil_log2(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

/// a = ceil(20 log2(n) * max(1, log2 log2 n) / (epsilon * delta)).
inline std::uint64_t schedule_constant(std::size_t n, double epsilon, double delta) {
  const double log_n = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
  const double loglog_n = std::max(1.0, std::log2(log_n));
  return static_cast<std::uint64_t>(std::ceil(20.0 * log_n * loglog_n / (epsilon * delta)));
}

inline double default_delta(double epsilon, std::size_t d_min) {
  return epsilon / static_cast<double>(std::max<std::size_t>(d_min, 1));
}

inline std::uint64_t resolve_a(const EstimatorConfig& cfg, std::size_t n, std::size_t d_min) {
  if (cfg.a_override) return *cfg.a_override;
  return schedule_constant(n, cfg.epsilon, cfg.delta.value_or(default_delta(cfg.epsilon, d_min)));
}

/// Ceiling for the mean query count: d_min * a * (ceil(log2 n) + 1) * 2.
inline std::uint64_t expected_query_budget(std::size_t n, std::size_t d_min, const EstimatorConfig& cfg) {
  const std::uint64_t a = resolve_a(cfg, n, d_min);
  return static_cast<std::uint64_t>(d_min) * a * (ceil_log2(n) + 1) * 2;
}

/// Lengths credited in round k: (low, high].
struct AcceptanceWindow {
  std::uint64_t low = 0;
  std::uint64_t high = 0;

  bool contains(std::uint64_t length) const { return length > low && length <= high; }
};

/// (0, 2a] for k = 0, (2^k a, 2^(k+1) a] for k >= 1; saturates at UINT64_MAX.
inline AcceptanceWindow round_window(std::size_t k, std::uint64_t a) {
  const auto scaled = [a](std::size_t shift) -> std::uint64_t {
    if (shift >= 63 || a > (UINT64_MAX >> shift)) return UINT64_MAX;
    return a << shift;
  };
  return {k == 0 ? 0 : scaled(k), scaled(k + 1)};
}

struct RoundTrace {
  std::size_t round = 0;
  double probability = 1.0;
  std::uint64_t budget = 0;
  std::size_t probes = 0;
  std::size_t accepted = 0;
  std::uint64_t steps = 0;
  bool executed = true;  // false when the window lies beyond any possible path length
};

struct EstimateResult {
  double conductance = 0.0;
  Resistance resistance = Resistance::infinite();
  std::uint64_t query_count = 0;
  std::vector<RoundTrace> rounds;
  Vertex source = 0;  // walks start here (the lower-degree terminal)
  Vertex target = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::uint64_t a = 0;
  bool exact_regime = false;  // every path resolved in round 0
  bool adjacent = false;      // a length-1 path was seen in round 0
  std::vector<std::string> warnings;
};

/// Additive-error estimate of 1/R(s,t) through the oracle only.
template <AdjacencyOracle Oracle>
EstimateResult estimate_conductance(Oracle& oracle, Vertex s, Vertex t, const EstimatorConfig& cfg) {
  cfg.validate();
  const std::size_t n = oracle.vertex_count();
  if (s >= n || t >= n) fail(ErrorCode::OutOfRange, "terminal out of range");
  if (s == t) fail(ErrorCode::SameVertex, "s = t = " + std::to_string(s));
  const std::uint64_t queries_before = oracle.total_queries();

  std::size_t ds = oracle.degree(s);
  std::size_t dt = oracle.degree(t);
  if (ds > dt) {
    std::swap(s, t);
    std::swap(ds, dt);
  }

  EstimateResult result;
  result.source = s;
  result.target = t;
  result.epsilon = cfg.epsilon;
  result.delta = cfg.delta.value_or(default_delta(cfg.epsilon, ds));
  result.a = cfg.a_override ? *cfg.a_override : schedule_constant(n, cfg.epsilon, result.delta);

  const std::size_t rounds = cfg.max_rounds_override.value_or(ceil_log2(n));
  const std::uint64_t a = result.a;
  const std::uint64_t max_length = n - 1;
  Rng rng(cfg.seed);
  double rho = 0.0;
  bool round0_resolved = true;

  for (std::size_t k = 0; k <= rounds; ++k) {
    RoundTrace trace;
    trace.round = k;
    trace.probability = std::ldexp(1.0, -static_cast<int>(k));
    const AcceptanceWindow window = round_window(k, a);
    const std::uint64_t window_low = window.low;
    const std::uint64_t window_high = window.high;
    trace.budget = std::min(window_high, max_length);
    if (k > 0 && window_low >= max_length) {
      trace.executed = false;
      result.rounds.push_back(trace);
      continue;
    }

    std::bernoulli_distribution coin(trace.probability);
    for (std::size_t i = 0; i < ds; ++i) {
      if (!coin(rng)) continue;
      ++trace.probes;
      const Vertex first = oracle.neighbor(s, i);
      const PathProbe probe = walk_path(oracle, s, t, first, static_cast<std::size_t>(trace.budget));
      trace.steps += probe.steps_used;
      if (k == 0 && probe.outcome == ProbeOutcome::BudgetExhausted) round0_resolved = false;
      if (auto len = probe.length()) {
        if (k == 0 && *len == 1) result.adjacent = true;
        if (window.contains(*len)) {
          ++trace.accepted;
          rho += 1.0 / (trace.probability * static_cast<double>(*len));
        }
      }
    }
    result.rounds.push_back(trace);
  }

  result.conductance = rho;
  result.resistance = rho > 0.0 ? Resistance(1.0 / rho) : Resistance::infinite();
  result.exact_regime = round0_resolved;
  result.query_count = oracle.total_queries() - queries_before;
  return result;
}

/// Conductance estimate inverted to a resistance estimate. The relative
/// guarantee needs s and t adjacent; otherwise a warning is attached.
template <AdjacencyOracle Oracle>
EstimateResult estimate_resistance(Oracle& oracle, Vertex s, Vertex t, const EstimatorConfig& cfg) {
  EstimateResult result = estimate_conductance(oracle, s, t, cfg);
  if (!result.adjacent) {
    result.warnings.push_back(
        "NonAdjacentWarning: s and t are not adjacent; only the conductance guarantee applies");
  }
  return result;
}

}  // namespace effres
