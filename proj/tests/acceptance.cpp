// acceptance - one PASS/FAIL line per acceptance criterion, with detail lines
// indented underneath. Exit status is nonzero if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <span>
#include <set>
#include <string>
#include <vector>

#include "effres/effres.hpp"
#include "test_support.hpp"

namespace {

using namespace effres;

struct Ctx {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back("FAILED: " + what);
    }
  }
  void note(const std::string& text) { notes.push_back(text); }
};

std::string num(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// ------------------------------------------------------------------ 1
void closed_forms(Ctx& c) {
  double worst_rel = 0.0, worst_ratio = 0.0;
  for (std::size_t n : {3, 5, 10, 50, 200}) {
    const double nn = static_cast<double>(n);
    const double want_path = (nn * nn * nn - nn) / 6.0, want_ring = (nn * nn * nn - nn) / 12.0;
    double spectral_path = 0.0, spectral_ring = 0.0;
    for (auto method : {TotalMethod::Pairwise, TotalMethod::Spectral}) {
      const double p = total_effective_resistance(path(n), method).value();
      const double r = total_effective_resistance(ring(n), method).value();
      worst_rel = std::max({worst_rel, std::abs(p / want_path - 1.0), std::abs(r / want_ring - 1.0)});
      c.require(std::abs(p / want_path - 1.0) <= 1e-6, "path(" + std::to_string(n) + ") total");
      c.require(std::abs(r / want_ring - 1.0) <= 1e-6, "ring(" + std::to_string(n) + ") total");
      if (method == TotalMethod::Spectral) {
        spectral_path = p;
        spectral_ring = r;
      }
    }
    const double ratio = spectral_path / spectral_ring;
    worst_ratio = std::max(worst_ratio, std::abs(ratio - 2.0));
    c.require(std::abs(ratio - 2.0) <= 1e-9, "path/ring ratio at n=" + std::to_string(n));
  }
  c.note("worst relative error " + num(worst_rel) + ", worst |ratio - 2| " + num(worst_ratio));
}

// ------------------------------------------------------------------ 2
void identity_suite(Ctx& c) {
  std::vector<std::pair<std::string, Graph>> graphs;
  graphs.emplace_back("triangle", ring(3));
  for (std::size_t n = 4; n <= 8; ++n) graphs.emplace_back("ring(" + std::to_string(n) + ")", ring(n));
  for (std::size_t n = 3; n <= 8; ++n) graphs.emplace_back("path(" + std::to_string(n) + ")", path(n));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 5 + (seed * 7) % 26;
    graphs.emplace_back("random#" + std::to_string(seed), testing::random_connected_graph(n, 0.2, 1000 + seed));
  }
  double worst_sum = 0.0, worst_slack = 0.0, worst_harmonic = 0.0;
  for (const auto& [name, g] : graphs) {
    const double sum = edge_resistance_sum(g);
    const double err = std::abs(sum - static_cast<double>(g.num_vertices() - 1));
    worst_sum = std::max(worst_sum, err);
    c.require(err <= 1e-6, name + " edge sum");

    const auto bounds = degree_bound_check(g);
    const double slack = std::min(bounds.min_lower_slack, bounds.min_upper_slack);
    worst_slack = std::min(worst_slack, slack);
    c.require(slack >= -1e-9, name + " degree bounds");

    ResistanceTable table(g);
    for (Vertex s = 0; s < g.num_vertices(); ++s) {
      for (Vertex t = s + 1; t < g.num_vertices(); ++t) {
        const double d = std::abs(effective_resistance_harmonic(g, s, t).resistance.value() - table.finite_resistance(s, t));
        worst_harmonic = std::max(worst_harmonic, d);
        if (d > 1e-8) c.require(false, name + " harmonic route at (" + std::to_string(s) + "," + std::to_string(t) + ")");
      }
    }
  }
  c.note(std::to_string(graphs.size()) + " graphs; worst edge-sum error " + num(worst_sum) + ", min bound slack " +
         num(worst_slack) + ", worst harmonic gap " + num(worst_harmonic));
}

// ------------------------------------------------------------------ 3
void perturbation_bounds(Ctx& c) {
  Rng rng(20240611);
  std::normal_distribution<double> gauss;
  int matrices = 0, draws = 0;
  double worst = 0.0;
  while (matrices < 100) {
    ++draws;
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 20)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(n + 5, 100)(rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    Matrix a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = gauss(rng);
    std::vector<std::size_t> rows(m);
    std::iota(rows.begin(), rows.end(), 0);
    std::shuffle(rows.begin(), rows.end(), rng);
    rows.resize(k);
    const auto report = eigen_bound_report(a, rows);
    if (report.tau_sum >= 1.0) continue;
    ++matrices;
    worst = std::min({worst, report.min_lower_slack() / report.lambda_max, report.min_upper_slack() / report.lambda_max});
    c.require(report.bounds_hold(), "matrix draw " + std::to_string(draws));
  }

  int graphs = 0, graph_draws = 0;
  while (graphs < 100) {
    ++graph_draws;
    const std::size_t n = std::uniform_int_distribution<std::size_t>(6, 20)(rng);
    auto g = testing::random_connected_graph(n, 0.35, rng());
    std::vector<EdgeId> edges = g.edges();
    std::shuffle(edges.begin(), edges.end(), rng);
    edges.resize(std::min<std::size_t>(edges.size() - 1, std::uniform_int_distribution<std::size_t>(1, 5)(rng)));
    const auto report = graph_removal_bound(g, edges);
    if (report.tau_sum >= 1.0) continue;
    ++graphs;
    worst = std::min({worst, report.min_lower_slack() / report.lambda_max, report.min_upper_slack() / report.lambda_max});
    c.require(report.bounds_hold(), "graph draw " + std::to_string(graph_draws));
  }

  double tight = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Matrix raw(40, 8);
    for (Eigen::Index i = 0; i < raw.size(); ++i) raw.data()[i] = gauss(rng);
    Eigen::HouseholderQR<Matrix> qr(raw);
    Matrix q = qr.householderQ() * Matrix::Identity(40, 8);
    const std::size_t row = seed % 40;
    const auto report = eigen_bound_report(q, std::span<const std::size_t>(&row, 1));
    const double slack = std::abs(report.per_index.front().lower_slack);
    tight = std::max(tight, slack);
    c.require(slack < 1e-12, "orthonormal family index 1 tightness");
  }
  c.note(std::to_string(matrices) + " matrices (" + std::to_string(draws) + " draws), " + std::to_string(graphs) +
         " graph edge sets (" + std::to_string(graph_draws) + " draws); worst slack / lambda_max " + num(worst) +
         "; orthonormal index-1 slack " + num(tight));
}

// ------------------------------------------------------------------ 4
void instance_predictions(Ctx& c) {
  double max_r_prime = 0.0, worst_bridge = 0.0;
  std::size_t min_candidates = SIZE_MAX;
  for (std::size_t n : {64, 128}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const std::string tag = "n=" + std::to_string(n) + " seed=" + std::to_string(seed);
      auto base = dumbbell(n, seed);
      const double r = effective_resistance(base.g, base.s, base.t).value();
      worst_bridge = std::max(worst_bridge, std::abs(r - 1.0));
      c.require(std::abs(r - 1.0) <= 1e-9, tag + " R_G(s,t) = 1");
      min_candidates = std::min({min_candidates, base.candidates_s.size(), base.candidates_t.size()});
      c.require(base.candidates_s.size() * 12 >= n && base.candidates_t.size() * 12 >= n, tag + " |E_s|,|E_t| >= n/12");
      auto mod = dumbbell_modified(base, derive_seed(seed, 99));
      const double rp = effective_resistance(*mod.g_prime, mod.s, mod.t).value();
      max_r_prime = std::max(max_r_prime, rp);
      c.require(rp <= 0.99, tag + " R_G'(s,t) <= 0.99");
      c.require(mod.g_prime->degree_sequence() == base.g.degree_sequence(), tag + " degree sequences");
    }
  }
  double worst_pendant = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto pe = pendant_expander(33, seed);
    const double r = effective_resistance(pe.g, pe.pendant.u, pe.pendant.v).value();
    const double l2 = laplacian_lambda2(pe.g.without_edges(std::span<const EdgeId>(&pe.pendant, 1)));
    worst_pendant = std::max({worst_pendant, std::abs(r - 1.0), std::abs(l2)});
    c.require(std::abs(r - 1.0) <= 1e-9, "pendant R = 1");
    c.require(std::abs(l2) <= 1e-9, "pendant post-removal lambda2 = 0");
  }
  c.note("max |R_G - 1| " + num(worst_bridge) + ", max R_G' " + num(max_r_prime) + ", min |E_s|,|E_t| " +
         std::to_string(min_candidates) + ", pendant worst deviation " + num(worst_pendant));
}

// ------------------------------------------------------------------ 5
struct NamedInstance {
  std::string name;
  ParallelPathsInstance inst;
};

void estimator_statistics(Ctx& c) {
  std::vector<NamedInstance> instances;
  instances.push_back({"{1,2,4}", parallel_paths({PathSpec::to_target(1), PathSpec::to_target(2), PathSpec::to_target(4)})});
  instances.push_back({"{1,1000}", parallel_paths({PathSpec::to_target(1), PathSpec::to_target(1000)})});
  instances.push_back({"{5,7,dead 100} tails {3,8}",
                       parallel_paths({PathSpec::to_target(5), PathSpec::to_target(7), PathSpec::dead_end(100)}, {3, 8})});
  {
    std::vector<PathSpec> ten;
    for (std::size_t len : {1, 3, 10, 50, 200, 1000, 5000, 10000, 30000, 49000}) ten.push_back(PathSpec::to_target(len));
    instances.push_back({"10 paths, n~1e5", parallel_paths(ten)});
  }
  {
    std::vector<PathSpec> mixed;
    for (std::size_t len : {2, 9, 33, 120, 700, 4000, 20000}) mixed.push_back(PathSpec::to_target(len));
    mixed.push_back(PathSpec::dead_end(3000));
    mixed.push_back(PathSpec::dead_end(17));
    instances.push_back({"7 paths + 2 dead ends", parallel_paths(mixed, {500, 2})});
  }

  const EstimatorConfig base;  // epsilon = 0.1, default delta
  for (const auto& [name, inst] : instances) {
    const std::size_t n = inst.g.num_vertices();
    const std::size_t d_min = std::min(inst.g.degree(inst.s), inst.g.degree(inst.t));
    c.require(n <= 100000 && d_min <= 10, name + " is inside the tested range");
    const double r_true = inst.resistance.value();
    const std::uint64_t budget = expected_query_budget(n, d_min, base);
    std::size_t inside = 0, exact_runs = 0, bit_identical = 0;
    double queries = 0.0;
    for (std::uint64_t run = 0; run < 200; ++run) {
      EstimatorConfig cfg = base;
      cfg.seed = derive_seed(0xACCE55, run);
      QueryOracle oracle(inst.g, cfg.seed);
      const auto res = estimate_resistance(oracle, inst.s, inst.t, cfg);
      queries += static_cast<double>(res.query_count);
      if (!res.resistance.is_infinite()) {
        const double r = res.resistance.value();
        if (std::abs(r - r_true) <= 2.0 * cfg.epsilon * r_true + 2.0 * res.delta) ++inside;
      }
      if (res.exact_regime) {
        ++exact_runs;
        if (res.resistance == inst.resistance) ++bit_identical;
      }
    }
    const double mean_q = queries / 200.0;
    c.require(inside >= 190, name + ": " + std::to_string(inside) + "/200 inside the band");
    c.require(mean_q <= static_cast<double>(budget), name + ": mean queries above budget");
    c.require(bit_identical == exact_runs, name + ": exact-regime run differs from R");
    c.note(name + ": n=" + std::to_string(n) + " d_min=" + std::to_string(d_min) + " R=" + num(r_true) + ", " +
           std::to_string(inside) + "/200 in band, exact-regime runs " + std::to_string(exact_runs) +
           " (all equal R: " + (bit_identical == exact_runs ? "yes" : "no") + "), mean queries " + num(mean_q) +
           " <= budget " + std::to_string(budget));
  }
}

// ------------------------------------------------------------------ 6
void monte_carlo_oracles(Ctx& c) {
  const std::vector<std::pair<std::string, Graph>> graphs{{"triangle", ring(3)}, {"ring(6)", ring(6)}, {"path(5)", path(5)}};
  double worst_commute = 0.0, worst_tree = 0.0;
  for (const auto& [name, g] : graphs) {
    ResistanceTable table(g);
    const Vertex far = static_cast<Vertex>(g.num_vertices() / 2);
    for (Vertex v : {Vertex{1}, far}) {
      const auto stats = commute_time_mc(g, 0, v, 10000, derive_seed(606, v));
      const double kappa = 2.0 * static_cast<double>(g.num_edges()) * table.finite_resistance(0, v);
      const double z = stats.std_error > 0 ? std::abs(stats.mean_commute - kappa) / stats.std_error : 0.0;
      worst_commute = std::max(worst_commute, z);
      c.require(z <= 4.0, name + " commute time (0," + std::to_string(v) + ")");
    }
    for (std::size_t i = 0; i < g.num_edges(); ++i) {
      const EdgeId e = g.edges()[i];
      const double r = table.finite_resistance(e.u, e.v);
      const auto stats = edge_inclusion_frequency(g, e, 10000, derive_seed(707, i));
      if (std::abs(r - 1.0) <= 1e-9) {
        c.require(stats.inclusion_count == stats.trials, name + " bridge " + to_string(e) + " frequency 1");
        continue;
      }
      const double z = std::abs(stats.frequency() - r) / stats.std_error(r);
      worst_tree = std::max(worst_tree, z);
      c.require(z <= 4.0, name + " tree inclusion " + to_string(e));
    }
  }
  c.note("worst commute |z| " + num(worst_commute) + ", worst tree-inclusion |z| " + num(worst_tree) +
         ", every path(5) edge in all 10000 trees");
}

// ------------------------------------------------------------------ 7
void lower_bound_scale(Ctx& c) {
  // The 1 vs <= 0.99 gap on the dumbbell family.
  auto db = dumbbell(128, 1);
  auto mod = dumbbell_modified(db, 2);
  c.require(std::abs(*db.predicted.r_g_measured - 1.0) <= 1e-9 && *mod.predicted.r_g_prime_measured <= 0.99,
            "dumbbell gap");

  // c0 calibrated once on the smallest family, then required at the larger one.
  double min_gain = INFINITY;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    min_gain = std::min(min_gain, measured_gain(large_degree_pair(128, 8, 4, seed), 4, 8));
  }
  const double c0 = 0.5 * min_gain;
  c.note("dumbbell n=128: R=1 vs R'=" + num(*mod.predicted.r_g_prime_measured) + "; calibrated c0 = " + num(c0));

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    double previous = INFINITY;
    std::string trend;
    for (std::size_t l : {4, 8, 16}) {
      auto inst = large_degree_pair(256, 16, l, seed, c0);
      const double r = *inst.predicted.r_g_prime_measured;
      c.require(r < previous, "seed " + std::to_string(seed) + " not strictly decreasing at l=" + std::to_string(l));
      c.require(r < inst.predicted.r_g_prime_bound,
                "seed " + std::to_string(seed) + " l=" + std::to_string(l) + " above 1/(1 + c0 min(l,d))");
      trend += " " + num(r);
      previous = r;
    }
    c.note("n=256 d=16 seed " + std::to_string(seed) + " R' at l=4,8,16:" + trend);
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit_seconds;
    std::function<void(Ctx&)> body;
  };
  const std::vector<Criterion> criteria{
      {1, "closed-form totals, both routes", 10.0, closed_forms},
      {2, "identity suite (edge sum, degree bounds, harmonic route)", 0.0, identity_suite},
      {3, "row-deletion eigenvalue bounds", 60.0, perturbation_bounds},
      {4, "dumbbell and pendant predictions", 0.0, instance_predictions},
      {5, "local estimator on parallel paths", 300.0, estimator_statistics},
      {6, "Monte-Carlo commute time and tree inclusion", 0.0, monte_carlo_oracles},
      {7, "lower-bound instances: gap and monotone trend", 0.0, lower_bound_scale},
  };

  bool all = true;
  for (const auto& cr : criteria) {
    Ctx ctx;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(ctx);
    } catch (const std::exception& e) {
      ctx.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.limit_seconds > 0 && secs >= cr.limit_seconds) ctx.require(false, "runtime " + num(secs) + " s over limit");
    std::printf("%s criterion %d: %s (%.2f s)\n", ctx.ok ? "PASS" : "FAIL", cr.id, cr.title, secs);
    for (const auto& n : ctx.notes) std::printf("    %s\n", n.c_str());
    all = all && ctx.ok;
  }
  return all ? 0 : 1;
}
