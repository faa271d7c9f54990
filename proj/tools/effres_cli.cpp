// effres - command-line front end: exact, estimate, gen, perturb, verify, oracle.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "effres/effres.hpp"
#include "run_report.hpp"

namespace effres::cli {
namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::uint64_t parse_uint(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text.front() == '-') {
    fail(ErrorCode::InvalidArgument, what + " must be a non-negative integer, got '" + text + "'");
  }
  return v;
}

Graph load_graph(RunReport& report, const std::string& path) {
  const std::string text = slurp(path);
  report.add_input(text);
  return graph_from_string(text).graph;
}

void require_vertex(const Graph& g, Vertex v) {
  if (v >= g.num_vertices()) {
    fail(ErrorCode::OutOfRange, "vertex " + std::to_string(v) + " not in [0, " + std::to_string(g.num_vertices()) + ")");
  }
}

std::string edge_text(const EdgeId& e) { return std::to_string(e.u) + "-" + std::to_string(e.v); }

EdgeId parse_edge(const std::string& token) {
  const auto dash = token.find('-');
  if (dash == std::string::npos) fail(ErrorCode::InvalidArgument, "edge must look like u-v, got '" + token + "'");
  const auto u = parse_uint(token.substr(0, dash), "edge endpoint");
  const auto v = parse_uint(token.substr(dash + 1), "edge endpoint");
  return EdgeId::make(static_cast<Vertex>(u), static_cast<Vertex>(v));
}

// ---------------------------------------------------------------- exact

struct ExactArgs {
  std::string file;
  std::vector<Vertex> pair;
  bool total = false;
  bool edge_sum = false;
  bool bounds = false;
};

void run_exact(RunReport& report, const ExactArgs& args) {
  const Graph g = load_graph(report, args.file);
  const std::size_t n = g.num_vertices();
  report.line("n = " + std::to_string(n) + ", m = " + std::to_string(g.num_edges()));

  if (args.pair.size() == 2) {
    const Vertex s = args.pair[0], t = args.pair[1];
    const Resistance r = effective_resistance(g, s, t);
    report.line("R(" + std::to_string(s) + "," + std::to_string(t) + ") = " +
                (r.is_infinite() ? std::string("INFINITE") : fmt(r.value())));
  } else if (!args.pair.empty()) {
    fail(ErrorCode::InvalidArgument, "give both S and T");
  }

  if (args.total) {
    const Resistance pairwise = total_effective_resistance(g, TotalMethod::Pairwise);
    if (pairwise.is_infinite()) {
      report.line("R_tot = INFINITE (pairwise)");
      fail(ErrorCode::DisconnectedSpectral, "spectral route needs a connected graph");
    }
    const Resistance spectral = total_effective_resistance(g, TotalMethod::Spectral);
    report.line("R_tot = " + fmt(pairwise.value()) + " (pairwise) = " + fmt(spectral.value()) + " (spectral)");
    const double rel = std::abs(pairwise.value() - spectral.value()) / std::max(1.0, std::abs(spectral.value()));
    report.check("pairwise = spectral (rel 1e-6)", rel <= 1e-6);
  }

  if (args.edge_sum) {
    const double sum = edge_resistance_sum(g);
    report.line("edge-sum = " + fmt(sum) + " (n-1 = " + std::to_string(n - 1) + ")");
    report.check("edge-sum = n-1", std::abs(sum - static_cast<double>(n - 1)) <= 1e-6);
  }

  if (args.bounds) {
    const auto check = degree_bound_check(g);
    report.line("normalized lambda2 = " + fmt(check.normalized_lambda2));
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-12s %18s %18s %18s", "edge", "lower", "R", "upper");
    report.line(buf);
    for (const auto& b : check.per_edge) {
      std::snprintf(buf, sizeof buf, "%-12s %18.12g %18.12g %18.12g", edge_text(b.edge).c_str(), b.lower,
                    b.resistance, b.upper);
      report.line(buf);
    }
    report.line("min lower slack = " + fmt(check.min_lower_slack) + ", min upper slack = " + fmt(check.min_upper_slack));
    report.check("degree bounds", check.holds());
  }
}

// ---------------------------------------------------------------- estimate

struct EstimateArgs {
  std::string file;
  Vertex s = 0;
  Vertex t = 0;
  double epsilon = 0.1;
  std::optional<double> delta;
  std::optional<std::uint64_t> a;
  std::size_t runs = 1;
  std::string trace_json;
};

void check_degree_model(const Graph& g, Vertex s, Vertex t) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (v == s || v == t) continue;
    if (g.degree(v) > 2) {
      fail(ErrorCode::DegreeViolation, "vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v)) +
                                           "; only s and t may exceed 2");
    }
  }
}

nlohmann::json trace_to_json(const EstimateResult& r, std::uint64_t seed) {
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& tr : r.rounds) {
    rounds.push_back({{"round", tr.round},
                      {"p_k", tr.probability},
                      {"budget", tr.budget},
                      {"probes", tr.probes},
                      {"accepted", tr.accepted},
                      {"steps", tr.steps},
                      {"executed", tr.executed}});
  }
  nlohmann::json out{{"seed", seed},
                     {"conductance", r.conductance},
                     {"query_count", r.query_count},
                     {"exact_regime", r.exact_regime},
                     {"rounds", rounds}};
  out["resistance"] = r.resistance.is_infinite() ? nlohmann::json("INFINITE") : nlohmann::json(r.resistance.value());
  return out;
}

void run_estimate(RunReport& report, const EstimateArgs& args, std::uint64_t master) {
  const Graph g = load_graph(report, args.file);
  require_vertex(g, args.s);
  require_vertex(g, args.t);
  if (args.s == args.t) fail(ErrorCode::SameVertex, "s = t");
  check_degree_model(g, args.s, args.t);
  if (args.runs == 0) fail(ErrorCode::InvalidArgument, "--runs must be positive");

  EstimatorConfig base;
  base.epsilon = args.epsilon;
  base.delta = args.delta;
  base.a_override = args.a;
  base.validate();

  const std::size_t d_min = std::min(g.degree(args.s), g.degree(args.t));
  const std::uint64_t budget = expected_query_budget(g.num_vertices(), d_min, base);

  double sum_rho = 0.0, sum_rho_sq = 0.0, sum_r = 0.0, sum_queries = 0.0;
  std::size_t finite = 0;
  bool all_exact = true;
  std::vector<std::string> warnings;
  nlohmann::json runs_json = nlohmann::json::array();
  char buf[200];

  for (std::size_t i = 0; i < args.runs; ++i) {
    EstimatorConfig cfg = base;
    cfg.seed = derive_seed(master, i);
    QueryOracle oracle(g, cfg.seed);
    const EstimateResult r = estimate_resistance(oracle, args.s, args.t, cfg);
    if (i == 0) {
      report.line("source = " + std::to_string(r.source) + ", target = " + std::to_string(r.target));
      report.line("epsilon = " + fmt(r.epsilon) + ", delta = " + fmt(r.delta) + ", a = " + std::to_string(r.a));
      report.line("round trace (run 0):");
      std::snprintf(buf, sizeof buf, "%6s %12s %12s %8s %9s %12s %9s", "round", "p_k", "budget", "probes", "accepted",
                    "steps", "executed");
      report.line(buf);
      for (const auto& tr : r.rounds) {
        std::snprintf(buf, sizeof buf, "%6zu %12.6g %12llu %8zu %9zu %12llu %9s", tr.round, tr.probability,
                      static_cast<unsigned long long>(tr.budget), tr.probes, tr.accepted,
                      static_cast<unsigned long long>(tr.steps), tr.executed ? "yes" : "skipped");
        report.line(buf);
      }
      warnings = r.warnings;
    }
    const std::string r_text = r.resistance.is_infinite() ? "INFINITE" : fmt(r.resistance.value());
    report.line("run " + std::to_string(i) + ": rho~ = " + fmt(r.conductance) + ", R~ = " + r_text +
                ", query_count = " + std::to_string(r.query_count));
    sum_rho += r.conductance;
    sum_rho_sq += r.conductance * r.conductance;
    sum_queries += static_cast<double>(r.query_count);
    if (!r.resistance.is_infinite()) {
      sum_r += r.resistance.value();
      ++finite;
    }
    all_exact = all_exact && r.exact_regime;
    if (!args.trace_json.empty()) runs_json.push_back(trace_to_json(r, cfg.seed));
  }

  const double runs = static_cast<double>(args.runs);
  const double mean_rho = sum_rho / runs;
  const double mean_queries = sum_queries / runs;
  report.line("aggregate over " + std::to_string(args.runs) + " runs:");
  report.line("  mean rho~ = " + fmt(mean_rho));
  if (args.runs > 1) {
    const double var = std::max(0.0, (sum_rho_sq - sum_rho * mean_rho) / (runs - 1.0));
    report.line("  std error rho~ = " + fmt(std::sqrt(var / runs)));
  }
  report.line("  mean R~ = " + (finite ? fmt(sum_r / static_cast<double>(finite)) : std::string("INFINITE")));
  report.line("  mean query_count = " + fmt(mean_queries));
  report.line("  query budget = " + std::to_string(budget));
  report.check("mean query_count <= budget", mean_queries <= static_cast<double>(budget));
  if (all_exact) report.line("note: exact regime (every path resolved in round 0), so R~ is exact");
  for (const auto& w : warnings) report.line("warning: " + w);

  if (!args.trace_json.empty()) {
    std::ofstream out(args.trace_json);
    if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + args.trace_json);
    out << nlohmann::json{{"s", args.s}, {"t", args.t}, {"runs", runs_json}}.dump(2) << '\n';
  }
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::string family;
  std::vector<std::string> params;
  std::string out = "-";
  bool base = false;
  double c0 = 0.01;
};

std::size_t param(const GenArgs& args, std::size_t i, const std::string& name) {
  if (i >= args.params.size()) fail(ErrorCode::InvalidArgument, args.family + " needs parameter " + name);
  return static_cast<std::size_t>(parse_uint(args.params[i], name));
}

void expect_params(const GenArgs& args, std::size_t count, const std::string& usage) {
  if (args.params.size() != count) fail(ErrorCode::InvalidArgument, "usage: gen " + args.family + " " + usage);
}

std::string joined(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& x : items) out += (out.empty() ? "" : " ") + x;
  return out;
}

void run_gen(RunReport& report, const GenArgs& args, std::uint64_t seed) {
  std::vector<std::string> meta{"family=" + args.family, "params=" + joined(args.params),
                                "seed=" + std::to_string(seed)};
  Graph g;
  const auto& f = args.family;

  if (f == "dumbbell" || f == "dumbbell-mod") {
    expect_params(args, 1, "N");
    auto inst = dumbbell(param(args, 0, "N"), seed);
    meta.push_back("s=" + std::to_string(inst.s) + " t=" + std::to_string(inst.t));
    meta.push_back("prediction: R(s,t)=1");
    meta.push_back("measured: R(s,t)=" + fmt(*inst.predicted.r_g_measured));
    meta.push_back("low-resistance edges: |E_s|=" + std::to_string(inst.candidates_s.size()) +
                   " |E_t|=" + std::to_string(inst.candidates_t.size()));
    g = inst.g;
    if (f == "dumbbell-mod") {
      auto mod = dumbbell_modified(inst, derive_seed(seed, 1));
      std::string removed, added;
      for (const auto& e : mod.removed_edges) removed += " " + edge_text(e);
      for (const auto& e : mod.added_edges) added += " " + edge_text(e);
      meta.push_back("removed:" + removed);
      meta.push_back("added:" + added);
      meta.push_back("prediction: R ≤ 0.99 in the modified graph");
      meta.push_back("measured: R'(s,t)=" + fmt(*mod.predicted.r_g_prime_measured));
      meta.push_back(args.base ? "graph=original" : "graph=modified");
      if (!args.base) g = *mod.g_prime;
    }
  } else if (f == "large-degree") {
    expect_params(args, 3, "N D L");
    const std::size_t d = param(args, 1, "D"), l = param(args, 2, "L");
    auto inst = large_degree_pair(param(args, 0, "N"), d, l, seed, args.c0);
    meta.push_back("s=" + std::to_string(inst.s) + " t=" + std::to_string(inst.t));
    meta.push_back("prediction: R(s,t)=1 in the original graph");
    meta.push_back("prediction: R ≤ " + fmt(inst.predicted.r_g_prime_bound) + " in the modified graph (c0=" +
                   fmt(args.c0) + ")");
    meta.push_back("measured: R(s,t)=" + fmt(*inst.predicted.r_g_measured) +
                   " R'(s,t)=" + fmt(*inst.predicted.r_g_prime_measured) + " gain=" + fmt(measured_gain(inst, l, d)));
    meta.push_back(args.base ? "graph=original" : "graph=modified");
    g = args.base ? inst.g : *inst.g_prime;
  } else if (f == "ring" || f == "path") {
    expect_params(args, 1, "N");
    const std::size_t n = param(args, 0, "N");
    g = f == "ring" ? ring(n) : path(n);
    const double nn = static_cast<double>(n);
    meta.push_back("prediction: R_tot=" + fmt((nn * nn * nn - nn) / (f == "ring" ? 12.0 : 6.0)));
  } else if (f == "pendant-expander") {
    expect_params(args, 1, "N");
    auto pe = pendant_expander(param(args, 0, "N"), seed);
    meta.push_back("pendant=" + edge_text(pe.pendant));
    meta.push_back("prediction: R(pendant)=1");
    meta.push_back("lambda2=" + fmt(pe.lambda2));
    g = pe.g;
  } else if (f == "parallel-paths") {
    std::vector<PathSpec> paths;
    std::vector<std::size_t> tails;
    for (const auto& raw : args.params) {
      for (const auto& token : split(raw, ',')) {
        if (token.front() == 'd') {
          paths.push_back(PathSpec::dead_end(parse_uint(token.substr(1), "dead-end length")));
        } else if (token.front() == 't') {
          tails.push_back(parse_uint(token.substr(1), "tail length"));
        } else {
          paths.push_back(PathSpec::to_target(parse_uint(token, "path length")));
        }
      }
    }
    auto inst = parallel_paths(paths, tails);
    meta.push_back("s=" + std::to_string(inst.s) + " t=" + std::to_string(inst.t));
    meta.push_back("prediction: R(s,t)=" + to_string(inst.resistance));
    meta.push_back("conductance=" + fmt(inst.conductance));
    g = inst.g;
  } else if (f == "regular-expander") {
    expect_params(args, 2, "N D");
    const std::size_t d = param(args, 1, "D");
    auto cert = random_regular_expander(param(args, 0, "N"), d, near_ramanujan_bound(d), seed);
    meta.push_back("degree=" + std::to_string(d));
    meta.push_back("lambda2=" + fmt(cert.lambda2) + " target=" + fmt(near_ramanujan_bound(d)));
    g = cert.graph;
  } else {
    fail(ErrorCode::InvalidArgument, "unknown family '" + f + "'");
  }

  const std::string text = graph_to_string(g, meta);
  if (args.out == "-") {
    std::cout << text;
  } else {
    std::ofstream out(args.out);
    if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + args.out);
    out << text;
    report.line("wrote " + args.out);
  }
  report.line("n = " + std::to_string(g.num_vertices()) + ", m = " + std::to_string(g.num_edges()));
  report.line("output-digest: fnv1a64:" + hex64(fnv1a(text)));
  for (const auto& m : meta) report.line("# " + m);
}

// ---------------------------------------------------------------- perturb

struct PerturbArgs {
  std::string file;
  std::string matrix;
  std::string edges;
  std::string rows;
  bool sequential = false;
};

void print_perturbation(RunReport& report, const PerturbationReport& r) {
  std::string taus;
  for (double t : r.taus) taus += " " + fmt(t);
  report.line("tau:" + taus);
  report.line("tau_sum = " + fmt(r.tau_sum) + ", lambda_max = " + fmt(r.lambda_max) + ", tolerance = " +
              fmt(r.tolerance));
  char buf[200];
  std::snprintf(buf, sizeof buf, "%6s %20s %20s %20s %20s %20s", "i", "lambda", "lambda'", "lower_bound",
                "upper_slack", "lower_slack");
  report.line(buf);
  for (const auto& b : r.per_index) {
    std::snprintf(buf, sizeof buf, "%6zu %20.12g %20.12g %20.12g %20.12g %20.12g", b.index, b.lambda,
                  b.lambda_perturbed, b.lower_bound, b.upper_slack, b.lower_slack);
    report.line(buf);
  }
  report.check("upper bound lambda' <= lambda", r.upper_holds());
  if (r.vacuous) {
    report.line("bound vacuous: tau=" + fmt(r.tau_sum));
  } else {
    report.check("lower bound (1 - tau_sum) lambda <= lambda'", r.lower_holds());
  }
}

void run_perturb(RunReport& report, const PerturbArgs& args) {
  if (args.file.empty() == args.matrix.empty()) fail(ErrorCode::InvalidArgument, "give either FILE or --matrix");
  if (!args.matrix.empty()) {
    const std::string text = slurp(args.matrix);
    report.add_input(text);
    std::istringstream is(text);
    const Matrix a = read_matrix(is);
    std::vector<std::size_t> rows;
    for (const auto& tok : split(args.rows, ',')) rows.push_back(parse_uint(tok, "row index"));
    report.line("matrix " + std::to_string(a.rows()) + " x " + std::to_string(a.cols()) + ", removing " +
                std::to_string(rows.size()) + " rows");
    print_perturbation(report, eigen_bound_report(a, rows));
    return;
  }

  const Graph g = load_graph(report, args.file);
  std::vector<EdgeId> edges;
  for (const auto& tok : split(args.edges, ',')) edges.push_back(parse_edge(tok));
  std::string listed;
  for (const auto& e : edges) listed += " " + edge_text(e);
  report.line("removed edges:" + (listed.empty() ? std::string(" none") : listed));
  print_perturbation(report, graph_removal_bound(g, edges));

  if (args.sequential) {
    const auto seq = sequential_removal_bound(g, edges);
    char buf[200];
    std::snprintf(buf, sizeof buf, "%-12s %16s %16s %16s %16s %10s", "edge", "tau_original", "tau_current",
                  "prior_tau_sum", "tau/(1-prior)", "inductive");
    report.line(buf);
    for (const auto& step : seq.steps) {
      std::snprintf(buf, sizeof buf, "%-12s %16.10g %16.10g %16.10g %16.10g %10s", edge_text(step.edge).c_str(),
                    step.tau_original, step.tau_current, step.prior_tau_sum, step.inductive_bound,
                    step.inductive_applicable ? pass_fail(step.inductive_holds).c_str() : "n/a");
      report.line(buf);
      if (!step.inductive_holds) report.fail_check();
    }
    report.check("sequential cumulative bounds", seq.holds());
  }
}

// ---------------------------------------------------------------- verify

bool within(double measured, double expected, double sigma) {
  return std::abs(measured - expected) <= 4.0 * sigma + 1e-9;
}

void verify_identities(RunReport& report, const Graph& g, const std::string& prefix) {
  const std::size_t n = g.num_vertices();
  const double sum = edge_resistance_sum(g);
  report.check(prefix + "Property 1 edge-sum = n-1", std::abs(sum - static_cast<double>(n - 1)) <= 1e-6);

  const auto bounds = degree_bound_check(g);
  report.check(prefix + "Property 3 degree bounds", bounds.min_lower_slack >= -1e-9 && bounds.min_upper_slack >= -1e-9);

  ResistanceTable table(g);
  double worst = 0.0;
  const Vertex limit = static_cast<Vertex>(std::min<std::size_t>(n, 50));
  for (Vertex t = 1; t < limit; ++t) {
    const double h = effective_resistance_harmonic(g, 0, t).resistance.value();
    worst = std::max(worst, std::abs(h - table.finite_resistance(0, t)));
  }
  report.check(prefix + "Property 4 harmonic = pseudo-inverse", worst <= 1e-8);

  const double pairwise = total_effective_resistance(g, TotalMethod::Pairwise).value();
  const double spectral = total_effective_resistance(g, TotalMethod::Spectral).value();
  report.check(prefix + "R_tot pairwise = spectral", std::abs(pairwise - spectral) <= 1e-6 * std::max(1.0, spectral));
}

void verify_monte_carlo(RunReport& report, const Graph& g, std::size_t trials, std::uint64_t seed,
                        const std::string& prefix) {
  ResistanceTable table(g);
  const EdgeId e = g.edges().front();
  const Vertex far = static_cast<Vertex>(g.num_vertices() - 1);
  bool commute_ok = true;
  for (const auto& [u, v] : {std::pair<Vertex, Vertex>{e.u, e.v}, std::pair<Vertex, Vertex>{0, far}}) {
    if (u == v) continue;
    const auto stats = commute_time_mc(g, u, v, trials, derive_seed(seed, u * 131 + v));
    commute_ok = commute_ok && within(stats.mean_commute, 2.0 * g.num_edges() * table.finite_resistance(u, v),
                                      stats.std_error);
  }
  report.check(prefix + "Property 2 MC", commute_ok);

  bool tree_ok = true;
  const std::size_t probes = std::min<std::size_t>(3, g.num_edges());
  for (std::size_t i = 0; i < probes; ++i) {
    const EdgeId f = g.edges()[i * (g.num_edges() / probes)];
    const double r = table.finite_resistance(f.u, f.v);
    const auto stats = edge_inclusion_frequency(g, f, trials, derive_seed(seed, 1000 + i));
    tree_ok = tree_ok && within(stats.frequency(), r, stats.std_error(r));
  }
  report.check(prefix + "Property 5 MC", tree_ok);
}

void verify_suite(RunReport& report, std::uint64_t seed) {
  for (std::size_t n : {3, 5, 10, 50}) {
    const double nn = static_cast<double>(n);
    const double p = total_effective_resistance(path(n), TotalMethod::Spectral).value();
    const double r = total_effective_resistance(ring(n), TotalMethod::Pairwise).value();
    report.check("closed form n=" + std::to_string(n),
                 std::abs(p / ((nn * nn * nn - nn) / 6.0) - 1.0) <= 1e-6 &&
                     std::abs(r / ((nn * nn * nn - nn) / 12.0) - 1.0) <= 1e-6 && std::abs(p / r - 2.0) <= 1e-9);
  }

  std::vector<std::pair<std::string, Graph>> graphs;
  graphs.emplace_back("triangle", ring(3));
  for (std::size_t n = 4; n <= 8; ++n) graphs.emplace_back("ring(" + std::to_string(n) + ")", ring(n));
  for (std::size_t n = 3; n <= 8; ++n) graphs.emplace_back("path(" + std::to_string(n) + ")", path(n));
  for (std::uint64_t i = 0; i < 3; ++i) {
    graphs.emplace_back("expander#" + std::to_string(i), random_regular_expander(20, 3, 0.1, derive_seed(seed, i)).graph);
  }
  for (const auto& [name, g] : graphs) verify_identities(report, g, name + " ");
  verify_monte_carlo(report, ring(3), 4000, seed, "triangle ");

  auto db = dumbbell(64, seed);
  report.check("dumbbell R(s,t) = 1", std::abs(*db.predicted.r_g_measured - 1.0) <= 1e-9);
  report.check("dumbbell |E_s|, |E_t| >= n/12", db.candidates_s.size() >= 64 / 12 && db.candidates_t.size() >= 64 / 12);
  auto mod = dumbbell_modified(db, derive_seed(seed, 1));
  report.check("dumbbell-mod R <= 0.99", *mod.predicted.r_g_prime_measured <= 0.99);
  report.check("dumbbell-mod degree sequence", mod.g_prime->degree_sequence() == db.g.degree_sequence());

  auto pe = pendant_expander(33, seed);
  const auto cut = graph_edge_removal_bound(pe.g, pe.pendant);
  report.check("pendant R = 1", std::abs(cut.tau_sum - 1.0) <= 1e-9);
  report.check("pendant removal lambda2 = 0", std::abs(cut.per_index[1].lambda_perturbed) <= 1e-9);
  report.check("pendant bound flagged vacuous", cut.vacuous);
  report.check("ring(8) one-edge perturbation bounds", graph_edge_removal_bound(ring(8), EdgeId{0, 1}).bounds_hold());

  auto pp = parallel_paths({PathSpec::to_target(1), PathSpec::to_target(2), PathSpec::to_target(4)});
  QueryOracle oracle(pp.g, seed);
  EstimatorConfig cfg;
  cfg.seed = seed;
  const auto est = estimate_resistance(oracle, pp.s, pp.t, cfg);
  report.check("estimator exact regime {1,2,4} gives 4/7", est.exact_regime && est.resistance == pp.resistance);
}

struct VerifyArgs {
  std::string file;
  std::string suite;
  std::size_t trials = 4000;
};

void run_verify(RunReport& report, const VerifyArgs& args, std::uint64_t seed) {
  if (args.file.empty() == args.suite.empty()) fail(ErrorCode::InvalidArgument, "give either FILE or --suite");
  if (!args.suite.empty()) {
    if (args.suite != "small") fail(ErrorCode::InvalidArgument, "unknown suite '" + args.suite + "'");
    verify_suite(report, seed);
  } else {
    const Graph g = load_graph(report, args.file);
    report.line("n = " + std::to_string(g.num_vertices()) + ", m = " + std::to_string(g.num_edges()));
    const bool connected = g.num_vertices() >= 2 && is_connected(g);
    report.check("connected", connected);
    if (connected) {
      verify_identities(report, g, "");
      verify_monte_carlo(report, g, args.trials, seed, "");
    }
  }
  report.line(std::string("overall: ") + pass_fail(!report.failed()));
}

// ---------------------------------------------------------------- oracle

struct OracleArgs {
  std::string file;
  Vertex u = 0;
  Vertex v = 0;
  std::size_t trials = 10000;
};

void run_oracle(RunReport& report, const OracleArgs& args, std::uint64_t seed) {
  const Graph g = load_graph(report, args.file);
  require_vertex(g, args.u);
  require_vertex(g, args.v);
  if (args.u == args.v) fail(ErrorCode::SameVertex, "u = v");
  if (!is_connected(g)) fail(ErrorCode::Disconnected, "oracles need a connected graph");
  const double r = effective_resistance(g, args.u, args.v).value();
  char buf[200];
  std::snprintf(buf, sizeof buf, "%-22s %10s %16s %16s %16s %10s", "statistic", "trials", "measured", "std_error",
                "exact", "z");
  report.line(buf);

  const auto commute = commute_time_mc(g, args.u, args.v, args.trials, derive_seed(seed, 0));
  const double kappa = 2.0 * static_cast<double>(g.num_edges()) * r;
  const double z = commute.std_error > 0 ? (commute.mean_commute - kappa) / commute.std_error : 0.0;
  std::snprintf(buf, sizeof buf, "%-22s %10zu %16.10g %16.10g %16.10g %10.4f", "commute time", args.trials,
                commute.mean_commute, commute.std_error, kappa, z);
  report.line(buf);
  bool ok = within(commute.mean_commute, kappa, commute.std_error);

  const EdgeId e = EdgeId::make(args.u, args.v);
  if (g.edge_index(e)) {
    const auto trees = edge_inclusion_frequency(g, e, args.trials, derive_seed(seed, 1));
    const double se = trees.std_error(r);
    const double zt = se > 0 ? (trees.frequency() - r) / se : 0.0;
    std::snprintf(buf, sizeof buf, "%-22s %10zu %16.10g %16.10g %16.10g %10.4f", "tree inclusion", args.trials,
                  trees.frequency(), se, r, zt);
    report.line(buf);
    ok = ok && within(trees.frequency(), r, se);
  } else {
    report.line("tree inclusion: skipped, " + edge_text(e) + " is not an edge");
  }
  report.check("within 4 sigma", ok);
}

}  // namespace
}  // namespace effres::cli

int main(int argc, char** argv) {
  using namespace effres;
  using namespace effres::cli;

  CLI::App app{"Effective resistance toolkit: exact computation, local estimation, perturbation bounds, generators"};
  app.require_subcommand(1);
  std::uint64_t seed_value = 0;

  ExactArgs exact;
  auto* c_exact = app.add_subcommand("exact", "Exact R(s,t), total resistance, or identity checks");
  c_exact->add_option("file", exact.file, "graph file")->required();
  c_exact->add_option("pair", exact.pair, "S T")->expected(0, 2);
  c_exact->add_flag("--total", exact.total, "total effective resistance by both routes");
  c_exact->add_flag("--edge-sum", exact.edge_sum, "sum of R over edges against n-1");
  c_exact->add_flag("--bounds", exact.bounds, "degree / spectral-gap bounds per edge");

  EstimateArgs est;
  auto* c_est = app.add_subcommand("estimate", "Local estimator (internal vertices of degree <= 2)");
  c_est->add_option("file", est.file, "graph file")->required();
  c_est->add_option("s", est.s, "terminal s")->required();
  c_est->add_option("t", est.t, "terminal t")->required();
  c_est->add_option("--epsilon", est.epsilon, "accuracy, in (0, 0.1]")->capture_default_str();
  c_est->add_option("--delta", est.delta, "additive error (default epsilon / min degree)");
  c_est->add_option("--a", est.a, "override the schedule constant a");
  c_est->add_option("--runs", est.runs, "independent runs; run i uses derive_seed(seed, i)")->capture_default_str();
  c_est->add_option("--trace-json", est.trace_json, "write round traces as JSON");
  c_est->add_option("--seed", seed_value, "master seed (fallback: ER_SEED, then 0)");

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "Generate an instance file");
  c_gen->add_option("family", gen.family,
                    "dumbbell | dumbbell-mod | large-degree | ring | path | pendant-expander | parallel-paths | "
                    "regular-expander")
      ->required();
  c_gen->add_option("params", gen.params, "family parameters (parallel-paths: lengths, dK dead end, tK tail at t)");
  c_gen->add_option("--out", gen.out, "output file, '-' for stdout (report goes to stderr)")->capture_default_str();
  c_gen->add_flag("--base", gen.base, "write the unmodified graph for dumbbell-mod / large-degree");
  c_gen->add_option("--c0", gen.c0, "gain constant for the large-degree prediction")->capture_default_str();
  c_gen->add_option("--seed", seed_value, "seed (fallback: ER_SEED, then 0)");

  PerturbArgs pert;
  auto* c_pert = app.add_subcommand("perturb", "Eigenvalue bounds after deleting edges or matrix rows");
  c_pert->add_option("file", pert.file, "graph file");
  c_pert->add_option("--edges", pert.edges, "edges to delete, e.g. 0-1,2-3");
  c_pert->add_option("--matrix", pert.matrix, "dense matrix file instead of a graph");
  c_pert->add_option("--rows", pert.rows, "row indices to delete, e.g. 0,4");
  c_pert->add_flag("--sequential", pert.sequential, "also remove the edges one at a time");

  VerifyArgs ver;
  auto* c_ver = app.add_subcommand("verify", "Cross-check identities and Monte-Carlo oracles");
  c_ver->add_option("file", ver.file, "graph file");
  c_ver->add_option("--suite", ver.suite, "built-in suite: small");
  c_ver->add_option("--trials", ver.trials, "Monte-Carlo trials per check")->capture_default_str();
  c_ver->add_option("--seed", seed_value, "seed (fallback: ER_SEED, then 0)");

  OracleArgs orc;
  auto* c_orc = app.add_subcommand("oracle", "Commute-time and spanning-tree Monte-Carlo statistics");
  c_orc->add_option("file", orc.file, "graph file")->required();
  c_orc->add_option("u", orc.u, "vertex u")->required();
  c_orc->add_option("v", orc.v, "vertex v")->required();
  c_orc->add_option("--trials", orc.trials, "trials")->capture_default_str();
  c_orc->add_option("--seed", seed_value, "seed (fallback: ER_SEED, then 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputViolation;
  }

  std::optional<std::uint64_t> seed_flag;
  for (auto* sub : {c_est, c_gen, c_ver, c_orc}) {
    if (sub->parsed() && sub->count("--seed") > 0) seed_flag = seed_value;
  }

  std::string echo = "effres";
  for (int i = 1; i < argc; ++i) echo += std::string(" ") + argv[i];
  RunReport report(echo);
  std::ostream& sink = c_gen->parsed() && gen.out == "-" ? std::cerr : std::cout;

  try {
    const bool seeded = c_est->parsed() || c_gen->parsed() || c_ver->parsed() || c_orc->parsed();
    std::uint64_t seed = 0;
    if (seeded) {
      const SeedChoice choice = resolve_seed(seed_flag);
      report.set_seed(choice);
      seed = choice.value;
    }
    if (c_exact->parsed()) run_exact(report, exact);
    if (c_est->parsed()) run_estimate(report, est, seed);
    if (c_gen->parsed()) run_gen(report, gen, seed);
    if (c_pert->parsed()) run_perturb(report, pert);
    if (c_ver->parsed()) run_verify(report, ver, seed);
    if (c_orc->parsed()) run_oracle(report, orc, seed);
  } catch (const Error& e) {
    report.print(sink);
    std::cerr << "error: " << e.what() << '\n';
    return kInputViolation;
  }
  report.print(sink);
  return report.failed() ? kCheckFailure : kPass;
}
