// perturbation.hpp - eigenvalue bounds for deleting rows of A (edges of G).
//
// Deleting rows l_1..l_k of A moves every eigenvalue of A^T A into
// [(1 - tau_1 - ... - tau_k) * lambda_i, lambda_i], where tau_j are the
// leverage scores of the deleted rows measured against the original A. For an
// incidence matrix tau of an edge is its effective resistance.
#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "effres/error.hpp"
#include "effres/graph.hpp"
#include "effres/matrices.hpp"
#include "effres/spectral.hpp"

namespace effres {

struct IndexBound {
  std::size_t index = 0;  // 1-based, eigenvalues paired in ascending order
  double lambda = 0.0;
  double lambda_perturbed = 0.0;
  double lower_bound = 0.0;
  double upper_slack = 0.0;  // lambda - lambda'
  double lower_slack = 0.0;  // lambda' - lower_bound
};

struct PerturbationReport {
  std::vector<std::size_t> indices_removed;
  std::vector<EdgeId> edges_removed;  // filled by the graph variants
  std::vector<double> taus;           // per removed row, against the original matrix
  double tau_sum = 0.0;
  double lambda_max = 0.0;
  double tolerance = 0.0;  // absolute, relative_tolerance * lambda_max
  bool vacuous = false;    // tau_sum >= 1: the lower bound says nothing
  std::vector<IndexBound> per_index;

  double min_lower_slack() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& b : per_index) m = std::min(m, b.lower_slack);
    return m;
  }

  double min_upper_slack() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& b : per_index) m = std::min(m, b.upper_slack);
    return m;
  }

  bool upper_holds() const { return min_upper_slack() >= -tolerance; }
  bool lower_holds() const { return vacuous || min_lower_slack() >= -tolerance; }
  bool bounds_hold() const { return upper_holds() && lower_holds(); }
};

inline constexpr double kDefaultRelativeTolerance = 1e-9;
// Sums within this distance of 1 count as 1 (bridges measure 1 - O(eps)).
inline constexpr double kVacuousMargin = 1e-9;

inline Matrix remove_rows(const Matrix& a, std::span<const std::size_t> indices) {
  const auto m = static_cast<std::size_t>(a.rows());
  std::vector<bool> drop(m, false);
  for (std::size_t i : indices) {
    if (i >= m) fail(ErrorCode::OutOfRange, "row " + std::to_string(i) + " of " + std::to_string(m));
    if (drop[i]) fail(ErrorCode::DuplicateIndex, "row " + std::to_string(i));
    drop[i] = true;
  }
  if (!indices.empty() && indices.size() >= m) {
    fail(ErrorCode::OutOfRange, "cannot remove all " + std::to_string(m) + " rows");
  }
  Matrix out(static_cast<Eigen::Index>(m - indices.size()), a.cols());
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!drop[i]) out.row(row++) = a.row(static_cast<Eigen::Index>(i));
  }
  return out;
}

namespace detail {

inline PerturbationReport compare_spectra(const Vector& before, const Vector& after,
                                          std::vector<double> taus,
                                          double relative_tolerance) {
  PerturbationReport report;
  report.taus = std::move(taus);
  for (double t : report.taus) report.tau_sum += t;
  report.lambda_max = before.size() ? before.cwiseAbs().maxCoeff() : 0.0;
  report.tolerance = relative_tolerance * report.lambda_max;
  report.vacuous = report.tau_sum >= 1.0 - kVacuousMargin;
  for (Eigen::Index i = 0; i < before.size(); ++i) {
    IndexBound b;
    b.index = static_cast<std::size_t>(i) + 1;
    b.lambda = before(i);
    b.lambda_perturbed = after(i);
    b.lower_bound = (1.0 - report.tau_sum) * b.lambda;
    b.upper_slack = b.lambda - b.lambda_perturbed;
    b.lower_slack = b.lambda_perturbed - b.lower_bound;
    report.per_index.push_back(b);
  }
  return report;
}

}  // namespace detail

/// One-shot bound for deleting `indices` from A.
inline PerturbationReport eigen_bound_report(const Matrix& a, std::span<const std::size_t> indices,
                                             double relative_tolerance = kDefaultRelativeTolerance) {
  Matrix reduced = remove_rows(a, indices);
  const auto all_taus = leverage_scores(a);
  std::vector<double> taus;
  for (std::size_t i : indices) taus.push_back(all_taus[i]);

  SpectralBundle before(a.transpose() * a);
  SpectralBundle after(reduced.transpose() * reduced);
  auto report = detail::compare_spectra(before.eigenvalues(), after.eigenvalues(), std::move(taus),
                                        relative_tolerance);
  report.indices_removed.assign(indices.begin(), indices.end());
  return report;
}

namespace detail {

inline std::vector<std::size_t> edge_rows(const Graph& g, std::span<const EdgeId> edges) {
  std::vector<std::size_t> rows;
  std::set<EdgeId> seen;
  for (const auto& e : edges) {
    auto idx = g.edge_index(e);
    if (!idx) fail(ErrorCode::NotAnEdge, to_string(e));
    if (!seen.insert(e).second) fail(ErrorCode::DuplicateEdge, to_string(e));
    rows.push_back(*idx);
  }
  return rows;
}

}  // namespace detail

/// Laplacian spectrum after deleting `edges`; tau of each edge is R_G(u,v).
inline PerturbationReport graph_removal_bound(const Graph& g, std::span<const EdgeId> edges,
                                              double relative_tolerance = kDefaultRelativeTolerance) {
  auto rows = detail::edge_rows(g, edges);
  auto report = eigen_bound_report(incidence_matrix(g), rows, relative_tolerance);
  report.edges_removed.assign(edges.begin(), edges.end());
  return report;
}

inline PerturbationReport graph_edge_removal_bound(const Graph& g, const EdgeId& e,
                                                   double relative_tolerance = kDefaultRelativeTolerance) {
  return graph_removal_bound(g, std::span<const EdgeId>(&e, 1), relative_tolerance);
}

struct SequentialStep {
  EdgeId edge;
  double tau_original = 0.0;      // leverage against the untouched graph
  double tau_current = 0.0;       // leverage in the graph before this removal
  double prior_tau_sum = 0.0;     // sum of tau_original over earlier removals
  double inductive_bound = std::numeric_limits<double>::infinity();
  bool inductive_applicable = false;  // prior_tau_sum < 1
  bool inductive_holds = true;
  PerturbationReport cumulative;  // original vs graph after this step
};

struct SequentialReport {
  PerturbationReport final_report;
  std::vector<SequentialStep> steps;

  bool holds() const {
    if (!final_report.bounds_hold()) return false;
    return std::all_of(steps.begin(), steps.end(), [](const SequentialStep& s) {
      return s.inductive_holds && s.cumulative.bounds_hold();
    });
  }
};

/// Removes edges one at a time. Each step checks the cumulative one-shot
/// bound and the recomputed-leverage inequality
/// tau_current <= tau_original / (1 - prior_tau_sum).
inline SequentialReport sequential_removal_bound(const Graph& g, std::span<const EdgeId> edges,
                                                 double relative_tolerance = kDefaultRelativeTolerance) {
  auto rows = detail::edge_rows(g, edges);
  const Matrix b = incidence_matrix(g);
  const auto original_taus = leverage_scores(b);
  SpectralBundle original(b.transpose() * b);

  SequentialReport out;
  Graph current = g;
  std::vector<EdgeId> removed;
  std::vector<double> taus;
  double prior = 0.0;
  for (std::size_t q = 0; q < edges.size(); ++q) {
    const EdgeId e = edges[q];
    const auto current_taus = leverage_scores(incidence_matrix(current));
    SequentialStep step;
    step.edge = e;
    step.tau_original = original_taus[rows[q]];
    step.tau_current = current_taus[*current.edge_index(e)];
    step.prior_tau_sum = prior;
    step.inductive_applicable = prior < 1.0 - kVacuousMargin;
    if (step.inductive_applicable) {
      step.inductive_bound = step.tau_original / (1.0 - prior);
      step.inductive_holds = step.tau_current <= step.inductive_bound + relative_tolerance;
    }

    removed.push_back(e);
    taus.push_back(step.tau_original);
    current = current.without_edges(std::span<const EdgeId>(&e, 1));
    const Matrix cb = incidence_matrix(current);
    SpectralBundle after(cb.transpose() * cb);
    step.cumulative = detail::compare_spectra(original.eigenvalues(), after.eigenvalues(), taus,
                                              relative_tolerance);
    step.cumulative.edges_removed = removed;
    step.cumulative.indices_removed.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(q + 1));
    out.steps.push_back(std::move(step));
    prior += original_taus[rows[q]];
  }

  if (out.steps.empty()) {
    out.final_report = detail::compare_spectra(original.eigenvalues(), original.eigenvalues(), {},
                                               relative_tolerance);
  } else {
    out.final_report = out.steps.back().cumulative;
  }
  return out;
}

}  // namespace effres
