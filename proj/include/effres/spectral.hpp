// spectral.hpp - exact effective resistances on small and medium graphs.
//
// Two independent routes are provided: the Laplacian pseudo-inverse built
// from a dense symmetric eigendecomposition, and a harmonic (Dirichlet)
// potential obtained from a linear solve that never forms a pseudo-inverse.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "effres/error.hpp"
#include "effres/graph.hpp"
#include "effres/matrices.hpp"

namespace effres {

/// Eigendecomposition of a symmetric matrix, eigenvalues ascending.
class SpectralBundle {
 public:
  explicit SpectralBundle(const Matrix& symmetric) {
    if (symmetric.rows() != symmetric.cols()) {
      fail(ErrorCode::DimensionMismatch, "matrix is not square");
    }
    const auto n = symmetric.rows();
    if (n == 0) return;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric);
    if (solver.info() != Eigen::Success) {
      fail(ErrorCode::InvalidArgument, "eigendecomposition did not converge");
    }
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
    const double scale = eigenvalues_.cwiseAbs().maxCoeff();
    zero_tolerance_ = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * scale;
  }

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(eigenvalues_.size()); }
  const Vector& eigenvalues() const noexcept { return eigenvalues_; }
  const Matrix& eigenvectors() const noexcept { return eigenvectors_; }
  double zero_tolerance() const noexcept { return zero_tolerance_; }

  bool is_zero(double lambda) const noexcept { return std::abs(lambda) <= zero_tolerance_; }

  std::size_t rank() const {
    return static_cast<std::size_t>(
        std::count_if(eigenvalues_.begin(), eigenvalues_.end(),
                      [this](double l) { return !is_zero(l); }));
  }

  Matrix pseudo_inverse() const {
    const auto n = eigenvalues_.size();
    Vector inv = Vector::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!is_zero(eigenvalues_(i))) inv(i) = 1.0 / eigenvalues_(i);
    }
    return eigenvectors_ * inv.asDiagonal() * eigenvectors_.transpose();
  }

  Matrix reconstruct() const {
    return eigenvectors_ * eigenvalues_.asDiagonal() * eigenvectors_.transpose();
  }

 private:
  Vector eigenvalues_;
  Matrix eigenvectors_;
  double zero_tolerance_ = 0.0;
};

/// x^T M^+ x using only eigenvalues above the bundle's zero tolerance.
inline double pseudo_inverse_quadratic(const SpectralBundle& bundle, const Vector& x) {
  if (static_cast<std::size_t>(x.size()) != bundle.dimension()) {
    fail(ErrorCode::DimensionMismatch, "vector of size " + std::to_string(x.size()) +
                                           " against dimension " +
                                           std::to_string(bundle.dimension()));
  }
  const Vector coords = bundle.eigenvectors().transpose() * x;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < coords.size(); ++i) {
    const double lambda = bundle.eigenvalues()(i);
    if (!bundle.is_zero(lambda)) acc += coords(i) * coords(i) / lambda;
  }
  return acc;
}

/// Non-negative resistance or the distinguished INFINITE value.
class Resistance {
 public:
  constexpr explicit Resistance(double value) : value_(value), infinite_(false) {}
  static constexpr Resistance infinite() { return Resistance(); }

  constexpr bool is_infinite() const noexcept { return infinite_; }
  constexpr bool is_finite() const noexcept { return !infinite_; }

  double value() const {
    if (infinite_) fail(ErrorCode::Disconnected, "resistance is INFINITE");
    return value_;
  }

  /// value() for finite resistances, +inf otherwise.
  double as_double() const noexcept {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend bool operator==(const Resistance& a, const Resistance& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Resistance& r) {
    if (r.infinite_) return os << "INFINITE";
    return os << r.value_;
  }

 private:
  constexpr Resistance() : value_(0.0), infinite_(true) {}

  double value_;
  bool infinite_;
};

inline std::string to_string(const Resistance& r) {
  std::ostringstream os;
  os.precision(12);
  os << r;
  return os.str();
}

namespace detail {

inline void check_pair(const Graph& g, Vertex s, Vertex t) {
  if (s >= g.num_vertices() || t >= g.num_vertices()) {
    fail(ErrorCode::OutOfRange, "vertex pair (" + std::to_string(s) + "," + std::to_string(t) +
                                    ") with n=" + std::to_string(g.num_vertices()));
  }
  if (s == t) fail(ErrorCode::SameVertex, "s = t = " + std::to_string(s));
}

}  // namespace detail

/// All-pairs effective resistances from one Laplacian decomposition.
class ResistanceTable {
 public:
  explicit ResistanceTable(const Graph& g)
      : n_(g.num_vertices()), component_(connected_components(g)) {
    SpectralBundle bundle(laplacian(g));
    pinv_ = bundle.pseudo_inverse();
    if (n_ > 0) {
      num_components_ = *std::max_element(component_.begin(), component_.end()) + 1;
    }
  }

  std::size_t num_vertices() const noexcept { return n_; }
  bool connected() const noexcept { return num_components_ <= 1; }
  const Matrix& pseudo_inverse() const noexcept { return pinv_; }

  Resistance resistance(Vertex s, Vertex t) const {
    if (s >= n_ || t >= n_) fail(ErrorCode::OutOfRange, "vertex pair out of range");
    if (s == t) fail(ErrorCode::SameVertex, "s = t = " + std::to_string(s));
    if (component_[s] != component_[t]) return Resistance::infinite();
    return Resistance(std::max(0.0, pinv_(s, s) + pinv_(t, t) - 2.0 * pinv_(s, t)));
  }

  double finite_resistance(Vertex s, Vertex t) const { return resistance(s, t).value(); }

 private:
  std::size_t n_;
  std::vector<std::size_t> component_;
  std::size_t num_components_ = 0;
  Matrix pinv_;
};

/// (1_s - 1_t)^T L^+ (1_s - 1_t); INFINITE across components.
inline Resistance effective_resistance(const Graph& g, Vertex s, Vertex t) {
  detail::check_pair(g, s, t);
  auto component = connected_components(g);
  if (component[s] != component[t]) return Resistance::infinite();
  SpectralBundle bundle(laplacian(g));
  return Resistance(pseudo_inverse_quadratic(bundle, indicator_difference(g.num_vertices(), s, t)));
}

struct HarmonicSolution {
  Resistance resistance;
  std::vector<double> potential;  // phi(s) = 1, phi(t) = 0, 0 outside s's component
};

/// Dirichlet route: fix phi(s)=1, phi(t)=0, make every other vertex of the
/// component harmonic, and return 1 / energy.
inline HarmonicSolution effective_resistance_harmonic(const Graph& g, Vertex s, Vertex t) {
  detail::check_pair(g, s, t);
  auto component = connected_components(g);
  if (component[s] != component[t]) {
    fail(ErrorCode::Disconnected, std::to_string(s) + " and " + std::to_string(t));
  }

  const std::size_t n = g.num_vertices();
  constexpr auto absent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> slot(n, absent);
  std::vector<Vertex> interior;
  for (Vertex v = 0; v < n; ++v) {
    if (component[v] == component[s] && v != s && v != t) {
      slot[v] = interior.size();
      interior.push_back(v);
    }
  }

  std::vector<double> phi(n, 0.0);
  phi[s] = 1.0;
  if (!interior.empty()) {
    const auto k = static_cast<Eigen::Index>(interior.size());
    Matrix system = Matrix::Zero(k, k);
    Vector rhs = Vector::Zero(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      const Vertex v = interior[static_cast<std::size_t>(i)];
      system(i, i) = static_cast<double>(g.degree(v));
      for (Vertex w : g.neighbors(v)) {
        if (w == s) {
          rhs(i) += 1.0;
        } else if (w != t) {
          system(i, static_cast<Eigen::Index>(slot[w])) -= 1.0;
        }
      }
    }
    Eigen::LLT<Matrix> chol(system);
    if (chol.info() != Eigen::Success) {
      fail(ErrorCode::InvalidArgument, "grounded Laplacian is not positive definite");
    }
    const Vector x = chol.solve(rhs);
    for (Eigen::Index i = 0; i < k; ++i) phi[interior[static_cast<std::size_t>(i)]] = x(i);
  }

  double energy = 0.0;
  for (const auto& e : g.edges()) {
    const double diff = phi[e.u] - phi[e.v];
    energy += diff * diff;
  }
  return {Resistance(1.0 / energy), std::move(phi)};
}

enum class TotalMethod { Pairwise, Spectral };

/// Sum of R over unordered pairs. Pairwise reads one pseudo-inverse;
/// Spectral evaluates n * sum_{i>=2} 1/lambda_i and requires connectivity.
inline Resistance total_effective_resistance(const Graph& g, TotalMethod method) {
  const std::size_t n = g.num_vertices();
  if (method == TotalMethod::Spectral) {
    if (!is_connected(g)) fail(ErrorCode::DisconnectedSpectral, "spectral total needs a connected graph");
    if (n < 2) return Resistance(0.0);
    SpectralBundle bundle(laplacian(g));
    double acc = 0.0;
    for (Eigen::Index i = 1; i < bundle.eigenvalues().size(); ++i) acc += 1.0 / bundle.eigenvalues()(i);
    return Resistance(static_cast<double>(n) * acc);
  }

  ResistanceTable table(g);
  if (!table.connected()) return Resistance::infinite();
  double acc = 0.0;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) acc += table.finite_resistance(i, j);
  }
  return Resistance(acc);
}

inline std::vector<double> edge_resistances(const Graph& g) {
  ResistanceTable table(g);
  std::vector<double> out;
  out.reserve(g.num_edges());
  for (const auto& e : g.edges()) out.push_back(table.finite_resistance(e.u, e.v));
  return out;
}

/// Sum of R(u,v) over edges; n - 1 on every connected graph.
inline double edge_resistance_sum(const Graph& g) {
  if (!is_connected(g)) fail(ErrorCode::Disconnected, "edge resistance sum needs a connected graph");
  double acc = 0.0;
  for (double r : edge_resistances(g)) acc += r;
  return acc;
}

/// tau_i = a_i^T (A^T A)^+ a_i for every row a_i of A.
inline std::vector<double> leverage_scores(const Matrix& a) {
  SpectralBundle bundle(a.transpose() * a);
  std::vector<double> tau(static_cast<std::size_t>(a.rows()), 0.0);
  if (bundle.dimension() == 0) return tau;
  const Matrix coords = a * bundle.eigenvectors();
  for (Eigen::Index j = 0; j < coords.cols(); ++j) {
    const double lambda = bundle.eigenvalues()(j);
    if (bundle.is_zero(lambda)) continue;
    for (Eigen::Index i = 0; i < coords.rows(); ++i) {
      tau[static_cast<std::size_t>(i)] += coords(i, j) * coords(i, j) / lambda;
    }
  }
  return tau;
}

struct EdgeBound {
  EdgeId edge;
  double resistance;
  double lower;  // (1/d(u) + 1/d(v)) / 2
  double upper;  // (1/d(u) + 1/d(v)) / lambda_2 of the normalized Laplacian
};

struct DegreeBoundReport {
  double normalized_lambda2 = 0.0;
  std::vector<EdgeBound> per_edge;
  double min_lower_slack = std::numeric_limits<double>::infinity();
  double min_upper_slack = std::numeric_limits<double>::infinity();
  std::optional<EdgeId> tightest_lower;
  std::optional<EdgeId> tightest_upper;

  bool holds(double tolerance = 1e-9) const {
    return min_lower_slack >= -tolerance && min_upper_slack >= -tolerance;
  }
};

/// Degree sandwich for every edge:
/// (1/d(u)+1/d(v))/2 <= R(u,v) <= (1/d(u)+1/d(v)) / lambda_2(normalized L).
inline DegreeBoundReport degree_bound_check(const Graph& g) {
  if (g.num_vertices() < 2 || !is_connected(g)) {
    fail(ErrorCode::Disconnected, "degree bounds need a connected graph with n >= 2");
  }
  DegreeBoundReport report;
  SpectralBundle normalized(normalized_laplacian(g));
  report.normalized_lambda2 = normalized.eigenvalues()(1);
  ResistanceTable table(g);
  for (const auto& e : g.edges()) {
    const double inv_sum = 1.0 / static_cast<double>(g.degree(e.u)) +
                           1.0 / static_cast<double>(g.degree(e.v));
    EdgeBound b{e, table.finite_resistance(e.u, e.v), 0.5 * inv_sum,
                inv_sum / report.normalized_lambda2};
    if (b.resistance - b.lower < report.min_lower_slack) {
      report.min_lower_slack = b.resistance - b.lower;
      report.tightest_lower = e;
    }
    if (b.upper - b.resistance < report.min_upper_slack) {
      report.min_upper_slack = b.upper - b.resistance;
      report.tightest_upper = e;
    }
    report.per_edge.push_back(b);
  }
  return report;
}

}  // namespace effres
