// matrices.hpp - dense Laplacian, normalized Laplacian and incidence matrix.
#pragma once

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "effres/error.hpp"
#include "effres/graph.hpp"

namespace effres {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// L = D - A.
inline Matrix laplacian(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Matrix lap = Matrix::Zero(n, n);
  for (const auto& e : g.edges()) {
    lap(e.u, e.u) += 1.0;
    lap(e.v, e.v) += 1.0;
    lap(e.u, e.v) = -1.0;
    lap(e.v, e.u) = -1.0;
  }
  return lap;
}

/// D^{-1/2} L D^{-1/2}; throws IsolatedVertex on a degree-0 vertex.
inline Matrix normalized_laplacian(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Vector inv_sqrt(n);
  for (Eigen::Index v = 0; v < n; ++v) {
    const auto d = g.degree(static_cast<Vertex>(v));
    if (d == 0) fail(ErrorCode::IsolatedVertex, "vertex " + std::to_string(v));
    inv_sqrt(v) = 1.0 / std::sqrt(static_cast<double>(d));
  }
  return inv_sqrt.asDiagonal() * laplacian(g) * inv_sqrt.asDiagonal();
}

/// m x n, one row per edge in edges() order, +1 at the smaller endpoint.
inline Matrix incidence_matrix(const Graph& g) {
  Matrix b = Matrix::Zero(static_cast<Eigen::Index>(g.num_edges()),
                          static_cast<Eigen::Index>(g.num_vertices()));
  Eigen::Index row = 0;
  for (const auto& e : g.edges()) {
    b(row, e.u) = 1.0;
    b(row, e.v) = -1.0;
    ++row;
  }
  return b;
}

inline Vector indicator_difference(std::size_t n, Vertex s, Vertex t) {
  Vector x = Vector::Zero(static_cast<Eigen::Index>(n));
  x(s) += 1.0;
  x(t) -= 1.0;
  return x;
}

}  // namespace effres
