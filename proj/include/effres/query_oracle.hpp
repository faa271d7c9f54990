// query_oracle.hpp - the adjacency-list access model.
//
// Local algorithms see a graph only through three counted operations:
// degree(v), neighbor(v, i) and uniform_sample(). The vertex count n is part
// of the model and is not a query.
#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "effres/error.hpp"
#include "effres/graph.hpp"
#include "effres/random.hpp"

namespace effres {

template <class O>
concept AdjacencyOracle = requires(O& oracle, Vertex v, std::size_t i) {
  { oracle.vertex_count() } -> std::convertible_to<std::size_t>;
  { oracle.degree(v) } -> std::convertible_to<std::size_t>;
  { oracle.neighbor(v, i) } -> std::convertible_to<Vertex>;
  { oracle.uniform_sample() } -> std::convertible_to<Vertex>;
  { oracle.total_queries() } -> std::convertible_to<std::uint64_t>;
};

class QueryOracle {
 public:
  explicit QueryOracle(const Graph& graph, std::uint64_t seed = 0) : graph_(&graph), rng_(seed) {}
  QueryOracle(Graph&&, std::uint64_t = 0) = delete;

  std::size_t vertex_count() const noexcept { return graph_->num_vertices(); }

  std::size_t degree(Vertex v) {
    ++degree_queries_;
    return graph_->degree(v);
  }

  Vertex neighbor(Vertex v, std::size_t i) {
    ++neighbor_queries_;
    auto nb = graph_->neighbors(v);
    if (i >= nb.size()) {
      fail(ErrorCode::IndexBeyondDegree, "vertex " + std::to_string(v) + " index " +
                                             std::to_string(i) + " degree " +
                                             std::to_string(nb.size()));
    }
    return nb[i];
  }

  Vertex uniform_sample() {
    if (graph_->num_vertices() == 0) fail(ErrorCode::InvalidArgument, "sampling from an empty graph");
    ++uniform_samples_;
    std::uniform_int_distribution<std::size_t> pick(0, graph_->num_vertices() - 1);
    return static_cast<Vertex>(pick(rng_));
  }

  std::uint64_t degree_queries() const noexcept { return degree_queries_; }
  std::uint64_t neighbor_queries() const noexcept { return neighbor_queries_; }
  std::uint64_t uniform_samples() const noexcept { return uniform_samples_; }
  std::uint64_t total_queries() const noexcept {
    return degree_queries_ + neighbor_queries_ + uniform_samples_;
  }

 private:
  const Graph* graph_;
  Rng rng_;
  std::uint64_t degree_queries_ = 0;
  std::uint64_t neighbor_queries_ = 0;
  std::uint64_t uniform_samples_ = 0;
};

static_assert(AdjacencyOracle<QueryOracle>);

}  // namespace effres
