#include <gtest/gtest.h>

#include "effres/generators.hpp"
#include "effres/spectral.hpp"
#include "test_support.hpp"

namespace effres {
namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

void expect_regular(const Graph& g, std::size_t d) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) ASSERT_EQ(g.degree(v), d) << "vertex " << v;
}

TEST(RegularExpander, Certificates) {
  auto small = random_regular_expander(16, 3, 0.1, 1);
  expect_regular(small.graph, 3);
  EXPECT_GE(small.lambda2, 0.1);
  EXPECT_NEAR(small.lambda2, laplacian_lambda2(small.graph), 1e-12);

  auto cert = random_regular_expander(64, 4, near_ramanujan_bound(4), 2);
  expect_regular(cert.graph, 4);
  EXPECT_GE(cert.lambda2, near_ramanujan_bound(4));
  EXPECT_TRUE(is_connected(cert.graph));

  auto again = random_regular_expander(64, 4, near_ramanujan_bound(4), 2);
  EXPECT_EQ(again.graph, cert.graph);
}

TEST(RegularExpander, Errors) {
  EXPECT_EQ(code_of([] { random_regular_expander(7, 3, 0.1, 0); }), ErrorCode::ParityViolation);
  EXPECT_EQ(code_of([] { random_regular_expander(8, 2, 0.1, 0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { random_regular_expander(8, 8, 0.1, 0); }), ErrorCode::InvalidArgument);
}

TEST(Dumbbell, BridgeHasUnitResistance) {
  auto inst = dumbbell(32, 3);
  EXPECT_TRUE(inst.g.has_edge(inst.s, inst.t));
  EXPECT_NEAR(effective_resistance(inst.g, inst.s, inst.t).value(), 1.0, 1e-9);
  EXPECT_NEAR(*inst.predicted.r_g_measured, 1.0, 1e-9);
  auto without = inst.g.without_edges(std::vector<EdgeId>{EdgeId::make(inst.s, inst.t)});
  EXPECT_FALSE(same_component(without, inst.s, inst.t));
  EXPECT_EQ(code_of([] { dumbbell(30, 0); }), ErrorCode::ParityViolation);
}

TEST(Dumbbell, ManyLowResistanceEdges) {
  auto inst = dumbbell(64, 5);
  EXPECT_GE(inst.candidates_s.size(), 64u / 12);
  EXPECT_GE(inst.candidates_t.size(), 64u / 12);
  ResistanceTable table(inst.g);
  for (const auto& e : inst.candidates_s) {
    EXPECT_LT(e.v, inst.half);
    EXPECT_LE(table.finite_resistance(e.u, e.v), 0.75 + 1e-12);
  }
}

TEST(Dumbbell, ModifiedKeepsDegreesAndDropsResistance) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto base = dumbbell(64, seed);
    auto mod = dumbbell_modified(base, seed + 100);
    ASSERT_TRUE(mod.g_prime);
    EXPECT_EQ(mod.g_prime->degree_sequence(), base.g.degree_sequence());
    EXPECT_EQ(edge_symmetric_difference(base.g, *mod.g_prime), 4u);
    const double r = effective_resistance(*mod.g_prime, mod.s, mod.t).value();
    EXPECT_LE(r, 0.99);
    EXPECT_NEAR(*mod.predicted.r_g_prime_measured, r, 1e-9);
    EXPECT_TRUE(mod.g_prime->has_edge(mod.s, mod.t));
  }
}

TEST(LargeDegree, BaseInstance) {
  auto inst = large_degree_pair(128, 8, 4, 1);
  EXPECT_NEAR(*inst.predicted.r_g_measured, 1.0, 1e-9);
  for (Vertex v = 0; v < 128; ++v) {
    const std::size_t want = (v == inst.s || v == inst.t) ? 9 : 8;
    EXPECT_EQ(inst.g.degree(v), want);
  }
  ASSERT_TRUE(inst.g_prime);
  EXPECT_EQ(inst.g_prime->degree_sequence(), inst.g.degree_sequence());
  EXPECT_EQ(edge_symmetric_difference(inst.g, *inst.g_prime), 4u * 4u);
  EXPECT_EQ(code_of([] { large_degree_pair(126, 7, 4, 0); }), ErrorCode::ParityViolation);
  EXPECT_EQ(code_of([] { large_degree_pair(128, 8, 2, 0); }), ErrorCode::InvalidArgument);
}

TEST(LargeDegree, DefaultGainConstantIsCertified) {
  for (std::size_t n : {128, 256}) {
    for (std::size_t l : {4, 8}) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        auto inst = large_degree_pair(n, 8, l, seed);
        EXPECT_LT(*inst.predicted.r_g_prime_measured, inst.predicted.r_g_prime_bound)
            << "n=" << n << " l=" << l << " seed=" << seed;
        EXPECT_GE(measured_gain(inst, l, 8), 0.01);
      }
    }
  }
}

TEST(LargeDegree, ResistanceFallsAsMoreEdgesMove) {
  for (std::uint64_t seed = 0; seed < 2; ++seed) {
    double previous = 1.0;
    for (std::size_t l : {4, 8, 16}) {
      auto inst = large_degree_pair(256, 16, l, seed);
      const double r = *inst.predicted.r_g_prime_measured;
      EXPECT_LT(r, previous) << "seed=" << seed << " l=" << l;
      previous = r;
    }
  }
}

TEST(RingAndPath, TotalsAndRelation) {
  EXPECT_EQ(code_of([] { ring(2); }), ErrorCode::TooSmall);
  EXPECT_EQ(code_of([] { path(1); }), ErrorCode::TooSmall);
  for (std::size_t n : {3, 6, 11}) {
    const double nn = static_cast<double>(n);
    EXPECT_NEAR(total_effective_resistance(ring(n), TotalMethod::Spectral).value(), (nn * nn * nn - nn) / 12.0,
                1e-8);
    EXPECT_NEAR(total_effective_resistance(path(n), TotalMethod::Spectral).value(), (nn * nn * nn - nn) / 6.0,
                1e-8);
  }
  // Cutting the edge (n-1, 0) from a ring leaves the path.
  auto cut = ring(7).without_edges(std::vector<EdgeId>{EdgeId{0, 6}});
  EXPECT_EQ(cut, path(7));
}

TEST(PendantExpander, BridgeAndSpectralGap) {
  auto pe = pendant_expander(33, 2);
  EXPECT_NEAR(effective_resistance(pe.g, pe.pendant.u, pe.pendant.v).value(), 1.0, 1e-9);
  EXPECT_GT(pe.lambda2, 0.05);
  EXPECT_EQ(pe.g.degree(pe.pendant.v), 1u);
  auto cut = pe.g.without_edges(std::vector<EdgeId>{pe.pendant});
  EXPECT_NEAR(laplacian_lambda2(cut), 0.0, 1e-9);
  EXPECT_EQ(code_of([] { pendant_expander(32, 0); }), ErrorCode::ParityViolation);
}

TEST(ParallelPaths, Examples) {
  auto one = parallel_paths({PathSpec::to_target(1)});
  EXPECT_EQ(one.g.num_vertices(), 2u);
  EXPECT_EQ(one.resistance.value(), 1.0);

  auto three = parallel_paths({PathSpec::to_target(1), PathSpec::to_target(2), PathSpec::to_target(4)});
  EXPECT_NEAR(three.resistance.value(), 4.0 / 7.0, 1e-15);
  EXPECT_NEAR(effective_resistance(three.g, 0, 1).value(), 4.0 / 7.0, 1e-12);

  auto dead = parallel_paths({PathSpec::to_target(2), PathSpec::dead_end(5)});
  EXPECT_EQ(dead.resistance.value(), 2.0);
  EXPECT_NEAR(effective_resistance(dead.g, 0, 1).value(), 2.0, 1e-12);

  auto tails = parallel_paths({PathSpec::to_target(3), PathSpec::to_target(3)}, {2, 4});
  EXPECT_NEAR(effective_resistance(tails.g, 0, 1).value(), 1.5, 1e-12);
  EXPECT_EQ(tails.g.degree(1), 4u);
  for (Vertex v = 2; v < tails.g.num_vertices(); ++v) EXPECT_LE(tails.g.degree(v), 2u);

  EXPECT_EQ(code_of([] { parallel_paths({}); }), ErrorCode::EmptySpec);
  EXPECT_EQ(code_of([] { parallel_paths({PathSpec::to_target(1), PathSpec::to_target(1)}); }),
            ErrorCode::DuplicateEdge);
}

TEST(ParallelPaths, ClosedFormMatchesExact) {
  Rng rng(17);
  std::uniform_int_distribution<std::size_t> len(1, 12);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<PathSpec> spec;
    const std::size_t k = 1 + trial % 5;
    for (std::size_t i = 0; i < k; ++i) spec.push_back(PathSpec::to_target(1 + len(rng)));
    spec.push_back(PathSpec::dead_end(len(rng)));
    auto inst = parallel_paths(spec, {len(rng)});
    EXPECT_NEAR(effective_resistance(inst.g, inst.s, inst.t).value(), inst.resistance.value(), 1e-9);
  }
}

}  // namespace
}  // namespace effres
