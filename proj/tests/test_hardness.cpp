#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sch/hardness.hpp"

using namespace sch;

TEST(Graph, ParseAndFormat) {
  const auto g = parse_graph("4 3\n1 2\n2 3\n4 1\n");
  EXPECT_EQ(g.n, 4u);
  ASSERT_EQ(g.edges.size(), 3u);
  EXPECT_TRUE(g.has_edge(3, 0));
  EXPECT_EQ(format_graph(g), "4 3\n1 2\n2 3\n1 4\n");
}

TEST(Graph, ParseErrors) {
  EXPECT_THROW(parse_graph("x"), ParseError);
  EXPECT_THROW(parse_graph("3 2\n1 2\n"), ParseError);
  EXPECT_THROW(parse_graph("3 1\n1 4\n"), ValidationError);
  EXPECT_THROW(parse_graph("3 1\n2 2\n"), ValidationError);
  EXPECT_THROW(parse_graph("3 2\n1 2\n2 1\n"), ValidationError);
  EXPECT_THROW(parse_graph("3 1\n1 2\n3 1\n"), ParseError);
}

TEST(Graph, IndependentSets) {
  EXPECT_EQ(count_independent_sets(complete_graph(3)), 4u);
  EXPECT_EQ(count_independent_sets(path_graph(3)), 5u);
  EXPECT_EQ(count_independent_sets(Graph{4, {}}), 16u);
  EXPECT_EQ(count_independent_sets(path_graph(5)), 13u);  // Fibonacci
}

TEST(DoubleSimplex, TriangleGadget) {
  const auto v = regular_double_simplex(2);
  ASSERT_EQ(v.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      const double dij = dist(Point(v[i]), Point(v[j]));
      EXPECT_NEAR(dij, (i == 2 && j == 3) ? std::sqrt(3.0) : 1.0, 1e-12);
    }
}

TEST(DoubleSimplex, ApexSeparation) {
  for (std::size_t k = 1; k <= 8; ++k) {
    const auto v = regular_double_simplex(k);
    const double want = 2.0 * std::sqrt((k + 1.0) / (2.0 * k));
    EXPECT_NEAR(dist(Point(v[k]), Point(v[k + 1])), want, 1e-12);
    for (std::size_t i = 0; i < k; ++i) EXPECT_NEAR(dist(Point(v[i]), Point(v[k + 1])), 1.0, 1e-12);
  }
}

TEST(HardnessInstance, PathAndTriangle) {
  const auto p3 = hardness_instance(path_graph(3));
  EXPECT_EQ(p3.dataset.dim(), 2u);
  const auto& P = p3.dataset.points();
  EXPECT_NEAR(dist(P[0], P[1]), p3.beta, 1e-12);
  EXPECT_NEAR(dist(P[1], P[2]), p3.beta, 1e-12);
  EXPECT_NEAR(dist(P[0], P[2]), p3.alpha, 1e-12);
  EXPECT_LT(p3.alpha, p3.beta);

  const auto k3 = hardness_instance(complete_graph(3));
  const auto& Q = k3.dataset.points();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) EXPECT_NEAR(dist(Q[i], Q[j]), k3.beta, 1e-12);
  for (double p : k3.dataset.probs()) EXPECT_EQ(p, 0.5);
}

TEST(HardnessInstance, Rejections) {
  EXPECT_THROW(hardness_instance(path_graph(2)), InvalidArgument);
  EXPECT_THROW(hardness_instance(Graph{4, {}}), InvalidArgument);
}

TEST(HardnessIdentity, SmallGraphs) {
  const auto k3 = hardness_identity_check(hardness_instance(complete_graph(3)));
  EXPECT_EQ(k3.independent_sets, 4u);
  const auto k3i = hardness_instance(complete_graph(3));
  EXPECT_NEAR(k3.rhs, k3i.beta / 2.0, 1e-15);
  EXPECT_NEAR(k3.lhs, k3.rhs, 1e-9 * k3.rhs);

  const auto p3i = hardness_instance(path_graph(3));
  const auto p3 = hardness_identity_check(p3i);
  EXPECT_NEAR(p3.rhs, (p3i.alpha + 3 * p3i.beta) / 8.0, 1e-15);
  EXPECT_NEAR(p3.lhs, p3.rhs, 1e-9 * p3.rhs);
}

TEST(HardnessIdentity, RandomGraphs) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const std::size_t n = 3 + seed % 6;
    const auto chk = hardness_identity_check(hardness_instance(oracles::random_graph(n, 0.4, seed)));
    EXPECT_NEAR(chk.lhs, chk.rhs, 1e-9 * chk.rhs) << "n=" << n;
  }
}

TEST(HardnessInstance, SingleEdgeSpansFewerDimensions) {
  const Graph g{5, {{1, 3}}};
  const auto inst = hardness_instance(g);
  EXPECT_EQ(inst.dataset.dim(), 4u);
  const auto& P = inst.dataset.points();
  for (std::size_t u = 0; u < 5; ++u)
    for (std::size_t v = u + 1; v < 5; ++v)
      EXPECT_NEAR(dist(P[u], P[v]), g.has_edge(u, v) ? inst.beta : inst.alpha, 1e-12);
  const auto chk = hardness_identity_check(inst);
  EXPECT_NEAR(chk.lhs, chk.rhs, 1e-9 * chk.rhs);
}
