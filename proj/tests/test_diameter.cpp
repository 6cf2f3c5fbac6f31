#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sch/diameter.hpp"
#include "sch/oracle.hpp"

using namespace sch;

namespace {

const std::vector<Point> kSquare{Point{0, 0}, Point{0, 1}, Point{1, 0}, Point{1, 1}};

std::vector<Point> random_points(std::size_t n, std::size_t d, std::uint64_t seed) {
  const auto ds = random_dataset(n, d, seed);
  return {ds.points().begin(), ds.points().end()};
}

}  // namespace

TEST(FarthestFrom, SquareCenterTieGoesToLexLargest) {
  EXPECT_EQ(kSquare[farthest_from(kSquare, Point{0.5, 0.5})], (Point{1, 1}));
}

TEST(FarthestFrom, QueryOnAPoint) {
  const std::vector<Point> pts{Point{0, 0}, Point{3, 0}, Point{1, 0}};
  EXPECT_EQ(farthest_from(pts, Point{0, 0}), 1u);
}

TEST(WitnessSequence, TwoPoints) {
  const std::vector<Point> pts{Point{0, 0}, Point{1, 0}};  // a ≺ b
  const auto ws = witness_sequence(pts);
  EXPECT_EQ(ws.idx, (std::array<std::size_t, 5>{1, 0, 1, 1, 0}));
  EXPECT_DOUBLE_EQ(ws.lambda, 1.0);
}

TEST(WitnessSequence, UnitSquare) {
  const auto ws = witness_sequence(kSquare);
  EXPECT_EQ(kSquare[ws.v()], (Point{1, 1}));
  EXPECT_EQ(kSquare[ws.u()], (Point{0, 0}));
  EXPECT_EQ(kSquare[ws.w()], (Point{1, 1}));
  EXPECT_EQ(kSquare[ws.y()], (Point{1, 1}));
  EXPECT_EQ(kSquare[ws.z()], (Point{0, 0}));
  EXPECT_NEAR(ws.lambda, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(diameter_approx_pointset(kSquare), std::sqrt(2.0), 1e-15);
}

TEST(WitnessSequence, Singleton) {
  const std::vector<Point> one{Point{2, 3}};
  const auto ws = witness_sequence(one);
  EXPECT_EQ(ws.lambda, 0.0);
  EXPECT_EQ(ws.idx, (std::array<std::size_t, 5>{0, 0, 0, 0, 0}));
}

TEST(WitnessSequence, BracketsTheDiameterPointwise) {
  for (std::size_t d : {2u, 3u, 10u}) {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
      const auto pts = random_points(2 + seed % 30, d, seed * 7 + d);
      const double diam = oracles::plain_diameter(pts);
      const double lam = witness_sequence(pts).lambda;
      EXPECT_LE(lam, diam * (1 + 1e-12));
      EXPECT_GE(lam, diam / kWitnessDiameterFactor);
    }
  }
}

TEST(WitnessProb, TwoPoints) {
  const StochasticDataset ds(2, {Point{0, 0}, Point{1, 0}}, {0.3, 0.6});
  EXPECT_NEAR(witness_prob(ds, {1, 0, 1, 1, 0}), 0.18, 1e-15);
  EXPECT_NEAR(witness_prob(ds, {0, 0, 0, 0, 0}), 0.3 * 0.4, 1e-15);
  EXPECT_EQ(witness_prob(ds, {0, 1, 0, 0, 1}), 0.0);  // v must be ≺-largest
}

TEST(WitnessProb, CertainLargerPointRulesOutSequence) {
  const StochasticDataset ds(2, {Point{0, 0}, Point{1, 0}, Point{2, 0}}, {0.5, 0.5, 1.0});
  EXPECT_EQ(witness_prob(ds, {1, 0, 1, 1, 0}), 0.0);
}

TEST(WitnessProb, MassBalance) {
  // Every nonempty realization has exactly one witness sequence.
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto ds = random_dataset(6, 2 + seed % 2, seed);
    double s = 0.0;
    std::array<std::size_t, 5> psi{};
    const std::size_t n = ds.size();
    for (psi[0] = 0; psi[0] < n; ++psi[0])
      for (psi[1] = 0; psi[1] < n; ++psi[1])
        for (psi[2] = 0; psi[2] < n; ++psi[2])
          for (psi[3] = 0; psi[3] < n; ++psi[3])
            for (psi[4] = 0; psi[4] < n; ++psi[4]) s += witness_prob(ds, psi);
    double empty = 1.0;
    for (double p : ds.probs()) empty *= 1.0 - p;
    EXPECT_NEAR(s, 1.0 - empty, 1e-12);
  }
}

TEST(ExpectedDiameter, SmallCases) {
  const StochasticDataset sure(2, {Point{0, 0}, Point{1, 0}}, {1, 1});
  EXPECT_DOUBLE_EQ(expected_diameter_witness(sure), 1.0);
  const StochasticDataset half(2, {Point{0, 0}, Point{1, 0}}, {0.5, 0.5});
  EXPECT_DOUBLE_EQ(expected_diameter_witness(half), 0.25);
  EXPECT_DOUBLE_EQ(expected_diameter_two_approx(half), 0.25);
  const double h = std::sqrt(3.0) / 2.0;
  const StochasticDataset tri(2, {Point{0, 0}, Point{1, 0}, Point{0.5, h}}, {1, 1, 1});
  EXPECT_NEAR(expected_diameter_two_approx(tri), 1.0, 1e-15);
  EXPECT_EQ(expected_diameter_witness(StochasticDataset(2, {Point{0, 0}}, {0.4})), 0.0);
}

TEST(ExpectedDiameter, GroupedEqualsNaive) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto ds = random_dataset(7, 2 + seed % 3, seed);
    EXPECT_NEAR(expected_diameter_witness(ds), oracles::naive_expected_diameter_witness(ds), 1e-12);
  }
}

TEST(ExpectedDiameter, MatchesOracleAndBrackets) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto ds = random_dataset(8, seed % 2 ? 2 : 3, 100 + seed);
    const double oracle = oracle_expectation(ds, Statistic::diameter);
    const double w = expected_diameter_witness(ds);
    EXPECT_NEAR(w, oracles::oracle_witness_diameter(ds), 1e-9);
    EXPECT_LE(w, oracle * (1 + 1e-12));
    EXPECT_GE(w, oracle / kWitnessDiameterFactor);
    const double t = expected_diameter_two_approx(ds);
    EXPECT_LE(t, oracle * (1 + 1e-12));
    EXPECT_GE(t, oracle / 2.0);
  }
}

TEST(ExpectedDiameter, TwoApproxMatchesCriticalPairOracle) {
  // The critical pair: smallest present index i and its farthest present partner.
  const auto ds = random_dataset(9, 3, 5);
  const double want = oracle_sum(ds, [](const Realization& r, std::span<const Point> pts) {
    if (pts.size() < 2) return 0.0;
    std::size_t best = 1;
    for (std::size_t k = 2; k < pts.size(); ++k)
      if (prec_anchor(pts[best], pts[k], pts[0])) best = k;
    (void)r;
    return dist(pts[0], pts[best]);
  });
  EXPECT_NEAR(expected_diameter_two_approx(ds), want, 1e-12);
}
