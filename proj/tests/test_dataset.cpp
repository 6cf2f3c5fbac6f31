#include <gtest/gtest.h>

#include "sch/dataset.hpp"

using namespace sch;

TEST(Dataset, ValidatesProbabilities) {
  EXPECT_THROW(StochasticDataset(2, {Point{0, 0}}, {0.0}), ValidationError);
  EXPECT_THROW(StochasticDataset(2, {Point{0, 0}}, {1.5}), ValidationError);
  EXPECT_NO_THROW(StochasticDataset(2, {Point{0, 0}}, {1.0}));
}

TEST(Dataset, ValidatesShape) {
  EXPECT_THROW(StochasticDataset(2, {Point{0, 0, 0}}, {0.5}), ValidationError);
  EXPECT_THROW(StochasticDataset(2, {Point{0, 0}, Point{0, 0}}, {0.5, 0.5}), ValidationError);
  EXPECT_THROW(StochasticDataset(2, {Point{0, 0}}, {0.5, 0.5}), ValidationError);
}

TEST(Dataset, ErrorNamesThePoint) {
  try {
    parse_dataset(R"({"dim":2,"points":[{"coords":[0,0],"prob":0.5},{"coords":[1,0],"prob":2}]})");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("point 1"), std::string::npos);
  }
  try {
    parse_dataset(R"({"dim":2,"points":[{"coords":[0,0]}]})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("points[0].prob"), std::string::npos);
  }
}

TEST(Dataset, SyntaxErrorReportsLine) {
  try {
    parse_dataset("{\n\"dim\": 2,\n\"points\": [ oops ]\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Dataset, JsonRoundTripIsExact) {
  const auto ds = random_dataset(12, 3, 99);
  const auto text = serialize_dataset(ds);
  const auto back = parse_dataset(text);
  ASSERT_EQ(back.size(), ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    EXPECT_EQ(back.point(i), ds.point(i));
    EXPECT_EQ(back.prob(i), ds.prob(i));
  }
  EXPECT_EQ(serialize_dataset(back), text);
}

TEST(Dataset, UnknownKeysIgnored) {
  const auto ds = parse_dataset(R"({"dim":1,"note":"x","points":[{"coords":[3],"prob":1,"tag":7}]})");
  EXPECT_EQ(ds.size(), 1u);
}

TEST(Dataset, RandomGeneratorIsDeterministicAndInRange) {
  const auto a = random_dataset(8, 2, 1, 0.2, 0.3);
  const auto b = random_dataset(8, 2, 1, 0.2, 0.3);
  EXPECT_EQ(serialize_dataset(a), serialize_dataset(b));
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_GE(a.prob(i), 0.2);
    EXPECT_LE(a.prob(i), 0.3);
    for (double c : a.point(i).coords()) {
      EXPECT_GE(c, -1.0);
      EXPECT_LE(c, 1.0);
    }
  }
  EXPECT_NE(serialize_dataset(a), serialize_dataset(random_dataset(8, 2, 2, 0.2, 0.3)));
}

TEST(Realization, ProbabilityOfSubset) {
  const StochasticDataset ds(1, {Point{0}, Point{1}, Point{2}}, {0.5, 0.25, 1.0});
  EXPECT_DOUBLE_EQ(realization_prob(ds, Realization{{0, 2}}), 0.5 * 0.75 * 1.0);
  EXPECT_DOUBLE_EQ(realization_prob(ds, Realization{{1}}), 0.0);
}

TEST(Realization, SamplingFrequencies) {
  const StochasticDataset ds(1, {Point{0}, Point{1}}, {0.3, 0.8});
  RandomStream rng(5);
  int c0 = 0, c1 = 0;
  const int trials = 20000;
  for (int t = 0; t < trials; ++t) {
    const auto r = sample_realization(ds, rng);
    c0 += r.contains(0);
    c1 += r.contains(1);
  }
  EXPECT_NEAR(c0 / double(trials), 0.3, 0.02);
  EXPECT_NEAR(c1 / double(trials), 0.8, 0.02);
}

TEST(RandomStream, IndependentStreams) {
  RandomStream a(7, 1), b(7, 2), c(7, 1);
  const auto xa = a.next_u64();
  EXPECT_NE(xa, b.next_u64());
  EXPECT_EQ(xa, c.next_u64());
}
