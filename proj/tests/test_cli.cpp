#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"

namespace {

const std::string kFixtures = SCH_FIXTURE_DIR;

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "schull");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = schull::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("schull_test_" + name)).string();
}

}  // namespace

TEST(Cli, ComputeWitnessDiameterOnFixture) {
  const auto r = run({"compute", "--input", kFixtures + "/two_point.json", "--stat", "diameter", "--method", "witness"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_DOUBLE_EQ(j["value"].get<double>(), 0.25);
  EXPECT_NEAR(j["bounds"][0].get<double>(), 0.25, 1e-15);
  EXPECT_NEAR(j["bounds"][1].get<double>(), 0.25 * 2 * std::sqrt(2.0) / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(j["bounds"][1].get<double>(), 0.4083, 1e-4);
  EXPECT_EQ(j["dataset_digest"].get<std::string>().size(), 16u);
  EXPECT_FALSE(j.contains("elapsed_ms"));
}

TEST(Cli, TextFormatIsOneLine) {
  const auto r = run({"compute", "--input", kFixtures + "/two_point.json", "--format", "text"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "diameter witness 0.25 [0.25, 0.408248290464]\n");
}

TEST(Cli, FprasIsByteIdentical) {
  const auto path = temp_path("fpras.json");
  ASSERT_EQ(run({"gen", "random", "--n", "8", "--dim", "2", "--seed", "3", "--output", path}).code, 0);
  const std::vector<std::string> args{"compute", "--input", path, "--stat", "width", "--method", "fpras",
                                      "--eps", "0.1", "--seed", "7", "--gamma", "1"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(nlohmann::json::parse(a.out)["bounds"].is_null());
}

TEST(Cli, ExitCodes) {
  const auto tetra = kFixtures + "/tetra3d.json";
  EXPECT_EQ(run({"compute", "--input", tetra, "--stat", "complexity", "--method", "witness"}).code, 4);
  EXPECT_EQ(run({"compute", "--input", tetra, "--stat", "complexity", "--method", "oracle"}).code, 0);
  EXPECT_EQ(run({"compute", "--input", tetra, "--stat", "bogus"}).code, 2);
  EXPECT_EQ(run({"compute", "--input", tetra, "--stat", "width", "--method", "two-approx"}).code, 2);
  EXPECT_EQ(run({"compute"}).code, 2);
  EXPECT_EQ(run({"compute", "--input", "/nonexistent/file.json"}).code, 3);

  const auto bad = temp_path("bad.json");
  std::ofstream(bad) << R"({"dim":2,"points":[{"coords":[0,0],"prob":1.5}]})";
  const auto r = run({"compute", "--input", bad});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("point 0"), std::string::npos);
}

TEST(Cli, GenRandomIsDeterministic) {
  const auto a = run({"gen", "random", "--n", "8", "--dim", "2", "--seed", "1"});
  const auto b = run({"gen", "random", "--n", "8", "--dim", "2", "--seed", "1"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto ds = sch::parse_dataset(a.out);
  EXPECT_EQ(ds.size(), 8u);
  for (double p : ds.probs()) {
    EXPECT_GE(p, 0.1);
    EXPECT_LE(p, 0.9);
  }
}

TEST(Cli, GenHardness) {
  for (const std::string& g : std::vector<std::string>{"K3", kFixtures + "/k3.txt"}) {
    const auto r = run({"gen", "hardness", "--graph", g});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    const auto ds = sch::dataset_from_json(j);
    EXPECT_EQ(ds.size(), 3u);
    EXPECT_EQ(ds.dim(), 2u);
    const double beta = j["hardness"]["beta"].get<double>();
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t k = i + 1; k < 3; ++k) EXPECT_NEAR(sch::dist(ds.point(i), ds.point(k)), beta, 1e-12);
    EXPECT_EQ(j["hardness"]["independent_sets"], 4);
  }
  EXPECT_EQ(run({"gen", "hardness", "--graph", "P2"}).code, 3);
}

TEST(Cli, VerifyPasses) {
  const auto path = temp_path("verify.json");
  ASSERT_EQ(run({"gen", "random", "--n", "9", "--dim", "2", "--seed", "5", "--output", path}).code, 0);
  for (const auto& [stat, method] : std::vector<std::pair<std::string, std::string>>{
           {"diameter", "witness"}, {"diameter", "two-approx"}, {"width", "witness"}, {"complexity", "witness"}}) {
    const auto r = run({"verify", "--input", path, "--stat", stat, "--method", method});
    ASSERT_EQ(r.code, 0) << stat << ' ' << method << '\n' << r.out << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_GE(j["ratio"].get<double>(), j["bracket"][0].get<double>() * (1 - 1e-9));
  }
  const auto t = run({"verify", "--input", path, "--stat", "complexity", "--format", "text"});
  EXPECT_NE(t.out.find("PASS"), std::string::npos);
}

TEST(Cli, VerifyOracleGuard) {
  const auto path = temp_path("big.json");
  ASSERT_EQ(run({"gen", "random", "--n", "23", "--dim", "2", "--output", path}).code, 0);
  EXPECT_EQ(run({"verify", "--input", path}).code, 4);
}

TEST(Cli, TimingFlag) {
  const auto r = run({"compute", "--input", kFixtures + "/two_point.json", "--timing"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(r.out).contains("elapsed_ms"));
}
