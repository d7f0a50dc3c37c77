#include "cli/commands.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace sparsespin::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("sparsespin_cli_test_" + name);
}

TEST(CliEvolve, AllToAllReachesHeisenbergLimit) {
  const auto r = invoke({"evolve", "--kind", "a2a", "--n", "8", "--tmax-norm", "3.1416", "--samples", "200"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 201u);
  const auto q = column(rows[0], "qfi_opt");
  ASSERT_LT(q, rows[0].size());
  double best = 0.0;
  for (std::size_t k = 1; k < rows.size(); ++k) best = std::max(best, std::stod(rows[k][q]));
  EXPECT_NEAR(best, 64.0, 0.01);
  EXPECT_EQ(column(rows[0], "qfi_opt_over_n") < rows[0].size(), true);
}

TEST(CliEvolve, NearestNeighbourStaysBelowAllToAll) {
  const auto a2a = csv(invoke({"evolve", "--kind", "a2a,nn", "--n", "8", "--tmax-norm", "3.1416", "--samples", "60"}).out);
  const auto q = column(a2a[0], "qfi_opt_over_n");
  double best_a2a = 0.0, best_nn = 0.0;
  for (std::size_t k = 1; k < a2a.size(); ++k) {
    double& slot = a2a[k][0] == "a2a" ? best_a2a : best_nn;
    slot = std::max(slot, std::stod(a2a[k][q]));
  }
  EXPECT_LT(best_nn, 0.9 * best_a2a);
}

TEST(CliEvolve, UsageErrors) {
  EXPECT_EQ(invoke({"evolve", "--samples", "0"}).code, 2);
  EXPECT_EQ(invoke({"evolve", "--n", "21"}).code, 2);
  EXPECT_EQ(invoke({"evolve", "--kind", "ring"}).code, 2);
  EXPECT_EQ(invoke({"evolve", "--kind", "hypercube", "--n", "6"}).code, 2);
  EXPECT_EQ(invoke({"evolve", "--format", "xml"}).code, 2);
  EXPECT_EQ(invoke({"evolve", "--bogus"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  const auto r = invoke({"evolve", "--n", "24"});
  EXPECT_NE(r.err.find("MPS"), std::string::npos);
}

TEST(CliEvolve, HelpExitsCleanly) {
  const auto r = invoke({"evolve", "--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("--tmax-norm"), std::string::npos);
}

TEST(CliEvolve, JsonlAndDeterminism) {
  const std::vector<std::string> args{"evolve", "--kind", "pwr2", "--n", "8", "--samples", "5", "--format", "jsonl",
                                      "--jobs", "2"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::istringstream in(a.out);
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    const auto doc = nlohmann::json::parse(line);
    EXPECT_EQ(doc.at("graph"), "pwr2");
    ++count;
  }
  EXPECT_EQ(count, 5);
}

TEST(CliEvolve, GraphFileAndOutputFile) {
  const auto graph = temp_path("graph.json");
  {
    std::ofstream os(graph);
    os << R"({"n": 4, "chi0": 1.0, "kind": "nn", "boundary": "open", "edges": [[0,1,1.0],[1,2,1.0],[2,3,0.5]]})";
  }
  const auto out = temp_path("evolve.csv");
  const auto r = invoke({"evolve", "--graph-file", graph.string(), "--samples", "3", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(csv(text.str()).size(), 4u);
  std::filesystem::remove(graph);
  std::filesystem::remove(out);
}

TEST(CliEvolve, ConfigFileDefaultsAreOverriddenByFlags) {
  const auto cfg = temp_path("evolve.cfg");
  {
    std::ofstream os(cfg);
    os << "# defaults\nn = 4\nsamples = 7\nkind = nn\n";
  }
  const auto r = invoke({"--config", cfg.string(), "evolve", "--samples", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1][0], "nn");
  EXPECT_EQ(rows[1][1], "4");
  std::filesystem::remove(cfg);
  EXPECT_EQ(invoke({"--config", "/nonexistent/file", "evolve"}).code, 2);
}

TEST(CliScaling, AllToAllExponent) {
  const auto r = invoke({"scaling", "--kinds", "a2a", "--ns", "4,6,8", "--samples", "60"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 4u);
  const auto b = column(rows[0], "beta");
  EXPECT_NEAR(std::stod(rows[1][b]), 2.0, 0.02);
  EXPECT_NEAR(std::stod(rows[1][column(rows[0], "t_star")]), 3.14159265, 1e-4);
}

TEST(CliScaling, SingleSizeIsAnError) {
  EXPECT_EQ(invoke({"scaling", "--kinds", "a2a", "--ns", "8"}).code, 2);
}

TEST(CliGap, HypercubeConstant) {
  const auto r = invoke({"gap", "--kinds", "hypercube", "--ns", "4,16,64,256,1024"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 6u);
  for (std::size_t k = 1; k < rows.size(); ++k) EXPECT_NEAR(std::stod(rows[k][2]), 2.0, 1e-9);
}

TEST(CliGap, PowerLawDecreases) {
  const auto r = invoke({"gap", "--kinds", "powerlaw", "--alphas", "3", "--ns", "8,16,32,64"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv(r.out);
  for (std::size_t k = 2; k < rows.size(); ++k) EXPECT_LT(std::stod(rows[k][2]), std::stod(rows[k - 1][2]));
}

TEST(CliGap, NegativeAlphaIsUsageError) {
  EXPECT_EQ(invoke({"gap", "--kinds", "powerlaw", "--alpha", "-1"}).code, 2);
  EXPECT_EQ(invoke({"gap", "--kinds", "powerlaw", "--alphas", "1,-2"}).code, 2);
}

TEST(CliStrobe, FidelityColumn) {
  const auto r = invoke({"strobe", "--n", "16", "--ms", "10", "--tstar", "11.0", "--fidelity", "0.999,0.9999"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(std::stod(rows[1][column(rows[0], "fidelity")]), 0.4637, 0.0005);
}

TEST(CliStrobe, ApproachesContinuousValue) {
  const auto r = invoke({"strobe", "--n", "8", "--ms", "1,60"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv(r.out);
  const auto fq = column(rows[0], "fq_over_n2");
  const auto cont = column(rows[0], "fq_continuous_over_n2");
  const double target = std::stod(rows[2][cont]);
  EXPECT_LT(std::abs(std::stod(rows[2][fq]) - target), std::abs(std::stod(rows[1][fq]) - target));
  EXPECT_NEAR(std::stod(rows[2][fq]), target, 0.05 * target);
}

TEST(CliStrobe, ScheduleOut) {
  const auto path = temp_path("schedule.json");
  const auto r = invoke({"strobe", "--n", "4", "--ms", "2", "--tstar-mode", "sqrt", "--schedule-out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path);
  const auto doc = nlohmann::json::parse(in);
  EXPECT_EQ(doc.at("n"), 4);
  std::filesystem::remove(path);
}

TEST(CliStrobe, UsageErrors) {
  EXPECT_EQ(invoke({"strobe", "--n", "6"}).code, 2);
  EXPECT_EQ(invoke({"strobe", "--n", "8", "--ms", "0"}).code, 2);
  EXPECT_EQ(invoke({"strobe", "--n", "8", "--fidelity", "1.2,0.9"}).code, 2);
  EXPECT_EQ(invoke({"strobe", "--n", "8", "--tstar-mode", "median"}).code, 2);
  EXPECT_EQ(invoke({"strobe", "--target", "ring"}).code, 2);
}

TEST(CliSchedule, EmitsJson) {
  const auto r = invoke({"schedule", "--target", "pwr2", "--n", "8", "--m", "1", "--tstar", "2.0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc.at("n"), 8);
  EXPECT_FALSE(doc.at("items").empty());
}

TEST(CliFidelity, SixteenSpinsTenSteps) {
  const auto r = invoke({"fidelity", "--n", "16", "--m", "10", "--f2", "0.998"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv(r.out);
  EXPECT_EQ(rows[1][2], "640");
  EXPECT_EQ(rows[1][3], "1280");
  EXPECT_NEAR(std::stod(rows[1].back()), 0.2443, 0.0005);
  EXPECT_EQ(invoke({"fidelity", "--n", "12"}).code, 2);
}

TEST(CliGlobal, SeedlessAccepted) {
  EXPECT_EQ(invoke({"--seedless", "fidelity"}).code, 0);
}

TEST(ParseLists, RangesAndValues) {
  EXPECT_EQ(parse_int_list("1-3,7"), (std::vector<int>{1, 2, 3, 7}));
  EXPECT_THROW(parse_int_list("3-1"), std::invalid_argument);
  EXPECT_THROW(parse_int_list("a"), std::invalid_argument);
  EXPECT_EQ(parse_real_list("0.5, 2"), (std::vector<double>{0.5, 2.0}));
  EXPECT_THROW(parse_real_list("1x"), std::invalid_argument);
}

}  // namespace
}  // namespace sparsespin::cli
