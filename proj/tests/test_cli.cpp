#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "ggsp/io.hpp"

using namespace ggsp;
using namespace ggsp::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

template <class F>
Outcome call(F cmd, const RunConfig& c) {
  std::ostringstream out, err;
  const int code = cmd(c, out, err);
  return {code, out.str(), err.str()};
}

RunConfig example(const char* name) {
  RunConfig c;
  c.example = name;
  return c;
}

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST(CliRun, FigureOne) {
  const auto r = call(cmd_run, example("fig1"));
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  const auto g = std::get<FrameSeq<double>>(io::parse_frame(r.out));
  EXPECT_NEAR(g[0][0], 0.853553, 1e-6);
  EXPECT_NEAR(g[2][1], 0.5, 1e-15);
  EXPECT_TRUE(doc["report"]["parseval"]);
  EXPECT_NEAR(doc["report"]["squared_norm"].get<double>(), 2.0, 1e-12);
  EXPECT_EQ(doc["report"]["dependent_indices"], nlohmann::json({3}));
}

TEST(CliRun, OrthonormalInputUnchanged) {
  RunConfig c;
  c.input = write_temp("onb.json", R"({"dim": 2, "field": "real", "vectors": [[1, 0], [0, 0], [0, 1]]})");
  const auto r = call(cmd_run, c);
  ASSERT_EQ(r.code, kSuccess);
  const auto g = std::get<FrameSeq<double>>(io::parse_frame(r.out));
  EXPECT_LE(l2_distance(g, FrameSeq<double>(2, {{1, 0}, {0, 0}, {0, 1}})), 1e-15);
}

TEST(CliRun, FigureThreeSquaredNorm) {
  const auto r = call(cmd_run, example("fig3"));
  ASSERT_EQ(r.code, kSuccess);
  EXPECT_NEAR(nlohmann::json::parse(r.out)["report"]["squared_norm"].get<double>(), 2.0, 1e-12);
}

TEST(CliRun, InputErrors) {
  RunConfig none;
  EXPECT_EQ(call(cmd_run, none).code, kInputError);
  RunConfig both = example("fig1");
  both.input = "x.json";
  EXPECT_EQ(call(cmd_run, both).code, kInputError);
  RunConfig bad;
  bad.input = write_temp("bad.json", R"({"dim": 2, "field": "real", "vectors": [[1, 0, 1]]})");
  EXPECT_EQ(call(cmd_run, bad).code, kInputError);
  RunConfig malformed;
  malformed.input = write_temp("malformed.json", "{");
  EXPECT_EQ(call(cmd_run, malformed).code, kInputError);
  RunConfig tol = example("fig1");
  tol.dep_tol = -1.0;
  EXPECT_EQ(call(cmd_run, tol).code, kInputError);
  RunConfig iters = example("fig1");
  iters.max_iter = 0;
  EXPECT_EQ(call(cmd_iterate, iters).code, kInputError);
}

TEST(CliIterate, FigureOne) {
  RunConfig c = example("fig1");
  c.eps_delta = 1e-300;
  c.trace = TraceLevel::steps;
  c.max_iter = 100;
  const auto r = call(cmd_iterate, c);
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc["norms"][100][2].get<double>(), 1.0 / std::sqrt(101.0), 1e-12);
  EXPECT_TRUE(doc["recurrences"]["passed"]);
}

TEST(CliIterate, FigureTwoMaxIter) {
  RunConfig c = example("fig2");
  c.eps_delta = 1e-300;
  c.max_iter = 8;
  const auto r = call(cmd_iterate, c);
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["metadata"]["iterations_run"], 8);
  EXPECT_EQ(doc["snapshots"].size(), 9u);
}

TEST(CliIterate, FigureThreeLimitAndCsv) {
  RunConfig c = example("fig3");
  const auto r = call(cmd_iterate, c);
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc["limit_report"]["prediction_match"]);
  EXPECT_EQ(doc["limit_report"]["surviving_indices"].size(), 2u);

  c.format = "csv";
  c.max_iter = 5;
  c.output = ::testing::TempDir() + "fig3.csv";
  ASSERT_EQ(call(cmd_iterate, c).code, kSuccess);
  std::ifstream in(*c.output);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "iteration,vector_index,norm,coord_1,coord_2");
}

TEST(CliVerify, DefaultSeedAndSeedSeven) {
  RunConfig c;
  const auto a = call(cmd_verify, c);
  EXPECT_EQ(a.code, kSuccess) << a.out;
  EXPECT_NE(a.out.find("all checks passed"), std::string::npos);
  c.seed = 7;
  c.random_frames = 50;
  EXPECT_EQ(call(cmd_verify, c).code, kSuccess);
}

TEST(CliVerify, LooseDependencyToleranceFails) {
  RunConfig c;
  c.dep_tol = 0.1;
  const auto r = call(cmd_verify, c);
  EXPECT_EQ(r.code, kVerificationFailure);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST(CliMain, ExitCodes) {
  auto run = [](std::vector<std::string> args) {
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return main_entry(static_cast<int>(argv.size()), argv.data());
  };
  EXPECT_EQ(run({"ggsp", "run", "--example", "fig1", "--output", ::testing::TempDir() + "o.json"}), kSuccess);
  EXPECT_EQ(run({"ggsp", "run", "--example", "fig9"}), kInputError);
  EXPECT_EQ(run({"ggsp", "iterate", "--example", "fig1", "--trace", "all"}), kInputError);
  EXPECT_EQ(run({"ggsp"}), kInputError);
}
