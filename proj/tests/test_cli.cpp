// Copyright 2026 The vqsdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "commands.hpp"
#include "support.hpp"
#include "vqsdp/problems.hpp"
#include "vqsdp/solvers.hpp"

namespace vqsdp {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Invocation {
  int code = 0;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "vqsdp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Invocation r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = testing::scratch_dir(::testing::UnitTest::GetInstance()->current_test_info()->name());
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(Cli, GenIsDeterministic) {
  ASSERT_EQ(invoke({"gen", "random-eq", "--dim", "4", "--constraints", "3", "--seed", "5", "--out", path("a.json")}).code,
            cli::kExitOk);
  ASSERT_EQ(invoke({"gen", "random-eq", "--dim", "4", "--constraints", "3", "--seed", "5", "--out", path("b.json")}).code,
            cli::kExitOk);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  ASSERT_EQ(invoke({"gen", "random-eq", "--dim", "4", "--constraints", "3", "--seed", "6", "--out", path("c.json")}).code,
            cli::kExitOk);
  EXPECT_NE(slurp(path("a.json")), slurp(path("c.json")));
  EXPECT_NO_THROW(load_instance(path("a.json")).validate());
}

TEST_F(Cli, OracleOnMaxCut) {
  ASSERT_EQ(invoke({"gen", "maxcut", "--complete", "3", "--out", path("k3.json")}).code, cli::kExitOk);
  Invocation k3 = invoke({"oracle", path("k3.json")});
  ASSERT_EQ(k3.code, cli::kExitOk) << k3.err;
  EXPECT_NEAR(json::parse(k3.out)["optimal_value"].get<double>(), 2.25, 1e-4);

  ASSERT_EQ(invoke({"gen", "maxcut", "--cycle", "4", "--out", path("c4.json")}).code, cli::kExitOk);
  Invocation c4 = invoke({"oracle", "--instance", path("c4.json")});
  ASSERT_EQ(c4.code, cli::kExitOk) << c4.err;
  EXPECT_NEAR(json::parse(c4.out)["optimal_value"].get<double>(), 4.0, 1e-4);
}

TEST_F(Cli, ErrorExitCodes) {
  StandardForm s;
  s.c = HermitianOperator::identity(2);
  s.constraints = DiagonalMap({HermitianOperator::identity(2), HermitianOperator::identity(2)});
  s.rhs = RealVector(2);
  s.rhs << 1.0, 2.0;
  SdpInstance infeasible;
  infeasible.form = s;
  infeasible.metadata.name = "infeasible";
  save_instance(infeasible, path("infeasible.json"));
  EXPECT_EQ(invoke({"oracle", path("infeasible.json"), "--max-iterations", "20000"}).code, cli::kExitFailure);

  ASSERT_EQ(invoke({"gen", "maxcut", "--path", "2", "--out", path("p2.json")}).code, cli::kExitOk);
  EXPECT_EQ(invoke({"solve", path("p2.json"), "--solver", "gf", "--exact", "--out", path("runs")}).code,
            cli::kExitUsage);
  EXPECT_EQ(invoke({"solve", path("p2.json"), "--solver", "ic", "--exact", "--out", path("runs")}).code,
            cli::kExitUsage);
  EXPECT_EQ(invoke({"solve", path("p2.json"), "--solver", "nope"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"solve", path("p2.json"), "--solver", "ec", "--bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"solve", path("missing.json"), "--solver", "ec"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"gen", "maxcut"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({}).code, cli::kExitUsage);
}

TEST_F(Cli, SolveSummaryMatchesTraces) {
  ASSERT_EQ(invoke({"gen", "random-eq", "--dim", "4", "--constraints", "3", "--seed", "2", "--aligned", "--out",
                    path("inst.json")})
                .code,
            cli::kExitOk);
  const std::vector<std::string> args = {"solve",   path("inst.json"), "--solver", "ec",  "--exact",
                                         "--shots", "10,50",           "--repeats", "2",  "--depth",
                                         "1",       "--outer-cap",     "4",        "--inner-cap", "20",
                                         "--seed",  "7"};
  auto with_out = [&](const std::string& out) {
    auto a = args;
    a.push_back("--out");
    a.push_back(out);
    return a;
  };
  Invocation first = invoke(with_out(path("runs1")));
  ASSERT_EQ(first.code, cli::kExitOk) << first.err;
  ASSERT_EQ(invoke(with_out(path("runs2"))).code, cli::kExitOk);

  const std::string name = load_instance(path("inst.json")).metadata.name;
  const fs::path root1 = dir_ / "runs1" / name / "ec";
  const fs::path root2 = dir_ / "runs2" / name / "ec";
  EXPECT_EQ(slurp(root1 / "summary.json"), slurp(root2 / "summary.json"));

  json summary = json::parse(slurp(root1 / "summary.json"));
  EXPECT_EQ(summary["schema"], cli::kSummarySchema);
  EXPECT_EQ(summary["reference"]["source"], "oracle");
  const double reference = summary["reference"]["value"].get<double>();
  ASSERT_EQ(summary["groups"].size(), 3u);
  EXPECT_EQ(summary["groups"][0]["shots"], "exact");
  EXPECT_EQ(summary["groups"][1]["shots"], 10);
  EXPECT_EQ(summary["groups"][2]["shots"], 50);
  for (const auto& group : summary["groups"]) {
    ASSERT_EQ(group["runs"].size(), 2u);
    std::vector<Trace> traces;
    for (const auto& run : group["runs"]) {
      const fs::path csv = root1 / run["trace"].get<std::string>();
      ASSERT_TRUE(fs::exists(csv)) << csv;
      traces.push_back(trace_from_csv(slurp(csv)));
      EXPECT_EQ(run["iterations"].get<std::size_t>(), traces.back().size());
      EXPECT_EQ(run["final_objective"].get<double>(), traces.back().back().objective);
    }
    EXPECT_EQ(traces[0].front().shots_used == 0, group["shots"] == "exact");
    cli::GapCurve curve = cli::gap_curve(traces, reference);
    const auto mean = group["gap_mean"].get<std::vector<double>>();
    const auto var = group["gap_variance"].get<std::vector<double>>();
    ASSERT_EQ(mean.size(), curve.mean.size());
    for (std::size_t k = 0; k < mean.size(); ++k) {
      EXPECT_NEAR(mean[k], curve.mean[k], 1e-9);
      EXPECT_NEAR(var[k], curve.variance[k], 1e-9);
    }
  }
}

TEST_F(Cli, ConfigFileSuppliesOptions) {
  ASSERT_EQ(invoke({"gen", "random-ineq", "--dim", "4", "--constraints", "3", "--seed", "3", "--out",
                    path("inst.json")})
                .code,
            cli::kExitOk);
  {
    std::ofstream cfg(path("run.toml"));
    cfg << "[solve]\nsolver = \"ic\"\nrepeats = 3\ndepth = 1\nouter-cap = 3\ninner-cap = 5\nexact = true\n"
        << "out = \"" << path("runs") << "\"\n";
  }
  Invocation r = invoke({"--config", path("run.toml"), "solve", path("inst.json")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const std::string name = load_instance(path("inst.json")).metadata.name;
  json summary = json::parse(slurp(dir_ / "runs" / name / "ic" / "summary.json"));
  EXPECT_EQ(summary["solver"], "ic");
  EXPECT_EQ(summary["config"]["repeats"], 3);
  EXPECT_EQ(summary["config"]["depth"], 1);
  ASSERT_EQ(summary["groups"].size(), 1u);
  EXPECT_EQ(summary["groups"][0]["runs"].size(), 3u);
}

TEST_F(Cli, BoundsReport) {
  ASSERT_EQ(invoke({"gen", "random-eq", "--dim", "4", "--constraints", "3", "--seed", "4", "--out",
                    path("eq.json")})
                .code,
            cli::kExitOk);
  Invocation ec = invoke({"bounds", path("eq.json"), "--solver", "ec", "--depth", "2", "--mu", "2", "--outer", "5"});
  ASSERT_EQ(ec.code, cli::kExitOk) << ec.err;
  json doc = json::parse(ec.out);
  for (const char* key : {"L_f", "L_A", "L_c_y", "Q", "nu"}) EXPECT_GT(doc[key].get<double>(), 0.0) << key;
  for (const auto& [name, value] : doc["L_h"].items()) EXPECT_GT(value.get<double>(), 0.0) << name;
  const auto eps = doc["epsilon_k"].get<std::vector<double>>();
  ASSERT_EQ(eps.size(), 5u);
  for (std::size_t k = 1; k < eps.size(); ++k) EXPECT_DOUBLE_EQ(eps[k], eps[k - 1] / 2.0);

  ASSERT_EQ(invoke({"gen", "random-ineq", "--dim", "4", "--constraints", "3", "--seed", "4", "--out",
                    path("ineq.json")})
                .code,
            cli::kExitOk);
  Invocation ic = invoke({"bounds", path("ineq.json"), "--solver", "ic", "--depth", "2"});
  ASSERT_EQ(ic.code, cli::kExitOk) << ic.err;
  EXPECT_GT(json::parse(ic.out)["L_gamma_ybar"].get<double>(), 0.0);
}

TEST_F(Cli, GfExactOnPathGraph) {
  ASSERT_EQ(invoke({"gen", "maxcut", "--path", "2", "--form", "general", "--out", path("p2g.json")}).code,
            cli::kExitOk);
  Invocation r = invoke({"solve", path("p2g.json"), "--solver", "gf", "--exact", "--depth", "3", "--eta1", "1.0",
                         "--seed", "4", "--repeats", "1", "--out", path("runs")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const std::string name = load_instance(path("p2g.json")).metadata.name;
  json summary = json::parse(slurp(dir_ / "runs" / name / "gf" / "summary.json"));
  EXPECT_NEAR(summary["reference"]["value"].get<double>(), 1.0, 1e-5);
  EXPECT_LE(summary["groups"][0]["gap_mean"].back().get<double>(), 0.1);
}

TEST(MovingAverage, TrailingWindow) {
  const std::vector<double> v = {4.0, 2.0, 0.0, 2.0};
  const std::vector<double> expected = {4.0, 3.0, 2.0, 4.0 / 3.0};
  const auto got = cli::moving_average(v, 3);
  ASSERT_EQ(got.size(), expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_DOUBLE_EQ(got[i], expected[i]);
}

TEST(GapCurve, PadsShortRuns) {
  Trace a(2), b(1);
  a[0].objective = 1.0;
  a[1].objective = 3.0;
  b[0].objective = 2.0;
  cli::GapCurve c = cli::gap_curve({a, b}, 3.0);
  ASSERT_EQ(c.mean.size(), 2u);
  EXPECT_DOUBLE_EQ(c.mean[0], 1.5);
  EXPECT_DOUBLE_EQ(c.variance[0], 0.25);
  EXPECT_DOUBLE_EQ(c.mean[1], 0.5);
  EXPECT_DOUBLE_EQ(c.variance[1], 0.25);
}

}  // namespace
}  // namespace vqsdp
