// Copyright 2026 The lpac contributors
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
#include <set>
#include <sstream>

#include "cli.hpp"
#include "test_support.hpp"

namespace lpac::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result RunCli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Case5() { return lpac::testing::FixturePath("case5_tx.m"); }

std::string ReadFile(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Cli, HelpExitsZero) {
  const Result r = RunCli({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("capplace"), std::string::npos);
}

TEST(Cli, UnknownFlagIsUsageError) {
  const Result r = RunCli({"acpf", "--case", Case5(), "--bogus"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
}

TEST(Cli, MissingSubcommandIsUsageError) {
  EXPECT_EQ(RunCli({}).code, kExitUsage);
}

TEST(Cli, MissingCaseFileIsUsageError) {
  const Result r = RunCli({"acpf", "--case", "/nonexistent/nothing.m"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST(Cli, AcpfWritesBusTableAndHeader) {
  const Result r = RunCli({"acpf", "--case", Case5()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "bus,vm_pu,va_rad,p_mw,q_mvar");
  for (const char* key : {"# lpac ", "# command: acpf", "# case: ", "# cs: 20",
                          "# ac_tolerance: 1e-08", "# lp_feasibility_tolerance"}) {
    EXPECT_NE(r.err.find(key), std::string::npos) << key;
  }
}

TEST(Cli, AcpfNotConvergedExitsOne) {
  const Result r = RunCli({"acpf", "--case", Case5(), "--ac-max-iter", "1"});
  EXPECT_EQ(r.code, kExitFailed);
}

TEST(Cli, CompareOneReportPerModel) {
  const Result r =
      RunCli({"compare", "--case", Case5(), "--models", "ldc,cold,warm"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::set<std::string> models;
  std::stringstream ss(r.out);
  std::string line;
  std::getline(ss, line);
  while (std::getline(ss, line)) {
    const auto a = line.find(',');
    models.insert(line.substr(a + 1, line.find(',', a + 1) - a - 1));
  }
  EXPECT_EQ(models, (std::set<std::string>{"ldc", "cold", "warm"}));
  EXPECT_NE(r.err.find("# models: ldc,cold,warm"), std::string::npos);
}

TEST(Cli, CompareRejectsUnknownModel) {
  EXPECT_EQ(RunCli({"compare", "--case", Case5(), "--models", "cold,xyz"}).code,
            kExitUsage);
}

TEST(Cli, CompareCumulativeJson) {
  const Result r = RunCli({"compare", "--case", Case5(), "--cumulative",
                           "--models", "cold,cold-gc", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("\"model\": \"cold-GC\""), std::string::npos);
}

TEST(Cli, InfeasibleLpacExitsOne) {
  const Result r = RunCli({"lpac", "--case", Case5(), "--vmin", "1.2",
                           "--vmax", "1.3"});
  EXPECT_EQ(r.code, kExitFailed);
}

TEST(Cli, VariantOnWarmIsUsageError) {
  EXPECT_EQ(RunCli({"lpac", "--case", Case5(), "--kind", "warm", "--variant",
                    "C"})
                .code,
            kExitUsage);
}

TEST(Cli, RestoreIsByteStable) {
  const std::vector<std::string> args = {"restore", "--case", Case5(),
                                         "--classes", "1..2", "--samples", "5",
                                         "--seed", "11"};
  const Result a = RunCli(args);
  std::vector<std::string> threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  const Result b = RunCli(threaded);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("N-2,"), std::string::npos);
  EXPECT_NE(a.err.find("# seed: 11"), std::string::npos);
}

TEST(Cli, RestoreWritesTwoFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "lpac_cli_test";
  std::filesystem::create_directories(dir);
  const auto conv = dir / "conv.csv";
  const Result r = RunCli({"restore", "--case", Case5(), "--classes", "1",
                           "--samples", "3", "-o", conv.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(ReadFile(conv).substr(0, 6), "class,");
  EXPECT_EQ(ReadFile(dir / "conv_shed.csv").substr(0, 6), "class,");
  std::filesystem::remove_all(dir);
}

TEST(Cli, RestoreRejectsTooManyOutages) {
  EXPECT_EQ(RunCli({"restore", "--case", Case5(), "--classes", "3..9"}).code,
            kExitUsage);
}

TEST(Cli, UnwritableOutputIsUsageError) {
  EXPECT_EQ(RunCli({"acpf", "--case", Case5(), "-o",
                    "/nonexistent/dir/out.csv"})
                .code,
            kExitUsage);
}

TEST(Cli, CapplaceOnFixture) {
  const Result r = RunCli({"capplace", "--case", Case5(), "--vmin", "0.9,0.95"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "v_min,min_v,max_v,max_q,count,status,ac\n"
            "0.9,0,0,0,0,optimal,converged\n"
            "0.95,0,0,0,0,optimal,converged\n");
}

TEST(Cli, ExportLp) {
  const Result r = RunCli({"export-lp", "--case", Case5(), "--kind", "ldc"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("Subject To"), std::string::npos);
  const Result m = RunCli({"export-lp", "--case", Case5(), "--problem",
                           "capplace", "--cap-vmin", "0.95"});
  ASSERT_EQ(m.code, kExitOk);
  EXPECT_NE(m.out.find("Binar"), std::string::npos);
}

TEST(Cli, ResolveCasePathAliases) {
  EXPECT_EQ(ResolveCasePath("ieee30", "/d"), "/d/case_ieee30.m");
  EXPECT_EQ(ResolveCasePath("mp24", "/d"), "/d/case24_ieee_rts.m");
  EXPECT_EQ(ResolveCasePath("case9", "/d"), "/d/case9.m");
  EXPECT_EQ(ResolveCasePath(Case5(), "/d"), Case5());
}

}  // namespace
}  // namespace lpac::cli
