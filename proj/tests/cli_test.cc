// Copyright 2026 The fogvl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.h"

namespace fogvl::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

// Value of `key=` on the first line starting with `record`.
std::string field(const std::string& text, const std::string& record,
                  const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("record=" + record + " ", 0) != 0) continue;
    const auto at = line.find(" " + key + "=");
    if (at == std::string::npos) continue;
    const auto start = at + key.size() + 2;
    return line.substr(start, line.find(' ', start) - start);
  }
  return {};
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path;
}

TEST(Cli, HelpAndParseErrors) {
  EXPECT_EQ(call({"--help"}).code, kExitOk);
  EXPECT_EQ(call({"train", "--help"}).code, kExitOk);
  EXPECT_EQ(call({}).code, kExitConfig);
  EXPECT_EQ(call({"train", "--devices", "many"}).code, kExitConfig);
  EXPECT_EQ(call({"frobnicate"}).code, kExitConfig);
}

TEST(Cli, InvalidTopologyIsAConfigError) {
  const Result r = call({"train", "--devices", "5", "--fogs", "2"});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("multiple"), std::string::npos);
  EXPECT_EQ(call({"train", "--adversary", "bogus"}).code, kExitConfig);
}

TEST(Cli, NoiselessSyntheticRecoversTruth) {
  const Result r = call({"train", "--noise", "0", "--tol", "1e-7", "--seed", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(field(r.out, "summary", "status"), "converged");
  EXPECT_LT(std::stod(field(r.out, "truth", "max_abs_gap")), 1e-4);
  EXPECT_FALSE(field(r.out, "hash", "value").empty());
}

TEST(Cli, SameSeedSameHash) {
  const std::vector<std::string> args = {"train", "--iters", "20", "--seed", "8"};
  const Result a = call(args);
  const Result b = call(args);
  EXPECT_EQ(field(a.out, "hash", "value"), field(b.out, "hash", "value"));
}

TEST(Cli, ForgingCloudNeverAccepted) {
  const Result r = call({"train", "--adversary", "forge_y"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(field(r.out, "summary", "status"), "verification_failed");
}

TEST(Cli, NonConvergenceExitCode) {
  EXPECT_EQ(call({"train", "--iters", "2"}).code, kExitNoConvergence);
}

TEST(Cli, VerifyDemoTranscript) {
  const Result r = call({"verify-demo"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out,
            "honest: ACCEPT; forge_y: REJECT; forge_sigma: REJECT; "
            "forge_both: REJECT; targeted_delta: REJECT\n");
  EXPECT_EQ(call({"verify-demo", "--fogs", "1", "--devices", "3"}).out, r.out);
}

// The device-side ratio against the flat baseline is N / n.
TEST(Cli, BenchDeviceRatio) {
  const Result r = call({"bench", "--kind", "linear"});
  ASSERT_EQ(r.code, kExitOk) << r.out;
  std::istringstream in(r.out);
  std::string line;
  int ratios = 0;
  while (std::getline(in, line)) {
    if (line.rfind("record=overhead_ratio", 0) != 0) continue;
    ++ratios;
    const double total = std::stod(field(line, "overhead_ratio", "N"));
    const double per = std::stod(field(line, "overhead_ratio", "n"));
    EXPECT_EQ(std::stod(field(line, "overhead_ratio", "device_ratio")), total / per);
    if (total == 1000) {
      EXPECT_EQ(per, 100);
      EXPECT_NE(line.find(" device_ratio=10"), std::string::npos) << line;
    }
  }
  EXPECT_EQ(ratios, 7);
  EXPECT_NE(r.out.find("record=overhead kind=linear N=1000 n=100"), std::string::npos);
}

TEST(Cli, OracleCheckPassesAndFailsHonestly) {
  const Result ok = call({"oracle-check", "--devices", "8", "--tol", "1e-4"});
  EXPECT_EQ(ok.code, kExitOk) << ok.out;
  EXPECT_NE(ok.out.find("oracle-check: PASS"), std::string::npos);
  // Four fractional bits leave each device gradient off by up to 1/32 per
  // coordinate; over 32 samples that moves theta by about 4e-3 relative.
  const std::vector<std::string> small = {"oracle-check", "--devices", "8", "--tol",
                                          "1e-4", "--samples", "32", "--iters", "2000"};
  EXPECT_EQ(call(small).code, kExitOk);
  std::vector<std::string> coarse_args = small;
  coarse_args.insert(coarse_args.end(), {"--scale", "4"});
  const Result coarse = call(coarse_args);
  EXPECT_EQ(coarse.code, kExitFailure) << coarse.out;
  EXPECT_NE(coarse.out.find("record=diff"), std::string::npos);
}

TEST(Cli, ConfigFileFlagsWin) {
  const auto cfg = temp_file("fogvl_cli_test.ini", "iters=3\nseed=4\n");
  const Result from_file = call({"train", "--config", cfg.string()});
  EXPECT_EQ(field(from_file.out, "config", "max_iters"), "3");
  EXPECT_EQ(field(from_file.out, "config", "seed"), "4");
  const Result flag = call({"train", "--config", cfg.string(), "--iters", "5"});
  EXPECT_EQ(field(flag.out, "config", "max_iters"), "5");
  EXPECT_EQ(call({"train", "--config", "/nonexistent/x.ini"}).code, kExitConfig);
}

TEST(Cli, MissingDatasetIsADataError) {
  ::setenv("SPRITE_DATA_DIR", "/nonexistent/fogvl-data", 1);
  const Result r = call({"train", "--dataset", "ccpp"});
  ::unsetenv("SPRITE_DATA_DIR");
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("fetch_datasets"), std::string::npos);
}

TEST(Cli, ReportToFile) {
  const auto path = std::filesystem::temp_directory_path() / "fogvl_cli_report.txt";
  std::filesystem::remove(path);
  const Result r = call({"train", "--iters", "5", "--out", path.string()});
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first.rfind("record=config", 0), 0u);
}

}  // namespace
}  // namespace fogvl::cli
