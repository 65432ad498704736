// Copyright 2026 The trustcf Authors
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

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "trustcf/katz.hpp"
#include "trustcf/serialization.hpp"

namespace fs = std::filesystem;

namespace trustcf {
namespace {

struct CliResult {
  int status;
  std::string output;
};

// Runs the CLI with `args`, merging stderr into the captured output.
CliResult cli(const std::string& args) {
  const std::string cmd = std::string("\"") + TRUSTCF_CLI_PATH + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, "popen failed"};
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("trustcf_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string data(const char* name) const {
    return std::string(TRUSTCF_TOY_DATA_DIR) + "/" + name;
  }
  std::string toy_inputs() const {
    return "--trust " + data("toy_trust.txt") + " --ratings " + data("toy_ratings.txt");
  }

  fs::path dir_;
};

TEST_F(Cli, IngestPrintsSummaryAndWritesIdMaps) {
  const CliResult r = cli("ingest " + toy_inputs() + " --out " + dir_.string());
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_NE(r.output.find("users=5 items=6 ratings=13 edges=5"), std::string::npos) << r.output;
  EXPECT_EQ(slurp(dir_ / "users.idmap"), "0 0\n1 1\n2 2\n3 3\n4 4\n");
  EXPECT_TRUE(fs::exists(dir_ / "items.idmap"));
  EXPECT_TRUE(fs::exists(dir_ / "ingest_summary.txt.config"));
}

TEST_F(Cli, MissingFileFailsWithPath) {
  const CliResult r = cli("ingest --trust " + (dir_ / "nope.txt").string());
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.output.find("nope.txt"), std::string::npos) << r.output;
}

TEST_F(Cli, ParseErrorReportsLine) {
  std::ofstream(dir_ / "bad.txt") << "0 1\n1 x\n";
  const CliResult r = cli("ingest --trust " + (dir_ / "bad.txt").string());
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.output.find("bad.txt:2:"), std::string::npos) << r.output;
}

TEST_F(Cli, EmptyTrustFileGivesZeroEdges) {
  std::ofstream(dir_ / "empty.txt") << "";
  const CliResult r = cli("ingest --trust " + (dir_ / "empty.txt").string());
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_NE(r.output.find("edges=0"), std::string::npos) << r.output;
}

TEST_F(Cli, EigenOnToyCycle) {
  const CliResult r = cli("eigen --trust " + data("toy_trust.txt"));
  ASSERT_EQ(r.status, 0) << r.output;
  // The only cycle is 0 -> 1 -> 2 -> 0, so the spectral radius is 1.
  const auto at = r.output.find("lambda=");
  ASSERT_NE(at, std::string::npos) << r.output;
  EXPECT_NEAR(std::stod(r.output.substr(at + 7)), 1.0, 1e-5) << r.output;
  EXPECT_NE(r.output.find("converged=true"), std::string::npos) << r.output;
}

TEST_F(Cli, BoostWithKmaxOneRejected) {
  const CliResult r = cli("similarity --trust " + data("toy_trust.txt") +
                    " --kmax 1 --row-norm max --boost --out " + dir_.string());
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.output.find("k_max"), std::string::npos) << r.output;
  EXPECT_FALSE(fs::exists(dir_ / "similarity.txt"));
}

TEST_F(Cli, KmaxOneWithoutNormsIsIdentityPlusAlphaA) {
  const CliResult r = cli("similarity --trust " + data("toy_trust.txt") +
                    " --kmax 1 --alpha 0.25 --out " + dir_.string());
  ASSERT_EQ(r.status, 0) << r.output;
  std::ifstream in(dir_ / "similarity.txt");
  const SparseMatrix s = read_triplets(in);
  ASSERT_EQ(s.rows(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(s.at(i, i), 1.0);
  // as-paper: edge "j trusts i" lands at (i, j).
  for (auto [truster, trustee] : {std::pair{0, 1}, {1, 2}, {2, 0}, {1, 3}, {2, 4}}) {
    EXPECT_EQ(s.at(trustee, truster), 0.25);
  }
  EXPECT_EQ(s.nnz(), 10u);
  const std::string sidecar = slurp(dir_ / "similarity.txt.config");
  EXPECT_NE(sidecar.find("label=KS_NNNN"), std::string::npos);
  EXPECT_NE(sidecar.find("alpha=0.25"), std::string::npos);
}

TEST_F(Cli, BaselinesOnlyWritesThreeRowsPerK) {
  const CliResult r = cli("evaluate " + toy_inputs() + " --cold-threshold 2 --baselines-only --out " +
                    dir_.string());
  ASSERT_EQ(r.status, 0) << r.output;
  std::istringstream csv(slurp(dir_ / "metrics.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "config,k,ndcg,precision,recall,users,empty_lists");
  std::map<std::string, int> per_k;
  while (std::getline(csv, line)) {
    const auto a = line.find(',');
    const auto b = line.find(',', a + 1);
    ++per_k[line.substr(a + 1, b - a - 1)];
  }
  ASSERT_EQ(per_k.size(), 10u);
  for (const auto& [k, n] : per_k) EXPECT_EQ(n, 3) << "k=" << k;
  EXPECT_TRUE(fs::exists(dir_ / "curves.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "metrics.csv.config"));
}

TEST_F(Cli, SweepWritesEveryConfig) {
  const CliResult r = cli("sweep " + toy_inputs() + " --cold-threshold 2 --out " + dir_.string());
  ASSERT_EQ(r.status, 0) << r.output;
  std::istringstream csv(slurp(dir_ / "metrics.csv"));
  std::string line;
  std::getline(csv, line);
  std::set<std::string> labels;
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    labels.insert(line.substr(0, line.find(',')));
    ++rows;
  }
  EXPECT_EQ(labels.size(), 36u);
  EXPECT_EQ(rows, 360u);
  EXPECT_NE(r.output.find("KS_PCMB"), std::string::npos);
}

TEST_F(Cli, ConfigListSelectsMethods) {
  const CliResult r = cli("evaluate " + toy_inputs() +
                    " --cold-threshold 2 --configs KS_PCMB,MP --out " + dir_.string());
  ASSERT_EQ(r.status, 0) << r.output;
  const std::string csv = slurp(dir_ / "metrics.csv");
  EXPECT_NE(csv.find("KS_PCMB,10,0.75063292,0.20000000,1.00000000,2,0"), std::string::npos)
      << csv;
  EXPECT_NE(csv.find("MP,10,0.51312343,"), std::string::npos) << csv;
  EXPECT_EQ(csv.find("Trust_exp"), std::string::npos);
}

TEST_F(Cli, MutuallyExclusiveFlagsRejected) {
  const CliResult r = cli("evaluate " + toy_inputs() + " --sweep --baselines-only --out " +
                    dir_.string());
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.output.find("excludes"), std::string::npos) << r.output;
  EXPECT_NE(cli("evaluate " + toy_inputs() + " --configs MP --sweep --out " + dir_.string())
                .status,
            0);
}

TEST_F(Cli, ConfigFileWithFlagOverride) {
  std::ofstream(dir_ / "run.cfg") << "kmax=1\nalpha=0.5\nrow-norm=max\n";
  const CliResult r = cli("similarity --config " + (dir_ / "run.cfg").string() + " --trust " +
                    data("toy_trust.txt") + " --alpha 0.25 --out " + dir_.string());
  ASSERT_EQ(r.status, 0) << r.output;
  const std::string sidecar = slurp(dir_ / "similarity.txt.config");
  EXPECT_NE(sidecar.find("label=KS_NNMN"), std::string::npos) << sidecar;
  EXPECT_NE(sidecar.find("alpha=0.25"), std::string::npos) << sidecar;
}

TEST_F(Cli, RecommendWritesRawIdsWithProvenance) {
  const CliResult r = cli("recommend " + toy_inputs() +
                    " --cold-threshold 2 --kmax 2 --degree-norm combined --row-norm max --boost"
                    " --out " + dir_.string());
  ASSERT_EQ(r.status, 0) << r.output;
  const std::string recs = slurp(dir_ / "recommendations.txt");
  EXPECT_EQ(recs.substr(0, recs.find('\n')).substr(0, 6), "3 1 1 ");
  EXPECT_NE(slurp(dir_ / "recommendations.txt.config").find("method=KS_PCMB"), std::string::npos);
}

TEST_F(Cli, UnknownEnumValueRejected) {
  const CliResult r = cli("similarity --trust " + data("toy_trust.txt") + " --row-norm l3 --out " +
                    dir_.string());
  EXPECT_NE(r.status, 0);
}

}  // namespace
}  // namespace trustcf
