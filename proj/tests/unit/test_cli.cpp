// SPDX-License-Identifier: Apache-2.0
//
// fmcwdb: OOK-FMCW distance-bounding simulator
// Copyright (C) 2026 The fmcwdb authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "fmcwdb/harness/config.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "fmcwdb");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = fmcwdb::cli::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("fmcwdb_cli_" + std::string(
        ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string config(const std::string& text) {
    const fs::path p = dir_ / "run.cfg";
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, MissingSlotPeriodIsAUsageError) {
  const CliResult r = run({"simulate", "--config", config("f_bw = 100e6\n")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("t_b"), std::string::npos) << r.err;
}

TEST_F(CliTest, UnknownSubcommandAndMissingConfig) {
  EXPECT_EQ(run({"teleport", "--config", config("t_b = 100e-9\n")}).code, 2);
  EXPECT_EQ(run({"simulate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"simulate", "--config", path("absent.cfg")}).code, 1);
}

TEST_F(CliTest, HelpExitsCleanly) {
  const CliResult r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("range-sweep"), std::string::npos);
}

TEST_F(CliTest, SimulateTwiceIsByteIdentical) {
  const std::string cfg = config("t_b = 100e-9\nsnr_db = 12\ndistances = 2, 6\ntrials = 3\n");
  const CliResult a = run({"simulate", "--config", cfg, "--seed", "4", "--out", path("a.csv")});
  const CliResult b = run({"simulate", "--config", cfg, "--seed", "4", "--out", path("b.csv"), "--jobs", "2"});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  EXPECT_NE(a.out.find("seed 4"), std::string::npos);
}

TEST_F(CliTest, CsvToStdoutSummaryToStderr) {
  const CliResult r = run({"range-sweep", "--config", config("t_b = 100e-9\ndistance_count = 3\nseed = 8\n")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("experiment,f_bw,t_b,snr_db,metric,value,trials,seed\n", 0), 0u);
  EXPECT_NE(r.out.find("range_precision,100000000,1e-07,inf,mean_error_m,"), std::string::npos);
  EXPECT_NE(r.err.find("range-sweep:"), std::string::npos);
  EXPECT_NE(r.err.find("seed 8"), std::string::npos);
}

TEST_F(CliTest, PlotDataWritesPointsFile) {
  const std::string cfg = config("t_b = 100e-9\ndistance_count = 4\nplot_data = 1\nout = " + path("r.csv") + "\n");
  ASSERT_EQ(run({"range-sweep", "--config", cfg}).code, 0);
  const std::string pts = slurp(path("r.csv.points.csv"));
  EXPECT_EQ(pts.rfind("experiment,f_bw,t_b,snr_db,trial,distance,estimate\n", 0), 0u);
  EXPECT_EQ(std::count(pts.begin(), pts.end(), '\n'), 5);

  const CliResult r = run({"range-sweep", "--config", config("t_b = 100e-9\nplot_data = 1\n")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("plot_data"), std::string::npos);
}

TEST_F(CliTest, DumpWaveformsWritesCaptures) {
  const CliResult r = run({"simulate", "--config", config("t_b = 100e-9\n"), "--out", path("s.csv"), "--dump-waveforms",
                     path("iq")});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"point0_interrogation.iq", "point0_prover_tx.iq", "point0_received.iq",
                        "point0_intermediate.iq"})
    EXPECT_TRUE(fs::exists(dir_ / "iq" / f)) << f;
}

TEST_F(CliTest, BadJobsRejected) {
  EXPECT_EQ(run({"simulate", "--config", config("t_b = 100e-9\n"), "--jobs", "0"}).code, 2);
}

TEST(ShippedConfigs, AllParse) {
  for (const auto& e : fs::directory_iterator(FMCWDB_CONFIG_DIR)) {
    if (e.path().extension() != ".cfg") continue;
    EXPECT_NO_THROW(fmcwdb::harness::load_config(e.path().string())) << e.path();
  }
}
