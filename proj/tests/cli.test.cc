// Copyright 2026 The astar-mle Authors
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

#include "cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"
#include "mle/dem.h"
#include "mle/generators.h"
#include "mle/shots_io.h"
#include "mle/simulator.h"

namespace mle::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mle_cli_test_" + std::string(::testing::UnitTest::GetInstance()
                                              ->current_test_info()
                                              ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  static std::string read(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

TEST_F(CliTest, GenRepWritesThreeErrorLines) {
  const Result r = run_cli({"gen", "--family", "rep", "--distance", "3", "--p", "0.1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "error(0.1) D0 L0\nerror(0.1) D0 D1\nerror(0.1) D1\n");
  EXPECT_EQ(instantiate(parse_dem(r.out)), gen_repetition_code(3, 0.1));
}

TEST_F(CliTest, GenRandomIsReproducible) {
  const Result a = run_cli({"gen", "--family", "random", "--seed", "7"});
  const Result b = run_cli({"gen", "--family", "random", "--seed", "7"});
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
}

TEST_F(CliTest, GenToFileReparses) {
  ASSERT_EQ(run_cli({"gen", "--family", "surface", "--distance", "5", "--p", "0.05", "--out",
                     path("s.dem")})
                .code,
            kExitOk);
  EXPECT_EQ(instantiate(parse_dem(read(path("s.dem")))), gen_surface_code_capacity(5, 0.05));
}

TEST_F(CliTest, GenInvalidParams) {
  const Result r = run_cli({"gen", "--family", "rep", "--distance", "4"});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("distance"), std::string::npos);
}

TEST_F(CliTest, DecodeEmptyShotAndLowConfidence) {
  const std::string dem = write("rep.dem", "error(0.1) D0 L0\nerror(0.1) D0 D1\nerror(0.1) D1\n");
  const std::string in = write("shots.dets", "\nD0\nD0 D1\n");
  Result r = run_cli({"decode", "--dem", dem, "--in", in});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "0\n1\n0\n");
  r = run_cli({"decode", "--dem", dem, "--in", in, "--pqlimit", "1"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "0\nLOW_CONFIDENCE\nLOW_CONFIDENCE\n");
}

TEST_F(CliTest, DetsAndB01Agree) {
  const ErrorModel m = canonicalize(gen_surface_code_capacity(5, 0.1));
  const std::string dem = write("s.dem", serialize_dem(to_program(m)));
  Rng rng(1);
  std::vector<Syndrome> shots;
  for (int i = 0; i < 100; ++i) shots.push_back(sample_shot(m, rng).syndrome);
  const std::string dets = write("a.dets", format_shots(shots, ShotFormat::kDets, 12));
  const std::string b01 = write("a.b01", format_shots(shots, ShotFormat::kB01, 12));
  const Result a = run_cli({"decode", "--dem", dem, "--in", dets});
  const Result b = run_cli({"decode", "--dem", dem, "--in", b01, "--in-format", "b01"});
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 100);
}

TEST_F(CliTest, DecodeStatsJson) {
  const std::string dem = write("rep.dem", "error(0.1) D0 L0\nerror(0.1) D0 D1\nerror(0.1) D1\n");
  const std::string in = write("shots.dets", "D0\nD1\n\n");
  const std::string obs = write("obs.01", "1\n1\n0\n");
  const Result r = run_cli({"decode", "--dem", dem, "--in", in, "--out", path("p.txt"),
                            "--stats", path("stats.json"), "--obs-in", obs});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(read(path("p.txt")), "1\n0\n0\n");
  const auto j = nlohmann::json::parse(read(path("stats.json")));
  EXPECT_EQ(j["shots"], 3);
  EXPECT_EQ(j["errors"], 1);
  EXPECT_EQ(j["low_confidence"], 0);
  for (const char* key : {"per_shot", "per_round", "ci90_per_shot", "ci90_per_round",
                          "nodes_expanded_total", "wall_time_us_total"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

TEST_F(CliTest, DecodeInputErrorsExitTwo) {
  const std::string dem = write("rep.dem", "error(0.1) D0 L0\nerror(0.1) D1\n");
  EXPECT_EQ(run_cli({"decode", "--dem", path("missing.dem"), "--in", dem}).code,
            kExitInputError);
  const std::string bad_dem = write("bad.dem", "error(2) D0\n");
  const std::string in = write("s.dets", "D0\n");
  Result r = run_cli({"decode", "--dem", bad_dem, "--in", in});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("line 1"), std::string::npos) << r.err;
  const std::string bad_shots = write("bad.dets", "D0\nD9\n");
  EXPECT_EQ(run_cli({"decode", "--dem", dem, "--in", bad_shots}).code, kExitInputError);
  EXPECT_EQ(run_cli({"decode", "--dem", dem, "--in", in, "--beam", "wide"}).code,
            kExitInputError);
  EXPECT_EQ(run_cli({"decode", "--in", in}).code, kExitInputError);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitInputError);
  EXPECT_EQ(run_cli({"decode", "--dem", dem, "--in", in, "--preset", "medium"}).code,
            kExitInputError);
}

TEST_F(CliTest, UnsatisfiableShotIsInputError) {
  const std::string dem = write("m.dem", "error(0.1) D0\ndetector D1\n");
  const std::string in = write("s.dets", "D1\n");
  const Result r = run_cli({"decode", "--dem", dem, "--in", in});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("unsatisfiable"), std::string::npos);
}

TEST_F(CliTest, PresetAndOverrides) {
  const ErrorModel m = canonicalize(gen_surface_code_capacity(3, 0.1));
  const std::string dem = write("s.dem", serialize_dem(to_program(m)));
  const std::string in = write("s.dets", "D0\nD1 D2\n\nD3\n");
  for (const char* preset : {"short-beam", "long-beam"}) {
    const Result r = run_cli({"decode", "--dem", dem, "--in", in, "--preset", preset});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
  }
  const Result r = run_cli(
      {"decode", "--dem", dem, "--in", in, "--preset", "short-beam", "--pqlimit", "1"});
  EXPECT_EQ(r.out, "LOW_CONFIDENCE\nLOW_CONFIDENCE\n0\nLOW_CONFIDENCE\n");
}

TEST_F(CliTest, SampleBruteForceRepetition) {
  const std::string dem = write("rep.dem", "error(0.1) D0 L0\nerror(0.1) D0 D1\nerror(0.1) D1\n");
  const Result r = run_cli({"sample", "--dem", dem, "--shots", "100000", "--oracle", "brute",
                            "--seed", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_LE(j["ci90_per_shot"][0].get<double>(), 0.028);
  EXPECT_GE(j["ci90_per_shot"][1].get<double>(), 0.028);
  EXPECT_EQ(j["per_round"], j["per_shot"]);
  EXPECT_TRUE(j["wall_time_us_total"].is_null());
  EXPECT_EQ(j.size(), 9);
}

TEST_F(CliTest, SampleIsDeterministic) {
  const std::string dem = write("rep.dem", serialize_dem(to_program(gen_repetition_code(5, 0.1))));
  const std::vector<std::string> args{"sample", "--dem", dem, "--shots", "2000", "--seed", "11",
                                      "--rounds", "3"};
  const Result a = run_cli(args), b = run_cli(args);
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  std::vector<std::string> threaded = args;
  threaded.insert(threaded.end(), {"--threads", "4"});
  EXPECT_EQ(run_cli(threaded).out, a.out);
}

TEST_F(CliTest, SampleCsvHeaderOnce) {
  const std::string dem = write("rep.dem", serialize_dem(to_program(gen_repetition_code(3, 0.1))));
  const std::string csv = path("out.csv");
  for (int i = 0; i < 2; ++i) {
    ASSERT_EQ(run_cli({"sample", "--dem", dem, "--shots", "100", "--csv", csv, "--model-name",
                       "rep3", "--oracle", "dijkstra"})
                  .code,
              kExitOk);
  }
  const std::string text = read(csv);
  EXPECT_EQ(text.find("model,p,decoder,shots,errors,per_shot,per_round,ci_lo,ci_hi,"
                      "mean_decode_us\n"),
            0);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
  EXPECT_NE(text.find("\nrep3,0.1,dijkstra,100,"), std::string::npos);
}

TEST_F(CliTest, Help) {
  const Result r = run_cli({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("decode"), std::string::npos);
}

TEST_F(CliTest, BinaryRuns) {
  const std::string cmd = std::string(ASTAR_MLE_BINARY) +
                          " gen --family rep --distance 3 --p 0.1 --out " + path("b.dem");
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(read(path("b.dem")), "error(0.1) D0 L0\nerror(0.1) D0 D1\nerror(0.1) D1\n");
}

}  // namespace
}  // namespace mle::cli
