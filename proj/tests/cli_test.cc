// Copyright 2026 The tpsforge Authors
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


#include "tpsforge/cli.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "tpsforge/error.h"
#include "tpsforge/operators.h"

namespace tpsforge::cli {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliFilesTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tpsforge_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& body) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }

  fs::path dir_;
};

const char kChiLambda[] = R"({
  "qubits": 2,
  "generators": {
    "chi": [{"pauli": "YZ"}, {"pauli": "ZZ"}],
    "lambda": [{"pauli": "xy"}, {"pauli": "XX"}]
  },
  "algebras": {"A_chi": "chi", "A_lambda": "lambda"},
  "subsystems": ["A_chi", "A_lambda"]
})";

TEST(Fnv1aTest, KnownVectors) {
  EXPECT_EQ(fnv1a64(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a64("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(fnv1a64("foobar"), "85944171f73967e8");
}

TEST(RoundNumbersTest, FifteenSignificantDigits) {
  Json j = {{"x", 0.1 + 0.2}, {"neg_zero", -0.0}, {"nan", std::nan("")},
            {"inf", std::numeric_limits<double>::infinity()}, {"n", 7}, {"s", "keep"},
            {"nested", {1.0 / 3.0}}};
  Json r = round_numbers(j);
  EXPECT_EQ(r["x"].get<double>(), 0.3);
  EXPECT_FALSE(std::signbit(r["neg_zero"].get<double>()));
  EXPECT_TRUE(r["nan"].is_null());
  EXPECT_TRUE(r["inf"].is_null());
  EXPECT_EQ(r["n"], 7);
  EXPECT_EQ(r["s"], "keep");
  EXPECT_EQ(r["nested"][0].get<double>(), 0.333333333333333);
}

TEST(ParseSpecTest, ResolvesAlgebrasInOrder) {
  ProblemSpec s = parse_spec(Json::parse(kChiLambda));
  EXPECT_EQ(s.dim, 4);
  EXPECT_EQ(s.algebra_order, (std::vector<std::string>{"A_chi", "A_lambda"}));
  EXPECT_EQ(s.algebra("A_chi").dim(), 4);
  EXPECT_EQ(s.family(s.subsystems).size(), 2u);
  EXPECT_THROW(s.algebra("nope"), InvalidArgument);
}

TEST(ParseSpecTest, RejectsMalformedDocuments) {
  const std::vector<std::string> bad = {
      R"({"qubits": 2, "bogus": 1})",
      R"({"qubits": 9})",
      R"({"dim": 0})",
      R"({})",
      R"({"qubits": 2, "generators": {"g": [{"pauli": "XYZ"}]}})",
      R"({"qubits": 2, "generators": {"g": [{"pauli": "XY"}]}, "algebras": {"a": "h"}})",
      R"({"qubits": 2, "subsystems": ["missing"]})",
      R"({"qubits": 2, "seed": -1})",
      R"({"qubits": 2, "tolerances": {"rank_rel": 1.0}})",
      R"({"qubits": 2, "generators": {"g": [{"frobnicate": 1}]}})",
  };
  for (const std::string& doc : bad) {
    EXPECT_THROW(parse_spec(Json::parse(doc)), InvalidArgument) << doc;
  }
}

TEST(ParseOperatorTest, Kinds) {
  const cplx i{0.0, 1.0};
  EXPECT_EQ(parse_operator(Json::parse(R"({"pauli": "ZX", "coefficient": [0, 2]})"), 4, 2),
            (2.0 * i) * pauli_matrix(PauliString::parse("ZX")));
  EXPECT_EQ(parse_operator(Json::parse(R"({"exchange": [1, 2]})"), 4, 2), exchange(2, 1, 2));
  EXPECT_EQ(parse_operator(Json::parse(R"({"perm": [[1, 2]]})"), 4, 2), swap_gate(2, 1, 2));
  EXPECT_EQ(parse_operator(Json::parse(R"({"collective": "z"})"), 4, 2),
            collective_spin(2, Axis::kZ));
  EXPECT_EQ(parse_operator(Json::parse(R"({"single": [2, "x"]})"), 4, 2),
            single_qubit(2, 2, Axis::kX));
  Mat d = parse_operator(Json::parse(R"({"dense": {"re": [[0, 0], [0, 0]], "im": [[0, -1], [1, 0]]}})"),
                         2, 0);
  EXPECT_EQ(d, pauli('Y'));
  EXPECT_THROW(parse_operator(Json::parse(R"({"dense": {"re": [[1, 0]]}})"), 2, 0),
               InvalidArgument);
  EXPECT_THROW(parse_operator(Json::parse(R"({"exchange": [1, 2]})"), 4, 0), InvalidArgument);
}

TEST(SeedTest, Precedence) {
  const Json with_seed = Json::parse(R"({"qubits": 1, "seed": 7})");
  const Json without = Json::parse(R"({"qubits": 1})");
  unsetenv("TPSFORGE_SEED");
  EXPECT_EQ(parse_spec(without).seed, kDefaultSeed);
  EXPECT_EQ(parse_spec(with_seed).seed, 7u);
  setenv("TPSFORGE_SEED", "0x10", 1);
  EXPECT_EQ(parse_spec(without).seed, 16u);
  EXPECT_EQ(parse_spec(with_seed).seed, 7u);
  EXPECT_EQ(parse_spec(with_seed, 99).seed, 99u);
  setenv("TPSFORGE_SEED", "banana", 1);
  EXPECT_THROW(parse_spec(without), InvalidArgument);
  unsetenv("TPSFORGE_SEED");
}

TEST(RunTest, UsageErrorsExitTwo) {
  EXPECT_EQ(invoke({}).code, kInputError);
  RunResult r = invoke({"frobnicate"});
  EXPECT_EQ(r.code, kInputError);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_EQ(invoke({"check"}).code, kInputError);  // --input is required
  EXPECT_EQ(invoke({"preset", "bell-chi-lambda", "--bogus"}).code, kInputError);
  EXPECT_EQ(invoke({"preset", "bell-chi-lambda", "--format", "xml"}).code, kInputError);
  EXPECT_EQ(invoke({"preset", "bell-chi-lambda", "--seed", "-3"}).code, kInputError);
  EXPECT_EQ(invoke({"preset", "no-such-preset"}).code, kInputError);
  EXPECT_EQ(invoke({"preset", "standard-chain", "--n", "40"}).code, kInputError);
  EXPECT_EQ(invoke({"check", "--input", "/nonexistent/missing.json"}).code, kInputError);
}

TEST(RunTest, HelpAndVersion) {
  RunResult h = invoke({"--help"});
  EXPECT_EQ(h.code, kOk);
  EXPECT_NE(h.out.find("preset"), std::string::npos);
  RunResult v = invoke({"--version"});
  EXPECT_EQ(v.code, kOk);
  EXPECT_EQ(v.out, std::string(kVersion) + "\n");
}

TEST(RunTest, ListPresets) {
  RunResult r = invoke({"list-presets"});
  ASSERT_EQ(r.code, kOk);
  Json doc = Json::parse(r.out);
  std::vector<std::string> names;
  for (const Json& p : doc["presets"]) names.push_back(p["name"]);
  EXPECT_EQ(names, (std::vector<std::string>{
                       "bell-chi-lambda", "collective-vs-permutation", "standard-chain",
                       "stabilizer", "nested-symmetric", "hybrid-tripartite", "morphing-3q",
                       "strobe-ex1"}));
}

TEST(RunTest, BellPresetReport) {
  RunResult r = invoke({"preset", "bell-chi-lambda"});
  ASSERT_EQ(r.code, kOk) << r.err;
  Json doc = Json::parse(r.out);
  // Serialization round-trips.
  EXPECT_EQ(doc.dump(2) + "\n", r.out);
  EXPECT_EQ(doc["seed"], kDefaultSeed);
  EXPECT_EQ(doc["tolerances"]["residual_abs"], 1e-8);
  EXPECT_TRUE(doc["sections"]["check"]["passed"].get<bool>());
  EXPECT_EQ(doc["sections"]["factorize"]["tps"]["factor_dims"], Json::parse("[2, 2]"));
}

TEST(RunTest, TextFormatEndsWithVerdict) {
  RunResult r = invoke({"preset", "stabilizer", "--format", "text"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out.substr(r.out.size() - 5), "PASS\n");
  EXPECT_NE(r.out.find("[chain] PASS"), std::string::npos);
}

TEST(RunTest, CollectiveVsPermutationSixQubitsTable) {
  RunResult r = invoke({"preset", "collective-vs-permutation", "--qubits", "6"});
  ASSERT_EQ(r.code, kOk) << r.err;
  Json w = Json::parse(r.out)["sections"]["wedderburn"];
  std::vector<std::pair<int, int>> nd;
  for (const Json& b : w["tables"][0]["blocks"]) nd.push_back({b["n"], b["d"]});
  EXPECT_EQ(nd, (std::vector<std::pair<int, int>>{{5, 1}, {9, 3}, {5, 5}, {1, 7}}));
}

TEST_F(CliFilesTest, CheckPassesAndFails) {
  const std::string good = write("good.json", kChiLambda);
  EXPECT_EQ(invoke({"check", "--input", good}).code, kOk);
  const std::string bad = write("bad.json", R"({
    "qubits": 2,
    "generators": {"chi": [{"pauli": "YZ"}, {"pauli": "ZZ"}]},
    "algebras": {"A": "chi", "B": "chi"},
    "subsystems": ["A", "B"]
  })");
  RunResult r = invoke({"check", "--input", bad});
  EXPECT_EQ(r.code, kCheckFailed);
  EXPECT_FALSE(Json::parse(r.out)["passed"].get<bool>());
  EXPECT_EQ(invoke({"factorize", "--input", bad}).code, kCheckFailed);
}

TEST_F(CliFilesTest, MalformedJsonExitsTwo) {
  const std::string p = write("broken.json", "{\"qubits\": 2,");
  RunResult r = invoke({"check", "--input", p});
  EXPECT_EQ(r.code, kInputError);
  EXPECT_NE(r.err.find("malformed"), std::string::npos);
}

TEST_F(CliFilesTest, DigestSeedAndOutputFile) {
  const std::string p = write("in.json", kChiLambda);
  const std::string out = (dir_ / "report.json").string();
  RunResult r = invoke({"check", "--input", p, "--seed", "0x2a", "--output", out});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(out);
  Json doc = Json::parse(f);
  EXPECT_EQ(doc["seed"], 42);
  EXPECT_EQ(doc["input_digest"], fnv1a64(kChiLambda));
  EXPECT_EQ(doc["command"], "check");
}

TEST_F(CliFilesTest, ToleranceOverrideIsEchoed) {
  const std::string p = write("in.json", kChiLambda);
  RunResult r = invoke({"check", "--input", p, "--tol-residual", "1e-6"});
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(Json::parse(r.out)["tolerances"]["residual_abs"], 1e-6);
  EXPECT_EQ(invoke({"check", "--input", p, "--tol-residual", "-1"}).code, kInputError);
}

TEST_F(CliFilesTest, SuperselectTrivialAndLocalCharge) {
  const std::string local = write("ss.json", R"({
    "qubits": 2,
    "generators": {
      "q1": [{"single": [1, "x"]}, {"single": [1, "z"]}],
      "q2": [{"single": [2, "x"]}, {"single": [2, "z"]}]
    },
    "algebras": {"Q1": "q1", "Q2": "q2"},
    "subsystems": ["Q1", "Q2"],
    "charges": [{"collective": "z"}]
  })");
  RunResult r = invoke({"superselect", "--input", local});
  EXPECT_EQ(r.code, kCheckFailed) << r.err;
  Json s = Json::parse(r.out)["sections"]["superselect"];
  EXPECT_EQ(s["outcome"], "AxiomFailure");
  const std::string missing = write("nocharge.json", kChiLambda);
  EXPECT_EQ(invoke({"superselect", "--input", missing}).code, kInputError);
}

TEST_F(CliFilesTest, ReportsAreByteIdentical) {
  const std::string p = write("in.json", kChiLambda);
  EXPECT_EQ(invoke({"factorize", "--input", p}).out, invoke({"factorize", "--input", p}).out);
}

}  // namespace
}  // namespace tpsforge::cli
