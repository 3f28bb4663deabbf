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

#ifndef TPSFORGE_CLI_H_
#define TPSFORGE_CLI_H_

// Command-line front end: problem files, analyses, presets and reports.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tpsforge/dynamics.h"
#include "tpsforge/mat.h"
#include "tpsforge/star_algebra.h"

namespace tpsforge::cli {

// Insertion-ordered documents keep reports in a stable, readable order.
using Json = nlohmann::ordered_json;

inline constexpr char kVersion[] = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInputError = 2,
  kDegenerate = 3,
};

// Parsed problem file. Operator entries and algebra definitions are resolved
// eagerly; errors surface as InvalidArgument with the offending key.
struct ProblemSpec {
  int dim = 0;
  int qubits = 0;  // 0 when the space was given by "dim"
  std::uint64_t seed = kDefaultSeed;
  Tolerances tol;
  std::map<std::string, std::vector<Mat>> generators;
  std::vector<std::string> algebra_order;
  std::map<std::string, StarAlgebra> algebras;
  // Generators each algebra was built from; the basis for derived algebras.
  std::map<std::string, std::vector<Mat>> algebra_generators;
  std::vector<std::string> subsystems;  // default family
  std::vector<std::string> chain;
  std::vector<Mat> stabilizers;
  std::optional<Mat> code_space;
  std::vector<Mat> charges;
  HamiltonianSpec hamiltonian;
  struct Snapshot {
    std::string name;
    std::vector<double> couplings;  // one per hamiltonian term
  };
  std::vector<Snapshot> snapshots;
  std::vector<Mat> pulses;
  std::vector<double> periods;
  int cycles = 1;
  std::vector<std::pair<std::string, Mat>> states;
  std::vector<std::pair<std::string, Mat>> gates;
  std::vector<std::pair<std::string, std::vector<std::string>>> candidates;
  // Extra hamiltonian/pulse pairs whose cycle must be the identity.
  struct RefocusCheck {
    Mat hamiltonian;
    std::vector<Mat> pulses;
    double period = 1.0;
  };
  std::vector<RefocusCheck> refocus_checks;

  const StarAlgebra& algebra(const std::string& name) const;
  std::vector<StarAlgebra> family(const std::vector<std::string>& names) const;
};

// Seed resolution: explicit override (the --seed flag), else the file's
// "seed", else TPSFORGE_SEED, else the library default.
ProblemSpec parse_spec(const Json& doc,
                       std::optional<std::uint64_t> seed_override = std::nullopt);

// Operator entry (one of pauli, perm, exchange, collective, swap, single,
// dense), optionally scaled by "coefficient".
Mat parse_operator(const Json& entry, int dim, int qubits);

struct PresetInfo {
  std::string name;
  std::string summary;
};
std::vector<PresetInfo> presets();

struct PresetParams {
  std::optional<int> qubits;  // --qubits / --n
  std::optional<std::string> ops;  // --ops
};
// Problem document for a preset plus the analyses it runs. Throws
// InvalidArgument for an unknown name.
struct PresetPlan {
  Json spec;
  std::vector<std::string> analyses;
};
PresetPlan preset_plan(const std::string& name, const PresetParams& params);

struct AnalysisResult {
  Json section;
  bool passed = true;
};
// Runs one analysis ("check", "factorize", "wedderburn", "chain",
// "superselect", "entangle", "morph", "strobe") on a parsed spec.
AnalysisResult run_analysis(const std::string& name, const ProblemSpec& spec);

// Rounds every floating-point number in the document to 15 significant
// digits.
Json round_numbers(const Json& doc);

// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a64(const std::string& bytes);

// Full command line (without the program name). Reports go to `out`,
// diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tpsforge::cli

#endif  // TPSFORGE_CLI_H_
