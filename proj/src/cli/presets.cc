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

// Built-in problem documents for the worked examples.

#include <sstream>
#include <string>
#include <vector>

#include "tpsforge/cli.h"
#include "tpsforge/error.h"
#include "tpsforge/linalg.h"
#include "tpsforge/operators.h"

namespace tpsforge::cli {

namespace {

Json pauli_op(const std::string& letters) { return {{"pauli", letters}}; }

Json single(int q, const char* axis) { return {{"single", {q, axis}}}; }

// X and Z on each listed qubit; they generate End of those qubits.
Json local_generators(int first, int last) {
  Json out = Json::array();
  for (int q = first; q <= last; ++q) {
    out.push_back(single(q, "x"));
    out.push_back(single(q, "z"));
  }
  return out;
}

Json adjacent_swaps(int first, int last) {
  Json out = Json::array();
  for (int q = first; q < last; ++q) out.push_back({{"swap", {q, q + 1}}});
  return out;
}

int qubit_param(const PresetParams& p, int fallback, int lo, int hi, const char* name) {
  const int n = p.qubits.value_or(fallback);
  if (n < lo || n > hi) {
    throw InvalidArgument(std::string(name) + ": qubit count must be in " + std::to_string(lo) +
                          ".." + std::to_string(hi));
  }
  return n;
}

PresetPlan bell_chi_lambda() {
  Json spec = {
      {"description", "Bell-basis bipartition induced by two-body interactions"},
      {"qubits", 2},
      {"generators",
       {{"chi", {pauli_op("YZ"), pauli_op("ZZ")}},
        {"lambda", {pauli_op("XY"), pauli_op("XX")}},
        {"qubit1", {pauli_op("XI"), pauli_op("ZI")}},
        {"qubit2", {pauli_op("IX"), pauli_op("IZ")}}}},
      {"algebras",
       {{"A_chi", "chi"}, {"A_lambda", "lambda"}, {"Q1", "qubit1"}, {"Q2", "qubit2"}}},
      {"subsystems", {"A_chi", "A_lambda"}},
      {"states",
       {{"phi_plus", {{"re", {1, 0, 0, 1}}}},
        {"phi_minus", {{"re", {1, 0, 0, -1}}}},
        {"psi_plus", {{"re", {0, 1, 1, 0}}}},
        {"psi_minus", {{"re", {0, 1, -1, 0}}}},
        {"ket00", {{"basis", 0}}},
        {"ket01", {{"basis", 1}}},
        {"ket10", {{"basis", 2}}},
        {"ket11", {{"basis", 3}}}}},
      {"gates", {{"swap", {{"swap", {1, 2}}}}}},
      {"candidates", {{"chi_lambda", {"A_chi", "A_lambda"}}, {"standard", {"Q1", "Q2"}}}}};
  return {spec, {"check", "factorize", "entangle"}};
}

PresetPlan collective_vs_permutation(const PresetParams& p) {
  const int n = qubit_param(p, 4, 2, 7, "collective-vs-permutation");
  Json exch = Json::array();
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) exch.push_back({{"exchange", {i, j}}});
  }
  Json spec = {
      {"description", "Collective-spin algebra against the permutation algebra"},
      {"qubits", n},
      {"generators",
       {{"collective", {{{"collective", "x"}}, {{"collective", "y"}}, {{"collective", "z"}}}},
        {"exchange", exch}}},
      {"algebras", {{"collective", "collective"}, {"permutations", "exchange"}}}};
  return {spec, {"wedderburn"}};
}

PresetPlan standard_chain(const PresetParams& p) {
  const int n = qubit_param(p, 3, 1, 6, "standard-chain");
  Json gens = Json::object();
  Json algs = Json::object();
  Json chain = Json::array();
  Json subs = Json::array();
  algs["B0"] = {{"builtin", "full"}};
  chain.push_back("B0");
  for (int i = 1; i < n; ++i) {
    const std::string g = "tail" + std::to_string(i);
    gens[g] = local_generators(i + 1, n);
    algs["B" + std::to_string(i)] = g;
    chain.push_back("B" + std::to_string(i));
  }
  algs["B" + std::to_string(n)] = {{"builtin", "scalars"}};
  chain.push_back("B" + std::to_string(n));
  for (int q = 1; q <= n; ++q) {
    const std::string g = "qubit" + std::to_string(q);
    gens[g] = local_generators(q, q);
    algs["Q" + std::to_string(q)] = g;
    subs.push_back("Q" + std::to_string(q));
  }
  Json spec = {{"description", "Standard qubit chain B_i = 1 (x) End of the trailing qubits"},
               {"qubits", n},
               {"generators", gens},
               {"algebras", algs},
               {"subsystems", subs},
               {"chain", chain}};
  return {spec, {"check", "factorize", "chain"}};
}

PresetPlan stabilizer(const PresetParams& p) {
  const std::string ops = p.ops.value_or("ZZI,IZZ");
  Json stab = Json::array();
  std::stringstream in(ops);
  std::string item;
  int n = 0;
  while (std::getline(in, item, ',')) {
    const PauliString ps = PauliString::parse(item);
    if (n == 0) n = ps.qubits();
    if (ps.qubits() != n) throw InvalidArgument("stabilizer: strings of different lengths");
    stab.push_back(pauli_op(item));
  }
  if (stab.empty()) throw InvalidArgument("stabilizer: --ops is empty");
  if (n > 6) throw InvalidArgument("stabilizer: at most 6 qubits");
  Json spec = {{"description", "Syndrome sectors of commuting Pauli strings"},
               {"qubits", n},
               {"stabilizers", stab}};
  return {spec, {"chain"}};
}

PresetPlan nested_symmetric(const PresetParams& p) {
  const int n = qubit_param(p, 6, 2, 8, "nested-symmetric");
  if (n % 2 != 0) throw InvalidArgument("nested-symmetric: qubit count must be even");
  Json block = adjacent_swaps(1, n / 2);
  for (const Json& s : adjacent_swaps(n / 2 + 1, n)) block.push_back(s);
  Json spec = {{"description", "Group algebra of S_N over that of the two half-blocks"},
               {"qubits", n},
               {"generators", {{"all_swaps", adjacent_swaps(1, n)}, {"block_swaps", block}}},
               {"algebras", {{"B0", "all_swaps"}, {"B1", "block_swaps"}}},
               {"chain", {"B0", "B1"}}};
  return {spec, {"chain"}};
}

PresetPlan hybrid_tripartite() {
  Json spec = {{"description", "Standard qubit, collective and permutation factors"},
               {"qubits", 4},
               {"generators",
                {{"last_three", local_generators(2, 4)}, {"s3", adjacent_swaps(2, 4)}}},
               {"algebras",
                {{"B0", {{"builtin", "full"}}}, {"B1", "last_three"}, {"B2", "s3"}}},
               {"chain", {"B0", "B1", "B2"}}};
  return {spec, {"chain"}};
}

PresetPlan morphing_3q() {
  Json terms = Json::array();
  const double ex[] = {1.0, 0.8, 0.6};
  const int pairs[][2] = {{1, 2}, {1, 3}, {2, 3}};
  for (int k = 0; k < 3; ++k) {
    terms.push_back({{"label", "exchange" + std::to_string(pairs[k][0]) + std::to_string(pairs[k][1])},
                     {"op", {{"exchange", {pairs[k][0], pairs[k][1]}}}},
                     {"algebra", "exchange"},
                     {"coupling", ex[k]}});
  }
  const char* axes[] = {"x", "y", "z"};
  const double col[] = {0.5, 0.4, 0.3};
  for (int k = 0; k < 3; ++k) {
    terms.push_back({{"label", std::string("S") + axes[k]},
                     {"op", {{"collective", axes[k]}}},
                     {"algebra", "collective"},
                     {"coupling", col[k]}});
  }
  for (int q = 1; q <= 3; ++q) {
    for (int k = 0; k < 3; ++k) {
      terms.push_back({{"label", std::string("sigma") + std::to_string(q) + axes[k]},
                       {"op", single(q, axes[k])},
                       {"algebra", "local"},
                       {"coupling", 0.2 + 0.05 * (3 * (q - 1) + k)}});
    }
  }
  Json exch = {{{"exchange", {1, 2}}}, {{"exchange", {1, 3}}}, {{"exchange", {2, 3}}}};
  Json spec = {
      {"description", "Tunable three-qubit Hamiltonian switching between two TPSs"},
      {"qubits", 3},
      {"generators",
       {{"collective", {{{"collective", "x"}}, {{"collective", "y"}}, {{"collective", "z"}}}},
        {"exchange", exch},
        {"qubit1", local_generators(1, 1)},
        {"qubit2", local_generators(2, 2)},
        {"qubit3", local_generators(3, 3)}}},
      {"algebras",
       {{"collective", "collective"},
        {"permutations", "exchange"},
        {"Q1", "qubit1"},
        {"Q2", "qubit2"},
        {"Q3", "qubit3"}}},
      {"hamiltonian", terms},
      {"candidates",
       {{"encoded", {"collective", "permutations"}}, {"standard", {"Q1", "Q2", "Q3"}}}},
      {"snapshots",
       {{{"name", "mu_zero"}, {"zero_tags", {"local"}}},
        {{"name", "lambda_zero"}, {"zero_tags", {"exchange", "collective"}}},
        {{"name", "all_on"}}}}};
  return {spec, {"morph"}};
}

PresetPlan strobe_ex1() {
  // One-body parts of each algebra plus the always-on two-body terms.
  const std::vector<std::pair<std::string, double>> raw = {
      {"XI", 0.6}, {"YZ", 0.5}, {"ZZ", 0.4}, {"IZ", 0.7}, {"XY", 0.3}, {"XX", 0.45}};
  Mat h(4, 4);
  for (const auto& [p, c] : raw) h.add_scaled(c, pauli_matrix(PauliString::parse(p)));
  // Unit spectral norm sets the time unit.
  const double scale = spectral_norm(h);
  Json terms = Json::array();
  for (const auto& [p, c] : raw) {
    const bool chi = p == "XI" || p == "YZ" || p == "ZZ";
    terms.push_back({{"label", p},
                     {"op", pauli_op(p)},
                     {"algebra", chi ? "A_chi" : "A_lambda"},
                     {"coupling", c / scale}});
  }
  Json spec = {
      {"description", "Refocused two-body terms under a symmetrized pulse cycle"},
      {"qubits", 2},
      {"generators",
       {{"chi", {pauli_op("YZ"), pauli_op("ZZ")}}, {"lambda", {pauli_op("XY"), pauli_op("XX")}}}},
      {"algebras", {{"A_chi", "chi"}, {"A_lambda", "lambda"}}},
      {"candidates", {{"chi_lambda", {"A_chi", "A_lambda"}}}},
      {"hamiltonian", terms},
      {"schedule",
       {{"pulses", {pauli_op("XI"), pauli_op("IZ")}},
        {"periods", {0.4, 0.2, 0.1, 0.05}},
        {"cycles", 4}}},
      {"refocus_checks",
       {{{"hamiltonian", {pauli_op("ZZ")}}, {"pulses", {pauli_op("XI")}}, {"period", 1.0}}}}};
  return {spec, {"strobe"}};
}

}  // namespace

std::vector<PresetInfo> presets() {
  return {
      {"bell-chi-lambda", "two-body algebras inducing the Bell-basis bipartition"},
      {"collective-vs-permutation", "Wedderburn tables of the collective and permutation "
                                    "algebras (--qubits, default 4)"},
      {"standard-chain", "standard qubit chain and its per-qubit subsystems (--n, default 3)"},
      {"stabilizer", "syndrome sectors of commuting Pauli strings (--ops, default ZZI,IZZ)"},
      {"nested-symmetric", "S_N over S_{N/2} x S_{N/2} chain (--qubits, default 6; N = 12 is "
                           "beyond desk scale)"},
      {"hybrid-tripartite", "qubit, collective and permutation factors on four qubits"},
      {"morphing-3q", "three-qubit Hamiltonian switching between encoded and standard TPS"},
      {"strobe-ex1", "refocusing cycle restoring the Bell-basis bipartition"},
  };
}

PresetPlan preset_plan(const std::string& name, const PresetParams& params) {
  if (name == "bell-chi-lambda") return bell_chi_lambda();
  if (name == "collective-vs-permutation") return collective_vs_permutation(params);
  if (name == "standard-chain") return standard_chain(params);
  if (name == "stabilizer") return stabilizer(params);
  if (name == "nested-symmetric") return nested_symmetric(params);
  if (name == "hybrid-tripartite") return hybrid_tripartite();
  if (name == "morphing-3q") return morphing_3q();
  if (name == "strobe-ex1") return strobe_ex1();
  throw InvalidArgument("unknown preset '" + name + "'");
}

}  // namespace tpsforge::cli
