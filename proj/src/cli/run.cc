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

// Argument handling, report assembly and exit codes.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tpsforge/cli.h"
#include "tpsforge/error.h"
#include "tpsforge/star_algebra.h"

namespace tpsforge::cli {

namespace {

const std::vector<std::string> kAnalyses = {"check",       "factorize", "wedderburn",
                                            "chain",       "superselect", "entangle",
                                            "morph",       "strobe"};

struct Options {
  std::string input;
  std::string output;
  std::string seed;
  std::optional<double> tol_residual;
  std::string format = "json";
  std::string preset;
  std::optional<int> qubits;
  std::optional<std::string> ops;
};

std::uint64_t seed_from_flag(const std::string& s) {
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(s, &used, 0);
    if (used == s.size() && s.front() != '-') return v;
  } catch (const std::exception&) {
  }
  throw InvalidArgument("--seed: expected a non-negative integer");
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--output", o.output, "Write the report here instead of stdout");
  sub->add_option("--seed", o.seed, "Random seed (decimal or 0x hex)");
  sub->add_option("--tol-residual", o.tol_residual, "Override tolerances.residual_abs");
  sub->add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"json", "text"}));
}

void text_lines(const Json& j, const std::string& path, std::ostream& out) {
  const bool scalar_array =
      j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& e) {
        return e.is_primitive() || (e.is_array() && std::all_of(e.begin(), e.end(), [](const Json& x) {
                                      return x.is_primitive();
                                    }));
      });
  if (j.is_primitive() || scalar_array) {
    out << "  " << path << " = " << j.dump() << "\n";
    return;
  }
  if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k) {
      text_lines(j[k], path + "[" + std::to_string(k) + "]", out);
    }
    return;
  }
  for (const auto& [k, v] : j.items()) text_lines(v, path.empty() ? k : path + "." + k, out);
}

std::string render(const Json& doc, const std::string& format) {
  const Json r = round_numbers(doc);
  if (format == "json") return r.dump(2) + "\n";
  std::ostringstream out;
  out << r.value("tool", "tpsforge") << " " << r.value("version", "") << "  "
      << r.value("command", "") << "\n";
  for (const char* key : {"input_digest", "seed"}) {
    if (r.contains(key)) out << "  " << key << " = " << r.at(key).dump() << "\n";
  }
  if (r.contains("tolerances")) text_lines(r.at("tolerances"), "tolerances", out);
  if (r.contains("sections")) {
    for (const auto& [name, sec] : r.at("sections").items()) {
      out << "[" << name << "] " << (sec.value("passed", false) ? "PASS" : "FAIL") << "\n";
      text_lines(sec, "", out);
    }
  }
  if (r.contains("presets")) {
    for (const Json& p : r.at("presets")) {
      out << "  " << p.at("name").get<std::string>() << "  "
          << p.at("summary").get<std::string>() << "\n";
    }
  }
  if (r.contains("passed")) out << (r.at("passed").get<bool>() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

Json header(const std::string& command) {
  Json doc;
  doc["tool"] = "tpsforge";
  doc["version"] = kVersion;
  doc["command"] = command;
  return doc;
}

bool emit(const Json& doc, const Options& o, std::ostream& out, std::ostream& err) {
  const std::string text = render(doc, o.format);
  if (o.output.empty()) {
    out << text;
    return true;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f || !(f << text)) {
    err << "tpsforge: cannot write " << o.output << "\n";
    return false;
  }
  return true;
}

// Runs analyses on a document and writes the report. Returns the exit code.
int analyze(const std::string& command, const Json& input, const std::string& digest_source,
            const std::vector<std::string>& analyses, const Options& o, Json extra,
            std::ostream& out, std::ostream& err) {
  std::optional<std::uint64_t> seed;
  if (!o.seed.empty()) seed = seed_from_flag(o.seed);
  ProblemSpec spec = parse_spec(input, seed);
  if (o.tol_residual) {
    spec.tol.residual_abs = *o.tol_residual;
    spec.tol.validate();
  }
  Json doc = header(command);
  for (const auto& [k, v] : extra.items()) doc[k] = v;
  doc["input_digest"] = fnv1a64(digest_source);
  doc["seed"] = spec.seed;
  doc["tolerances"] = {{"rank_rel", spec.tol.rank_rel},
                       {"residual_abs", spec.tol.residual_abs},
                       {"eig_cluster_rel", spec.tol.eig_cluster_rel}};
  bool passed = true;
  Json sections = Json::object();
  for (const std::string& a : analyses) {
    AnalysisResult r = run_analysis(a, spec);
    passed = passed && r.passed;
    sections[a] = std::move(r.section);
  }
  doc["sections"] = sections;
  doc["passed"] = passed;
  if (!emit(doc, o, out, err)) return kInputError;
  return passed ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tensor product structures induced by operator algebras", "tpsforge"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Options o;
  std::string command;

  for (const std::string& name : kAnalyses) {
    CLI::App* sub = app.add_subcommand(name, "Run the " + name + " analysis on a problem file");
    sub->add_option("--input", o.input, "Problem file (JSON)")->required();
    add_common(sub, o);
  }
  CLI::App* preset = app.add_subcommand("preset", "Run a built-in example end to end");
  preset->add_option("name", o.preset, "Preset name")->required();
  preset->add_option("--qubits,--n", o.qubits, "Number of qubits for parameterized presets");
  preset->add_option("--ops", o.ops, "Comma-separated Pauli strings (stabilizer preset)");
  add_common(preset, o);
  CLI::App* list = app.add_subcommand("list-presets", "List the built-in examples");
  list->add_option("--output", o.output, "Write the listing here instead of stdout");
  list->add_option("--format", o.format, "Listing format")->check(CLI::IsMember({"json", "text"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "tpsforge: " << e.what() << "\n\n" << app.help();
    return kInputError;
  }
  for (CLI::App* s : app.get_subcommands()) command = s->get_name();

  try {
    if (command == "list-presets") {
      Json doc = header(command);
      Json items = Json::array();
      for (const PresetInfo& p : presets()) {
        items.push_back({{"name", p.name}, {"summary", p.summary}});
      }
      doc["presets"] = items;
      return emit(doc, o, out, err) ? kOk : kInputError;
    }
    if (command == "preset") {
      PresetParams params{o.qubits, o.ops};
      const PresetPlan plan = preset_plan(o.preset, params);
      Json extra;
      extra["preset"] = o.preset;
      Json pj = Json::object();
      if (o.qubits) pj["qubits"] = *o.qubits;
      if (o.ops) pj["ops"] = *o.ops;
      extra["parameters"] = pj;
      return analyze("preset " + o.preset, plan.spec, plan.spec.dump(), plan.analyses, o, extra,
                     out, err);
    }
    std::ifstream f(o.input, std::ios::binary);
    if (!f) {
      err << "tpsforge: cannot read " << o.input << "\n";
      return kInputError;
    }
    std::stringstream buf;
    buf << f.rdbuf();
    const std::string text = buf.str();
    const Json input = Json::parse(text);
    return analyze(command, input, text, {command}, o, Json::object(), out, err);
  } catch (const InvalidArgument& e) {
    err << "tpsforge: " << e.what() << "\n";
    return kInputError;
  } catch (const Json::exception& e) {
    err << "tpsforge: malformed input: " << e.what() << "\n";
    return kInputError;
  } catch (const AxiomError& e) {
    err << "tpsforge: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const DegenerateDraw& e) {
    err << "tpsforge: degenerate random draw: " << e.what() << "\n";
    return kDegenerate;
  } catch (const Error& e) {
    err << "tpsforge: numerical failure: " << e.what() << "\n";
    return kDegenerate;
  }
}

}  // namespace tpsforge::cli
