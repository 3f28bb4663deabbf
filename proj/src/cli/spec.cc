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

// Problem-file parsing.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "tpsforge/cli.h"
#include "tpsforge/error.h"
#include "tpsforge/linalg.h"
#include "tpsforge/operators.h"

namespace tpsforge::cli {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw InvalidArgument(where + ": " + what);
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) bad(where, "expected a number");
  return j.get<double>();
}

int integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<int>();
}

std::string text(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

std::uint64_t parse_seed(const Json& j) {
  if (j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0)) {
    return j.get<std::uint64_t>();
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    try {
      std::size_t used = 0;
      const std::uint64_t v = std::stoull(s, &used, 0);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  bad("seed", "expected a non-negative integer");
}

cplx coefficient(const Json& entry) {
  if (!entry.contains("coefficient")) return 1.0;
  const Json& c = entry.at("coefficient");
  if (c.is_number()) return c.get<double>();
  if (c.is_array() && c.size() == 2) {
    return {number(c[0], "coefficient"), number(c[1], "coefficient")};
  }
  bad("coefficient", "expected a number or [re, im]");
}

std::vector<std::vector<double>> real_rows(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of rows");
  std::vector<std::vector<double>> rows;
  for (const Json& r : j) {
    if (!r.is_array()) bad(where, "expected an array of rows");
    std::vector<double> row;
    for (const Json& x : r) row.push_back(number(x, where));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat dense_matrix(const Json& d, int dim) {
  if (!d.is_object() || !d.contains("re")) bad("dense", "needs \"re\" (and optional \"im\")");
  const auto re = real_rows(d.at("re"), "dense.re");
  const auto im = d.contains("im") ? real_rows(d.at("im"), "dense.im")
                                   : std::vector<std::vector<double>>{};
  const int n = static_cast<int>(re.size());
  if (n != dim) bad("dense", "expected " + std::to_string(dim) + " rows");
  if (!im.empty() && static_cast<int>(im.size()) != n) bad("dense", "re/im shape mismatch");
  Mat m(n, n);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(re[r].size()) != n) bad("dense", "matrix must be square");
    if (!im.empty() && static_cast<int>(im[r].size()) != n) bad("dense", "re/im shape mismatch");
    for (int c = 0; c < n; ++c) m(r, c) = {re[r][c], im.empty() ? 0.0 : im[r][c]};
  }
  return m;
}

std::pair<int, int> index_pair(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) bad(where, "expected [i, j]");
  return {integer(j[0], where), integer(j[1], where)};
}

int need_qubits(int qubits, const std::string& where) {
  if (qubits <= 0) bad(where, "requires \"qubits\"");
  return qubits;
}

Mat vector_from(const Json& j, int dim, const std::string& where) {
  std::vector<cplx> amp(static_cast<std::size_t>(dim));
  if (j.contains("basis")) {
    const int k = integer(j.at("basis"), where + ".basis");
    if (k < 0 || k >= dim) bad(where, "basis index out of range");
    amp[static_cast<std::size_t>(k)] = 1.0;
  } else if (j.contains("re")) {
    const Json& re = j.at("re");
    if (!re.is_array() || static_cast<int>(re.size()) != dim) {
      bad(where, "expected " + std::to_string(dim) + " amplitudes");
    }
    const bool has_im = j.contains("im");
    if (has_im && j.at("im").size() != re.size()) bad(where, "re/im length mismatch");
    for (int k = 0; k < dim; ++k) {
      amp[static_cast<std::size_t>(k)] = {
          number(re[k], where), has_im ? number(j.at("im")[k], where) : 0.0};
    }
  } else {
    bad(where, "needs \"basis\" or \"re\"");
  }
  double norm = 0.0;
  for (cplx a : amp) norm += std::norm(a);
  if (norm <= 0.0) bad(where, "zero vector");
  for (cplx& a : amp) a /= std::sqrt(norm);
  return Mat::column(amp);
}

std::vector<Mat> operator_list(const Json& j, int dim, int qubits, const std::string& where) {
  if (!j.is_array()) bad(where, "expected a list of operators");
  std::vector<Mat> out;
  for (const Json& e : j) out.push_back(parse_operator(e, dim, qubits));
  return out;
}

void apply_tolerances(const Json& t, Tolerances& tol) {
  if (!t.is_object()) bad("tolerances", "expected an object");
  for (const auto& [key, value] : t.items()) {
    if (key == "rank_rel") {
      tol.rank_rel = number(value, "tolerances.rank_rel");
    } else if (key == "residual_abs") {
      tol.residual_abs = number(value, "tolerances.residual_abs");
    } else if (key == "eig_cluster_rel") {
      tol.eig_cluster_rel = number(value, "tolerances.eig_cluster_rel");
    } else {
      bad("tolerances", "unknown key '" + key + "'");
    }
  }
}

}  // namespace

Mat parse_operator(const Json& e, int dim, int qubits) {
  if (!e.is_object()) bad("operator", "expected an object");
  Mat m;
  if (e.contains("pauli")) {
    const PauliString p = PauliString::parse(text(e.at("pauli"), "pauli"));
    if (qubits > 0 && p.qubits() != qubits) {
      bad("pauli", "'" + p.str() + "' has the wrong length");
    }
    m = pauli_matrix(p);
  } else if (e.contains("perm")) {
    const int n = need_qubits(qubits, "perm");
    std::vector<std::vector<int>> cycles;
    const Json& c = e.at("perm");
    if (!c.is_array()) bad("perm", "expected a list of cycles");
    for (const Json& cyc : c) {
      if (!cyc.is_array()) bad("perm", "expected a list of cycles");
      std::vector<int> cycle;
      for (const Json& x : cyc) cycle.push_back(integer(x, "perm"));
      cycles.push_back(std::move(cycle));
    }
    m = permutation_matrix(Permutation::from_cycles(n, cycles));
  } else if (e.contains("exchange")) {
    const auto [i, j] = index_pair(e.at("exchange"), "exchange");
    m = exchange(need_qubits(qubits, "exchange"), i, j);
  } else if (e.contains("swap")) {
    const auto [i, j] = index_pair(e.at("swap"), "swap");
    m = swap_gate(need_qubits(qubits, "swap"), i, j);
  } else if (e.contains("collective")) {
    m = collective_spin(need_qubits(qubits, "collective"),
                        parse_axis(text(e.at("collective"), "collective")));
  } else if (e.contains("single")) {
    const Json& s = e.at("single");
    if (!s.is_array() || s.size() != 2) bad("single", "expected [qubit, axis]");
    m = single_qubit(need_qubits(qubits, "single"), integer(s[0], "single"),
                     parse_axis(text(s[1], "single")));
  } else if (e.contains("dense")) {
    m = dense_matrix(e.at("dense"), dim);
  } else {
    bad("operator", "unknown kind in " + e.dump());
  }
  if (m.rows() != dim) {
    bad("operator", "dimension " + std::to_string(m.rows()) + " does not match " +
                        std::to_string(dim));
  }
  return coefficient(e) * m;
}

const StarAlgebra& ProblemSpec::algebra(const std::string& name) const {
  auto it = algebras.find(name);
  if (it == algebras.end()) throw InvalidArgument("unknown algebra '" + name + "'");
  return it->second;
}

std::vector<StarAlgebra> ProblemSpec::family(const std::vector<std::string>& names) const {
  std::vector<StarAlgebra> out;
  for (const std::string& n : names) out.push_back(algebra(n));
  return out;
}

ProblemSpec parse_spec(const Json& doc, std::optional<std::uint64_t> seed_override) {
  if (!doc.is_object()) bad("input", "expected an object at the top level");
  static const std::set<std::string> kKeys = {
      "qubits", "dim", "seed", "tolerances", "generators", "algebras",
      "subsystems", "chain", "stabilizers", "code_space", "charges",
      "hamiltonian", "snapshots", "schedule", "states", "gates", "candidates",
      "refocus_checks", "description"};
  for (const auto& [key, value] : doc.items()) {
    if (!kKeys.count(key)) bad("input", "unknown key '" + key + "'");
  }

  ProblemSpec s;
  if (doc.contains("qubits")) {
    s.qubits = integer(doc.at("qubits"), "qubits");
    if (s.qubits < 1 || s.qubits > 8) bad("qubits", "expected 1..8");
    s.dim = 1 << s.qubits;
    if (doc.contains("dim") && integer(doc.at("dim"), "dim") != s.dim) {
      bad("dim", "inconsistent with qubits");
    }
  } else if (doc.contains("dim")) {
    s.dim = integer(doc.at("dim"), "dim");
    if (s.dim < 1 || s.dim > 256) bad("dim", "expected 1..256");
  } else {
    bad("input", "needs \"qubits\" or \"dim\"");
  }

  if (seed_override) {
    s.seed = *seed_override;
  } else if (doc.contains("seed")) {
    s.seed = parse_seed(doc.at("seed"));
  } else if (const char* env = std::getenv("TPSFORGE_SEED"); env && *env) {
    s.seed = parse_seed(Json(std::string(env)));
  }
  if (doc.contains("tolerances")) apply_tolerances(doc.at("tolerances"), s.tol);
  s.tol.validate();

  if (doc.contains("generators")) {
    const Json& g = doc.at("generators");
    if (!g.is_object()) bad("generators", "expected an object of named lists");
    for (const auto& [name, list] : g.items()) {
      s.generators[name] = operator_list(list, s.dim, s.qubits, "generators." + name);
    }
  }

  if (doc.contains("algebras")) {
    const Json& a = doc.at("algebras");
    if (!a.is_object()) bad("algebras", "expected an object");
    for (const auto& [name, def] : a.items()) {
      const std::string where = "algebras." + name;
      if (s.algebras.count(name)) bad(where, "defined twice");
      std::vector<Mat> gens;
      StarAlgebra alg;
      auto genset = [&](const Json& ref) {
        const std::string g = text(ref, where);
        auto it = s.generators.find(g);
        if (it == s.generators.end()) bad(where, "unknown generator set '" + g + "'");
        gens.insert(gens.end(), it->second.begin(), it->second.end());
      };
      if (def.is_string()) {
        genset(def);
      } else if (def.is_array()) {
        for (const Json& r : def) genset(r);
      } else if (def.is_object() && def.contains("builtin")) {
        const std::string kind = text(def.at("builtin"), where);
        if (kind == "full") {
          alg = full_algebra(s.dim, name);
        } else if (kind == "scalars") {
          alg = scalar_algebra(s.dim, name);
        } else {
          bad(where, "unknown builtin '" + kind + "'");
        }
      } else if (def.is_object() && def.contains("commutant_of")) {
        const std::string of = text(def.at("commutant_of"), where);
        if (!s.algebras.count(of)) bad(where, "commutant_of must name an earlier algebra");
        alg = commutant(s.algebras.at(of), s.tol, s.seed);
        alg.name = name;
      } else if (def.is_object() && def.contains("generators")) {
        gens = operator_list(def.at("generators"), s.dim, s.qubits, where);
      } else {
        bad(where, "expected a generator-set name, a list, builtin, commutant_of or generators");
      }
      if (alg.basis.empty()) {
        if (gens.empty()) bad(where, "no generators");
        alg = closure(gens, s.tol, name);
        s.algebra_generators[name] = gens;
      } else {
        s.algebra_generators[name] = alg.basis;
      }
      s.algebra_order.push_back(name);
      s.algebras.emplace(name, std::move(alg));
    }
  }

  auto names = [&](const char* key) {
    std::vector<std::string> out;
    if (!doc.contains(key)) return out;
    const Json& j = doc.at(key);
    if (!j.is_array()) bad(key, "expected a list of algebra names");
    for (const Json& n : j) {
      const std::string name = text(n, key);
      if (!s.algebras.count(name)) bad(key, "unknown algebra '" + name + "'");
      out.push_back(name);
    }
    return out;
  };
  s.subsystems = names("subsystems");
  s.chain = names("chain");

  if (doc.contains("stabilizers")) {
    s.stabilizers = operator_list(doc.at("stabilizers"), s.dim, s.qubits, "stabilizers");
  }
  if (doc.contains("charges")) {
    s.charges = operator_list(doc.at("charges"), s.dim, s.qubits, "charges");
  }

  if (doc.contains("code_space")) {
    const Json& c = doc.at("code_space");
    if (c.is_object() && c.contains("projector")) {
      s.code_space = parse_operator(c.at("projector"), s.dim, s.qubits);
    } else if (c.is_object() && c.contains("eigenspace")) {
      const Json& e = c.at("eigenspace");
      if (!e.contains("of") || !e.contains("eigenvalue")) {
        bad("code_space.eigenspace", "needs \"of\" and \"eigenvalue\"");
      }
      const Mat op = parse_operator(e.at("of"), s.dim, s.qubits);
      if (hermiticity_defect(op) > s.tol.residual_abs * std::max(1.0, op.frobenius_norm())) {
        bad("code_space.eigenspace", "operator is not Hermitian");
      }
      const double target = number(e.at("eigenvalue"), "code_space.eigenspace.eigenvalue");
      const EigenSystem es = hermitian_eig(op, s.tol);
      const double scale = std::max(1.0, spectral_norm(op));
      Mat p(s.dim, s.dim);
      for (int k = 0; k < s.dim; ++k) {
        if (std::abs(es.values[static_cast<std::size_t>(k)] - target) <=
            s.tol.eig_cluster_rel * scale) {
          const Mat v = es.vectors.col_block(k, 1);
          p += outer(v, v);
        }
      }
      if (p.trace().real() < 0.5) bad("code_space.eigenspace", "eigenvalue not in spectrum");
      s.code_space = p;
    } else {
      bad("code_space", "expected {\"projector\": op} or {\"eigenspace\": {...}}");
    }
  }

  if (doc.contains("hamiltonian")) {
    const Json& h = doc.at("hamiltonian");
    if (!h.is_array()) bad("hamiltonian", "expected a list of terms");
    for (const Json& t : h) {
      if (!t.is_object() || !t.contains("op")) bad("hamiltonian", "each term needs \"op\"");
      HamiltonianTerm term;
      term.label = t.contains("label") ? text(t.at("label"), "hamiltonian.label")
                                       : "h" + std::to_string(s.hamiltonian.terms.size());
      term.op = parse_operator(t.at("op"), s.dim, s.qubits);
      term.algebra_tag = t.contains("algebra") ? text(t.at("algebra"), "hamiltonian.algebra")
                                               : "";
      term.coupling = t.contains("coupling") ? number(t.at("coupling"), "hamiltonian.coupling")
                                             : 1.0;
      s.hamiltonian.terms.push_back(std::move(term));
    }
    s.hamiltonian.validate(s.tol);
  }

  if (doc.contains("snapshots")) {
    const Json& sn = doc.at("snapshots");
    if (!sn.is_array()) bad("snapshots", "expected a list");
    for (const Json& e : sn) {
      ProblemSpec::Snapshot snap;
      snap.name = e.contains("name") ? text(e.at("name"), "snapshots.name")
                                     : "snapshot" + std::to_string(s.snapshots.size());
      for (const HamiltonianTerm& t : s.hamiltonian.terms) snap.couplings.push_back(t.coupling);
      if (e.contains("zero_tags")) {
        for (const Json& tag : e.at("zero_tags")) {
          const std::string tg = text(tag, "snapshots.zero_tags");
          bool hit = false;
          for (std::size_t k = 0; k < s.hamiltonian.terms.size(); ++k) {
            if (s.hamiltonian.terms[k].algebra_tag == tg) {
              snap.couplings[k] = 0.0;
              hit = true;
            }
          }
          if (!hit) bad("snapshots.zero_tags", "no term tagged '" + tg + "'");
        }
      }
      if (e.contains("set")) {
        for (const auto& [label, value] : e.at("set").items()) {
          bool hit = false;
          for (std::size_t k = 0; k < s.hamiltonian.terms.size(); ++k) {
            if (s.hamiltonian.terms[k].label == label) {
              snap.couplings[k] = number(value, "snapshots.set");
              hit = true;
            }
          }
          if (!hit) bad("snapshots.set", "no term labelled '" + label + "'");
        }
      }
      s.snapshots.push_back(std::move(snap));
    }
  }

  if (doc.contains("schedule")) {
    const Json& sc = doc.at("schedule");
    if (!sc.is_object()) bad("schedule", "expected an object");
    if (sc.contains("pulses")) s.pulses = operator_list(sc.at("pulses"), s.dim, s.qubits, "schedule.pulses");
    if (sc.contains("period")) s.periods.push_back(number(sc.at("period"), "schedule.period"));
    if (sc.contains("periods")) {
      for (const Json& t : sc.at("periods")) s.periods.push_back(number(t, "schedule.periods"));
    }
    for (double t : s.periods) {
      if (!(t > 0.0)) bad("schedule", "periods must be positive");
    }
    if (sc.contains("cycles")) s.cycles = integer(sc.at("cycles"), "schedule.cycles");
    if (s.cycles < 1) bad("schedule.cycles", "must be at least 1");
  }

  if (doc.contains("refocus_checks")) {
    for (const Json& r : doc.at("refocus_checks")) {
      ProblemSpec::RefocusCheck rc;
      Mat h(s.dim, s.dim);
      for (const Mat& t : operator_list(r.at("hamiltonian"), s.dim, s.qubits,
                                        "refocus_checks.hamiltonian")) {
        h += t;
      }
      rc.hamiltonian = h;
      rc.pulses = operator_list(r.at("pulses"), s.dim, s.qubits, "refocus_checks.pulses");
      rc.period = r.contains("period") ? number(r.at("period"), "refocus_checks.period") : 1.0;
      s.refocus_checks.push_back(std::move(rc));
    }
  }

  auto named_objects = [&](const char* key, auto&& make) {
    if (!doc.contains(key)) return;
    const Json& j = doc.at(key);
    if (!j.is_object()) bad(key, "expected an object of named entries");
    for (const auto& [name, value] : j.items()) make(name, value);
  };
  named_objects("states", [&](const std::string& name, const Json& v) {
    s.states.emplace_back(name, vector_from(v, s.dim, std::string("states.") + name));
  });
  named_objects("gates", [&](const std::string& name, const Json& v) {
    s.gates.emplace_back(name, parse_operator(v, s.dim, s.qubits));
  });
  named_objects("candidates", [&](const std::string& name, const Json& v) {
    if (!v.is_array()) bad("candidates." + name, "expected a list of algebra names");
    std::vector<std::string> fam;
    for (const Json& n : v) {
      const std::string a = text(n, "candidates." + name);
      if (!s.algebras.count(a)) bad("candidates." + name, "unknown algebra '" + a + "'");
      fam.push_back(a);
    }
    s.candidates.emplace_back(name, std::move(fam));
  });
  return s;
}

Json round_numbers(const Json& doc) {
  if (doc.is_number_float()) {
    const double v = doc.get<double>();
    if (!std::isfinite(v)) return nullptr;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    double r = std::strtod(buf, nullptr);
    if (r == 0.0) r = 0.0;  // drop negative zero
    return r;
  }
  if (doc.is_array()) {
    Json out = Json::array();
    for (const Json& e : doc) out.push_back(round_numbers(e));
    return out;
  }
  if (doc.is_object()) {
    Json out = Json::object();
    for (const auto& [k, v] : doc.items()) out[k] = round_numbers(v);
    return out;
  }
  return doc;
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace tpsforge::cli
