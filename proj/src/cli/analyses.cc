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

// The analyses behind each subcommand. Each one turns a parsed problem into a
// report section plus a pass/fail verdict.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tpsforge/cli.h"
#include "tpsforge/entanglement.h"
#include "tpsforge/error.h"
#include "tpsforge/linalg.h"
#include "tpsforge/operators.h"
#include "tpsforge/tps.h"

namespace tpsforge::cli {

namespace {

// Locality bound for pullbacks, relative to the operator norm.
constexpr double kLocalityBound = 1e-7;
// Entropies at or below this count as zero.
constexpr double kProductEntropy = 1e-9;
constexpr double kRatioBound = 0.35;
constexpr double kRatioRegime = 0.1;

Json axiom_json(const AxiomReport& r) {
  Json j;
  j["names"] = r.names;
  j["code_dim"] = r.code_dim;
  j["commute_method"] = r.commute_method;
  j["commute"] = r.commute;
  j["commute_residual"] = r.commute_residual;
  j["worst_commute_residual"] = r.worst_commute_residual;
  j["restricted_dims"] = r.restricted_dims;
  j["center_dims"] = r.center_dims;
  j["each_is_factor"] = r.each_is_factor;
  j["factor_dims"] = r.factor_dims;
  j["join_dim"] = r.join_dim;
  j["expected_dim"] = r.expected_dim;
  j["independence"] = r.pairwise_commute();
  j["factors"] = r.all_factors();
  j["completeness"] = r.completeness;
  j["passed"] = r.passed();
  return j;
}

const std::vector<Mat>& generators_of(const ProblemSpec& s, const std::string& name) {
  auto it = s.algebra_generators.find(name);
  if (it == s.algebra_generators.end()) throw InvalidArgument("unknown algebra '" + name + "'");
  return it->second;
}

// Worst ||pullback residual|| / ||G|| over the operators, on one slot.
double worst_locality(const TPSFactorization& tps, int slot, std::span<const Mat> ops) {
  double worst = 0.0;
  for (const Mat& g : ops) {
    const double n = spectral_norm(g);
    if (n == 0.0) continue;
    worst = std::max(worst, pullback_locality_residual(tps, slot, g) / n);
  }
  return worst;
}

Json tps_json(const TPSFactorization& tps) {
  Json j;
  j["factor_dims"] = tps.factor_dims;
  j["provenance"] = tps.factor_provenance;
  j["code_dim"] = tps.code_dim();
  j["isometry_defect"] = isometry_defect(tps.code_isometry);
  return j;
}

// Factorization section with per-algebra locality residuals.
Json locality_json(const ProblemSpec& s, const std::vector<std::string>& names,
                   const TPSFactorization& tps, double& worst) {
  Json arr = Json::array();
  worst = 0.0;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const double r = worst_locality(tps, static_cast<int>(i), generators_of(s, names[i]));
    worst = std::max(worst, r);
    arr.push_back({{"algebra", names[i]},
                   {"slot", i},
                   {"generators", generators_of(s, names[i]).size()},
                   {"max_relative_residual", r}});
  }
  return arr;
}

std::vector<std::string> require_family(const ProblemSpec& s, const char* who) {
  if (s.subsystems.empty()) throw InvalidArgument(std::string(who) + ": needs \"subsystems\"");
  return s.subsystems;
}

AnalysisResult run_check(const ProblemSpec& s) {
  const auto names = require_family(s, "check");
  const AxiomReport r = check_axioms(s.family(names), s.code_space, s.tol, s.seed);
  AnalysisResult out;
  out.section["algebras"] = names;
  out.section["code_space"] = s.code_space.has_value();
  out.section["axioms"] = axiom_json(r);
  out.passed = r.passed();
  return out;
}

AnalysisResult run_factorize(const ProblemSpec& s) {
  const auto names = require_family(s, "factorize");
  AnalysisResult out;
  out.section["algebras"] = names;
  try {
    const TPSFactorization tps = induced_tps(s.family(names), s.code_space, s.seed, s.tol);
    double worst = 0.0;
    Json j = tps_json(tps);
    j["locality"] = locality_json(s, names, tps, worst);
    j["max_relative_residual"] = worst;
    j["locality_bound"] = kLocalityBound;
    out.section["tps"] = j;
    out.passed = worst <= kLocalityBound;
  } catch (const AxiomError& e) {
    out.section["error"] = e.what();
    out.section["axioms"] = axiom_json(e.report());
    out.passed = false;
  }
  return out;
}

bool blocks_transposed(const IrrepDecomposition& a, const IrrepDecomposition& b) {
  std::vector<std::pair<int, int>> x, y;
  for (const IrrepBlock& k : a.blocks) x.emplace_back(k.n, k.d);
  for (const IrrepBlock& k : b.blocks) y.emplace_back(k.d, k.n);
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

AnalysisResult run_wedderburn(const ProblemSpec& s) {
  if (s.algebra_order.empty()) throw InvalidArgument("wedderburn: no algebras defined");
  AnalysisResult out;
  Json tables = Json::array();
  std::vector<IrrepDecomposition> decs;
  std::vector<StarAlgebra> comms;
  for (const std::string& name : s.algebra_order) {
    const StarAlgebra& a = s.algebra(name);
    const IrrepDecomposition w = wedderburn(a, s.seed, s.tol);
    const StarAlgebra c = commutant(a, s.tol, s.seed);
    const StarAlgebra cc = commutant(c, s.tol, s.seed);
    Json blocks = Json::array();
    int sum_nd = 0;
    for (const IrrepBlock& b : w.blocks) {
      blocks.push_back({{"label", b.label}, {"n", b.n}, {"d", b.d}});
      sum_nd += b.n * b.d;
    }
    const double residual = wedderburn_residual(a, w);
    const bool dim_law = a.dim() == w.algebra_dim();
    const bool comm_law = c.dim() == w.commutant_dim();
    const bool support_law = sum_nd == w.support_dim;
    const bool bicommutant = same_span(cc, a, s.tol);
    tables.push_back({{"algebra", name},
                      {"dim", a.dim()},
                      {"support_dim", w.support_dim},
                      {"blocks", blocks},
                      {"sum_d2", w.algebra_dim()},
                      {"sum_n2", w.commutant_dim()},
                      {"sum_nd", sum_nd},
                      {"commutant_dim", c.dim()},
                      {"dimension_law", dim_law},
                      {"commutant_law", comm_law},
                      {"support_law", support_law},
                      {"double_commutant", bicommutant},
                      {"double_commutant_residual", inclusion_residual(a, cc)},
                      {"residual", residual}});
    out.passed = out.passed && dim_law && comm_law && support_law && bicommutant &&
                 residual <= kLocalityBound;
    decs.push_back(w);
    comms.push_back(c);
  }
  Json dual = Json::array();
  for (std::size_t i = 0; i < decs.size(); ++i) {
    for (std::size_t j = 0; j < decs.size(); ++j) {
      if (i == j || !same_span(comms[i], s.algebra(s.algebra_order[j]), s.tol)) continue;
      const bool t = blocks_transposed(decs[i], decs[j]);
      dual.push_back({{"algebra", s.algebra_order[i]},
                      {"commutant", s.algebra_order[j]},
                      {"transposed", t}});
      out.passed = out.passed && t;
    }
  }
  out.section["tables"] = tables;
  out.section["dual_pairs"] = dual;
  return out;
}

AnalysisResult run_chain(const ProblemSpec& s) {
  std::vector<StarAlgebra> chain;
  const bool stabilizers = s.chain.empty();
  if (!stabilizers) {
    chain = s.family(s.chain);
  } else if (!s.stabilizers.empty()) {
    chain = stabilizer_chain(s.stabilizers, s.tol, s.seed);
  } else {
    throw InvalidArgument("chain: needs \"chain\" or \"stabilizers\"");
  }
  const ChainDecomposition dec = chain_decompose(chain, s.seed, s.tol);
  const std::vector<std::string> trip = chain_round_trip(chain, dec, s.tol, s.seed);
  const std::vector<StarAlgebra> subs = chain_subsystems(chain, s.tol, s.seed);

  std::vector<Mat> level0;
  if (dec.includes_level0) level0 = commutant(chain.front(), s.tol, s.seed).basis;

  AnalysisResult out;
  out.section["source"] = stabilizers ? "stabilizers" : "chain";
  if (!stabilizers) out.section["chain"] = s.chain;
  out.section["levels"] = chain.size();
  Json sub_dims = Json::array();
  for (const StarAlgebra& a : subs) sub_dims.push_back(a.dim());
  out.section["subsystem_dims"] = sub_dims;
  out.section["includes_level0"] = dec.includes_level0;
  out.section["isometry_convention"] = dec.isometry_convention;

  Json sectors = Json::array();
  int total = 0;
  double worst_all = 0.0;
  for (const ChainSector& sec : dec.sectors) {
    const TPSFactorization& f = sec.factorization;
    const int off = dec.includes_level0 ? 1 : 0;
    double worst = 0.0;
    if (dec.includes_level0) worst = std::max(worst, worst_locality(f, 0, level0));
    for (std::size_t k = 0; k < subs.size(); ++k) {
      worst = std::max(worst, worst_locality(f, off + static_cast<int>(k), subs[k].basis));
    }
    worst = std::max(worst, worst_locality(f, f.factors() - 1, chain.back().basis));
    worst_all = std::max(worst_all, worst);
    total += sec.dim();
    sectors.push_back({{"labels", sec.labels},
                       {"multiplicities", sec.multiplicities},
                       {"terminal_dim", sec.terminal_dim},
                       {"factor_dims", f.factor_dims},
                       {"provenance", f.factor_provenance},
                       {"dim", sec.dim()},
                       {"nontrivial", sec.nontrivial},
                       {"isometry_defect", isometry_defect(f.code_isometry)},
                       {"max_relative_residual", worst}});
  }
  out.section["sectors"] = sectors;
  out.section["sector_dim_sum"] = total;
  out.section["space_dim"] = dec.space_dim;
  out.section["round_trip_errors"] = trip;
  out.section["max_relative_residual"] = worst_all;
  out.passed = trip.empty() && total == dec.space_dim && worst_all <= kLocalityBound;

  if (stabilizers) {
    const TPSFactorization syn = stabilizer_syndrome_tps(s.stabilizers, dec, s.tol);
    const Mat z = pauli('Z');
    Json res = Json::array();
    double worst = 0.0;
    for (std::size_t i = 0; i < s.stabilizers.size(); ++i) {
      const Mat expect = reconstruct_local(syn.factor_dims, static_cast<int>(i), z);
      const double r = distance(syn.pullback(s.stabilizers[i]), expect);
      worst = std::max(worst, r);
      res.push_back(r);
    }
    Json j = tps_json(syn);
    j["pullback_residuals"] = res;
    out.section["syndrome"] = j;
    out.passed = out.passed && worst <= kLocalityBound;
  }
  return out;
}

bool abelian(const StarAlgebra& a, const Tolerances& tol) {
  for (std::size_t i = 0; i < a.basis.size(); ++i) {
    for (std::size_t j = i + 1; j < a.basis.size(); ++j) {
      if (commutator(a.basis[i], a.basis[j]).frobenius_norm() > tol.residual_abs) return false;
    }
  }
  return true;
}

AnalysisResult run_superselect(const ProblemSpec& s) {
  const auto names = require_family(s, "superselect");
  if (s.charges.empty()) throw InvalidArgument("superselect: needs \"charges\"");
  const StarAlgebra q = closure(s.charges, s.tol, "Q");
  const SuperselectionReport r = superselect(s.family(names), q, s.tol, s.seed);
  AnalysisResult out;
  out.section["algebras"] = names;
  out.section["charge_algebra_dim"] = q.dim();
  Json proj = Json::array();
  for (const StarAlgebra& a : r.projected_algebras) {
    proj.push_back({{"name", a.name}, {"dim", a.dim()}, {"abelian", abelian(a, s.tol)}});
  }
  out.section["projected"] = proj;
  out.section["sector_rule"] = r.sector_rule;
  out.section["sector_ranks"] = r.sector_ranks;
  out.section["chosen_sector"] = r.chosen_sector;
  const bool fresh = r.outcome == SuperselectionReport::Outcome::kNewTPS;
  out.section["outcome"] = fresh ? "NewTPS" : "AxiomFailure";
  out.section["axioms"] = axiom_json(r.report);
  if (fresh && r.factorization) out.section["tps"] = tps_json(*r.factorization);
  out.passed = fresh;
  return out;
}

std::vector<std::pair<std::string, std::vector<std::string>>> families(const ProblemSpec& s,
                                                                      const char* who) {
  if (!s.candidates.empty()) return s.candidates;
  if (!s.subsystems.empty()) return {{"subsystems", s.subsystems}};
  throw InvalidArgument(std::string(who) + ": needs \"candidates\" or \"subsystems\"");
}

AnalysisResult run_entangle(const ProblemSpec& s) {
  if (s.states.empty() && s.gates.empty()) {
    throw InvalidArgument("entangle: needs \"states\" or \"gates\"");
  }
  AnalysisResult out;
  Json fams = Json::array();
  for (const auto& [fname, names] : families(s, "entangle")) {
    Json f;
    f["family"] = fname;
    f["algebras"] = names;
    TPSFactorization tps;
    try {
      tps = induced_tps(s.family(names), s.code_space, s.seed, s.tol);
    } catch (const AxiomError& e) {
      f["error"] = e.what();
      f["axioms"] = axiom_json(e.report());
      fams.push_back(f);
      out.passed = false;
      continue;
    }
    f["factor_dims"] = tps.factor_dims;
    Json states = Json::array();
    for (const auto& [sname, psi] : s.states) {
      Json ent = Json::array();
      bool product = true;
      const int cuts = tps.factors() == 2 ? 1 : tps.factors();
      for (int k = 0; k < cuts; ++k) {
        const Entropy e = entropy(reduced_density(psi, tps, {k}), s.tol);
        product = product && e.nats <= kProductEntropy;
        ent.push_back({{"keep", std::vector<int>{k}}, {"nats", e.nats}, {"bits", e.bits}});
      }
      states.push_back({{"state", sname}, {"entropies", ent}, {"product", product}});
    }
    f["states"] = states;
    Json gates = Json::array();
    for (const auto& [gname, u] : s.gates) {
      Json g;
      g["gate"] = gname;
      const Mat pb = tps.pullback(u);
      if (hermiticity_defect(pb) <= s.tol.residual_abs * std::max(1.0, pb.frobenius_norm())) {
        g["pullback_eigenvalues"] = hermitian_eig(pb, s.tol).values;
      }
      if (tps.factors() == 2) {
        const std::vector<double> sv = operator_schmidt(u, tps, s.tol);
        g["schmidt"] = sv;
        g["schmidt_rank"] = sv.size();
      }
      gates.push_back(g);
    }
    f["gates"] = gates;
    fams.push_back(f);
  }
  out.section["families"] = fams;
  return out;
}

std::vector<CandidateFamily> candidate_families(const ProblemSpec& s, const char* who) {
  std::vector<CandidateFamily> out;
  for (const auto& [name, names] : families(s, who)) out.push_back({name, s.family(names)});
  return out;
}

AnalysisResult run_morph(const ProblemSpec& s) {
  if (s.hamiltonian.terms.empty()) throw InvalidArgument("morph: needs \"hamiltonian\"");
  const std::vector<CandidateFamily> cands = candidate_families(s, "morph");
  std::vector<ProblemSpec::Snapshot> snaps = s.snapshots;
  if (snaps.empty()) {
    ProblemSpec::Snapshot given{"as_given", {}};
    for (const HamiltonianTerm& t : s.hamiltonian.terms) given.couplings.push_back(t.coupling);
    snaps.push_back(given);
  }
  AnalysisResult out;
  Json labels = Json::array();
  for (const HamiltonianTerm& t : s.hamiltonian.terms) {
    labels.push_back({{"label", t.label}, {"algebra", t.algebra_tag}});
  }
  out.section["terms"] = labels;
  Json rows = Json::array();
  for (const ProblemSpec::Snapshot& sn : snaps) {
    const MorphingReport r = active_tps(s.hamiltonian, sn.couplings, cands, s.seed, s.tol);
    Json fams = Json::array();
    for (const FamilyVerdict& v : r.families) {
      fams.push_back({{"family", v.name},
                      {"terms_in_family", v.terms_in_family},
                      {"terms_generate", v.terms_generate},
                      {"active_in_join", v.active_in_join},
                      {"axioms_pass", v.axioms_pass},
                      {"sector_rank", v.sector_rank},
                      {"factor_dims", v.factor_dims},
                      {"proper", v.proper},
                      {"induced", v.induced}});
    }
    rows.push_back({{"snapshot", sn.name},
                    {"couplings", sn.couplings},
                    {"active_terms", r.active_terms},
                    {"no_interactions", r.no_interactions},
                    {"active_dim", r.active_dim},
                    {"families", fams},
                    {"induced", r.induced}});
  }
  out.section["snapshots"] = rows;
  return out;
}

// Pauli-string expansion of a qubit operator, coefficients above 1e-12.
Json pauli_terms(const Mat& h, int qubits) {
  Json out = Json::array();
  const int total = 1 << (2 * qubits);
  const double d = h.rows();
  for (int code = 0; code < total; ++code) {
    std::string letters;
    for (int q = qubits - 1; q >= 0; --q) letters.push_back("IXYZ"[(code >> (2 * q)) & 3]);
    const cplx c = hs_inner(pauli_matrix(PauliString::parse(letters)), h) / d;
    if (std::abs(c) > 1e-12) out.push_back({{"pauli", letters}, {"coefficient", c.real()}});
  }
  return out;
}

// min over phases of ||u - e^{i phi} I||, spectral norm.
double phase_distance_to_identity(const Mat& u) {
  const cplx t = u.trace();
  const cplx phase = std::abs(t) > 0 ? t / std::abs(t) : cplx(1.0);
  return spectral_norm(u - phase * Mat::identity(u.rows()));
}

// Fixed, generic product vector in factor coordinates.
Mat product_probe(const std::vector<int>& dims) {
  std::vector<Mat> parts;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    std::vector<cplx> v;
    double n = 0.0;
    for (int j = 0; j < dims[k]; ++j) {
      const cplx a = std::polar(1.0, 0.37 * (j + 1) * static_cast<double>(k + 1)) + 0.5 * j;
      v.push_back(a);
      n += std::norm(a);
    }
    for (cplx& a : v) a /= std::sqrt(n);
    parts.push_back(Mat::column(v));
  }
  return kron(parts);
}

AnalysisResult run_strobe(const ProblemSpec& s) {
  if (s.hamiltonian.terms.empty() && s.refocus_checks.empty()) {
    throw InvalidArgument("strobe: needs \"hamiltonian\" or \"refocus_checks\"");
  }
  AnalysisResult out;
  if (!s.hamiltonian.terms.empty()) {
    const Mat h = assemble(s.hamiltonian);
    const int d = h.rows();
    const std::vector<double> periods = s.periods.empty() ? std::vector<double>{1.0} : s.periods;
    const Mat hbar = refocus_average(h, s.pulses, s.tol);
    out.section["group_order"] = pulse_group(s.pulses, d, s.tol).size();
    out.section["hamiltonian_norm"] = spectral_norm(h);
    if (s.qubits > 0) {
      out.section["hamiltonian_terms"] = pauli_terms(h, s.qubits);
      out.section["average_terms"] = pauli_terms(hbar, s.qubits);
    }

    std::optional<TPSFactorization> tps;
    Mat psi;
    const auto fams = s.candidates.empty() && s.subsystems.empty()
                          ? std::vector<std::pair<std::string, std::vector<std::string>>>{}
                          : families(s, "strobe");
    if (!fams.empty()) {
      tps = induced_tps(s.family(fams.front().second), s.code_space, s.seed, s.tol);
      psi = tps->code_isometry * product_probe(tps->factor_dims);
      out.section["entropy_family"] = fams.front().first;
    }

    std::vector<std::pair<double, double>> errors;  // (T, E)
    std::vector<std::pair<double, double>> peaks;   // (T, max endpoint entropy)
    Json rows = Json::array();
    for (double t : periods) {
      const PulseSchedule sched = symmetrized_schedule(s.pulses, d, t, s.cycles, s.tol);
      const StrobeResult r = strobe(h, sched, s.tol);
      const double e = spectral_norm(r.cycle_propagators.front() - unitary_exp(hbar, t, s.tol));
      Json row = {{"T", t}, {"error", e}, {"unitarity_defect", r.worst_unitarity_defect}};
      errors.emplace_back(t, e);
      if (tps) {
        const std::vector<double> ent =
            endpoint_entropies(h, s.pulses, t, s.cycles, psi, *tps, s.tol);
        row["endpoint_entropies"] = ent;
        peaks.emplace_back(t, *std::max_element(ent.begin(), ent.end()));
      }
      rows.push_back(row);
    }
    out.section["periods"] = rows;

    // Halving ratios E(T/2)/E(T) in the small-T regime.
    Json ratios = Json::array();
    for (const auto& [t, e] : errors) {
      for (const auto& [t2, e2] : errors) {
        if (std::abs(t2 - t / 2) > 1e-12 * t || e <= 0.0) continue;
        const bool checked = e < kRatioRegime;
        const double ratio = e2 / e;
        const bool ok = !checked || ratio <= kRatioBound;
        ratios.push_back({{"T", t}, {"ratio", ratio}, {"checked", checked}, {"ok", ok}});
        out.passed = out.passed && ok;
      }
    }
    out.section["halving_ratios"] = ratios;
    out.section["ratio_bound"] = kRatioBound;

    if (peaks.size() >= 3) {
      std::vector<std::pair<double, double>> by_t = peaks;
      std::sort(by_t.begin(), by_t.end(), [](auto a, auto b) { return a.first > b.first; });
      const double c = std::max(by_t[0].second / (by_t[0].first * by_t[0].first),
                                by_t[1].second / (by_t[1].first * by_t[1].first));
      bool ok = true;
      Json checks = Json::array();
      for (std::size_t k = 2; k < by_t.size(); ++k) {
        const double bound = c * by_t[k].first * by_t[k].first;
        const bool hit = by_t[k].second <= bound + 1e-12;
        ok = ok && hit;
        checks.push_back({{"T", by_t[k].first}, {"entropy", by_t[k].second},
                          {"bound", bound}, {"ok", hit}});
      }
      out.section["entropy_bound"] = {{"C", c}, {"checks", checks}, {"ok", ok}};
      out.passed = out.passed && ok;
    }
  }

  Json refocus = Json::array();
  for (const ProblemSpec::RefocusCheck& rc : s.refocus_checks) {
    const int d = rc.hamiltonian.rows();
    const PulseSchedule sched = symmetrized_schedule(rc.pulses, d, rc.period, 1, s.tol);
    const double dist = phase_distance_to_identity(strobe(rc.hamiltonian, sched, s.tol).final);
    const bool ok = dist <= 1e-9;
    refocus.push_back({{"period", rc.period}, {"identity_distance", dist}, {"ok", ok}});
    out.passed = out.passed && ok;
  }
  if (!s.refocus_checks.empty()) out.section["refocus_checks"] = refocus;
  return out;
}

}  // namespace

AnalysisResult run_analysis(const std::string& name, const ProblemSpec& spec) {
  static const std::map<std::string, std::function<AnalysisResult(const ProblemSpec&)>> kTable =
      {{"check", run_check},           {"factorize", run_factorize},
       {"wedderburn", run_wedderburn}, {"chain", run_chain},
       {"superselect", run_superselect}, {"entangle", run_entangle},
       {"morph", run_morph},           {"strobe", run_strobe}};
  auto it = kTable.find(name);
  if (it == kTable.end()) throw InvalidArgument("unknown analysis '" + name + "'");
  AnalysisResult r = it->second(spec);
  r.section["passed"] = r.passed;
  return r;
}

}  // namespace tpsforge::cli
