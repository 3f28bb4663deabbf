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

#include "tpsforge/dynamics.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "tpsforge/entanglement.h"
#include "tpsforge/error.h"
#include "tpsforge/linalg.h"

namespace tpsforge {

namespace {

constexpr std::size_t kMaxGroup = 64;

void require_unitary(const Mat& u, int dim, const std::string& who, const Tolerances& tol) {
  if (!u.square() || u.rows() != dim) throw InvalidArgument(who + ": wrong dimension");
  if (unitarity_defect(u) > tol.residual_abs * std::sqrt(static_cast<double>(dim))) {
    throw InvalidArgument(who + ": not unitary");
  }
}

// Equal up to a global phase.
bool same_ray(const Mat& a, const Mat& b, const Tolerances& tol) {
  const double d = a.rows();
  return std::abs(std::abs(hs_inner(a, b)) / d - 1.0) <= tol.residual_abs;
}

}  // namespace

int HamiltonianSpec::dim() const {
  return terms.empty() ? 0 : terms.front().op.rows();
}

void HamiltonianSpec::validate(const Tolerances& tol) const {
  const int d = dim();
  for (const HamiltonianTerm& t : terms) {
    if (!t.op.square() || t.op.rows() != d) {
      throw InvalidArgument("hamiltonian: term '" + t.label + "' has the wrong dimension");
    }
    if (hermiticity_defect(t.op) > tol.residual_abs * std::max(1.0, t.op.frobenius_norm())) {
      throw InvalidArgument("hamiltonian: term '" + t.label + "' is not Hermitian");
    }
  }
}

Mat assemble(const HamiltonianSpec& spec) {
  if (spec.terms.empty()) throw InvalidArgument("assemble: no terms");
  const int d = spec.dim();
  Mat h(d, d);
  for (const HamiltonianTerm& t : spec.terms) h.add_scaled(t.coupling, t.op);
  return hermitian_part(h);
}

MorphingReport active_tps(const HamiltonianSpec& spec,
                          std::span<const double> couplings,
                          std::span<const CandidateFamily> candidates,
                          std::uint64_t seed, const Tolerances& tol) {
  spec.validate(tol);
  if (!couplings.empty() && couplings.size() != spec.terms.size()) {
    throw InvalidArgument("active_tps: one coupling per term required");
  }
  std::vector<Mat> active;
  for (std::size_t k = 0; k < spec.terms.size(); ++k) {
    const double c = couplings.empty() ? spec.terms[k].coupling : couplings[k];
    if (c != 0.0) active.push_back(spec.terms[k].op);
  }
  MorphingReport out;
  out.active_terms = static_cast<int>(active.size());
  for (const CandidateFamily& f : candidates) {
    FamilyVerdict v;
    v.name = f.name;
    out.families.push_back(std::move(v));
  }
  if (active.empty()) {
    out.no_interactions = true;
    return out;
  }
  const StarAlgebra active_alg = closure(active, tol, "active");
  out.active_dim = active_alg.dim();
  Rng rng(seed);
  for (std::size_t fi = 0; fi < candidates.size(); ++fi) {
    const CandidateFamily& f = candidates[fi];
    FamilyVerdict& v = out.families[fi];
    const std::size_t n = f.algebras.size();
    std::vector<std::vector<Mat>> owned(n);
    v.terms_in_family = true;
    for (const Mat& t : active) {
      bool found = false;
      for (std::size_t i = 0; i < n && !found; ++i) {
        if (f.algebras[i].contains(t, tol)) {
          owned[i].push_back(t);
          found = true;
        }
      }
      v.terms_in_family = v.terms_in_family && found;
    }
    v.terms_generate = v.terms_in_family;
    for (std::size_t i = 0; i < n && v.terms_generate; ++i) {
      if (owned[i].empty()) owned[i].push_back(Mat::identity(spec.dim()));
      v.terms_generate = same_span(closure(owned[i], tol), f.algebras[i], tol);
    }
    const StarAlgebra joined = join(f.algebras, tol);
    v.active_in_join = is_subalgebra(active_alg, joined, tol);

    std::vector<Mat> sectors = minimal_central_projections(joined, rng.fork(), tol);
    std::stable_sort(sectors.begin(), sectors.end(), [](const Mat& a, const Mat& b) {
      return a.trace().real() > b.trace().real() + 0.5;
    });
    bool have = false;
    for (const Mat& p : sectors) {
      AxiomReport rep;
      try {
        rep = check_axioms(f.algebras, p, tol, rng.fork());
      } catch (const InvalidArgument&) {
        continue;
      }
      if (!rep.passed()) continue;
      const int nontrivial = static_cast<int>(std::count_if(
          rep.factor_dims.begin(), rep.factor_dims.end(), [](int d) { return d > 1; }));
      if (!have || nontrivial >= 2) {
        v.axioms_pass = true;
        v.sector_rank = rep.code_dim;
        v.factor_dims = rep.factor_dims;
        v.proper = nontrivial >= 2;
        have = true;
      }
      if (v.proper) break;
    }
    v.induced = v.terms_in_family && v.terms_generate && v.active_in_join && v.axioms_pass;
    if (v.induced && v.proper) out.induced.push_back(f.name);
  }
  return out;
}

void PulseSchedule::validate(int dim, const Tolerances& tol) const {
  if (!(period > 0.0)) throw InvalidArgument("schedule: period must be positive");
  if (cycles < 1) throw InvalidArgument("schedule: cycles must be at least 1");
  if (segments.empty()) throw InvalidArgument("schedule: no segments");
  double total = 0.0;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    if (segments[k].fraction < 0.0) throw InvalidArgument("schedule: negative duration");
    total += segments[k].fraction;
    require_unitary(segments[k].pulse, dim, "schedule: pulse " + std::to_string(k), tol);
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvalidArgument("schedule: duration fractions must sum to 1");
  }
}

StrobeResult strobe(const Mat& h, const PulseSchedule& schedule, const Tolerances& tol) {
  const int d = h.dim();
  schedule.validate(d, tol);
  Mat cycle = Mat::identity(d);
  for (const PulseSegment& s : schedule.segments) {
    cycle = s.pulse * (unitary_exp(h, s.fraction * schedule.period, tol) * cycle);
  }
  StrobeResult out;
  Mat u = Mat::identity(d);
  for (int c = 0; c < schedule.cycles; ++c) {
    u = cycle * u;
    out.worst_unitarity_defect = std::max(out.worst_unitarity_defect, unitarity_defect(u));
    out.cycle_propagators.push_back(u);
  }
  out.final = u;
  return out;
}

std::vector<Mat> pulse_group(std::span<const Mat> pulses, int dim, const Tolerances& tol) {
  for (std::size_t k = 0; k < pulses.size(); ++k) {
    require_unitary(pulses[k], dim, "pulse " + std::to_string(k), tol);
  }
  std::vector<Mat> group{Mat::identity(dim)};
  for (std::size_t next = 0; next < group.size(); ++next) {
    for (const Mat& p : pulses) {
      Mat g = p * group[next];
      const bool known = std::any_of(group.begin(), group.end(),
                                     [&](const Mat& e) { return same_ray(e, g, tol); });
      if (known) continue;
      if (group.size() >= kMaxGroup) {
        throw InvalidArgument("pulse group has more than 64 elements");
      }
      group.push_back(std::move(g));
    }
  }
  return group;
}

Mat refocus_average(const Mat& h, std::span<const Mat> pulses, const Tolerances& tol) {
  const int d = h.dim();
  const std::vector<Mat> group = pulse_group(pulses, d, tol);
  Mat out(d, d);
  for (const Mat& g : group) out += g * (h * g.adjoint());
  out *= 1.0 / static_cast<double>(group.size());
  return hermitian_part(out);
}

PulseSchedule symmetrized_schedule(std::span<const Mat> pulses, int dim, double period,
                                   int cycles, const Tolerances& tol) {
  const std::vector<Mat> group = pulse_group(pulses, dim, tol);
  const std::size_t m = group.size();
  PulseSchedule s;
  s.period = period;
  s.cycles = cycles;
  // g_k^dagger e g_k composed over k: before segment k the frame is g_k.
  for (std::size_t k = 0; k < m; ++k) {
    const Mat next = k + 1 < m ? group[k + 1] : Mat::identity(dim);
    s.segments.push_back({next * group[k].adjoint(), 1.0 / static_cast<double>(m)});
  }
  // Absorb rounding so the fractions sum to exactly 1.
  double total = 0.0;
  for (const PulseSegment& seg : s.segments) total += seg.fraction;
  s.segments.back().fraction += 1.0 - total;
  return s;
}

double average_hamiltonian_error(const Mat& h, std::span<const Mat> pulses, double period,
                                 const Tolerances& tol) {
  const int d = h.dim();
  const PulseSchedule s = symmetrized_schedule(pulses, d, period, 1, tol);
  const StrobeResult r = strobe(h, s, tol);
  const Mat hbar = refocus_average(h, pulses, tol);
  return spectral_norm(r.final - unitary_exp(hbar, period, tol));
}

std::vector<double> endpoint_entropies(const Mat& h, std::span<const Mat> pulses,
                                       double period, int cycles, const Mat& psi,
                                       const TPSFactorization& tps, const Tolerances& tol) {
  const int d = h.dim();
  const PulseSchedule s = symmetrized_schedule(pulses, d, period, cycles, tol);
  const StrobeResult r = strobe(h, s, tol);
  std::vector<double> out;
  for (const Mat& u : r.cycle_propagators) {
    out.push_back(entropy(reduced_density(u * psi, tps, {0}), tol).nats);
  }
  return out;
}

}  // namespace tpsforge
