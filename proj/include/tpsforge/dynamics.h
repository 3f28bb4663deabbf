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

#ifndef TPSFORGE_DYNAMICS_H_
#define TPSFORGE_DYNAMICS_H_

// Tunable Hamiltonians over several algebra families (which factorization the
// active couplings induce) and piecewise-constant pulse schedules for
// refocusing.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tpsforge/factorization.h"
#include "tpsforge/mat.h"
#include "tpsforge/star_algebra.h"

namespace tpsforge {

struct HamiltonianTerm {
  std::string label;
  Mat op;                   // Hermitian
  std::string algebra_tag;  // which algebra family the term belongs to
  double coupling = 0.0;
};

struct HamiltonianSpec {
  std::vector<HamiltonianTerm> terms;

  int dim() const;
  // Throws InvalidArgument on mixed dimensions or a non-Hermitian term.
  void validate(const Tolerances& tol = {}) const;
};

// sum_k coupling_k * op_k.
Mat assemble(const HamiltonianSpec& spec);

// A candidate factorization: algebras listed in slot order.
struct CandidateFamily {
  std::string name;
  std::vector<StarAlgebra> algebras;
};

struct FamilyVerdict {
  std::string name;
  bool terms_in_family = false;      // each active term lies in one algebra
  bool terms_generate = false;       // per algebra, its active terms generate it
  bool active_in_join = false;       // active algebra inside the family's join
  bool axioms_pass = false;          // on the chosen sector
  int sector_rank = 0;
  std::vector<int> factor_dims;      // on the chosen sector
  bool induced = false;
  bool proper = false;               // at least two factors of dimension > 1
};

struct MorphingReport {
  int active_terms = 0;
  bool no_interactions = false;
  int active_dim = 0;  // dimension of the algebra generated by active terms
  std::vector<FamilyVerdict> families;
  std::vector<std::string> induced;  // names of families inducing a proper TPS
};

// Which candidate factorizations the active terms (|coupling| > 0) induce.
// `couplings`, when nonempty, overrides the couplings stored in `spec`.
MorphingReport active_tps(const HamiltonianSpec& spec,
                          std::span<const double> couplings,
                          std::span<const CandidateFamily> candidates,
                          std::uint64_t seed = kDefaultSeed,
                          const Tolerances& tol = {});

// Segment k: evolve for fraction_k * period, then apply pulse_k.
struct PulseSegment {
  Mat pulse;
  double fraction = 1.0;
};

struct PulseSchedule {
  double period = 1.0;
  std::vector<PulseSegment> segments;
  int cycles = 1;

  void validate(int dim, const Tolerances& tol = {}) const;
};

struct StrobeResult {
  std::vector<Mat> cycle_propagators;  // U after cycles 1..cycles
  Mat final;
  double worst_unitarity_defect = 0.0;
};

StrobeResult strobe(const Mat& h, const PulseSchedule& schedule,
                    const Tolerances& tol = {});

// Group generated by `pulses`, modulo global phase, in breadth-first order
// starting from the identity. Throws InvalidArgument above 64 elements.
std::vector<Mat> pulse_group(std::span<const Mat> pulses, int dim,
                             const Tolerances& tol = {});

// (1/|G|) sum_g g h g^dagger over pulse_group(pulses).
Mat refocus_average(const Mat& h, std::span<const Mat> pulses,
                    const Tolerances& tol = {});

// Group-averaging cycle over {g_0 = 1, ..., g_{m-1}}: one period equals
// prod_k g_k^dagger exp(-i h period/m) g_k, written as m segments.
PulseSchedule symmetrized_schedule(std::span<const Mat> pulses, int dim,
                                   double period, int cycles,
                                   const Tolerances& tol = {});

// ||U(period) - exp(-i hbar period)|| in spectral norm for the symmetrized
// schedule, hbar = refocus_average(h, pulses).
double average_hamiltonian_error(const Mat& h, std::span<const Mat> pulses,
                                 double period, const Tolerances& tol = {});

// Entropy (nats) across the first factor of a bipartite tps at each cycle
// endpoint of the symmetrized schedule, starting from psi.
std::vector<double> endpoint_entropies(const Mat& h, std::span<const Mat> pulses,
                                       double period, int cycles, const Mat& psi,
                                       const TPSFactorization& tps,
                                       const Tolerances& tol = {});

}  // namespace tpsforge

#endif  // TPSFORGE_DYNAMICS_H_
