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

#include "tpsforge/tps.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include "tpsforge/linalg.h"

namespace tpsforge {

namespace {

int isqrt_exact(int n) {
  int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  return r * r == n ? r : 0;
}

Mat compress(const Mat& w, const Mat& op) { return w.adjoint() * (op * w); }

int product(const std::vector<int>& dims, std::size_t from = 0) {
  int p = 1;
  for (std::size_t i = from; i < dims.size(); ++i) p *= dims[i];
  return p;
}

}  // namespace

int IrrepDecomposition::algebra_dim() const {
  int s = 0;
  for (const IrrepBlock& b : blocks) s += b.d * b.d;
  return s;
}

int IrrepDecomposition::commutant_dim() const {
  int s = 0;
  for (const IrrepBlock& b : blocks) s += b.n * b.n;
  return s;
}

int IrrepDecomposition::total_dim() const {
  int s = 0;
  for (const IrrepBlock& b : blocks) s += b.n * b.d;
  return s;
}

IrrepDecomposition wedderburn(const StarAlgebra& a, std::uint64_t seed,
                              const Tolerances& tol) {
  const int dsp = a.space_dim;
  IrrepDecomposition out;
  out.algebra_name = a.name;
  out.support_dim = dsp;
  if (a.dim() == dsp * dsp) {
    out.blocks.push_back({0, 1, dsp, Mat::identity(dsp), Mat::identity(dsp)});
    return out;
  }
  Rng rng(seed);
  const std::vector<Mat> projs = minimal_central_projections(a, rng.fork(), tol);
  Rng probe_rng(seed ^ 0xB10Cull);
  const Mat probe = random_hermitian(dsp, probe_rng);

  std::vector<std::tuple<int, int, double, IrrepBlock>> keyed;
  for (const Mat& p : projs) {
    const Mat w = range_isometry(p, tol);
    const int r = w.cols();
    const StarAlgebra ar = restrict_to(a, w, tol);
    const int d = isqrt_exact(ar.dim());
    if (d == 0 || r % d != 0) {
      throw InvalidArgument("wedderburn: not a factor block in '" + a.name +
                            "' (restricted dimension " + std::to_string(ar.dim()) +
                            " on rank " + std::to_string(r) + ")");
    }
    const int n = r / d;
    Mat local = Mat::identity(r);
    if (n > 1) {
      const StarAlgebra cr = commutant(ar, tol, rng.fork());
      if (cr.dim() != n * n) {
        throw InvalidArgument("wedderburn: commutant of block has dimension " +
                              std::to_string(cr.dim()) + ", expected " +
                              std::to_string(n * n));
      }
      bool ok = false;
      for (int attempt = 0; attempt < 5 && !ok; ++attempt) {
        const Mat r1 = cr.random_element(rng);
        const Mat r2 = cr.random_element(rng);
        const EigenSystem es = hermitian_eig(r1, tol);
        const auto clusters = cluster_eigenvalues(es.values, tol.eig_cluster_rel);
        if (static_cast<int>(clusters.size()) != n) continue;
        if (std::any_of(clusters.begin(), clusters.end(),
                        [d](const Cluster& c) { return c.size() != d; })) {
          continue;
        }
        const Mat v1 = es.vectors.col_block(clusters[0].begin, d);
        Mat cand(r, r);
        cand.set_block(0, 0, v1);
        try {
          const Mat r2v1 = r2 * v1;
          for (int j = 1; j < n; ++j) {
            const Mat vj = es.vectors.col_block(clusters[j].begin, d);
            const Mat t = vj * (vj.adjoint() * r2v1);
            cand.set_block(0, j * d, polar_isometry(t, tol));
          }
        } catch (const DegenerateDraw&) {
          continue;
        }
        local = std::move(cand);
        ok = true;
      }
      if (!ok) {
        throw DegenerateDraw("wedderburn: degenerate commutant draw (seed=" +
                             std::to_string(seed) + ")");
      }
    }
    IrrepBlock block{0, n, d, w * local, p};
    keyed.emplace_back(d, -n, hs_inner(p, probe).real(), std::move(block));
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    return std::tie(std::get<0>(x), std::get<1>(x), std::get<2>(x)) <
           std::tie(std::get<0>(y), std::get<1>(y), std::get<2>(y));
  });
  for (auto& k : keyed) {
    IrrepBlock b = std::move(std::get<3>(k));
    b.label = static_cast<int>(out.blocks.size());
    out.blocks.push_back(std::move(b));
  }
  return out;
}

double wedderburn_residual(const StarAlgebra& a, const IrrepDecomposition& w) {
  double worst = 0.0;
  for (const IrrepBlock& blk : w.blocks) {
    const std::vector<int> dims{blk.n, blk.d};
    worst = std::max(worst, isometry_defect(blk.isometry));
    for (const Mat& b : a.basis) {
      const Mat c = compress(blk.isometry, b);
      worst = std::max(worst, slot_locality_residual(dims, 1, c) /
                                  std::max(b.frobenius_norm(), 1e-300));
    }
  }
  return worst;
}

long long multiplicity_formula(int n, int twice_j) {
  if (n < 1 || n > 62) throw InvalidArgument("multiplicity_formula: need 1 <= N <= 62");
  if (twice_j < 0 || twice_j > n || (n - twice_j) % 2 != 0) {
    throw InvalidArgument("multiplicity_formula: J out of range for N=" +
                          std::to_string(n));
  }
  const int lower = (n - twice_j) / 2;  // N/2 - J
  const int upper = (n + twice_j) / 2;  // N/2 + J
  unsigned __int128 binom = 1;
  for (int i = 1; i <= lower; ++i) binom = binom * (n - lower + i) / i;
  const unsigned __int128 v = binom * (twice_j + 1) / (upper + 1);
  return static_cast<long long>(v);
}

namespace {

// Unitary u on C^m with u: (x)_i C^{dims[i]} -> C^m such that algebras[i]
// pulls back to slot i.
void factor_recursive(std::vector<StarAlgebra> algebras, std::uint64_t seed,
                      const Tolerances& tol, std::vector<int>& dims, Mat& u) {
  const int m = algebras.front().space_dim;
  if (algebras.size() == 1) {
    dims.push_back(m);
    u = Mat::identity(m);
    return;
  }
  Rng rng(seed);
  const IrrepDecomposition w = wedderburn(algebras.front(), rng.fork(), tol);
  if (w.blocks.size() != 1) {
    throw Error("induced_tps: algebra '" + algebras.front().name +
                "' is not a factor on the code space");
  }
  const int d1 = w.blocks[0].d;
  const int n = w.blocks[0].n;
  // Copy-major (n, d1) to irrep-major (d1, n).
  Mat u1(m, m);
  for (int a = 0; a < d1; ++a) {
    for (int c = 0; c < n; ++c) {
      for (int r = 0; r < m; ++r) u1(r, a * n + c) = w.blocks[0].isometry(r, c * d1 + a);
    }
  }
  const std::vector<int> split{d1, n};
  std::vector<StarAlgebra> rest;
  for (std::size_t k = 1; k < algebras.size(); ++k) {
    std::vector<Mat> elems;
    for (const Mat& b : algebras[k].basis) {
      const Mat c = compress(u1, b);
      const double res = slot_locality_residual(split, 1, c);
      if (res > tol.residual_abs * std::max(1.0, b.frobenius_norm()) * 10.0) {
        throw Error("induced_tps: algebra '" + algebras[k].name +
                    "' does not act on the complementary factor (residual " +
                    std::to_string(res) + ")");
      }
      elems.push_back(extract_slot(split, 1, c));
    }
    rest.push_back(span_algebra(elems, n, algebras[k].name, tol));
  }
  std::vector<int> rest_dims;
  Mat u_rest;
  factor_recursive(std::move(rest), rng.fork(), tol, rest_dims, u_rest);
  dims.push_back(d1);
  dims.insert(dims.end(), rest_dims.begin(), rest_dims.end());
  u = u1 * kron(Mat::identity(d1), u_rest);
}

}  // namespace

TPSFactorization induced_tps(std::span<const StarAlgebra> algebras,
                             const std::optional<Mat>& code_projector,
                             std::uint64_t seed, const Tolerances& tol) {
  Rng rng(seed);
  const AxiomReport rep = check_axioms(algebras, code_projector, tol, rng.fork());
  if (!rep.passed()) throw AxiomError("induced_tps: axioms not satisfied", rep);
  const int dsp = algebras.front().space_dim;
  const Mat w = code_projector ? range_isometry(*code_projector, tol) : Mat::identity(dsp);
  std::vector<StarAlgebra> restricted;
  for (const StarAlgebra& a : algebras) {
    restricted.push_back(code_projector ? restrict_to(a, w, tol) : a);
  }
  TPSFactorization out;
  Mat u;
  factor_recursive(std::move(restricted), rng.fork(), tol, out.factor_dims, u);
  out.code_isometry = w * u;
  for (const StarAlgebra& a : algebras) out.factor_provenance.push_back(a.name);
  return out;
}

namespace {

void check_chain(std::span<const StarAlgebra> chain, const Tolerances& tol) {
  if (chain.empty()) throw InvalidArgument("chain: empty chain");
  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (chain[i].space_dim != chain[0].space_dim) {
      throw InvalidArgument("chain: level " + std::to_string(i) +
                            " acts on a different space");
    }
    if (!is_subalgebra(chain[i], chain[i - 1], tol)) {
      throw InvalidArgument("chain: level " + std::to_string(i) + " ('" +
                            chain[i].name + "') is not contained in level " +
                            std::to_string(i - 1) + " ('" + chain[i - 1].name + "')");
    }
  }
}

}  // namespace

std::vector<StarAlgebra> chain_subsystems(std::span<const StarAlgebra> chain,
                                          const Tolerances& tol,
                                          std::uint64_t seed) {
  check_chain(chain, tol);
  Rng rng(seed);
  std::vector<StarAlgebra> out;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    StarAlgebra a = intersection(commutant(chain[i], tol, rng.fork()), chain[i - 1], tol);
    a.name = "A" + std::to_string(i);
    out.push_back(std::move(a));
  }
  return out;
}

namespace {

struct Piece {
  std::vector<int> labels;
  std::vector<int> mults;
  int d = 0;
  Mat z;  // s x (prod mults * d), relative to the current space
};

std::vector<Piece> descend(std::span<const StarAlgebra> chain, std::size_t level,
                           const Mat& w, Rng& rng, const Tolerances& tol) {
  const int s = w.cols();
  if (level == chain.size()) return {{{}, {}, s, Mat::identity(s)}};
  const StarAlgebra& b = chain[level];
  IrrepDecomposition dec;
  if (b.dim() == b.space_dim * b.space_dim) {
    dec.blocks.push_back({0, 1, s, Mat::identity(s), Mat::identity(s)});
  } else {
    dec = wedderburn(restrict_to(b, w, tol), rng.fork(), tol);
  }
  std::vector<Piece> out;
  for (const IrrepBlock& blk : dec.blocks) {
    const Mat first = w * blk.isometry.col_block(0, blk.d);
    for (Piece& p : descend(chain, level + 1, first, rng, tol)) {
      Piece q;
      q.labels.push_back(blk.label);
      q.labels.insert(q.labels.end(), p.labels.begin(), p.labels.end());
      q.mults.push_back(blk.n);
      q.mults.insert(q.mults.end(), p.mults.begin(), p.mults.end());
      q.d = p.d;
      q.z = blk.isometry * kron(Mat::identity(blk.n), p.z);
      out.push_back(std::move(q));
    }
  }
  return out;
}

}  // namespace

ChainDecomposition chain_decompose(std::span<const StarAlgebra> chain,
                                   std::uint64_t seed, const Tolerances& tol) {
  check_chain(chain, tol);
  const int dsp = chain[0].space_dim;
  ChainDecomposition out;
  out.space_dim = dsp;
  out.includes_level0 = chain[0].dim() != dsp * dsp;
  out.isometry_convention =
      "sector isometry maps (x)_k C^{n_k} (x) C^{d} into H; each level's copies "
      "are aligned by commutant intertwiners, copy index major";
  Rng rng(seed);
  // Without a reducible B0 level 0 is a single trivial block and is skipped.
  const std::span<const StarAlgebra> levels =
      out.includes_level0 ? chain : chain.subspan(1);
  std::vector<Piece> pieces;
  if (levels.empty()) {
    pieces.push_back({{0}, {1}, dsp, Mat::identity(dsp)});
  } else {
    pieces = descend(levels, 0, Mat::identity(dsp), rng, tol);
  }
  std::vector<std::string> prov;
  if (out.includes_level0) prov.push_back("commutant(" + chain[0].name + ")");
  for (std::size_t i = 1; i < chain.size(); ++i) prov.push_back("A" + std::to_string(i));
  if (levels.empty()) prov.push_back("A1");
  prov.push_back(chain.back().name);
  for (Piece& p : pieces) {
    ChainSector s;
    s.labels = p.labels;
    s.multiplicities = p.mults;
    s.terminal_dim = p.d;
    s.nontrivial = std::any_of(p.mults.begin(), p.mults.end(), [](int n) { return n > 1; });
    s.factorization.factor_dims = p.mults;
    s.factorization.factor_dims.push_back(p.d);
    s.factorization.code_isometry = std::move(p.z);
    s.factorization.factor_provenance = prov;
    out.sectors.push_back(std::move(s));
  }
  return out;
}

std::vector<std::string> chain_round_trip(std::span<const StarAlgebra> chain,
                                          const ChainDecomposition& dec,
                                          const Tolerances& tol,
                                          std::uint64_t seed) {
  const std::vector<StarAlgebra> subs = chain_subsystems(chain, tol, seed);
  const std::size_t offset = dec.includes_level0 ? 1 : 0;
  const std::size_t n = chain.size() - 1;
  std::vector<std::string> errors;
  for (std::size_t si = 0; si < dec.sectors.size(); ++si) {
    const ChainSector& s = dec.sectors[si];
    const Mat& v = s.factorization.code_isometry;
    const int sd = v.cols();
    auto squeeze = [&](const StarAlgebra& a) {
      std::vector<Mat> elems;
      for (const Mat& b : a.basis) elems.push_back(compress(v, b));
      return span_algebra(elems, sd, a.name, tol);
    };
    const StarAlgebra bn = squeeze(chain[n]);
    for (std::size_t i = 1; i <= n; ++i) {
      const int tail = product(s.factorization.factor_dims, offset + i);
      const int expected = tail * tail;
      const int got = squeeze(chain[i]).dim();
      std::vector<StarAlgebra> parts{bn};
      for (std::size_t k = i + 1; k <= n; ++k) parts.push_back(squeeze(subs[k - 1]));
      const int joined = join(parts, tol).dim();
      if (got != expected || joined != expected) {
        errors.push_back("sector " + std::to_string(si) + " level " + std::to_string(i) +
                         ": B_i dim " + std::to_string(got) + ", join dim " +
                         std::to_string(joined) + ", expected " + std::to_string(expected));
      }
    }
  }
  return errors;
}

std::vector<StarAlgebra> stabilizer_chain(std::span<const Mat> x,
                                          const Tolerances& tol,
                                          std::uint64_t seed) {
  if (x.empty()) throw InvalidArgument("stabilizer_chain: no operators");
  return stabilizer_chain(x, x.front().dim(), tol, seed);
}

std::vector<StarAlgebra> stabilizer_chain(std::span<const Mat> x, int dim,
                                          const Tolerances& tol,
                                          std::uint64_t seed) {
  if (dim < 1) throw InvalidArgument("stabilizer_chain: dimension must be positive");
  const int dsp = dim;
  const Mat id = Mat::identity(dsp);
  const double bound = tol.residual_abs * std::sqrt(static_cast<double>(dsp));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::string who = "stabilizer_chain: X" + std::to_string(i + 1);
    if (x[i].dim() != dsp) throw InvalidArgument(who + " has the wrong dimension");
    if (unitarity_defect(x[i]) > bound) throw InvalidArgument(who + " is not unitary");
    if (std::abs(x[i].trace()) > bound) throw InvalidArgument(who + " is not traceless");
    if (distance(x[i] * x[i], id) > bound) throw InvalidArgument(who + " does not square to 1");
    for (std::size_t j = 0; j < i; ++j) {
      if (commutator(x[i], x[j]).frobenius_norm() > bound) {
        throw InvalidArgument(who + " does not commute with X" + std::to_string(j + 1));
      }
    }
  }
  Rng rng(seed);
  std::vector<StarAlgebra> chain{full_algebra(dsp, "B0")};
  for (std::size_t i = 1; i <= x.size(); ++i) {
    const StarAlgebra gen = closure(x.subspan(0, i), tol);
    StarAlgebra b = commutant(gen, tol, rng.fork());
    b.name = "B" + std::to_string(i);
    chain.push_back(std::move(b));
  }
  return chain;
}

TPSFactorization stabilizer_syndrome_tps(std::span<const Mat> x,
                                         const ChainDecomposition& dec,
                                         const Tolerances& tol) {
  const int k = static_cast<int>(x.size());
  const int dsp = dec.space_dim;
  if ((dsp >> k) << k != dsp || (dsp >> k) == 0) {
    throw InvalidArgument("stabilizer_syndrome_tps: 2^k does not divide the dimension");
  }
  const int m = dsp >> k;
  Mat v(dsp, dsp);
  std::vector<bool> seen(std::size_t{1} << k, false);
  for (const ChainSector& s : dec.sectors) {
    const Mat& w = s.factorization.code_isometry;
    if (w.cols() != m) {
      throw InvalidArgument("stabilizer_syndrome_tps: sector of dimension " +
                            std::to_string(w.cols()) + ", expected " + std::to_string(m));
    }
    int index = 0;
    for (int i = 0; i < k; ++i) {
      const Mat c = compress(w, x[i]);
      const double sign = c.trace().real() / m;
      const Mat expect = Mat::identity(m) * cplx(sign > 0 ? 1.0 : -1.0);
      if (distance(c, expect) > tol.residual_abs * std::sqrt(static_cast<double>(m)) * 10.0) {
        throw InvalidArgument("stabilizer_syndrome_tps: X" + std::to_string(i + 1) +
                              " is not constant on a sector");
      }
      index = 2 * index + (sign > 0 ? 0 : 1);
    }
    if (seen[index]) throw InvalidArgument("stabilizer_syndrome_tps: repeated syndrome");
    seen[index] = true;
    v.set_block(0, index * m, w);
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw InvalidArgument("stabilizer_syndrome_tps: a syndrome sector is missing");
  }
  TPSFactorization out;
  for (int i = 0; i < k; ++i) {
    out.factor_dims.push_back(2);
    out.factor_provenance.push_back("syndrome X" + std::to_string(i + 1));
  }
  out.factor_dims.push_back(m);
  out.factor_provenance.push_back("logical");
  out.code_isometry = std::move(v);
  return out;
}

}  // namespace tpsforge
