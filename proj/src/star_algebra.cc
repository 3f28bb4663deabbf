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

#include "tpsforge/star_algebra.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tpsforge/linalg.h"

namespace tpsforge {

namespace {

int isqrt_exact(int n) {
  int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  return r * r == n ? r : 0;
}

// Rough complex-multiply count above which pairwise commutator checks switch
// to random probes.
constexpr double kPairwiseBudget = 2e8;

}  // namespace

double StarAlgebra::membership_residual(const Mat& m) const {
  Mat r = m;
  for (const Mat& b : basis) r.add_scaled(-hs_inner(b, r), b);
  return r.frobenius_norm();
}

bool StarAlgebra::contains(const Mat& m, const Tolerances& tol) const {
  return membership_residual(m) <= tol.residual_abs * std::max(m.frobenius_norm(), 1.0);
}

Mat StarAlgebra::project(const Mat& m) const {
  Mat out(space_dim, space_dim);
  for (const Mat& b : basis) out.add_scaled(hs_inner(b, m), b);
  return out;
}

Mat StarAlgebra::random_element(Rng& rng) const {
  Mat out(space_dim, space_dim);
  for (const Mat& b : basis) out.add_scaled(rng.normal(), b);
  return out;
}

double StarAlgebra::structure_residual() const {
  double worst = 0.0;
  for (int i = 0; i < dim(); ++i) {
    worst = std::max(worst, hermiticity_defect(basis[i]));
    for (int j = i; j < dim(); ++j) {
      const cplx ip = hs_inner(basis[i], basis[j]);
      worst = std::max(worst, std::abs(ip - (i == j ? 1.0 : 0.0)));
    }
  }
  for (const Mat& a : basis) {
    for (const Mat& b : basis) {
      worst = std::max(worst, membership_residual(a * b));
    }
  }
  if (contains_identity) {
    worst = std::max(worst, membership_residual(Mat::identity(space_dim)));
  }
  return worst;
}

StarAlgebra span_algebra(std::span<const Mat> elements, int space_dim,
                         std::string name, const Tolerances& tol) {
  StarAlgebra out;
  out.space_dim = space_dim;
  out.name = std::move(name);
  std::vector<Mat> parts;
  for (const Mat& x : elements) {
    if (x.rows() != space_dim || x.cols() != space_dim) {
      throw InvalidArgument("span_algebra: element dimension mismatch");
    }
    parts.push_back(hermitian_part(x));
    parts.push_back(antihermitian_part(x));
  }
  out.basis = hermitian_span(parts, tol.rank_rel);
  const Mat id = Mat::identity(space_dim);
  out.contains_identity =
      out.membership_residual(id) <= tol.residual_abs * std::sqrt(space_dim);
  return out;
}

StarAlgebra full_algebra(int d, std::string name) {
  StarAlgebra out;
  out.space_dim = d;
  out.name = std::move(name);
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    Mat e(d, d);
    e(i, i) = 1.0;
    out.basis.push_back(std::move(e));
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      Mat s(d, d), a(d, d);
      s(i, j) = r;
      s(j, i) = r;
      a(i, j) = cplx(0, -r);
      a(j, i) = cplx(0, r);
      out.basis.push_back(std::move(s));
      out.basis.push_back(std::move(a));
    }
  }
  return out;
}

StarAlgebra scalar_algebra(int d, std::string name) {
  StarAlgebra out;
  out.space_dim = d;
  out.name = std::move(name);
  Mat id = Mat::identity(d);
  id *= 1.0 / std::sqrt(static_cast<double>(d));
  out.basis.push_back(std::move(id));
  return out;
}

StarAlgebra closure(std::span<const Mat> generators, const Tolerances& tol,
                    std::string name) {
  if (generators.empty()) {
    throw InvalidArgument("closure: need at least one generator");
  }
  const int d = generators.front().dim();
  for (const Mat& g : generators) {
    if (!g.square() || g.rows() != d) {
      throw InvalidArgument("closure: generators must be square and of equal dimension");
    }
  }
  // Hermitian seeds, normalized. Negligibility is judged against the largest
  // generator, so projected-away generators (pure roundoff) are dropped.
  double scale = 0.0;
  for (const Mat& g : generators) scale = std::max(scale, g.frobenius_norm());
  std::vector<Mat> seeds;
  for (const Mat& g : generators) {
    for (Mat h : {hermitian_part(g), antihermitian_part(g)}) {
      const double n = h.frobenius_norm();
      if (n > tol.rank_rel * std::max(scale, 1e-300)) {
        h *= 1.0 / n;
        seeds.push_back(std::move(h));
      }
    }
  }
  OrthonormalSpan span(d, d);
  span.add_relative(Mat::identity(d), tol.rank_rel);
  for (const Mat& s : seeds) span.add_relative(s, tol.rank_rel);
  // Left-multiply every newly found element by the seeds until stable; the
  // span of all words in the seeds is the generated algebra. The cutoff is
  // absolute (factors have unit norm): a product that nearly vanishes must not
  // have its rounding noise promoted to a new direction.
  int frontier_begin = 0;
  while (frontier_begin < span.size() && !span.full()) {
    const int frontier_end = span.size();
    for (int i = frontier_begin; i < frontier_end && !span.full(); ++i) {
      for (const Mat& g : seeds) {
        span.add(g * span.basis()[i], tol.rank_rel);
        if (span.full()) break;
      }
    }
    frontier_begin = frontier_end;
  }
  if (span.full()) return full_algebra(d, name);
  const std::vector<Mat>& raw = span.basis();
  return span_algebra(raw, d, std::move(name), tol);
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

double block_norm(const Mat& m, const Cluster& r, const Cluster& c) {
  double s = 0.0;
  for (int i = r.begin; i < r.end; ++i) {
    for (int j = c.begin; j < c.end; ++j) s += std::norm(m(i, j));
  }
  return std::sqrt(s);
}

// Operators X, block diagonal over `clusters` in the basis `u`, that commute
// with every matrix in `constraints` (given in the same basis). Clusters that
// no constraint couples are solved independently.
std::vector<Mat> block_commutant(const Mat& u, const std::vector<Cluster>& clusters,
                                 const std::vector<Mat>& constraints,
                                 const Tolerances& tol) {
  const int k = static_cast<int>(clusters.size());
  const int d = u.rows();
  UnionFind uf(k);
  std::vector<double> scale;
  for (const Mat& c : constraints) scale.push_back(c.frobenius_norm());
  const double max_scale =
      scale.empty() ? 0.0 : *std::max_element(scale.begin(), scale.end());
  for (std::size_t ci = 0; ci < constraints.size(); ++ci) {
    const double link = tol.residual_abs * scale[ci];
    for (int a = 0; a < k; ++a) {
      for (int b = a + 1; b < k; ++b) {
        if (uf.find(a) == uf.find(b)) continue;
        if (block_norm(constraints[ci], clusters[a], clusters[b]) > link) uf.unite(a, b);
      }
    }
  }
  std::vector<Mat> out;
  for (int root = 0; root < k; ++root) {
    if (uf.find(root) != root) continue;
    std::vector<int> members;
    for (int c = 0; c < k; ++c) {
      if (uf.find(c) == root) members.push_back(c);
    }
    std::vector<int> offset(k, -1);
    int unknowns = 0;
    for (int c : members) {
      offset[c] = unknowns;
      unknowns += clusters[c].size() * clusters[c].size();
    }
    // Count rows first.
    int nrows = 0;
    for (std::size_t ci = 0; ci < constraints.size(); ++ci) {
      const double skip = tol.residual_abs * scale[ci] * 1e-3;
      for (int a : members) {
        for (int b : members) {
          if (block_norm(constraints[ci], clusters[a], clusters[b]) > skip) {
            nrows += clusters[a].size() * clusters[b].size();
          }
        }
      }
    }
    Mat rows(nrows, unknowns);
    int row = 0;
    for (std::size_t ci = 0; ci < constraints.size(); ++ci) {
      const Mat& c = constraints[ci];
      const double skip = tol.residual_abs * scale[ci] * 1e-3;
      for (int ka : members) {
        for (int kb : members) {
          const Cluster& ra = clusters[ka];
          const Cluster& rb = clusters[kb];
          if (!(block_norm(c, ra, rb) > skip)) continue;
          const int ma = ra.size(), mb = rb.size();
          // Row (i, j) of X_a C_ab - C_ab X_b.
          for (int i = 0; i < ma; ++i) {
            for (int j = 0; j < mb; ++j, ++row) {
              for (int p = 0; p < ma; ++p) {
                rows(row, offset[ka] + i * ma + p) += c(ra.begin + p, rb.begin + j);
              }
              for (int p = 0; p < mb; ++p) {
                rows(row, offset[kb] + p * mb + j) -= c(ra.begin + i, rb.begin + p);
              }
            }
          }
        }
      }
    }
    // The cutoff follows the constraint scale, not the submatrix: a block
    // whose equations vanish identically must keep its full kernel.
    const Mat kernel = null_space_below(rows, tol.rank_rel * max_scale);
    const Mat u_adj = u.adjoint();
    for (int v = 0; v < kernel.cols(); ++v) {
      Mat x(d, d);
      for (int c : members) {
        const Cluster& r = clusters[c];
        const int m = r.size();
        for (int i = 0; i < m; ++i) {
          for (int j = 0; j < m; ++j) {
            x(r.begin + i, r.begin + j) = kernel(offset[c] + i * m + j, v);
          }
        }
      }
      out.push_back(u * (x * u_adj));
    }
  }
  return out;
}

bool commutes_with_all(const Mat& y, const StarAlgebra& a, const Tolerances& tol) {
  const double scale = std::max(y.frobenius_norm(), 1e-300);
  for (const Mat& b : a.basis) {
    if (commutator(y, b).frobenius_norm() > tol.residual_abs * scale) return false;
  }
  return true;
}

}  // namespace

StarAlgebra commutant(const StarAlgebra& a, const Tolerances& tol,
                      std::uint64_t seed) {
  const int d = a.space_dim;
  const std::string name = a.name.empty() ? "commutant" : a.name + "'";
  if (a.dim() <= 1) return full_algebra(d, name);
  Rng rng(seed);
  // Anything commuting with A commutes with a generic element r1, hence is
  // block diagonal over r1's eigenspaces. A second generic element couples
  // the blocks; for generic draws the pair generates A. The result is
  // verified against every basis element before it is returned.
  for (int attempt = 0; attempt < 3; ++attempt) {
    const Mat r1 = a.random_element(rng);
    const Mat r2 = a.random_element(rng);
    const EigenSystem es = hermitian_eig(r1, tol);
    const auto clusters = cluster_eigenvalues(es.values, tol.eig_cluster_rel);
    const Mat u_adj = es.vectors.adjoint();
    const std::vector<Mat> constraints{u_adj * (r2 * es.vectors)};
    const auto elems = block_commutant(es.vectors, clusters, constraints, tol);
    StarAlgebra out = span_algebra(elems, d, name, tol);
    if (out.dim() == 0) continue;
    if (commutes_with_all(out.random_element(rng), a, tol)) return out;
  }
  // Slow path: impose commutation with every basis element.
  const Mat r1 = a.random_element(rng);
  const EigenSystem es = hermitian_eig(r1, tol);
  const auto clusters = cluster_eigenvalues(es.values, tol.eig_cluster_rel);
  const Mat u_adj = es.vectors.adjoint();
  std::vector<Mat> constraints;
  for (const Mat& b : a.basis) constraints.push_back(u_adj * (b * es.vectors));
  const auto elems = block_commutant(es.vectors, clusters, constraints, tol);
  return span_algebra(elems, d, name, tol);
}

StarAlgebra intersection(const StarAlgebra& a, const StarAlgebra& b,
                         const Tolerances& tol) {
  if (a.space_dim != b.space_dim) {
    throw InvalidArgument("intersection: dimension mismatch");
  }
  const StarAlgebra& small = a.dim() <= b.dim() ? a : b;
  const StarAlgebra& large = a.dim() <= b.dim() ? b : a;
  const int d = a.space_dim;
  const int k = small.dim();
  const std::size_t len = static_cast<std::size_t>(d) * d;
  // Column i: component of small.basis[i] orthogonal to span(large).
  Mat m(static_cast<int>(len), k);
  for (int i = 0; i < k; ++i) {
    Mat r = small.basis[i];
    for (int pass = 0; pass < 2; ++pass) {
      for (const Mat& l : large.basis) r.add_scaled(-hs_inner(l, r), l);
    }
    for (std::size_t e = 0; e < len; ++e) m(static_cast<int>(e), i) = r.flat()[e];
  }
  const Mat kernel = null_space_below(m, tol.residual_abs);
  std::vector<Mat> elems;
  for (int v = 0; v < kernel.cols(); ++v) {
    Mat x(d, d);
    for (int i = 0; i < k; ++i) x.add_scaled(kernel(i, v), small.basis[i]);
    elems.push_back(std::move(x));
  }
  return span_algebra(elems, d, "(" + a.name + " & " + b.name + ")", tol);
}

StarAlgebra center(const StarAlgebra& a, const Tolerances& tol,
                   std::uint64_t seed) {
  if (a.dim() <= 1) {
    StarAlgebra out = a;
    out.name = "Z(" + a.name + ")";
    return out;
  }
  StarAlgebra out = intersection(a, commutant(a, tol, seed), tol);
  out.name = "Z(" + a.name + ")";
  return out;
}

StarAlgebra join(const StarAlgebra& a, const StarAlgebra& b,
                 const Tolerances& tol) {
  const StarAlgebra both[] = {a, b};
  return join(both, tol);
}

StarAlgebra join(std::span<const StarAlgebra> algebras, const Tolerances& tol) {
  if (algebras.empty()) throw InvalidArgument("join: no algebras");
  std::vector<Mat> gens;
  std::string name;
  for (const StarAlgebra& a : algebras) {
    if (a.space_dim != algebras.front().space_dim) {
      throw InvalidArgument("join: dimension mismatch");
    }
    gens.insert(gens.end(), a.basis.begin(), a.basis.end());
    name += (name.empty() ? "" : " v ") + a.name;
  }
  return closure(gens, tol, name);
}

double inclusion_residual(const StarAlgebra& a, const StarAlgebra& b) {
  if (a.space_dim != b.space_dim) {
    throw InvalidArgument("inclusion test: dimension mismatch");
  }
  double worst = 0.0;
  for (const Mat& x : a.basis) worst = std::max(worst, b.membership_residual(x));
  return worst;
}

bool is_subalgebra(const StarAlgebra& a, const StarAlgebra& b,
                   const Tolerances& tol) {
  return inclusion_residual(a, b) <= tol.residual_abs;
}

bool same_span(const StarAlgebra& a, const StarAlgebra& b, const Tolerances& tol) {
  return a.dim() == b.dim() && is_subalgebra(a, b, tol) && is_subalgebra(b, a, tol);
}

StarAlgebra restrict_to(const StarAlgebra& a, const Mat& isometry,
                        const Tolerances& tol) {
  if (isometry.rows() != a.space_dim) {
    throw InvalidArgument("restrict_to: isometry does not match algebra dimension");
  }
  const Mat w_adj = isometry.adjoint();
  std::vector<Mat> elems;
  elems.reserve(a.basis.size());
  for (const Mat& b : a.basis) elems.push_back(w_adj * (b * isometry));
  return span_algebra(elems, isometry.cols(), a.name, tol);
}

std::vector<Mat> minimal_central_projections(const StarAlgebra& a,
                                             std::uint64_t seed,
                                             const Tolerances& tol) {
  const int d = a.space_dim;
  Rng rng(seed);
  const StarAlgebra z = center(a, tol, rng.fork());
  Rng probe_rng(seed ^ 0xC0FFEEull);
  const Mat probe = random_hermitian(d, probe_rng);
  const Mat id = Mat::identity(d);
  if (z.dim() <= 1) return {id};
  for (int attempt = 0; attempt < 5; ++attempt) {
    const Mat r = z.random_element(rng);
    const EigenSystem es = hermitian_eig(r, tol);
    const auto clusters = cluster_eigenvalues(es.values, tol.eig_cluster_rel);
    if (static_cast<int>(clusters.size()) != z.dim()) continue;
    std::vector<Mat> projectors;
    bool ok = true;
    Mat total(d, d);
    for (const Cluster& c : clusters) {
      const Mat v = es.vectors.col_block(c.begin, c.size());
      Mat p = v * v.adjoint();
      const double scale = std::sqrt(static_cast<double>(c.size()));
      if (distance(p * p, p) > tol.residual_abs * scale ||
          z.membership_residual(p) > tol.residual_abs * scale) {
        ok = false;
        break;
      }
      total += p;
      projectors.push_back(std::move(p));
    }
    if (!ok || distance(total, id) > tol.residual_abs * std::sqrt(d)) continue;
    std::vector<std::pair<std::pair<int, double>, Mat>> keyed;
    for (Mat& p : projectors) {
      const int rank = static_cast<int>(std::lround(p.trace().real()));
      keyed.push_back({{rank, hs_inner(p, probe).real()}, std::move(p)});
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
      return x.first < y.first;
    });
    std::vector<Mat> out;
    for (auto& kv : keyed) out.push_back(std::move(kv.second));
    return out;
  }
  throw DegenerateDraw("minimal_central_projections: degenerate draw (seed=" +
                       std::to_string(seed) + ")");
}

bool AxiomReport::pairwise_commute() const {
  for (const auto& row : commute) {
    for (bool b : row) {
      if (!b) return false;
    }
  }
  return true;
}

bool AxiomReport::all_factors() const {
  return std::all_of(each_is_factor.begin(), each_is_factor.end(),
                     [](bool b) { return b; });
}

namespace {

double pairwise_residual(const StarAlgebra& a, const StarAlgebra& b, Rng& rng,
                         std::string& method) {
  const double d = a.space_dim;
  const double cost = static_cast<double>(a.dim()) * b.dim() * d * d * d * 2.0;
  double worst = 0.0;
  if (cost <= kPairwiseBudget) {
    for (const Mat& x : a.basis) {
      for (const Mat& y : b.basis) {
        worst = std::max(worst, commutator(x, y).frobenius_norm());
      }
    }
    return worst;
  }
  method = "probe";
  Mat ra = a.random_element(rng);
  Mat rb = b.random_element(rng);
  ra *= 1.0 / ra.frobenius_norm();
  rb *= 1.0 / rb.frobenius_norm();
  for (const Mat& y : b.basis) worst = std::max(worst, commutator(ra, y).frobenius_norm());
  for (const Mat& x : a.basis) worst = std::max(worst, commutator(x, rb).frobenius_norm());
  return worst;
}

// Dimension of span{a_1 a_2 ... a_n : a_i in algebras[i]}, which is the join
// when the algebras pairwise commute.
int product_span_dim(std::span<const StarAlgebra> algebras, const Tolerances& tol) {
  const int d = algebras.front().space_dim;
  std::vector<Mat> current{Mat::identity(d)};
  for (const StarAlgebra& a : algebras) {
    OrthonormalSpan span(d, d);
    for (const Mat& x : current) {
      for (const Mat& y : a.basis) {
        span.add(x * y, tol.rank_rel * x.frobenius_norm() * y.frobenius_norm());
        if (span.full()) break;
      }
      if (span.full()) break;
    }
    current = std::move(span).release();
  }
  return static_cast<int>(current.size());
}

}  // namespace

AxiomReport check_axioms(std::span<const StarAlgebra> algebras,
                         const std::optional<Mat>& code_projector,
                         const Tolerances& tol, std::uint64_t seed) {
  if (algebras.empty()) throw InvalidArgument("check_axioms: no algebras");
  const int d = algebras.front().space_dim;
  for (const StarAlgebra& a : algebras) {
    if (a.space_dim != d) {
      throw InvalidArgument("check_axioms: algebra '" + a.name +
                            "' acts on a different space");
    }
  }
  std::vector<StarAlgebra> restricted;
  if (code_projector) {
    const Mat& p = *code_projector;
    if (p.rows() != d || p.cols() != d) {
      throw InvalidArgument("check_axioms: code projector has the wrong dimension");
    }
    if (hermiticity_defect(p) > tol.residual_abs * std::max(1.0, p.frobenius_norm()) ||
        distance(p * p, p) > tol.residual_abs * std::max(1.0, p.frobenius_norm())) {
      throw InvalidArgument("check_axioms: code space is not an orthogonal projector");
    }
    for (const StarAlgebra& a : algebras) {
      for (const Mat& b : a.basis) {
        if (commutator(p, b).frobenius_norm() > tol.residual_abs) {
          throw InvalidArgument("check_axioms: code space is not invariant under algebra '" +
                                a.name + "'");
        }
      }
    }
    const Mat w = range_isometry(p, tol);
    for (const StarAlgebra& a : algebras) restricted.push_back(restrict_to(a, w, tol));
  } else {
    restricted.assign(algebras.begin(), algebras.end());
  }

  Rng rng(seed);
  AxiomReport rep;
  const int n = static_cast<int>(restricted.size());
  const int code = restricted.front().space_dim;
  rep.code_dim = code;
  rep.expected_dim = code * code;
  rep.commute_method = "pairwise";
  rep.commute.assign(n, std::vector<bool>(n, true));
  rep.commute_residual.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    rep.names.push_back(algebras[i].name);
    for (int j = i + 1; j < n; ++j) {
      const double r = pairwise_residual(restricted[i], restricted[j], rng, rep.commute_method);
      rep.commute_residual[i][j] = rep.commute_residual[j][i] = r;
      rep.commute[i][j] = rep.commute[j][i] = r <= tol.residual_abs;
      rep.worst_commute_residual = std::max(rep.worst_commute_residual, r);
    }
  }
  bool squares = true;
  long long prod = 1;
  for (const StarAlgebra& a : restricted) {
    rep.restricted_dims.push_back(a.dim());
    const int cdim = center(a, tol, rng.fork()).dim();
    rep.center_dims.push_back(cdim);
    rep.each_is_factor.push_back(cdim == 1);
    const int f = isqrt_exact(a.dim());
    if (f == 0) squares = false;
    rep.factor_dims.push_back(f);
    prod *= f;
  }
  if (rep.pairwise_commute()) {
    rep.join_dim = product_span_dim(restricted, tol);
  } else {
    rep.join_dim = join(restricted, tol).dim();
  }
  rep.completeness = rep.pairwise_commute() && rep.all_factors() && squares &&
                     rep.join_dim == rep.expected_dim && prod == code;
  return rep;
}

}  // namespace tpsforge
