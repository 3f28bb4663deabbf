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

#include "tpsforge/linalg.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "tpsforge/error.h"
#include "tpsforge/kernels.h"

namespace tpsforge {

namespace {

using EMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EMat> as_eigen(const Mat& m) {
  return Eigen::Map<const EMat>(m.data(), m.rows(), m.cols());
}

Mat from_eigen(const Eigen::MatrixXcd& e) {
  Mat out(static_cast<int>(e.rows()), static_cast<int>(e.cols()));
  for (int r = 0; r < out.rows(); ++r) {
    for (int c = 0; c < out.cols(); ++c) out(r, c) = e(r, c);
  }
  return out;
}

void require_same_shape(const Mat& a, const Mat& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument(std::string(what) + ": dimension mismatch (" +
                          std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + " vs " +
                          std::to_string(b.rows()) + "x" +
                          std::to_string(b.cols()) + ")");
  }
}

}  // namespace

cplx hs_inner(const Mat& a, const Mat& b) {
  require_same_shape(a, b, "hs_inner");
  return kernels::dot(a.data(), b.data(), a.size());
}

bool OrthonormalSpan::add(Mat m, double min_norm) {
  if (m.rows() != rows_ || m.cols() != cols_) {
    throw InvalidArgument("OrthonormalSpan: shape mismatch");
  }
  if (full()) return false;
  const std::size_t n = m.size();
  for (int pass = 0; pass < 2; ++pass) {
    for (const Mat& b : basis_) {
      const cplx c = kernels::dot(b.data(), m.data(), n);
      kernels::axpy(-c, b.data(), m.data(), n);
    }
  }
  const double nrm = std::sqrt(kernels::norm2(m.data(), n));
  if (!(nrm > min_norm)) return false;
  m *= 1.0 / nrm;
  basis_.push_back(std::move(m));
  return true;
}

bool OrthonormalSpan::add_hermitian(Mat m, double min_norm) {
  if (m.rows() != rows_ || m.cols() != cols_) {
    throw InvalidArgument("OrthonormalSpan: shape mismatch");
  }
  if (full()) return false;
  const std::size_t n = m.size();
  for (int pass = 0; pass < 2; ++pass) {
    for (const Mat& b : basis_) {
      const double c = kernels::dot(b.data(), m.data(), n).real();
      kernels::axpy(-c, b.data(), m.data(), n);
    }
  }
  const double nrm = std::sqrt(kernels::norm2(m.data(), n));
  if (!(nrm > min_norm)) return false;
  m *= 1.0 / nrm;
  basis_.push_back(std::move(m));
  return true;
}

bool OrthonormalSpan::add_relative(const Mat& m, double rel) {
  const double nrm = m.frobenius_norm();
  if (nrm == 0.0) return false;
  return add(m, rel * nrm);
}

std::vector<cplx> OrthonormalSpan::coefficients(const Mat& m) const {
  std::vector<cplx> out;
  out.reserve(basis_.size());
  for (const Mat& b : basis_) out.push_back(hs_inner(b, m));
  return out;
}

Mat OrthonormalSpan::project(const Mat& m) const {
  Mat out(rows_, cols_);
  for (const Mat& b : basis_) out.add_scaled(hs_inner(b, m), b);
  return out;
}

double OrthonormalSpan::residual(const Mat& m) const {
  Mat r = m;
  for (const Mat& b : basis_) r.add_scaled(-hs_inner(b, r), b);
  return r.frobenius_norm();
}

std::vector<Mat> orthonormal_basis(std::span<const Mat> ops,
                                   const Tolerances& tol) {
  if (ops.empty()) return {};
  double max_norm = 0.0;
  for (const Mat& m : ops) {
    require_same_shape(m, ops.front(), "orthonormal_basis");
    max_norm = std::max(max_norm, m.frobenius_norm());
  }
  OrthonormalSpan span(ops.front().rows(), ops.front().cols());
  if (max_norm == 0.0) return {};
  for (const Mat& m : ops) span.add(m, tol.rank_rel * max_norm);
  return std::move(span).release();
}

EigenSystem hermitian_eig(const Mat& h, const Tolerances& tol) {
  const int n = h.dim();
  const double nrm = h.frobenius_norm();
  if (hermiticity_defect(h) > tol.residual_abs * std::max(nrm, 1e-300)) {
    throw InvalidArgument("hermitian_eig: matrix is not Hermitian");
  }
  EigenSystem out;
  if (n == 0) return out;
  Eigen::MatrixXcd e = as_eigen(hermitian_part(h));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(e);
  if (solver.info() != Eigen::Success) {
    throw DegenerateDraw("hermitian_eig: eigensolver did not converge");
  }
  out.values.resize(n);
  for (int i = 0; i < n; ++i) out.values[i] = solver.eigenvalues()(i);
  out.vectors = from_eigen(solver.eigenvectors());
  return out;
}

std::vector<Cluster> cluster_eigenvalues(std::span<const double> ascending,
                                         double rel) {
  std::vector<Cluster> out;
  if (ascending.empty()) return out;
  double scale = 0.0;
  for (double v : ascending) scale = std::max(scale, std::abs(v));
  const double gap = rel * scale;
  int begin = 0;
  for (int i = 1; i < static_cast<int>(ascending.size()); ++i) {
    if (ascending[i] - ascending[i - 1] > gap) {
      out.push_back({begin, i});
      begin = i;
    }
  }
  out.push_back({begin, static_cast<int>(ascending.size())});
  return out;
}

namespace {

// Right singular vectors past the numerical rank.
Mat kernel_from_svd(const Mat& rows, double rel, double abs_cutoff) {
  const int n = rows.cols();
  if (n == 0) return Mat(0, 0);
  if (rows.rows() == 0) return Mat::identity(n);
  Eigen::MatrixXcd a = as_eigen(rows);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  const double cutoff = std::max(rel * smax, abs_cutoff);
  int rank = 0;
  if (smax > 0.0) {
    for (int i = 0; i < s.size(); ++i) {
      if (s(i) > cutoff) ++rank;
    }
  }
  const Eigen::MatrixXcd& v = svd.matrixV();
  Mat out(n, n - rank);
  for (int r = 0; r < n; ++r) {
    for (int c = rank; c < n; ++c) out(r, c - rank) = v(r, c);
  }
  return out;
}

}  // namespace

std::vector<Mat> hermitian_span(std::span<const Mat> herms, double rel) {
  if (herms.empty()) return {};
  const int d = herms.front().dim();
  const int len = d * d;
  const double r2 = std::sqrt(2.0);
  // Isometric real coordinates: diagonal, then sqrt(2) Re and Im of the upper
  // triangle.
  Eigen::MatrixXd a(len, static_cast<Eigen::Index>(herms.size()));
  for (std::size_t c = 0; c < herms.size(); ++c) {
    const Mat& h = herms[c];
    if (h.rows() != d || h.cols() != d) {
      throw InvalidArgument("hermitian_span: shape mismatch");
    }
    int k = 0;
    for (int i = 0; i < d; ++i) a(k++, c) = h(i, i).real();
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        const cplx v = 0.5 * (h(i, j) + std::conj(h(j, i)));
        a(k++, c) = r2 * v.real();
        a(k++, c) = r2 * v.imag();
      }
    }
  }
  const double max_norm = a.colwise().norm().maxCoeff();
  if (max_norm == 0.0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int rank = 0;
  while (rank < s.size() && s(rank) > rel * max_norm) ++rank;
  const Eigen::MatrixXd& u = svd.matrixU();
  std::vector<Mat> out;
  out.reserve(rank);
  for (int c = 0; c < rank; ++c) {
    Mat h(d, d);
    int k = 0;
    for (int i = 0; i < d; ++i) h(i, i) = u(k++, c);
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        const cplx v(u(k, c) / r2, u(k + 1, c) / r2);
        k += 2;
        h(i, j) = v;
        h(j, i) = std::conj(v);
      }
    }
    out.push_back(std::move(h));
  }
  return out;
}

Mat null_space(const Mat& rows, const Tolerances& tol) {
  return kernel_from_svd(rows, tol.rank_rel, 0.0);
}

Mat null_space_below(const Mat& rows, double cutoff) {
  return kernel_from_svd(rows, 0.0, cutoff);
}

std::vector<double> singular_values(const Mat& m) {
  if (m.empty()) return {};
  Eigen::MatrixXcd a = as_eigen(m);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  std::vector<double> out(svd.singularValues().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = svd.singularValues()(i);
  return out;
}

double spectral_norm(const Mat& m) {
  if (m.empty()) return 0.0;
  // Largest eigenvalue of the Gram matrix; only the top singular value is
  // needed, so the squaring costs no relevant precision.
  const Eigen::MatrixXcd e = as_eigen(m);
  const Eigen::MatrixXcd g = e.rows() >= e.cols() ? Eigen::MatrixXcd(e.adjoint() * e)
                                                  : Eigen::MatrixXcd(e * e.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

Mat unitary_exp(const Mat& h, double t, const Tolerances& tol) {
  const int n = h.dim();
  if (t == 0.0) {
    if (hermiticity_defect(h) > tol.residual_abs * h.frobenius_norm()) {
      throw InvalidArgument("unitary_exp: generator is not Hermitian");
    }
    return Mat::identity(n);
  }
  const EigenSystem es = hermitian_eig(h, tol);
  Mat scaled = es.vectors;
  for (int c = 0; c < n; ++c) {
    const cplx phase = std::polar(1.0, -t * es.values[c]);
    for (int r = 0; r < n; ++r) scaled(r, c) *= phase;
  }
  return scaled * es.vectors.adjoint();
}

double unitarity_defect(const Mat& u) {
  return distance(u.adjoint() * u, Mat::identity(u.cols()));
}

double isometry_defect(const Mat& v) { return unitarity_defect(v); }

Mat range_isometry(const Mat& p, const Tolerances& tol) {
  const int n = p.dim();
  std::vector<Mat> residuals;
  residuals.reserve(n);
  double max_norm = 0.0;
  for (int c = 0; c < n; ++c) {
    residuals.push_back(p.col_block(c, 1));
    max_norm = std::max(max_norm, residuals.back().frobenius_norm());
  }
  if (max_norm == 0.0) return Mat(n, 0);
  const double stop = tol.eig_cluster_rel * max_norm;
  std::vector<std::pair<int, Mat>> picked;
  std::vector<bool> used(n, false);
  while (static_cast<int>(picked.size()) < n) {
    int best = -1;
    double best_norm = stop;
    for (int c = 0; c < n; ++c) {
      if (used[c]) continue;
      const double nrm = residuals[c].frobenius_norm();
      if (nrm > best_norm) {
        best_norm = nrm;
        best = c;
      }
    }
    if (best < 0) break;
    used[best] = true;
    Mat q = residuals[best];
    // One re-orthogonalization pass against earlier picks.
    for (const auto& [idx, prev] : picked) q.add_scaled(-hs_inner(prev, q), prev);
    q *= 1.0 / q.frobenius_norm();
    for (int c = 0; c < n; ++c) {
      if (!used[c]) residuals[c].add_scaled(-hs_inner(q, residuals[c]), q);
    }
    picked.emplace_back(best, std::move(q));
  }
  std::sort(picked.begin(), picked.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Mat out(n, static_cast<int>(picked.size()));
  for (int c = 0; c < out.cols(); ++c) out.set_block(0, c, picked[c].second);
  return out;
}

Mat polar_isometry(const Mat& t, const Tolerances& tol) {
  const Mat gram = hermitian_part(t.adjoint() * t);
  const EigenSystem es = hermitian_eig(gram, tol);
  const double lmax = es.values.empty() ? 0.0 : es.values.back();
  if (es.values.empty() || !(es.values.front() > tol.rank_rel * lmax) ||
      lmax <= 0.0) {
    throw DegenerateDraw("polar_isometry: matrix is column-rank deficient");
  }
  Mat scaled = es.vectors;
  for (int c = 0; c < scaled.cols(); ++c) {
    const double f = 1.0 / std::sqrt(es.values[c]);
    for (int r = 0; r < scaled.rows(); ++r) scaled(r, c) *= f;
  }
  return t * (scaled * es.vectors.adjoint());
}

Mat vectorize(const Mat& m) { return Mat::column(m.flat()); }

Mat unvectorize(const Mat& v, int rows, int cols) {
  if (v.cols() != 1 || v.rows() != rows * cols) {
    throw InvalidArgument("unvectorize: shape mismatch");
  }
  Mat out(rows, cols);
  std::copy(v.flat().begin(), v.flat().end(), out.flat().begin());
  return out;
}

}  // namespace tpsforge
