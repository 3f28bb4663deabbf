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

#include "tpsforge/entanglement.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tpsforge/error.h"
#include "tpsforge/linalg.h"

namespace tpsforge {

Mat make_state(std::span<const cplx> amplitudes, bool require_unit) {
  Mat psi = Mat::column(amplitudes);
  const double n = psi.frobenius_norm();
  if (n == 0.0) throw InvalidArgument("state: zero vector");
  if (require_unit && std::abs(n - 1.0) > 1e-10) {
    throw InvalidArgument("state: not normalized (norm " + std::to_string(n) + ")");
  }
  psi *= 1.0 / n;
  return psi;
}

TensorCoords to_tps_coordinates(const Mat& psi, const TPSFactorization& tps) {
  if (psi.cols() != 1 || psi.rows() != tps.ambient_dim()) {
    throw InvalidArgument("to_tps_coordinates: state has the wrong shape");
  }
  const Mat c = tps.pullback_state(psi);
  const double outside = distance(psi, tps.code_isometry * c);
  if (outside > 1e-8) {
    throw InvalidArgument("to_tps_coordinates: state has weight " + std::to_string(outside) +
                          " outside the code space");
  }
  TensorCoords out;
  out.dims = tps.factor_dims;
  out.amplitudes.assign(c.flat().begin(), c.flat().end());
  return out;
}

Mat reduced_density(const Mat& psi, const TPSFactorization& tps,
                    std::vector<int> keep) {
  const TensorCoords t = to_tps_coordinates(psi, tps);
  const int n = static_cast<int>(t.dims.size());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty() || static_cast<int>(keep.size()) >= n || keep.front() < 0 ||
      keep.back() >= n) {
    throw InvalidArgument("reduced_density: keep must be a nonempty proper subset of factors");
  }
  std::vector<bool> kept(n, false);
  for (int k : keep) kept[k] = true;
  int dk = 1, dr = 1;
  for (int i = 0; i < n; ++i) (kept[i] ? dk : dr) *= t.dims[i];
  // Split every flat index into (kept index, traced index).
  Mat m(dk, dr);
  std::vector<int> digit(n, 0);
  for (std::size_t flat = 0; flat < t.amplitudes.size(); ++flat) {
    int rk = 0, rr = 0;
    for (int i = 0; i < n; ++i) {
      if (kept[i]) {
        rk = rk * t.dims[i] + digit[i];
      } else {
        rr = rr * t.dims[i] + digit[i];
      }
    }
    m(rk, rr) = t.amplitudes[flat];
    for (int i = n - 1; i >= 0; --i) {
      if (++digit[i] < t.dims[i]) break;
      digit[i] = 0;
    }
  }
  return m * m.adjoint();
}

Entropy entropy(const Mat& rho, const Tolerances& tol) {
  if (hermiticity_defect(rho) > tol.residual_abs) {
    throw InvalidArgument("entropy: density matrix is not Hermitian");
  }
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-10) {
    throw InvalidArgument("entropy: trace " + std::to_string(tr) + " is not 1");
  }
  const EigenSystem es = hermitian_eig(rho, tol);
  Entropy out;
  for (double l : es.values) {
    if (l < -tol.residual_abs) {
      throw InvalidArgument("entropy: density matrix is not positive semidefinite");
    }
    if (l >= 1e-12) out.nats -= l * std::log(l);
  }
  out.nats = std::max(out.nats, 0.0);
  out.bits = out.nats / std::log(2.0);
  return out;
}

std::vector<double> operator_schmidt(const Mat& u, const TPSFactorization& tps,
                                     const Tolerances& tol) {
  if (tps.factors() != 2) {
    throw InvalidArgument("operator_schmidt: factorization must be bipartite");
  }
  const int d1 = tps.factor_dims[0];
  const int d2 = tps.factor_dims[1];
  const Mat p = tps.pullback(u);
  Mat r(d1 * d1, d2 * d2);
  for (int a = 0; a < d1; ++a) {
    for (int ap = 0; ap < d1; ++ap) {
      for (int b = 0; b < d2; ++b) {
        for (int bp = 0; bp < d2; ++bp) {
          r(a * d1 + ap, b * d2 + bp) = p(a * d2 + b, ap * d2 + bp);
        }
      }
    }
  }
  std::vector<double> s = singular_values(r);
  const double cutoff = s.empty() ? 0.0 : tol.rank_rel * s.front();
  s.erase(std::remove_if(s.begin(), s.end(), [&](double v) { return v <= cutoff; }), s.end());
  return s;
}

}  // namespace tpsforge
