// Copyright 2026 The piqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library except for plain data types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Fillings of a two-row shape: choose the row-2 entries, sort both rows and
/// test the column condition directly.
inline std::vector<std::vector<int>> syt_fillings(int r1, int r2) {
  const int n = r1 + r2;
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != r2) continue;
    std::vector<int> row1, row2;
    for (int i = 0; i < n; ++i) ((mask >> i) & 1u ? row2 : row1).push_back(i + 1);
    bool ok = true;
    for (int i = 0; i < r2; ++i) ok = ok && row2[i] > row1[i];
    if (!ok) continue;
    std::vector<int> yy(n, 0);
    for (int v : row2) yy[v - 1] = 1;
    out.push_back(yy);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Kronecker product.
inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Mat pauli(char p) {
  Mat m(2, 2);
  if (p == 'X') m << 0, 1, 1, 0;
  else if (p == 'Y') m << 0, cplx(0, -1), cplx(0, 1), 0;
  else if (p == 'Z') m << 1, 0, 0, -1;
  else m << 1, 0, 0, 1;
  return m;
}

/// op on qubit q (1-based, qubit 1 leftmost in the Kronecker product).
inline Mat single(int n, int q, const Mat& op) {
  Mat out = Mat::Identity(1, 1);
  for (int i = 1; i <= n; ++i) out = kron(out, i == q ? op : Mat::Identity(2, 2));
  return out;
}

/// Total spin squared on qubits 1..k built from Kronecker products.
inline Mat total_spin_sq(int n, int k) {
  const auto d = Eigen::Index{1} << n;
  Mat sx = Mat::Zero(d, d), sy = sx, sz = sx;
  for (int q = 1; q <= k; ++q) {
    sx += 0.5 * single(n, q, pauli('X'));
    sy += 0.5 * single(n, q, pauli('Y'));
    sz += 0.5 * single(n, q, pauli('Z'));
  }
  return sx * sx + sy * sy + sz * sz;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Dicke state from its definition.
inline Vec dicke(int n, int w) {
  Vec v = Vec::Zero(Eigen::Index{1} << n);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
    if (__builtin_popcountll(x) == w) v(x) = 1.0;
  return v / std::sqrt(binomial(n, w));
}

/// Reduced density matrix after tracing out the last t qubits.
inline Mat trace_out_last(const Vec& psi, int n, int t) {
  const auto keep = Eigen::Index{1} << (n - t);
  const auto gone = Eigen::Index{1} << t;
  Mat rho = Mat::Zero(keep, keep);
  for (Eigen::Index a = 0; a < keep; ++a)
    for (Eigen::Index b = 0; b < keep; ++b)
      for (Eigen::Index e = 0; e < gone; ++e)
        rho(a, b) += psi(a * gone + e) * std::conj(psi(b * gone + e));
  return rho;
}

/// Orthogonal projector onto the eigenspace of hermitian h with eigenvalue lambda.
inline Mat eigenprojector(const Mat& h, double lambda, double tol = 1e-8) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Mat p = Mat::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    if (std::abs(es.eigenvalues()(i) - lambda) < tol)
      p += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  return p;
}

/// Binomial 3-sigma half-width for a frequency estimate.
inline double three_sigma(double p, int trials) { return 3.0 * std::sqrt(p * (1.0 - p) / trials); }

}  // namespace oracle
