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

// Teleportation of a T-code state on register B into a shifted gnu code on
// register A. Register A holds qubits 1..N_A, register B the remaining N_B.

#include <map>
#include <mutex>
#include <vector>

#include "piqec/recovery.hpp"

namespace piqec {

/// X_schur in T-coordinates: |q_T> -> i |2 j_T - q>_T.
inline Matrix x_schur_t(const StandardYoungTableau& t) {
  const int d = t.ladder_size();
  Matrix r = Matrix::Zero(d, d);
  for (int q = 0; q < d; ++q) r(d - 1 - q, q) = kI;
  return r;
}

/// X_schur on the whole space of n qubits, summed over every tableau.
/// Cached per n; n <= 10.
inline const Matrix& x_schur(int n) {
  check_matrix_size(n);
  static std::mutex mu;
  static std::map<int, Matrix> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    const auto d = static_cast<Eigen::Index>(dim_of(n));
    Matrix x = Matrix::Zero(d, d);
    for (const auto& b : schur_basis(n)) {
      const Matrix bm = b.matrix();
      x += bm * x_schur_t(b.tableau()) * bm.adjoint();
    }
    it = cache.emplace(n, std::move(x)).first;
  }
  return it->second;
}

/// X_schur on the symmetric subspace: weight w -> N - w with phase i.
inline Vector x_schur_symmetric(const Vector& dicke) {
  return kI * dicke.reverse();
}

inline const GnuParams& require_gnu(const PICode& code, const char* role) {
  if (!code.gnu()) throw Error(ErrorKind::unsupported_parameter, std::string(role) + " must be a gnu code");
  if (code.dimension() != 2)
    throw Error(ErrorKind::unsupported_parameter, std::string(role) + " must encode one qubit");
  return *code.gnu();
}

/// Logical class of a shifted value sigma in Z_{2g}: 0 near 0, 1 otherwise.
inline int logical_class(int sigma, int g) {
  const int half = (g - 1) / 2;
  return (sigma <= half || sigma >= 2 * g - half) ? 0 : 1;
}


struct TeleportRecord {
  int a = 0;      // modulo-2g outcome on B
  int sigma = 0;  // (a + r2_B - s_B) mod 2g
  int logical = 0;
  double probability = 0.0;
};

struct TeleportResult {
  SymmetricState state;  // register A, Dicke coordinates
  TeleportRecord record;
};

namespace detail {
inline void check_pair(const PICode& code_b, const PICode& code_a) {
  const auto& gb = require_gnu(code_b, "register B code");
  const auto& ga = require_gnu(code_a, "register A code");
  if (gb.g % 2 == 0 || ga.g % 2 == 0)
    throw Error(ErrorKind::unsupported_parameter, "teleportation needs odd g");
  if (gb.g != ga.g) throw Error(ErrorKind::unsupported_parameter, "registers need the same g");
}

/// Ancilla (|0_L> - i|1_L>)/sqrt2. With X_schur = i X_L the controlled map
/// then produces |0>|psi> + |1> X_L|psi> up to normalization.
inline Vector ancilla(const PICode& a) {
  return (a.codeword(0) - kI * a.codeword(1)) / std::sqrt(2.0);
}

inline int weight_class(int w, const GnuParams& p) { return logical_class(mod_pos(w - p.s, 2 * p.g), p.g); }

/// Shared tail: M(row over B sector, column over A weights) after the
/// controlled map. Rows carry the B ladder index through `row_q`.
inline TeleportResult finish(Matrix joint, const std::vector<int>& row_q, int r2_b,
                             const GnuParams& pb, int n_a, Rng& rng) {
  const int m = 2 * pb.g;
  std::vector<Matrix> branches(static_cast<std::size_t>(m), Matrix::Zero(joint.rows(), joint.cols()));
  for (Eigen::Index r = 0; r < joint.rows(); ++r) {
    if (row_q[r] < 0) continue;
    branches[static_cast<std::size_t>(row_q[r] % m)].row(r) = joint.row(r);
  }
  std::vector<double> probs;
  for (const auto& b : branches) probs.push_back(b.squaredNorm());
  const std::size_t a = sample_index(probs, rng);
  const Matrix& post = branches[a];
  Eigen::Index best = 0;
  post.rowwise().squaredNorm().maxCoeff(&best);
  Vector psi_a = post.row(best).transpose();
  psi_a.normalize();
  const double residual = (post - (post * psi_a.conjugate()) * psi_a.transpose()).norm();
  if (residual > 1e-8 * std::sqrt(probs[a]))
    throw Error(ErrorKind::consistency, "registers remain entangled after the measurement");
  TeleportRecord rec;
  rec.a = static_cast<int>(a);
  rec.sigma = mod_pos(rec.a + r2_b - pb.s, m);
  rec.logical = logical_class(rec.sigma, pb.g);
  rec.probability = probs[a];
  if (rec.logical == 1) psi_a = x_schur_symmetric(psi_a);
  return {SymmetricState(n_a, std::move(psi_a)), rec};
}
}  // namespace detail

/// Dense two-register simulation (N_A + N_B <= 14, N_B <= 10).
inline TeleportResult teleport_dense(const FullState& b_state, const StandardYoungTableau& t,
                                     const PICode& code_b, const PICode& code_a, Rng& rng) {
  detail::check_pair(code_b, code_a);
  const int nb = b_state.n_qubits();
  const int na = code_a.n_qubits();
  if (na + nb > kMaxCoupledQubits) throw Error(ErrorKind::size, "dense teleportation limited to 14 qubits");
  const FullState a_full = embed(SymmetricState(na, detail::ancilla(code_a)));
  // joint(xB, xA) = psi_A(xA) psi_B(xB); column-major storage matches the
  // A-major basis index xA * 2^{N_B} + xB.
  Matrix joint = b_state.amp() * a_full.amp().transpose();
  const Matrix& xs = x_schur(nb);
  const auto& pa = *code_a.gnu();
  for (std::uint64_t xa = 0; xa < dim_of(na); ++xa)
    if (detail::weight_class(popcount(xa), pa) == 1) {
      const auto c = static_cast<Eigen::Index>(xa);
      joint.col(c) = (xs * joint.col(c)).eval();
    }
  std::vector<int> row_q(static_cast<std::size_t>(joint.rows()));
  for (std::uint64_t xb = 0; xb < dim_of(nb); ++xb) row_q[xb] = popcount(xb) - t.r2();
  // Register A stays symmetric; read it in Dicke coordinates.
  Matrix to_dicke = Matrix::Zero(static_cast<Eigen::Index>(dim_of(na)), na + 1);
  for (std::uint64_t xa = 0; xa < dim_of(na); ++xa) {
    const int w = popcount(xa);
    to_dicke(static_cast<Eigen::Index>(xa), w) = 1.0 / std::sqrt(binom(na, w));
  }
  return detail::finish(joint * to_dicke, row_q, t.r2(), *code_b.gnu(), na, rng);
}

/// Compressed simulation on (2 j_T + 1) x (N_A + 1) coordinates.
inline TeleportResult teleport_compressed(const Vector& t_coords, const StandardYoungTableau& t,
                                          const PICode& code_b, const PICode& code_a, Rng& rng) {
  detail::check_pair(code_b, code_a);
  if (t_coords.size() != t.ladder_size()) throw Error(ErrorKind::argument, "T-coordinates have wrong length");
  const Vector anc = detail::ancilla(code_a);
  Matrix joint = t_coords * anc.transpose();
  const Matrix r = x_schur_t(t);
  const auto& pa = *code_a.gnu();
  for (int w = 0; w <= code_a.n_qubits(); ++w)
    if (detail::weight_class(w, pa) == 1) joint.col(w) = (r * joint.col(w)).eval();
  std::vector<int> row_q(static_cast<std::size_t>(joint.rows()));
  for (int q = 0; q < t.ladder_size(); ++q) row_q[q] = q;
  return detail::finish(std::move(joint), row_q, t.r2(), *code_b.gnu(), code_a.n_qubits(), rng);
}

/// Dispatches to the dense path when it fits, otherwise the compressed one.
inline TeleportResult teleport(const FullState& b_state, const StandardYoungTableau& t,
                               const PICode& code_b, const PICode& code_a, Rng& rng) {
  if (b_state.n_qubits() + code_a.n_qubits() <= kMaxCoupledQubits && b_state.n_qubits() <= kMaxMatrixQubits)
    return teleport_dense(b_state, t, code_b, code_a, rng);
  const Vector c = coupled_basis(t).matrix().adjoint() * b_state.amp();
  return teleport_compressed(c, t, code_b, code_a, rng);
}

}  // namespace piqec
