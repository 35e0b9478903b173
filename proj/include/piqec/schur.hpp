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

// Coupled (Schur) basis along a Bratteli path and the inverse Clebsch-Gordan
// steps that peel qubits off it.
//
// Ladder convention: for a tableau T with total spin j_T, the vector with
// ladder index q = 0..2 j_T has J^z eigenvalue j_T - q. On the single-row
// tableau the vector with index q is the Dicke state of weight q, and in
// general index q sits on Hamming weight q + r2.

#include <map>
#include <mutex>
#include <vector>

#include "piqec/hilbert.hpp"
#include "piqec/tableaux.hpp"

namespace piqec {

inline constexpr int kMaxCoupledQubits = 14;
inline constexpr int kMaxSchurQubits = 11;

/// Condon-Shortley coupling of spin j' (first k-1 qubits) with one more qubit
/// appended as the least significant bit. For the coupled state with ladder
/// index q, `up` multiplies |j', q_up> |0> and `down` multiplies
/// |j', q_down> |1>; a prior index of -1 or beyond 2j' means the term is absent.
struct CGTerm {
  double up = 0.0;
  int q_up = 0;
  double down = 0.0;
  int q_down = 0;
};

inline CGTerm cg_term(HalfInt j_prev, bool raise, int q) {
  const double d = j_prev.twice + 1.0;
  if (raise) return {std::sqrt((d - q) / d), q, std::sqrt(q / d), q - 1};
  return {-std::sqrt((q + 1) / d), q + 1, std::sqrt((j_prev.twice - q) / d), q};
}

/// The 2x2 block taking (|j',M-1/2>|0>, |j',M+1/2>|1>) to (|j'+1/2,M>, |j'-1/2,M>),
/// with rows indexed by the coupled states. Orthogonal with real entries.
inline Eigen::Matrix2d cg_block(HalfInt j_prev, int twice_m) {
  const double d = 2.0 * (j_prev.twice + 1.0);
  const double a = std::sqrt((j_prev.twice + twice_m + 1.0) / d);
  const double b = std::sqrt((j_prev.twice - twice_m + 1.0) / d);
  Eigen::Matrix2d m;
  m << a, b, -b, a;
  return m;
}

namespace detail {
/// One coupling step: extends ladder vectors of spin j' on k qubits to the
/// spin j' +- 1/2 ladder on k+1 qubits.
inline std::vector<Vector> couple_step(const std::vector<Vector>& prev, HalfInt j_prev, bool raise) {
  const HalfInt j_new = HalfInt::from_twice(j_prev.twice + (raise ? 1 : -1));
  const auto dim = prev.front().size();
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(j_new.twice) + 1);
  for (int q = 0; q <= j_new.twice; ++q) {
    const CGTerm t = cg_term(j_prev, raise, q);
    Vector v = Vector::Zero(2 * dim);
    auto add = [&](double c, int qp, int bit) {
      if (c == 0.0 || qp < 0 || qp > j_prev.twice) return;
      const Vector& p = prev[static_cast<std::size_t>(qp)];
      for (Eigen::Index x = 0; x < dim; ++x) v(2 * x + bit) += c * p(x);
    };
    add(t.up, t.q_up, 0);
    add(t.down, t.q_down, 1);
    out.push_back(std::move(v));
  }
  return out;
}
}  // namespace detail

class CoupledBasis {
 public:
  CoupledBasis(StandardYoungTableau t, std::vector<FullState> v)
      : tableau_(std::move(t)), vectors_(std::move(v)) {}

  [[nodiscard]] const StandardYoungTableau& tableau() const { return tableau_; }
  [[nodiscard]] const std::vector<FullState>& vectors() const { return vectors_; }
  [[nodiscard]] const FullState& operator[](int q) const { return vectors_.at(static_cast<std::size_t>(q)); }
  [[nodiscard]] int size() const { return static_cast<int>(vectors_.size()); }

  /// 2^N x (2 j_T + 1) isometry with the ladder vectors as columns.
  [[nodiscard]] Matrix matrix() const {
    Matrix b(vectors_.front().dim(), size());
    for (int q = 0; q < size(); ++q) b.col(q) = vectors_[q].amp();
    return b;
  }

 private:
  StandardYoungTableau tableau_;
  std::vector<FullState> vectors_;
};

inline CoupledBasis coupled_basis(const StandardYoungTableau& t) {
  const int n = t.n();
  if (n > kMaxCoupledQubits) throw Error(ErrorKind::size, "coupled basis limited to N <= 14");
  std::vector<Vector> ladder(2);
  ladder[0] = Vector::Zero(2);
  ladder[0](0) = 1.0;
  ladder[1] = Vector::Zero(2);
  ladder[1](1) = 1.0;
  for (int k = 1; k < n; ++k) ladder = detail::couple_step(ladder, t.j_path()[k - 1], t.yy()[k] == 0);
  std::vector<FullState> v;
  for (auto& x : ladder) v.emplace_back(n, std::move(x));
  return {t, std::move(v)};
}

/// Ladder vectors of every tableau on k qubits, in all_syts order.
inline std::vector<CoupledBasis> schur_basis(int k) {
  std::vector<CoupledBasis> out;
  for (const auto& t : all_syts(k)) out.push_back(coupled_basis(t));
  return out;
}

// ---------------------------------------------------------------------------
// Inverse Clebsch-Gordan steps.

namespace detail {
inline Matrix build_inverse_cg(int k) {
  const auto d = static_cast<Eigen::Index>(dim_of(k));
  Matrix coupled(d, d), partner = Matrix::Zero(d, d);
  std::map<std::vector<int>, CoupledBasis> prefix;
  for (auto& b : schur_basis(k - 1)) {
    auto key = b.tableau().yy();
    prefix.emplace(std::move(key), std::move(b));
  }
  Eigen::Index col = 0;
  for (const auto& b : schur_basis(k)) {
    const auto& yy = b.tableau().yy();
    const std::vector<int> head(yy.begin(), yy.end() - 1);
    const HalfInt jp = b.tableau().j_path()[k - 2];
    const auto& pb = prefix.at(head);
    for (int q = 0; q < b.size(); ++q, ++col) {
      coupled.col(col) = b[q].amp();
      int qp = q, bit = 0;
      if (yy.back() == 1) {
        bit = 1;
      } else if (q > jp.twice) {
        qp = jp.twice;
        bit = 1;
      }
      for (Eigen::Index x = 0; x < pb[qp].dim(); ++x) partner(2 * x + bit, col) = pb[qp].amp()(x);
    }
  }
  return partner * coupled.adjoint();
}
}  // namespace detail

/// U_k on the first k qubits (k >= 2): maps each coupled vector of a k-qubit
/// tableau to (its (k-1)-prefix ladder vector) x (computational state of qubit
/// k) with the same J^z. Cached per k.
inline const Matrix& inverse_cg_matrix(int k) {
  if (k < 2 || k > kMaxSchurQubits)
    throw Error(ErrorKind::size, "inverse CG step needs 2 <= k <= 11");
  static std::mutex mu;
  static std::map<int, Matrix> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, detail::build_inverse_cg(k)).first;
  return it->second;
}

/// Applies a 2^k x 2^k matrix to qubits 1..k of an N-qubit state.
inline FullState apply_on_prefix(const FullState& s, const Matrix& u, int k) {
  const int n = s.n_qubits();
  const auto rest = static_cast<Eigen::Index>(dim_of(n - k));
  const auto head = static_cast<Eigen::Index>(dim_of(k));
  if (u.rows() != head) throw Error(ErrorKind::argument, "prefix operator has wrong size");
  Eigen::Map<const Matrix> a(s.amp().data(), rest, head);
  Matrix r = a * u.transpose();
  return FullState(n, Eigen::Map<Vector>(r.data(), r.size()));
}

inline FullState inverse_cg_step(const FullState& s, int k) {
  return apply_on_prefix(s, inverse_cg_matrix(k), k);
}

inline FullState cg_step(const FullState& s, int k) {
  return apply_on_prefix(s, inverse_cg_matrix(k).adjoint(), k);
}

}  // namespace piqec
