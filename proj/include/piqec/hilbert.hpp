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

// Dense N-qubit states. Basis index bits are ordered with qubit 1 as the most
// significant bit, so |x_1 ... x_N> has index sum_i x_i 2^(N-i).

#include <algorithm>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "piqec/common.hpp"

namespace piqec {

inline constexpr int kMaxDenseQubits = 22;

class FullState {
 public:
  FullState() = default;
  FullState(int n_qubits, Vector amp) : n_(n_qubits), amp_(std::move(amp)) {
    if (n_ < 1 || n_ > kMaxDenseQubits)
      throw Error(ErrorKind::size, "qubit count out of range: " + std::to_string(n_));
    if (static_cast<std::uint64_t>(amp_.size()) != dim_of(n_))
      throw Error(ErrorKind::size, "amplitude vector has wrong length");
  }

  static FullState zero(int n_qubits) {
    return FullState(n_qubits, Vector::Zero(static_cast<Eigen::Index>(dim_of(n_qubits))));
  }
  static FullState basis(int n_qubits, std::uint64_t index) {
    auto s = zero(n_qubits);
    s.amp_(static_cast<Eigen::Index>(index)) = 1.0;
    return s;
  }

  [[nodiscard]] int n_qubits() const { return n_; }
  [[nodiscard]] Eigen::Index dim() const { return amp_.size(); }
  [[nodiscard]] const Vector& amp() const { return amp_; }
  [[nodiscard]] Vector& amp() { return amp_; }
  [[nodiscard]] cplx operator[](std::uint64_t i) const {
    return amp_(static_cast<Eigen::Index>(i));
  }

  [[nodiscard]] double norm() const { return amp_.norm(); }
  [[nodiscard]] FullState normalized() const {
    const double nrm = norm();
    if (nrm < 1e-300) throw Error(ErrorKind::argument, "cannot normalize a zero state");
    return FullState(n_, amp_ / nrm);
  }
  [[nodiscard]] cplx inner(const FullState& other) const {
    return amp_.dot(other.amp_);  // conjugates *this
  }

 private:
  int n_ = 0;
  Vector amp_;
};

/// |<a|b>|^2 / (|a|^2 |b|^2).
inline double fidelity(const FullState& a, const FullState& b) {
  const double na = a.amp().squaredNorm();
  const double nb = b.amp().squaredNorm();
  return std::norm(a.inner(b)) / (na * nb);
}

/// Amplitudes over Dicke weights 0..N.
class SymmetricState {
 public:
  SymmetricState() = default;
  SymmetricState(int n_qubits, Vector dicke_amp)
      : n_(n_qubits), amp_(std::move(dicke_amp)) {
    if (n_ < 1) throw Error(ErrorKind::size, "qubit count must be positive");
    if (amp_.size() != n_ + 1) throw Error(ErrorKind::size, "need N+1 Dicke amplitudes");
  }
  [[nodiscard]] int n_qubits() const { return n_; }
  [[nodiscard]] const Vector& amp() const { return amp_; }
  [[nodiscard]] Vector& amp() { return amp_; }
  [[nodiscard]] double norm() const { return amp_.norm(); }

 private:
  int n_ = 0;
  Vector amp_;
};

inline FullState embed(const SymmetricState& s) {
  const int n = s.n_qubits();
  auto out = FullState::zero(n);
  std::vector<double> scale(static_cast<std::size_t>(n) + 1);
  for (int w = 0; w <= n; ++w) scale[w] = 1.0 / std::sqrt(binom(n, w));
  for (std::uint64_t x = 0; x < dim_of(n); ++x) {
    const int w = popcount(x);
    out.amp()(static_cast<Eigen::Index>(x)) = s.amp()(w) * scale[w];
  }
  return out;
}

/// Dicke coordinates <D_w|psi>. The caller decides whether the discarded
/// part matters; see symmetric_residual.
inline SymmetricState project_symmetric(const FullState& s) {
  const int n = s.n_qubits();
  Vector d = Vector::Zero(n + 1);
  for (std::uint64_t x = 0; x < dim_of(n); ++x) d(popcount(x)) += s[x];
  for (int w = 0; w <= n; ++w) d(w) /= std::sqrt(binom(n, w));
  return SymmetricState(n, std::move(d));
}

/// Norm of the component outside the symmetric subspace.
inline double symmetric_residual(const FullState& s) {
  return (s.amp() - embed(project_symmetric(s)).amp()).norm();
}

inline FullState dicke_state(int n, int w) {
  if (w < 0 || w > n) throw Error(ErrorKind::argument, "Dicke weight out of range");
  Vector d = Vector::Zero(n + 1);
  d(w) = 1.0;
  return embed(SymmetricState(n, std::move(d)));
}

// ---------------------------------------------------------------------------
// Local operators and Paulis.

/// A dense operator on the listed qubits (1-based, first listed qubit is the
/// most significant bit of the local matrix).
struct LocalOperator {
  Matrix op;
  std::vector<int> support;
};

inline void check_support(int n, const std::vector<int>& support) {
  std::vector<int> seen;
  for (int q : support) {
    if (q < 1 || q > n) throw Error(ErrorKind::argument, "support qubit out of range");
    if (std::find(seen.begin(), seen.end(), q) != seen.end())
      throw Error(ErrorKind::argument, "support qubits must be distinct");
    seen.push_back(q);
  }
}

/// Applies K to the state without renormalizing.
inline FullState apply_weight_t_operator(const FullState& s, const LocalOperator& k) {
  const int n = s.n_qubits();
  check_support(n, k.support);
  const int t = static_cast<int>(k.support.size());
  if (k.op.rows() != (Eigen::Index{1} << t) || k.op.cols() != k.op.rows())
    throw Error(ErrorKind::argument, "local operator dimension does not match support");
  std::uint64_t mask = 0;
  for (int q : k.support) mask |= std::uint64_t{1} << bit_of(n, q);
  auto local_index = [&](std::uint64_t x) {
    std::uint64_t li = 0;
    for (int q : k.support) li = (li << 1) | ((x >> bit_of(n, q)) & 1u);
    return li;
  };
  auto scatter = [&](std::uint64_t base, std::uint64_t li) {
    std::uint64_t x = base;
    for (int i = t - 1; i >= 0; --i, li >>= 1)
      if (li & 1u) x |= std::uint64_t{1} << bit_of(n, k.support[i]);
    return x;
  };
  auto out = FullState::zero(n);
  for (std::uint64_t x = 0; x < dim_of(n); ++x) {
    const cplx a = s[x];
    if (a == cplx{}) continue;
    const std::uint64_t base = x & ~mask;
    const auto col = static_cast<Eigen::Index>(local_index(x));
    for (Eigen::Index row = 0; row < k.op.rows(); ++row) {
      const cplx m = k.op(row, col);
      if (m != cplx{})
        out.amp()(static_cast<Eigen::Index>(scatter(base, static_cast<std::uint64_t>(row)))) += m * a;
    }
  }
  return out;
}

inline Matrix pauli_matrix(char p) {
  Matrix m(2, 2);
  switch (p) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -kI, kI, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw Error(ErrorKind::argument, std::string("unknown Pauli ") + p);
  }
  return m;
}

/// Pauli string as one letter per qubit, e.g. "IXZ".
struct PauliString {
  std::string letters;

  [[nodiscard]] int weight() const {
    return static_cast<int>(std::count_if(letters.begin(), letters.end(),
                                          [](char c) { return c != 'I'; }));
  }
  [[nodiscard]] LocalOperator as_local() const {
    LocalOperator k{Matrix::Identity(1, 1), {}};
    for (std::size_t i = 0; i < letters.size(); ++i) {
      if (letters[i] == 'I') continue;
      const Matrix p = pauli_matrix(letters[i]);
      Matrix next(k.op.rows() * 2, k.op.cols() * 2);
      for (Eigen::Index r = 0; r < k.op.rows(); ++r)
        for (Eigen::Index c = 0; c < k.op.cols(); ++c)
          next.block(2 * r, 2 * c, 2, 2) = k.op(r, c) * p;
      k.op = std::move(next);
      k.support.push_back(static_cast<int>(i) + 1);
    }
    return k;
  }
};

/// Fast Pauli-string action by bit flips and phases.
inline FullState apply_pauli(const FullState& s, const PauliString& p) {
  const int n = s.n_qubits();
  if (static_cast<int>(p.letters.size()) != n)
    throw Error(ErrorKind::argument, "Pauli string length must equal qubit count");
  std::uint64_t flip = 0, zmask = 0;
  int n_y = 0;
  for (int q = 1; q <= n; ++q) {
    const char c = p.letters[q - 1];
    const std::uint64_t b = std::uint64_t{1} << bit_of(n, q);
    if (c == 'X' || c == 'Y') flip |= b;
    if (c == 'Z' || c == 'Y') zmask |= b;
    if (c == 'Y') ++n_y;
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
      throw Error(ErrorKind::argument, "bad Pauli letter");
  }
  // Y = i X Z, so the string is i^{n_y} X^flip Z^zmask.
  cplx phase = 1.0;
  for (int i = 0; i < n_y; ++i) phase *= kI;
  auto out = FullState::zero(n);
  for (std::uint64_t x = 0; x < dim_of(n); ++x) {
    const double sign = (popcount(x & zmask) & 1) ? -1.0 : 1.0;
    out.amp()(static_cast<Eigen::Index>(x ^ flip)) = phase * sign * s[x];
  }
  return out;
}

/// All Pauli strings of weight exactly w on n qubits.
inline std::vector<PauliString> paulis_of_weight(int n, int w) {
  std::vector<PauliString> out;
  if (w == 0) {
    out.push_back({std::string(static_cast<std::size_t>(n), 'I')});
    return out;
  }
  std::vector<int> pos(w);
  std::iota(pos.begin(), pos.end(), 0);
  const char letters[3] = {'X', 'Y', 'Z'};
  while (true) {
    std::uint64_t combos = 1;
    for (int i = 0; i < w; ++i) combos *= 3;
    for (std::uint64_t c = 0; c < combos; ++c) {
      std::string s(static_cast<std::size_t>(n), 'I');
      std::uint64_t rest = c;
      for (int i = 0; i < w; ++i, rest /= 3) s[pos[i]] = letters[rest % 3];
      out.push_back({std::move(s)});
    }
    int i = w - 1;
    while (i >= 0 && pos[i] == n - w + i) --i;
    if (i < 0) break;
    ++pos[i];
    for (int k = i + 1; k < w; ++k) pos[k] = pos[k - 1] + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Permutations.

inline void check_permutation(const std::vector<int>& sigma) {
  std::vector<bool> hit(sigma.size(), false);
  for (int v : sigma) {
    if (v < 1 || v > static_cast<int>(sigma.size()) || hit[v - 1])
      throw Error(ErrorKind::argument, "permutation must be a bijection of 1..N");
    hit[v - 1] = true;
  }
}

/// P_sigma: the bit of qubit i moves to qubit sigma(i).
inline FullState apply_permutation(const FullState& s, const std::vector<int>& sigma) {
  const int n = s.n_qubits();
  if (static_cast<int>(sigma.size()) != n)
    throw Error(ErrorKind::argument, "permutation size must equal qubit count");
  check_permutation(sigma);
  auto out = FullState::zero(n);
  for (std::uint64_t x = 0; x < dim_of(n); ++x) {
    std::uint64_t y = 0;
    for (int q = 1; q <= n; ++q)
      if ((x >> bit_of(n, q)) & 1u) y |= std::uint64_t{1} << bit_of(n, sigma[q - 1]);
    out.amp()(static_cast<Eigen::Index>(y)) = s[x];
  }
  return out;
}

inline std::vector<int> inverse_permutation(const std::vector<int>& sigma) {
  std::vector<int> inv(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) inv[sigma[i] - 1] = static_cast<int>(i) + 1;
  return inv;
}

inline Matrix permutation_operator(const std::vector<int>& sigma) {
  check_permutation(sigma);
  const int n = static_cast<int>(sigma.size());
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  Matrix p = Matrix::Zero(d, d);
  for (std::uint64_t x = 0; x < dim_of(n); ++x) {
    const auto y = apply_permutation(FullState::basis(n, x), sigma);
    p.col(static_cast<Eigen::Index>(x)) = y.amp();
  }
  return p;
}

inline FullState apply_swap(const FullState& s, int qa, int qb) {
  const int n = s.n_qubits();
  const int ba = bit_of(n, qa), bb = bit_of(n, qb);
  auto out = s;
  for (std::uint64_t x = 0; x < dim_of(n); ++x) {
    const std::uint64_t xa = (x >> ba) & 1u, xb = (x >> bb) & 1u;
    if (xa == xb) continue;
    const std::uint64_t y = x ^ ((std::uint64_t{1} << ba) | (std::uint64_t{1} << bb));
    out.amp()(static_cast<Eigen::Index>(y)) = s[x];
  }
  return out;
}

/// Invariance under every adjacent transposition (which generate S_N).
inline bool is_symmetric(const FullState& s, double tol = 1e-10) {
  for (int q = 1; q < s.n_qubits(); ++q)
    if ((apply_swap(s, q, q + 1).amp() - s.amp()).norm() > tol) return false;
  return true;
}

/// Bit flip on every qubit.
inline FullState apply_global_flip(const FullState& s) {
  const std::uint64_t all = dim_of(s.n_qubits()) - 1;
  auto out = FullState::zero(s.n_qubits());
  for (std::uint64_t x = 0; x < dim_of(s.n_qubits()); ++x)
    out.amp()(static_cast<Eigen::Index>(x ^ all)) = s[x];
  return out;
}

// ---------------------------------------------------------------------------
// Angular momentum.

/// J^2 on the listed qubits through the identity
///   J^2 = k(4-k)/4 + sum_{a<b} SWAP_ab,
/// which follows from sigma_a . sigma_b = 2 SWAP_ab - 1.
inline FullState apply_j_squared_on(const FullState& s, const std::vector<int>& qubits) {
  const int k = static_cast<int>(qubits.size());
  Vector acc = s.amp() * (k * (4.0 - k) / 4.0);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) acc += apply_swap(s, qubits[a], qubits[b]).amp();
  return FullState(s.n_qubits(), std::move(acc));
}

inline std::vector<int> qubit_range(int first, int count) {
  std::vector<int> q(count);
  std::iota(q.begin(), q.end(), first);
  return q;
}

/// J^2 on the nested prefix [k] = {1..k}.
inline FullState apply_j_squared(const FullState& s, int k) {
  if (k < 1 || k > s.n_qubits()) throw Error(ErrorKind::argument, "prefix length out of range");
  return apply_j_squared_on(s, qubit_range(1, k));
}

/// Allowed total spins on k qubits: {k/2, k/2 - 1, ...} down to 0 or 1/2.
inline std::vector<HalfInt> allowed_spins(int k) {
  std::vector<HalfInt> out;
  for (int t = k; t >= 0; t -= 2) out.push_back(HalfInt::from_twice(t));
  return out;
}

namespace detail {
inline Matrix embed_single(int n, int q, const Matrix& op) {
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  Matrix m(d, d);
  for (std::uint64_t x = 0; x < dim_of(n); ++x) {
    const auto col = apply_weight_t_operator(FullState::basis(n, x), {op, {q}});
    m.col(static_cast<Eigen::Index>(x)) = col.amp();
  }
  return m;
}
inline Matrix collective(int n, int k, char p) {
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  Matrix m = Matrix::Zero(d, d);
  for (int q = 1; q <= k; ++q) m += 0.5 * embed_single(n, q, pauli_matrix(p));
  return m;
}
}  // namespace detail

inline constexpr int kMaxMatrixQubits = 10;

inline void check_matrix_size(int n) {
  if (n < 1 || n > kMaxMatrixQubits)
    throw Error(ErrorKind::size, "dense observables limited to N <= 10");
}

/// J^x_[k] etc. as dense 2^N x 2^N matrices; k defaults to N.
inline Matrix jx(int n, int k = -1) { check_matrix_size(n); return detail::collective(n, k < 0 ? n : k, 'X'); }
inline Matrix jy(int n, int k = -1) { check_matrix_size(n); return detail::collective(n, k < 0 ? n : k, 'Y'); }
inline Matrix jz(int n, int k = -1) { check_matrix_size(n); return detail::collective(n, k < 0 ? n : k, 'Z'); }

inline Matrix j_squared(int n, int k) {
  if (k < 1 || k > n) throw Error(ErrorKind::argument, "prefix length out of range");
  const Matrix x = jx(n, k), y = jy(n, k), z = jz(n, k);
  return x * x + y * y + z * z;
}

// ---------------------------------------------------------------------------
// Projective measurement.

struct ProjectorSet {
  std::vector<Matrix> projectors;
};

inline void validate(const ProjectorSet& set, double tol = 1e-10) {
  if (set.projectors.empty()) throw Error(ErrorKind::projector_set, "empty projector set");
  const auto d = set.projectors.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& p : set.projectors) {
    if (p.rows() != d || p.cols() != d)
      throw Error(ErrorKind::projector_set, "projector dimensions differ");
    if ((p - p.adjoint()).cwiseAbs().maxCoeff() > tol)
      throw Error(ErrorKind::projector_set, "projector is not Hermitian");
    if ((p * p - p).cwiseAbs().maxCoeff() > tol)
      throw Error(ErrorKind::projector_set, "projector is not idempotent");
    sum += p;
  }
  if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > tol)
    throw Error(ErrorKind::projector_set, "projectors do not sum to identity");
}

struct MeasurementResult {
  FullState state;
  std::size_t outcome = 0;
  double probability = 0.0;
};

/// Born-rule outcome from pre-computed branches P_j|psi>.
inline MeasurementResult measure_branches(int n, const std::vector<Vector>& branches, Rng& rng) {
  std::vector<double> probs;
  probs.reserve(branches.size());
  for (const auto& b : branches) probs.push_back(b.squaredNorm());
  const std::size_t j = sample_index(probs, rng);
  return {FullState(n, branches[j] / std::sqrt(probs[j])), j, probs[j]};
}

inline MeasurementResult proj_meas(const FullState& s, const ProjectorSet& set, Rng& rng) {
  validate(set);
  if (set.projectors.front().rows() != s.dim())
    throw Error(ErrorKind::projector_set, "projector dimension does not match state");
  std::vector<Vector> branches;
  for (const auto& p : set.projectors) branches.emplace_back(p * s.amp());
  return measure_branches(s.n_qubits(), branches, rng);
}

/// Unnormalized projection of the listed qubits onto computational values.
inline FullState project_bits(const FullState& s, const std::vector<int>& qubits,
                              const std::vector<int>& bits) {
  const int n = s.n_qubits();
  std::uint64_t mask = 0, want = 0;
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    const std::uint64_t b = std::uint64_t{1} << bit_of(n, qubits[i]);
    mask |= b;
    if (bits[i]) want |= b;
  }
  auto out = FullState::zero(n);
  for (std::uint64_t x = 0; x < dim_of(n); ++x)
    if ((x & mask) == want) out.amp()(static_cast<Eigen::Index>(x)) = s[x];
  return out;
}

struct QubitMeasurement {
  FullState state;
  std::vector<int> bits;
  double probability = 0.0;
};

/// Computational-basis measurement of the listed qubits; the register keeps
/// its size.
inline QubitMeasurement measure_qubits(const FullState& s, const std::vector<int>& qubits,
                                       Rng& rng) {
  check_support(s.n_qubits(), qubits);
  const int t = static_cast<int>(qubits.size());
  std::vector<Vector> branches;
  std::vector<std::vector<int>> patterns;
  for (std::uint64_t b = 0; b < dim_of(t); ++b) {
    std::vector<int> bits(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) bits[i] = static_cast<int>((b >> (t - 1 - i)) & 1u);
    branches.push_back(project_bits(s, qubits, bits).amp());
    patterns.push_back(std::move(bits));
  }
  auto m = measure_branches(s.n_qubits(), branches, rng);
  return {std::move(m.state), patterns[m.outcome], m.probability};
}

}  // namespace piqec
