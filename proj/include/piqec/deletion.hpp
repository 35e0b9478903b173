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

// Recovery from t deleted qubits of a gnu code: the deleted qubits shift
// every Dicke weight down by a, and a is read off the weights modulo g.

#include <vector>

#include "piqec/noise.hpp"
#include "piqec/recovery.hpp"

namespace piqec {

/// Codewords of branch a (unnormalized, N - t + 1 Dicke amplitudes) for one
/// fixed pattern of deleted bits with a ones.
inline std::vector<Vector> deletion_branch_codewords(const PICode& code, int t, int a) {
  const int n = code.n_qubits();
  if (t < 0 || t >= n) throw Error(ErrorKind::argument, "deletion count out of range");
  if (a < 0 || a > t) throw Error(ErrorKind::argument, "shift out of range");
  std::vector<Vector> out;
  for (const auto& c : code.codewords()) {
    Vector v = Vector::Zero(n - t + 1);
    for (int w = a; w <= n; ++w) {
      const int wr = w - a;
      if (wr > n - t) continue;
      v(wr) = c(w) * std::sqrt(binom(n - t, wr) / binom(n, w));
    }
    out.push_back(std::move(v));
  }
  return out;
}

/// Total probability of shift a over all C(t, a) deleted-bit patterns.
inline double deletion_branch_probability(const PICode& code, int t, int a, const std::vector<cplx>& alpha) {
  const auto words = deletion_branch_codewords(code, t, a);
  Vector v = Vector::Zero(code.n_qubits() - t + 1);
  for (std::size_t j = 0; j < words.size(); ++j) v += alpha.at(j) * words[j];
  return binom(t, a) * v.squaredNorm();
}

inline void check_deletion_code(const PICode& code, int t) {
  if (!code.gnu()) throw Error(ErrorKind::unsupported_parameter, "deletion recovery needs a gnu code");
  if (code.gnu()->g < t + 1) throw Error(ErrorKind::unsupported_parameter, "deletion recovery needs g >= t + 1");
}

/// Code on N - t qubits that branch a is mapped into: the gnu code with shift
/// s - a when it fits, otherwise the normalized a = 0 branch code.
inline PICode deletion_target(const PICode& code, int t, int a) {
  check_deletion_code(code, t);
  const auto& p = *code.gnu();
  const int m = code.n_qubits() - t;
  const int shift = p.s - a;
  if (shift >= 0 && p.g * p.n <= m - shift) {
    const double u = static_cast<double>(m - shift) / (p.g * p.n);
    return gnu_code(p.g, p.n, u, shift);
  }
  auto words = deletion_branch_codewords(code, t, 0);
  for (auto& w : words) w.normalize();
  return PICode(m, std::move(words));
}

struct DeletionRecovery {
  SymmetricState state;  // in the target code
  PICode target;
  int residue = 0;  // modulo-g outcome
  int shift = 0;    // inferred a
  double probability = 0.0;
};

/// Recovers a state on N - t qubits produced by deleting t qubits from a
/// codeword superposition of `code`.
inline DeletionRecovery correct_deletions(const FullState& s, const PICode& code, int t, Rng& rng) {
  check_deletion_code(code, t);
  const int m = code.n_qubits() - t;
  if (s.n_qubits() != m) throw Error(ErrorKind::argument, "state size does not match N - t");
  const int g = code.gnu()->g;
  const auto meas = modulo_meas(s, g, rng, HalfInt::from_twice(m));
  const int r = meas.outcome.a;
  const int a = mod_pos(code.gnu()->s - r, g);
  if (a > t) throw Error(ErrorKind::consistency, "inferred shift exceeds the number of deletions");

  auto words = deletion_branch_codewords(code, t, a);
  const double n0 = words[0].norm();
  for (auto& w : words) {
    if (std::abs(w.norm() - n0) > 1e-9) throw Error(ErrorKind::kl_violation, "deletion branch deforms the logical state");
    w.normalize();
  }
  PICode target = deletion_target(code, t, a);
  Matrix src(m + 1, static_cast<Eigen::Index>(words.size()));
  Matrix dst(m + 1, static_cast<Eigen::Index>(words.size()));
  for (std::size_t j = 0; j < words.size(); ++j) {
    src.col(static_cast<Eigen::Index>(j)) = words[j];
    dst.col(static_cast<Eigen::Index>(j)) = target.codeword(static_cast<int>(j));
  }
  const Vector out = map_isometry(src, dst) * project_symmetric(meas.state).amp();
  return {SymmetricState(m, out), std::move(target), r, a, meas.outcome.probability};
}

}  // namespace piqec
