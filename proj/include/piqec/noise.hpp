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

// Error channels applied by pure-state trajectory sampling.

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "piqec/codes.hpp"

namespace piqec {

struct KrausChannel {
  std::vector<LocalOperator> ops;
  std::vector<std::string> labels;  // optional, one per operator
};

inline LocalOperator adjoint(const LocalOperator& k) { return {k.op.adjoint(), k.support}; }

/// Checks sum_i K_i^dag K_i = 1 by its action on a few random states, which
/// detects any deviation with probability one.
inline void validate(const KrausChannel& ch, int n_qubits, double tol = 1e-9) {
  if (ch.ops.empty()) throw Error(ErrorKind::channel, "channel has no Kraus operators");
  Rng rng(0x5eed);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 3; ++trial) {
    Vector v(static_cast<Eigen::Index>(dim_of(n_qubits)));
    for (auto& x : v) x = cplx(normal(rng), normal(rng));
    const FullState psi(n_qubits, v.normalized());
    Vector acc = Vector::Zero(psi.dim());
    for (const auto& k : ch.ops)
      acc += apply_weight_t_operator(apply_weight_t_operator(psi, k), adjoint(k)).amp();
    if ((acc - psi.amp()).norm() > tol)
      throw Error(ErrorKind::channel, "channel is not trace preserving");
  }
}

struct ChannelSample {
  FullState state;
  std::size_t branch = 0;
  double probability = 0.0;
};

inline ChannelSample sample_channel(const FullState& s, const KrausChannel& ch, Rng& rng) {
  std::vector<Vector> branches;
  double total = 0.0;
  for (const auto& k : ch.ops) {
    branches.push_back(apply_weight_t_operator(s, k).amp());
    total += branches.back().squaredNorm();
  }
  if (std::abs(total - s.amp().squaredNorm()) > 1e-9)
    throw Error(ErrorKind::channel, "channel is not trace preserving on this state");
  auto m = measure_branches(s.n_qubits(), branches, rng);
  return {std::move(m.state), m.outcome, m.probability};
}

inline KrausChannel identity_channel() {
  return {{LocalOperator{Matrix::Identity(1, 1), {}}}, {"I"}};
}

/// With probability p one uniformly chosen qubit suffers X, Y or Z.
inline KrausChannel pauli1_channel(int n, double p) {
  if (p < 0.0 || p > 1.0) throw Error(ErrorKind::channel, "Pauli probability must lie in [0,1]");
  KrausChannel ch;
  ch.ops.push_back({Matrix::Identity(1, 1) * std::sqrt(1.0 - p), {}});
  ch.labels.emplace_back("I");
  const double amp = std::sqrt(p / (3.0 * n));
  for (int q = 1; q <= n; ++q)
    for (char c : {'X', 'Y', 'Z'}) {
      ch.ops.push_back({pauli_matrix(c) * amp, {q}});
      ch.labels.push_back(std::string(1, c) + std::to_string(q));
    }
  return ch;
}

/// One uniformly chosen qubit undergoes amplitude damping with rate gamma.
inline KrausChannel amplitude_damping_channel(int n, double gamma) {
  if (gamma < 0.0 || gamma > 1.0) throw Error(ErrorKind::channel, "damping rate must lie in [0,1]");
  KrausChannel ch;
  const double w = std::sqrt(1.0 / n);
  for (int q = 1; q <= n; ++q) {
    Matrix k0(2, 2), k1(2, 2);
    k0 << 1, 0, 0, std::sqrt(1.0 - gamma);
    k1 << 0, std::sqrt(gamma), 0, 0;
    ch.ops.push_back({k0 * w, {q}});
    ch.ops.push_back({k1 * w, {q}});
    ch.labels.push_back("K0_" + std::to_string(q));
    ch.labels.push_back("K1_" + std::to_string(q));
  }
  return ch;
}

/// Kraus file: each operator starts with "kraus q1 [q2 ...]" followed by
/// 2^t rows of 2^t "re im" pairs.
inline KrausChannel parse_kraus_text(const std::string& text) {
  std::istringstream in(text);
  KrausChannel ch;
  std::string line;
  auto next_data_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      const auto hash = out.find('#');
      if (hash != std::string::npos) out.erase(hash);
      if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  while (next_data_line(line)) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key != "kraus") throw Error(ErrorKind::config, "expected 'kraus' header, got '" + key + "'");
    LocalOperator k;
    int q = 0;
    while (ls >> q) k.support.push_back(q);
    const auto d = Eigen::Index{1} << k.support.size();
    k.op = Matrix::Zero(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      if (!next_data_line(line)) throw Error(ErrorKind::config, "truncated Kraus matrix");
      std::istringstream rs(line);
      for (Eigen::Index c = 0; c < d; ++c) {
        double re = 0, im = 0;
        if (!(rs >> re >> im)) throw Error(ErrorKind::config, "Kraus row needs re im pairs");
        k.op(r, c) = cplx(re, im);
      }
    }
    ch.ops.push_back(std::move(k));
    ch.labels.push_back("K" + std::to_string(ch.ops.size() - 1));
  }
  if (ch.ops.empty()) throw Error(ErrorKind::config, "Kraus file has no operators");
  return ch;
}

inline KrausChannel load_kraus_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::io, "cannot open Kraus file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_kraus_text(ss.str());
}

// ---------------------------------------------------------------------------
// Deletion.

struct DeletionRecord {
  std::vector<int> positions;
  std::vector<int> bits;  // computational-basis outcomes on the deleted qubits
  int shift = 0;          // number of ones among the deleted qubits
  double probability = 0.0;
};

struct DeletionSample {
  FullState state;
  DeletionRecord record;
};

inline std::vector<int> last_positions(int n, int t) { return qubit_range(n - t + 1, t); }

/// Unnormalized reduced state <bits|_positions |psi>.
inline FullState condition_on(const FullState& s, const std::vector<int>& positions,
                              const std::vector<int>& bits) {
  const int n = s.n_qubits();
  const int t = static_cast<int>(positions.size());
  std::vector<int> keep;
  for (int q = 1; q <= n; ++q)
    if (std::find(positions.begin(), positions.end(), q) == positions.end()) keep.push_back(q);
  auto out = FullState::zero(n - t);
  for (std::uint64_t y = 0; y < dim_of(n - t); ++y) {
    std::uint64_t x = 0;
    for (int i = 0; i < n - t; ++i)
      if ((y >> bit_of(n - t, i + 1)) & 1u) x |= std::uint64_t{1} << bit_of(n, keep[i]);
    for (int i = 0; i < t; ++i)
      if (bits[i]) x |= std::uint64_t{1} << bit_of(n, positions[i]);
    out.amp()(static_cast<Eigen::Index>(y)) = s[x];
  }
  return out;
}

/// Deletes the listed qubits. The partial trace is unraveled by measuring
/// those qubits in the computational basis.
inline DeletionSample delete_qubits(const FullState& s, std::vector<int> positions, Rng& rng) {
  const int n = s.n_qubits();
  const int t = static_cast<int>(positions.size());
  if (t >= n) throw Error(ErrorKind::argument, "cannot delete every qubit");
  check_support(n, positions);
  std::vector<Vector> branches;
  std::vector<std::vector<int>> patterns;
  for (std::uint64_t b = 0; b < dim_of(t); ++b) {
    std::vector<int> bits(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) bits[i] = static_cast<int>((b >> (t - 1 - i)) & 1u);
    branches.push_back(condition_on(s, positions, bits).amp());
    patterns.push_back(std::move(bits));
  }
  auto m = measure_branches(n - t, branches, rng);
  DeletionRecord rec{std::move(positions), patterns[m.outcome], 0, m.probability};
  rec.shift = static_cast<int>(std::count(rec.bits.begin(), rec.bits.end(), 1));
  return {std::move(m.state), std::move(rec)};
}

// ---------------------------------------------------------------------------
// Symmetrization.

inline FullState symmetrize(const FullState& s, Rng& rng) {
  return apply_permutation(s, random_permutation(s.n_qubits(), rng));
}

struct LemmaCheck {
  bool ok = false;
  cplx g;
  double residual = 0.0;  // || M - g 1 ||
};

/// Checks that <i|A^dag P_sigma^dag P_tau B|j> = g delta_ij over the codewords.
inline LemmaCheck symmetrizing_lemma_check(const PICode& code, const LocalOperator& a,
                                           const LocalOperator& b, const std::vector<int>& sigma,
                                           const std::vector<int>& tau, double tol = 1e-9) {
  const int m = code.dimension();
  std::vector<Vector> left, right;
  for (int j = 0; j < m; ++j) {
    const auto w = code.full_codeword(j);
    left.push_back(apply_permutation(apply_weight_t_operator(w, a), sigma).amp());
    right.push_back(apply_permutation(apply_weight_t_operator(w, b), tau).amp());
  }
  Matrix mm(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) mm(i, j) = left[i].dot(right[j]);
  LemmaCheck out;
  out.g = mm.trace() / static_cast<double>(m);
  out.residual = (mm - out.g * Matrix::Identity(m, m)).norm();
  out.ok = out.residual <= tol;
  return out;
}

}  // namespace piqec
