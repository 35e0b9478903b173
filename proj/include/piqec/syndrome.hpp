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

#include <optional>
#include <string>
#include <vector>

#include "piqec/schur.hpp"

namespace piqec {

struct SytSyndrome {
  StandardYoungTableau tableau;
  double probability = 1.0;  // of the observed j path

  [[nodiscard]] HalfInt j_total() const { return tableau.j_total(); }
  [[nodiscard]] std::vector<int> doubled_path() const {
    std::vector<int> out;
    for (auto j : tableau.j_path()) out.push_back(j.twice);
    return out;
  }
};

struct SytMeasurement {
  FullState state;
  SytSyndrome syndrome;
};

/// Splits a state with definite J^2_[k-1] = j'(j'+1) into its J^2_[k] = j'+1/2
/// and j'-1/2 parts. The two-eigenvalue restriction makes
/// P_+ = (J^2_[k] - lambda_-) / (lambda_+ - lambda_-) exact.
inline std::pair<Vector, Vector> split_spin_step(const FullState& s, int k, HalfInt j_prev) {
  const HalfInt up = HalfInt::from_twice(j_prev.twice + 1);
  if (j_prev.twice == 0) return {s.amp(), Vector::Zero(s.dim())};
  const HalfInt down = HalfInt::from_twice(j_prev.twice - 1);
  const double lp = up.casimir(), lm = down.casimir();
  Vector plus = (apply_j_squared(s, k).amp() - lm * s.amp()) / (lp - lm);
  Vector minus = s.amp() - plus;
  return {std::move(plus), std::move(minus)};
}

/// Measures J^2_[2], ..., J^2_[N] in order and returns the collapsed state and
/// its tableau. Vectors in `tracked` receive the same (unnormalized)
/// projections as the state.
inline SytMeasurement measure_syt(const FullState& s, Rng& rng,
                                  std::vector<FullState>* tracked = nullptr) {
  const int n = s.n_qubits();
  if (n > kMaxCoupledQubits) throw Error(ErrorKind::size, "measure_syt limited to N <= 14");
  FullState cur = s.normalized();
  std::vector<HalfInt> path{HalfInt::from_twice(1)};
  double prob = 1.0;
  for (int k = 2; k <= n; ++k) {
    auto [plus, minus] = split_spin_step(cur, k, path.back());
    auto m = measure_branches(n, {plus, minus}, rng);
    if (tracked)
      for (auto& t : *tracked) {
        auto [tp, tm] = split_spin_step(t, k, path.back());
        t = FullState(n, m.outcome == 0 ? std::move(tp) : std::move(tm));
      }
    prob *= m.probability;
    path.push_back(HalfInt::from_twice(path.back().twice + (m.outcome == 0 ? 1 : -1)));
    cur = std::move(m.state);
  }
  return {std::move(cur), {syt_from_j_path(path), prob}};
}

/// Probability of every tableau for a state (exhaustive branching).
inline std::vector<std::pair<StandardYoungTableau, double>> syt_distribution(const FullState& s) {
  const int n = s.n_qubits();
  std::vector<std::pair<StandardYoungTableau, double>> out;
  auto rec = [&](auto&& self, const Vector& v, std::vector<HalfInt>& path) -> void {
    const double p = v.squaredNorm();
    if (p < 1e-14) return;
    if (static_cast<int>(path.size()) == n) {
      out.emplace_back(syt_from_j_path(path), p);
      return;
    }
    const int k = static_cast<int>(path.size()) + 1;
    auto [plus, minus] = split_spin_step(FullState(n, v), k, path.back());
    path.push_back(HalfInt::from_twice(path.back().twice + 1));
    self(self, plus, path);
    path.back() = HalfInt::from_twice(path.back().twice - 2);
    if (path.back().twice >= 0) self(self, minus, path);
    path.pop_back();
  };
  std::vector<HalfInt> path{HalfInt::from_twice(1)};
  const Vector start = s.amp() / s.norm();
  rec(rec, start, path);
  return out;
}

// ---------------------------------------------------------------------------
// Modulo magnetic-number measurement.

struct ModuloOutcome {
  int g = 1;
  int a = 0;
  double probability = 1.0;
};

struct ModuloMeasurement {
  FullState state;
  ModuloOutcome outcome;
};

inline void check_modulus(int g, int a) {
  if (g < 1) throw Error(ErrorKind::argument, "modulus must be positive");
  if (a < 0 || a >= g) throw Error(ErrorKind::argument, "residue must satisfy 0 <= a < g");
}

/// Q restricted to one tableau: the span of ladder vectors with q = a (mod g).
inline Matrix modulo_projector(const CoupledBasis& b, int g, int a) {
  check_modulus(g, a);
  const auto d = b[0].dim();
  Matrix p = Matrix::Zero(d, d);
  for (int q = a; q < b.size(); q += g) p += b[q].amp() * b[q].amp().adjoint();
  return p;
}

/// Q_{g,a} on the whole space, summed over every tableau. Dense; N <= 10.
inline Matrix modulo_projector(int n, int g, int a) {
  check_matrix_size(n);
  check_modulus(g, a);
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  Matrix p = Matrix::Zero(d, d);
  for (const auto& b : schur_basis(n)) p += modulo_projector(b, g, a);
  return p;
}

/// Component of the state with total J^2_[N] = j(j+1), by Lagrange
/// interpolation over the allowed spins.
inline Vector total_spin_component(const FullState& s, HalfInt j) {
  Vector v = s.amp();
  for (auto other : allowed_spins(s.n_qubits())) {
    if (other == j) continue;
    Vector jv = apply_j_squared(FullState(s.n_qubits(), v), s.n_qubits()).amp();
    v = (jv - other.casimir() * v) / (j.casimir() - other.casimir());
  }
  return v;
}

/// Branches Q_{g,a}|psi> for a = 0..g-1. A state known to sit in a single
/// total-spin sector may pass it to skip the sector decomposition.
inline std::vector<Vector> modulo_branches(const FullState& s, int g,
                                           std::optional<HalfInt> sector = {}) {
  check_modulus(g, 0);
  const int n = s.n_qubits();
  std::vector<Vector> branches(static_cast<std::size_t>(g), Vector::Zero(s.dim()));
  auto distribute = [&](const Vector& part, HalfInt j) {
    const int r2 = (n - j.twice) / 2;
    for (std::uint64_t x = 0; x < dim_of(n); ++x) {
      const cplx c = part(static_cast<Eigen::Index>(x));
      if (c == cplx{}) continue;
      const int q = popcount(x) - r2;
      if (q < 0 || q > j.twice) continue;  // numerically zero by construction
      branches[static_cast<std::size_t>(q % g)](static_cast<Eigen::Index>(x)) += c;
    }
  };
  if (sector) {
    distribute(s.amp(), *sector);
  } else {
    for (auto j : allowed_spins(n)) distribute(total_spin_component(s, j), j);
  }
  return branches;
}

inline ModuloMeasurement modulo_meas(const FullState& s, int g, Rng& rng,
                                     std::optional<HalfInt> sector = {}) {
  auto m = measure_branches(s.n_qubits(), modulo_branches(s.normalized(), g, sector), rng);
  return {std::move(m.state), {g, static_cast<int>(m.outcome), m.probability}};
}

}  // namespace piqec
