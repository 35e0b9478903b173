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

#include <gtest/gtest.h>

#include <map>

#include "oracles.hpp"
#include "piqec/hilbert.hpp"

using namespace piqec;

namespace {

constexpr double kTol = 1e-12;

FullState ket(int n, std::uint64_t x) { return FullState::basis(n, x); }

TEST(Dicke, MatchesDefinition) {
  EXPECT_NEAR((dicke_state(1, 1).amp() - ket(1, 1).amp()).norm(), 0, kTol);
  const auto d21 = dicke_state(2, 1);
  EXPECT_NEAR(std::abs(d21[1] - 1 / std::sqrt(2.0)), 0, kTol);
  EXPECT_NEAR(std::abs(d21[2] - 1 / std::sqrt(2.0)), 0, kTol);
  const auto d42 = dicke_state(4, 2);
  int nonzero = 0;
  for (std::uint64_t x = 0; x < 16; ++x)
    if (std::abs(d42[x]) > 1e-14) {
      ++nonzero;
      EXPECT_NEAR(std::abs(d42[x]), 1 / std::sqrt(6.0), kTol);
    }
  EXPECT_EQ(nonzero, 6);
  for (int n = 1; n <= 8; ++n)
    for (int w = 0; w <= n; ++w)
      EXPECT_NEAR((dicke_state(n, w).amp() - oracle::dicke(n, w)).norm(), 0, kTol);
  EXPECT_THROW(dicke_state(3, 4), Error);
}

TEST(Symmetric, EmbedProjectRoundTrip) {
  Rng rng(3);
  std::normal_distribution<double> nd;
  for (int n = 1; n <= 8; ++n) {
    Vector v(n + 1);
    for (auto& x : v) x = cplx(nd(rng), nd(rng));
    const SymmetricState s(n, v.normalized());
    const auto full = embed(s);
    EXPECT_NEAR(full.norm(), 1.0, kTol);
    EXPECT_NEAR((project_symmetric(full).amp() - s.amp()).norm(), 0, kTol);
    EXPECT_NEAR(symmetric_residual(full), 0, kTol);
    EXPECT_TRUE(is_symmetric(full));
  }
}

TEST(AngularMomentum, JSquaredSingleQubit) {
  EXPECT_NEAR((j_squared(1, 1) - 0.75 * Matrix::Identity(2, 2)).norm(), 0, kTol);
}

TEST(AngularMomentum, JSquaredTwoQubitSpectrum) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(j_squared(2, 2));
  const auto ev = es.eigenvalues();
  EXPECT_NEAR(ev(0), 0.0, kTol);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(ev(i), 2.0, kTol);
}

TEST(AngularMomentum, MatchesKroneckerOracle) {
  for (int n = 1; n <= 5; ++n)
    for (int k = 1; k <= n; ++k)
      EXPECT_NEAR((j_squared(n, k) - oracle::total_spin_sq(n, k)).norm(), 0, 1e-10);
}

TEST(AngularMomentum, SwapFormulaMatchesDense) {
  Rng rng(5);
  std::normal_distribution<double> nd;
  for (int n = 2; n <= 7; ++n) {
    Vector v(static_cast<Eigen::Index>(dim_of(n)));
    for (auto& x : v) x = cplx(nd(rng), nd(rng));
    const FullState s(n, v);
    for (int k = 1; k <= n; ++k)
      EXPECT_NEAR((apply_j_squared(s, k).amp() - j_squared(n, k) * v).norm(), 0, 1e-9);
  }
}

TEST(AngularMomentum, CommutationAndSpectrum) {
  for (int n = 1; n <= 7; ++n) {
    std::vector<Matrix> j2;
    for (int k = 1; k <= n; ++k) j2.push_back(j_squared(n, k));
    const Matrix z = jz(n);
    for (int k = 0; k < n; ++k) {
      EXPECT_LT((j2[k] * z - z * j2[k]).norm(), 1e-10);
      for (int kp = 0; kp < n; ++kp) EXPECT_LT((j2[k] * j2[kp] - j2[kp] * j2[k]).norm(), 1e-10);
      Eigen::SelfAdjointEigenSolver<Matrix> es(j2[k]);
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        bool allowed = false;
        for (auto j : allowed_spins(k + 1)) allowed |= std::abs(es.eigenvalues()(i) - j.casimir()) < 1e-9;
        EXPECT_TRUE(allowed) << es.eigenvalues()(i);
      }
    }
  }
}

TEST(AngularMomentum, JzAndJx) {
  for (int n = 1; n <= 6; ++n)
    for (int w = 0; w <= n; ++w) {
      const Vector d = dicke_state(n, w).amp();
      EXPECT_NEAR((jz(n) * d - (n / 2.0 - w) * d).norm(), 0, kTol);
    }
  const Matrix z2 = jz(2);
  EXPECT_NEAR(z2(0, 0).real(), 1, kTol);
  EXPECT_NEAR(z2(1, 1).real(), 0, kTol);
  EXPECT_NEAR(z2(2, 2).real(), 0, kTol);
  EXPECT_NEAR(z2(3, 3).real(), -1, kTol);
  EXPECT_NEAR((jx(1) - 0.5 * pauli_matrix('X')).norm(), 0, kTol);
  EXPECT_NEAR((jy(1) - 0.5 * pauli_matrix('Y')).norm(), 0, kTol);
  EXPECT_NEAR((jx(3) - jx(3).adjoint()).cwiseAbs().maxCoeff(), 0, 1e-12);
}

TEST(Permutation, Basics) {
  EXPECT_NEAR((permutation_operator({1, 2, 3}) - Matrix::Identity(8, 8)).norm(), 0, kTol);
  EXPECT_NEAR((apply_permutation(ket(2, 0b01), {2, 1}).amp() - ket(2, 0b10).amp()).norm(), 0, kTol);
  Rng rng(9);
  const auto d = dicke_state(4, 2);
  for (int i = 0; i < 24; ++i)
    EXPECT_NEAR((apply_permutation(d, random_permutation(4, rng)).amp() - d.amp()).norm(), 0, kTol);
  EXPECT_THROW(apply_permutation(d, {1, 1, 2, 3}), Error);
  EXPECT_THROW(permutation_operator({0, 1}), Error);
}

TEST(Permutation, MovesQubitLabels) {
  // |100> with qubit 1 sent to position 3 becomes |001>.
  const auto out = apply_permutation(ket(3, 0b100), {3, 1, 2});
  EXPECT_NEAR(std::abs(out[0b001]), 1.0, kTol);
  const auto sigma = std::vector<int>{2, 3, 1};
  const Matrix p = permutation_operator(sigma);
  EXPECT_NEAR((p * p.adjoint() - Matrix::Identity(8, 8)).norm(), 0, kTol);
  EXPECT_NEAR((permutation_operator(inverse_permutation(sigma)) - p.adjoint()).norm(), 0, kTol);
}

TEST(Symmetric, EmbeddedStatesAreTranspositionInvariant) {
  for (int n = 2; n <= 6; ++n) {
    Vector v = Vector::Ones(n + 1).normalized();
    const auto s = embed(SymmetricState(n, v));
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b) {
        std::vector<int> sigma(n);
        std::iota(sigma.begin(), sigma.end(), 1);
        std::swap(sigma[a - 1], sigma[b - 1]);
        EXPECT_NEAR((permutation_operator(sigma) * s.amp() - s.amp()).norm(), 0, kTol);
      }
  }
}

TEST(LocalOperator, Examples) {
  const auto x2 = apply_weight_t_operator(ket(2, 0b00), {pauli_matrix('X'), {2}});
  EXPECT_NEAR(std::abs(x2[0b01]), 1.0, kTol);
  const auto z1 = apply_weight_t_operator(dicke_state(2, 1), {pauli_matrix('Z'), {1}});
  EXPECT_NEAR(std::abs(z1[0b01] - 1 / std::sqrt(2.0)), 0, kTol);
  EXPECT_NEAR(std::abs(z1[0b10] + 1 / std::sqrt(2.0)), 0, kTol);
  const double gamma = 0.3;
  Matrix k1(2, 2);
  k1 << 0, std::sqrt(gamma), 0, 0;
  const auto damp = apply_weight_t_operator(ket(1, 1), {k1, {1}});
  EXPECT_NEAR(std::abs(damp[0] - std::sqrt(gamma)), 0, kTol);
  EXPECT_THROW(apply_weight_t_operator(ket(2, 0), {pauli_matrix('X'), {3}}), Error);
  EXPECT_THROW(apply_weight_t_operator(ket(2, 0), {Matrix::Identity(4, 4), {1, 1}}), Error);
}

TEST(LocalOperator, MatchesKroneckerEmbedding) {
  Rng rng(11);
  std::normal_distribution<double> nd;
  const int n = 4;
  Vector v(16);
  for (auto& x : v) x = cplx(nd(rng), nd(rng));
  Matrix a(4, 4);
  for (auto& x : a.reshaped()) x = cplx(nd(rng), nd(rng));
  // Support {3, 1}: qubit 3 is the high bit of the local matrix.
  const auto got = apply_weight_t_operator(FullState(n, v), {a, {3, 1}});
  Matrix full = Matrix::Zero(16, 16);
  for (std::uint64_t x = 0; x < 16; ++x)
    for (std::uint64_t y = 0; y < 16; ++y) {
      const auto b = [](std::uint64_t z, int q) { return (z >> (4 - q)) & 1u; };
      if (b(x, 2) != b(y, 2) || b(x, 4) != b(y, 4)) continue;
      full(y, x) = a(2 * b(y, 3) + b(y, 1), 2 * b(x, 3) + b(x, 1));
    }
  EXPECT_NEAR((got.amp() - full * v).norm(), 0, 1e-12);
}

TEST(Pauli, FastPathMatchesKronecker) {
  const int n = 3;
  Vector v(8);
  for (int i = 0; i < 8; ++i) v(i) = cplx(i + 1, -i);
  for (const auto& p : paulis_of_weight(n, 2)) {
    oracle::Mat m = oracle::Mat::Identity(1, 1);
    for (char c : p.letters) m = oracle::kron(m, oracle::pauli(c));
    EXPECT_NEAR((apply_pauli(FullState(n, v), p).amp() - m * v).norm(), 0, 1e-12) << p.letters;
    EXPECT_NEAR((apply_weight_t_operator(FullState(n, v), p.as_local()).amp() - m * v).norm(), 0, 1e-12);
  }
  EXPECT_EQ(paulis_of_weight(4, 1).size(), 12u);
  EXPECT_EQ(paulis_of_weight(4, 2).size(), 54u);
}

TEST(ProjMeas, DeterministicOutcome) {
  Matrix p1 = Matrix::Zero(2, 2);
  p1(0, 0) = 1;
  const ProjectorSet set{{p1, Matrix::Identity(2, 2) - p1}};
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto r = proj_meas(ket(1, 0), set, rng);
    EXPECT_EQ(r.outcome, 0u);
    EXPECT_NEAR(r.probability, 1.0, kTol);
  }
}

TEST(ProjMeas, BornStatistics) {
  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  const ProjectorSet set{{p0, p1}};
  Vector plus(2);
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  Rng rng(2024);
  const int trials = 10000;
  int zeros = 0;
  for (int i = 0; i < trials; ++i) zeros += proj_meas(FullState(1, plus), set, rng).outcome == 0;
  EXPECT_NEAR(zeros / double(trials), 0.5, oracle::three_sigma(0.5, trials));
}

TEST(ProjMeas, DickeParity) {
  const auto d = dicke_state(2, 1);
  Matrix even = Matrix::Zero(4, 4);
  even(0, 0) = even(3, 3) = 1;
  const ProjectorSet set{{even, Matrix::Identity(4, 4) - even}};
  Rng rng(4);
  EXPECT_EQ(proj_meas(d, set, rng).outcome, 1u);
}

TEST(ProjMeas, RejectsIncompleteSet) {
  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1;
  Rng rng(1);
  try {
    proj_meas(ket(1, 0), ProjectorSet{{p0}}, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::projector_set);
  }
}

TEST(Sampling, RandomPermutationIsUniformOnS3) {
  Rng rng(77);
  std::map<std::vector<int>, int> counts;
  const int trials = 12000;
  for (int i = 0; i < trials; ++i) ++counts[random_permutation(3, rng)];
  ASSERT_EQ(counts.size(), 6u);
  for (const auto& [p, c] : counts) EXPECT_NEAR(c / double(trials), 1 / 6.0, oracle::three_sigma(1 / 6.0, trials));
}

}  // namespace
