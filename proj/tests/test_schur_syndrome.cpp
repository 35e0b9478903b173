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
#include "piqec/codes.hpp"
#include "piqec/noise.hpp"
#include "piqec/rus.hpp"

using namespace piqec;

namespace {

StandardYoungTableau syt(const char* s) { return StandardYoungTableau::from_string(s); }

TEST(CGBlock, OrthogonalForAllSpins) {
  for (int jp = 0; jp <= 12; ++jp)
    for (int m = -(jp + 1); m <= jp + 1; m += 2) {
      const Eigen::Matrix2d b = cg_block(HalfInt::from_twice(jp), m);
      EXPECT_NEAR((b * b.transpose() - Eigen::Matrix2d::Identity()).norm(), 0, 1e-12);
    }
}

TEST(CoupledBasis, SingleRowIsDicke) {
  for (int n = 1; n <= 9; ++n) {
    const auto b = coupled_basis(StandardYoungTableau::single_row(n));
    ASSERT_EQ(b.size(), n + 1);
    for (int q = 0; q <= n; ++q)
      EXPECT_NEAR((b[q].amp() - oracle::dicke(n, q)).norm(), 0, 1e-12) << n << " " << q;
  }
}

TEST(CoupledBasis, Singlet) {
  const auto b = coupled_basis(syt("01"));
  ASSERT_EQ(b.size(), 1);
  EXPECT_NEAR(b[0][0b01].real(), 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(b[0][0b10].real(), -1 / std::sqrt(2.0), 1e-12);
}

TEST(CoupledBasis, EigenvectorsOfNestedSpins) {
  for (int n = 1; n <= 6; ++n)
    for (const auto& t : all_syts(n)) {
      const auto b = coupled_basis(t);
      const Matrix z = jz(n);
      for (int q = 0; q < b.size(); ++q) {
        const Vector& v = b[q].amp();
        EXPECT_NEAR(v.norm(), 1.0, 1e-12);
        for (int k = 1; k <= n; ++k) {
          const double lam = t.j_path()[k - 1].casimir();
          EXPECT_NEAR((oracle::total_spin_sq(n, k) * v - lam * v).norm(), 0, 1e-10);
        }
        EXPECT_NEAR((z * v - (t.j_total().value() - q) * v).norm(), 0, 1e-10);
        // Ladder index q lives on Hamming weight q + r2.
        for (std::uint64_t x = 0; x < dim_of(n); ++x)
          if (std::abs(v(x)) > 1e-12) EXPECT_EQ(popcount(x), q + t.r2());
      }
    }
}

TEST(CoupledBasis, ThreeQubitsYy001) {
  const auto b = coupled_basis(syt("001"));
  ASSERT_EQ(b.size(), 2);
  for (int q = 0; q < 2; ++q) {
    const Vector& v = b[q].amp();
    EXPECT_NEAR((oracle::total_spin_sq(3, 2) * v - 2.0 * v).norm(), 0, 1e-12);
    EXPECT_NEAR((oracle::total_spin_sq(3, 3) * v - 0.75 * v).norm(), 0, 1e-12);
  }
}

TEST(CoupledBasis, CompleteOrthonormalBasis) {
  for (int n = 1; n <= 8; ++n) {
    std::vector<Vector> all;
    for (const auto& b : schur_basis(n))
      for (int q = 0; q < b.size(); ++q) all.push_back(b[q].amp());
    ASSERT_EQ(all.size(), dim_of(n));
    Matrix m(static_cast<Eigen::Index>(dim_of(n)), static_cast<Eigen::Index>(all.size()));
    for (std::size_t i = 0; i < all.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = all[i];
    EXPECT_NEAR((m.adjoint() * m - Matrix::Identity(m.cols(), m.cols())).norm(), 0, 1e-10);
  }
}

TEST(CoupledBasis, HighestWeightCoefficientsPositive) {
  // Condon-Shortley: <j'  j' ; 1/2 (J - j')|J J> > 0 at each coupling step.
  for (const auto& t : all_syts(6)) {
    const auto b = coupled_basis(t);
    const auto prefix = StandardYoungTableau(std::vector<int>(t.yy().begin(), t.yy().end() - 1));
    const auto pb = coupled_basis(prefix);
    const int bit = t.yy().back();
    Vector partner = Vector::Zero(b[0].dim());
    for (Eigen::Index x = 0; x < pb[0].dim(); ++x) partner(2 * x + bit) = pb[0].amp()(x);
    EXPECT_GT(partner.dot(b[0].amp()).real(), 1e-6) << t.to_string();
  }
}

TEST(InverseCG, UnitaryAndDecouples) {
  for (int k = 2; k <= 8; ++k) {
    const Matrix& u = inverse_cg_matrix(k);
    EXPECT_NEAR((u * u.adjoint() - Matrix::Identity(u.rows(), u.cols())).norm(), 0, 1e-10);
    // Every coupled vector lands on (prefix ladder vector) x |bit> with the same J^z.
    for (const auto& b : schur_basis(k)) {
      const auto& yy = b.tableau().yy();
      const auto pb = coupled_basis(StandardYoungTableau(std::vector<int>(yy.begin(), yy.end() - 1)));
      for (int q = 0; q < b.size(); ++q) {
        const Vector img = u * b[q].amp();
        double best = 0;
        for (int qp = 0; qp < pb.size(); ++qp)
          for (int bit = 0; bit < 2; ++bit) {
            Vector partner = Vector::Zero(img.size());
            for (Eigen::Index x = 0; x < pb[qp].dim(); ++x) partner(2 * x + bit) = pb[qp].amp()(x);
            best = std::max(best, std::abs(partner.dot(img)));
          }
        EXPECT_NEAR(best, 1.0, 1e-10);
      }
    }
  }
}

TEST(InverseCG, SingletAndStretched) {
  const auto singlet = coupled_basis(syt("01"))[0];
  const auto out = inverse_cg_step(singlet, 2);
  EXPECT_NEAR(std::abs(out[0b01]), 1.0, 1e-12);
  const auto stretched = inverse_cg_step(FullState::basis(2, 0b11), 2);
  EXPECT_NEAR(std::abs(stretched[0b11]), 1.0, 1e-12);
}

TEST(InverseCG, PrefixApplicationMatchesKronecker) {
  Rng rng(4);
  std::normal_distribution<double> nd;
  Vector v(32);
  for (auto& x : v) x = cplx(nd(rng), nd(rng));
  const Matrix full = oracle::kron(inverse_cg_matrix(3), Matrix::Identity(4, 4));
  EXPECT_NEAR((inverse_cg_step(FullState(5, v), 3).amp() - full * v).norm(), 0, 1e-10);
  EXPECT_NEAR((cg_step(inverse_cg_step(FullState(5, v), 3), 3).amp() - v).norm(), 0, 1e-10);
}

TEST(MeasureSyt, SymmetricStatesGiveSingleRow) {
  Rng rng(1);
  const auto code = gnu_code(3, 3, 1, 0);
  for (int i = 0; i < 20; ++i) {
    const auto r = measure_syt(code.full_codeword(i % 2), rng);
    EXPECT_TRUE(r.syndrome.tableau.is_single_row());
    EXPECT_NEAR(r.syndrome.probability, 1.0, 1e-10);
  }
}

TEST(MeasureSyt, SingletGivesOneOne) {
  Rng rng(2);
  const auto r = measure_syt(coupled_basis(syt("01"))[0], rng);
  EXPECT_EQ(r.syndrome.tableau.to_string(), "01");
  EXPECT_EQ(r.syndrome.doubled_path(), (std::vector<int>{1, 0}));
}

TEST(MeasureSyt, PostStateInCoupledSpanAndIdempotent) {
  Rng rng(3);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    Vector v(64);
    for (auto& x : v) x = cplx(nd(rng), nd(rng));
    const auto r = measure_syt(FullState(6, v), rng);
    const Matrix b = coupled_basis(r.syndrome.tableau).matrix();
    EXPECT_NEAR((b * (b.adjoint() * r.state.amp()) - r.state.amp()).norm(), 0, 1e-10);
    const auto again = measure_syt(r.state, rng);
    EXPECT_EQ(again.syndrome.tableau, r.syndrome.tableau);
    EXPECT_NEAR(again.syndrome.probability, 1.0, 1e-10);
  }
}

TEST(MeasureSyt, DistributionMatchesEigenprojectorOracle) {
  const int n = 5;
  Rng rng(8);
  std::normal_distribution<double> nd;
  Vector v(32);
  for (auto& x : v) x = cplx(nd(rng), nd(rng));
  v.normalize();
  for (const auto& [t, p] : syt_distribution(FullState(n, v))) {
    Vector w = v;
    for (int k = 2; k <= n; ++k)
      w = oracle::eigenprojector(oracle::total_spin_sq(n, k), t.j_path()[k - 1].casimir()) * w;
    EXPECT_NEAR(w.squaredNorm(), p, 1e-10) << t.to_string();
  }
}

TEST(MeasureSyt, SymmetrizedErrorGivesBothShapes) {
  const auto code = gnu_code(3, 3, 1, 0);
  const auto err = apply_pauli(code.full_codeword(0), PauliString{"XIIIIIIII"});
  std::map<int, double> by_r2;
  for (const auto& [t, p] : syt_distribution(err)) by_r2[t.r2()] += p;
  EXPECT_GT(by_r2[0], 1e-3);
  EXPECT_GT(by_r2[1], 1e-3);
  double total = 0;
  for (auto [r, p] : by_r2) total += p;
  EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST(MeasureSyt, DistributionCovariantUnderErrorPosition) {
  const auto code = gnu_code(3, 3, 1, 0);
  std::map<std::string, double> ref;
  for (int q = 1; q <= 9; ++q) {
    std::string p(9, 'I');
    p[q - 1] = 'Y';
    const auto dist = syt_distribution(apply_pauli(code.full_codeword(1), {p}));
    std::map<int, double> by_r2;
    for (const auto& [t, pr] : dist) by_r2[t.r2()] += pr;
    if (q == 1)
      for (auto [r, pr] : by_r2) ref[std::to_string(r)] = pr;
    for (auto [r, pr] : by_r2) EXPECT_NEAR(pr, ref[std::to_string(r)], 1e-10);
  }
}

TEST(Modulo, ProjectorsResolveIdentity) {
  for (int n = 1; n <= 7; ++n)
    for (int g = 1; g <= 6; ++g) {
      const auto d = static_cast<Eigen::Index>(dim_of(n));
      Matrix sum = Matrix::Zero(d, d);
      std::vector<Matrix> qs;
      for (int a = 0; a < g; ++a) qs.push_back(modulo_projector(n, g, a));
      for (int a = 0; a < g; ++a) {
        sum += qs[a];
        EXPECT_NEAR((qs[a] * qs[a] - qs[a]).norm(), 0, 1e-10);
        for (int b = a + 1; b < g; ++b) EXPECT_NEAR((qs[a] * qs[b]).norm(), 0, 1e-10);
      }
      EXPECT_NEAR((sum - Matrix::Identity(d, d)).norm(), 0, 1e-10);
    }
  EXPECT_THROW(modulo_projector(3, 2, 2), Error);
}

TEST(Modulo, SymmetricSectorExamples) {
  EXPECT_NEAR((modulo_projector(4, 1, 0) - Matrix::Identity(16, 16)).norm(), 0, 1e-10);
  const auto single = coupled_basis(StandardYoungTableau::single_row(4));
  Matrix even = Matrix::Zero(16, 16);
  for (int w = 0; w <= 4; w += 2) even += oracle::dicke(4, w) * oracle::dicke(4, w).adjoint();
  EXPECT_NEAR((modulo_projector(single, 2, 0) - even).norm(), 0, 1e-10);
  const Matrix q = modulo_projector(coupled_basis(StandardYoungTableau::single_row(9)), 3, 0);
  EXPECT_NEAR(q.trace().real(), 4.0, 1e-9);
}

TEST(Modulo, FastBranchesMatchDenseProjectors) {
  Rng rng(6);
  std::normal_distribution<double> nd;
  for (int n = 2; n <= 7; ++n) {
    Vector v(static_cast<Eigen::Index>(dim_of(n)));
    for (auto& x : v) x = cplx(nd(rng), nd(rng));
    v.normalize();
    for (int g = 1; g <= 4; ++g) {
      const auto br = modulo_branches(FullState(n, v), g);
      for (int a = 0; a < g; ++a)
        EXPECT_NEAR((br[a] - modulo_projector(n, g, a) * v).norm(), 0, 1e-9) << n << g << a;
    }
  }
}

TEST(Modulo, MeasurementExamples) {
  Rng rng(7);
  const auto code = gnu_code(3, 3, 1, 0);
  for (int j = 0; j < 2; ++j) EXPECT_EQ(modulo_meas(code.full_codeword(j), 3, rng).outcome.a, 0);
  EXPECT_EQ(modulo_meas(dicke_state(4, 2), 2, rng).outcome.a, 0);
  EXPECT_EQ(modulo_meas(dicke_state(2, 1), 2, rng).outcome.a, 1);
}

TEST(RowTwoToBack, OrderPreservingRotation) {
  EXPECT_EQ(row_two_to_back(syt("0101")), (std::vector<int>{1, 3, 2, 4}));
  EXPECT_EQ(row_two_to_back(syt("0010")), (std::vector<int>{1, 2, 4, 3}));
}

TEST(Rus, SymmetricInputIsUntouched) {
  Rng rng(1);
  const auto s = dicke_state(5, 2);
  const auto r = project_symmetric_rus(s, StandardYoungTableau::single_row(5), rng);
  EXPECT_TRUE(r.converged);
  EXPECT_TRUE(r.rounds.empty());
  EXPECT_NEAR((r.state.amp() - s.amp()).norm(), 0, 1e-14);
}

TEST(Rus, ThreeQubitDoubletTerminates) {
  Rng rng(5);
  int total_rounds = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto b = coupled_basis(syt("001"));
    const auto r = project_symmetric_rus(b[trial % 2], b.tableau(), rng);
    ASSERT_TRUE(r.converged);
    EXPECT_TRUE(is_symmetric(r.state));
    for (const auto& round : r.rounds) EXPECT_GT(round.probability, 0.0);
    total_rounds += static_cast<int>(r.rounds.size());
  }
  EXPECT_GT(total_rounds, 0);
}

TEST(Rus, BookkeepingTracksTheState) {
  Rng rng(12);
  const auto code = gnu_code(3, 3, 1, 0);
  const auto t = syt("000000001");
  const auto b = coupled_basis(t);
  // T-code images: index q = w - r2 of each supported weight.
  std::vector<FullState> words;
  for (int j = 0; j < 2; ++j) {
    Vector v = Vector::Zero(b[0].dim());
    for (int w : code.support(j))
      if (w - 1 >= 0 && w - 1 < b.size()) v += code.codeword(j)(w) * b[w - 1].amp();
    words.emplace_back(9, v.normalized());
  }
  for (int trial = 0; trial < 20; ++trial) {
    const auto alpha = random_qubit_amplitudes(rng);
    const FullState in(9, alpha[0] * words[0].amp() + alpha[1] * words[1].amp());
    auto tracked = words;
    const auto r = project_symmetric_rus(in, t, rng, 64, &tracked);
    ASSERT_TRUE(r.converged);
    EXPECT_TRUE(is_symmetric(r.state, 1e-9));
    const Vector expect = alpha[0] * tracked[0].amp() + alpha[1] * tracked[1].amp();
    EXPECT_NEAR(std::abs(expect.normalized().dot(r.state.amp())), 1.0, 1e-10);
    EXPECT_NEAR(std::abs(tracked[0].amp().dot(tracked[1].amp())), 0, 1e-12);
  }
}

}  // namespace
