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

#include <numbers>

#include "piqec/bosonic.hpp"
#include "piqec/schur.hpp"

using namespace piqec;

namespace {

constexpr double kPi = std::numbers::pi;

struct SpinCase {
  Vector spin;
  HalfInt j;
  double m;
};

SpinCase triplet_m0() {
  return {dicke_state(2, 1).amp(), HalfInt::from_twice(2), 0.0};
}
SpinCase singlet() {
  Vector v = Vector::Zero(4);
  v(1) = 1 / std::sqrt(2.0);
  v(2) = -1 / std::sqrt(2.0);
  return {v, HalfInt::from_twice(0), 0.0};
}
SpinCase doublet_3() {
  const auto b = coupled_basis(StandardYoungTableau::from_string("001"));
  return {b[0].amp(), HalfInt::from_twice(1), 0.5};
}

double phase_gap(double a, double b) { return std::abs(std::remainder(a - b, 2 * kPi)); }

void expect_displacement_matches(const SpinCase& sc, const ModeParams& p, double t) {
  const auto ev = fock_oracle(sc.spin, p, Coupling::displacement, t, 70);
  const auto got = read_pointer(mode_component(ev, sc.spin));
  const auto want = displacement_pointer(sc.j, sc.m, t, p);
  EXPECT_NEAR(std::abs(got.amplitude - want.amplitude), 0, 1e-6);
  EXPECT_NEAR(phase_gap(got.phase, want.phase), 0, 1e-6);
}

TEST(Displacement, ClosedFormBasics) {
  ModeParams p;
  p.xi_d = 0.5;
  const auto z = displacement_pointer(HalfInt::from_twice(0), 0.0, 2.3, p);
  EXPECT_EQ(z.amplitude, cplx(0.0));
  EXPECT_EQ(z.phase, 0.0);
  const auto one = displacement_pointer(HalfInt::from_twice(2), 0.0, kPi, p);
  EXPECT_NEAR(std::abs(one.amplitude - cplx(-2.0)), 0, 1e-12);
  EXPECT_NEAR(displacement_min_separation(p), 2.0, 1e-15);
  EXPECT_NEAR(coherent_overlap(0.0, one.amplitude), std::exp(-4.0), 1e-12);
}

TEST(Displacement, SeparationGrowsWithJ) {
  ModeParams p;
  p.xi_d = 0.5;
  const auto table = displacement_table(p, 3 * kPi, HalfInt::from_twice(0), HalfInt::from_twice(8));
  ASSERT_EQ(table.size(), 5u);
  double prev = 0;
  for (std::size_t i = 1; i < table.size(); ++i) {
    const double gap = std::abs(table[i].amplitude - table[i - 1].amplitude);
    EXPECT_GT(gap, prev);
    EXPECT_GT(table[i].overlap, 0.0);
    EXPECT_LE(table[i].overlap, 1.0);
    prev = gap;
  }
  EXPECT_NEAR(std::abs(table[1].amplitude - table[0].amplitude), 4 * p.xi_d / p.omega_c, 1e-12);
}

TEST(Displacement, FockOracleAgrees) {
  ModeParams p;
  p.omega_c = 1.0;
  p.omega_0 = 0.3;
  p.xi_d = 0.5;
  expect_displacement_matches(triplet_m0(), p, kPi);
  expect_displacement_matches(triplet_m0(), p, 1.7);
  p.xi_d = 0.2;
  expect_displacement_matches(doublet_3(), p, 2.0);
  expect_displacement_matches({dicke_state(3, 0).amp(), HalfInt::from_twice(3), 1.5}, p, 1.3);
  p.omega_c = 2.0;
  expect_displacement_matches({dicke_state(3, 1).amp(), HalfInt::from_twice(3), 0.5}, p, 0.9);
}

TEST(Displacement, SingletLeavesVacuum) {
  ModeParams p;
  p.xi_d = 0.5;
  const auto sc = singlet();
  const auto ev = fock_oracle(sc.spin, p, Coupling::displacement, kPi);
  const Vector mode = mode_component(ev, sc.spin);
  EXPECT_NEAR(std::abs(mode(0)), 1, 1e-8);
}

TEST(Rotation, ClosedFormAndPointerGeometry) {
  ModeParams p;
  p.alpha = 4.0;
  EXPECT_NEAR(rotation_min_separation(8, p), 8 * std::sin(kPi / 8), 1e-12);
  EXPECT_NEAR(rotation_min_separation(8, p), 3.0614674589, 1e-9);
  const auto table = rotation_table(p, 8, 8);
  for (std::size_t i = 1; i < table.size(); ++i)
    EXPECT_NEAR(std::abs(table[i].amplitude - table[i - 1].amplitude), 2 * 4 * std::sin(kPi / 8), 1e-9);
  // Full turn for g = 1.
  const auto one = rotation_table(p, 1, 3);
  for (std::size_t i = 1; i < one.size(); ++i) EXPECT_NEAR(std::abs(one[i].amplitude - one[0].amplitude), 0, 1e-9);
  // m = 0 rotates only at the mode frequency.
  const auto r0 = rotation_pointer(0.0, 0.4, p);
  EXPECT_NEAR(std::abs(r0.amplitude - 4.0 * std::exp(cplx(0, -0.4))), 0, 1e-12);
}

TEST(Rotation, FockOracleAgrees) {
  ModeParams p;
  p.alpha = cplx(1.5, 0.5);
  p.xi_r = 0.7;
  p.omega_0 = 0.2;
  for (int w = 0; w <= 2; ++w) {
    const Vector spin = dicke_state(2, w).amp();
    for (double t : {rotation_time(2, p), 0.8}) {
      const auto ev = fock_oracle(spin, p, Coupling::rotation, t);
      const auto got = read_pointer(mode_component(ev, spin));
      const auto want = rotation_pointer(1.0 - w, t, p);
      EXPECT_NEAR(std::abs(got.amplitude - want.amplitude), 0, 1e-6);
      EXPECT_NEAR(phase_gap(got.phase, want.phase), 0, 1e-6);
    }
  }
}

TEST(Rotation, ModulusTwoSeparatesByPi) {
  ModeParams p;
  p.alpha = 2.0;
  const double t = rotation_time(2, p);
  const Vector s0 = dicke_state(2, 0).amp(), s1 = dicke_state(2, 1).amp();
  const auto a0 = read_pointer(mode_component(fock_oracle(s0, p, Coupling::rotation, t), s0)).amplitude;
  const auto a1 = read_pointer(mode_component(fock_oracle(s1, p, Coupling::rotation, t), s1)).amplitude;
  EXPECT_NEAR(phase_gap(std::arg(a0) - std::arg(a1), kPi), 0, 1e-6);
}

TEST(Squeezing, Criterion) {
  ModeParams p;
  p.xi_d = 0.25;
  EXPECT_NEAR(squeezing_criterion(p), std::exp(-1.0), 1e-15);
  p.r = 1.0;
  EXPECT_NEAR(squeezing_criterion(p), std::exp(-std::exp(2.0)), 1e-15);
  double prev = 1.0;
  for (double r = 0; r < 3; r += 0.5) {
    p.r = r;
    EXPECT_LE(squeezing_criterion(p), prev);
    prev = squeezing_criterion(p);
  }
  p.r = 10;
  EXPECT_LT(squeezing_criterion(p), 1e-300);
}

TEST(Oracle, CutoffGuard) {
  ModeParams p;
  p.xi_d = 2.0;
  const auto sc = triplet_m0();
  EXPECT_THROW(fock_oracle(sc.spin, p, Coupling::displacement, kPi, 20), Error);
  try {
    fock_oracle(sc.spin, p, Coupling::displacement, kPi, 20);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::cutoff);
  }
}

TEST(Resources, PrintedCounts) {
  const auto s = resource_counts(9, 1, Scheme::state_synthesis);
  EXPECT_EQ(s.linear_gpg, 6);
  EXPECT_EQ(s.rotations, 12);
  const auto s10 = resource_counts(10, 1, Scheme::state_synthesis);
  EXPECT_EQ(s10.linear_gpg, 7);
  EXPECT_EQ(s10.rotations, 14);
  for (int n : {1, 9, 483}) {
    const auto c = resource_counts(n, 1, Scheme::controlled_x);
    EXPECT_EQ(c.coupling_gates, 12);
    EXPECT_EQ(c.rotations, 2);
  }
  // k (7 N k / 3 - 1) and 8 N k / 3, rounded up.
  const auto m = resource_counts(4, 2, Scheme::subspace_mapping);
  EXPECT_EQ(m.linear_gpg, 36);  // 2 (56/3 - 1) = 35.33
  EXPECT_EQ(m.rotations, 22);   // 64/3
  EXPECT_EQ(resource_counts(4, 5, Scheme::subspace_mapping).full_unitary, true);
  const auto d = resource_counts(9, 1, Scheme::deletion);
  EXPECT_EQ(d.linear_gpg, 82);  // 2 (42 - 1)
  EXPECT_EQ(d.rotations, 48);
  const auto t = resource_counts(9, 1, Scheme::teleportation);
  EXPECT_EQ(t.linear_gpg, 6);
  EXPECT_EQ(t.dispersive_gpg, 1);
  EXPECT_EQ(t.coupling_gates, 12);
  EXPECT_EQ(t.rotations, 15);
  EXPECT_EQ(t.measurements, 1);
  EXPECT_EQ(parse_scheme("deletion"), Scheme::deletion);
  EXPECT_THROW(parse_scheme("nope"), Error);
}

}  // namespace
