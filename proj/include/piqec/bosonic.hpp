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

// Spin-boson pointer states for J^2 and modular J^z measurements, a truncated
// Fock-space evolution used to check them, and gate counts.
//
//   H_0 = w_c a^dag a + w_0 J^z
//   H_d = xi_d (a^dag + a) J^2
//   H_r = xi_r J^z a^dag a

#include <Eigen/Eigenvalues>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "piqec/hilbert.hpp"

namespace piqec {

struct ModeParams {
  double omega_c = 1.0;
  double omega_0 = 0.0;
  double xi_d = 0.5;
  double xi_r = 1.0;
  cplx alpha = 0.0;
  double r = 0.0;  // squeezing

  void validate() const {
    if (!(omega_c > 0)) throw Error(ErrorKind::argument, "mode frequency must be positive");
    if (r < 0) throw Error(ErrorKind::argument, "squeezing must be non-negative");
  }
};

/// Mode component e^{-i phase} |amplitude>.
struct PointerState {
  cplx amplitude;
  double phase = 0.0;
};

/// Under H_0 + H_d from vacuum with spin state |j, m>. The forced-oscillator
/// phase enters with a negative sign in `phase` (so e^{+i ...} overall).
inline PointerState displacement_pointer(HalfInt j, double m, double t, const ModeParams& p) {
  p.validate();
  if (j.twice < 0 || t < 0) throw Error(ErrorKind::argument, "need j >= 0 and t >= 0");
  const double c = j.casimir();
  const double ratio = p.xi_d / p.omega_c;
  const cplx amp = -ratio * (1.0 - std::exp(cplx(0, -p.omega_c * t))) * c;
  const double geo = ratio * ratio * (p.omega_c * t - std::sin(p.omega_c * t)) * c * c;
  return {amp, p.omega_0 * m * t - geo};
}

/// Under H_0 + H_r from |alpha> with J^z = m.
inline PointerState rotation_pointer(double m, double t, const ModeParams& p) {
  p.validate();
  if (t < 0) throw Error(ErrorKind::argument, "need t >= 0");
  return {p.alpha * std::exp(cplx(0, -t * (p.omega_c + m * p.xi_r))), p.omega_0 * m * t};
}

/// Interaction time that rotates adjacent weights by 2 pi / g.
inline double rotation_time(int g, const ModeParams& p) {
  if (g < 1) throw Error(ErrorKind::argument, "modulus must be positive");
  return 2 * std::numbers::pi / (g * p.xi_r);
}

/// |<a|b>|^2 for coherent states.
inline double coherent_overlap(cplx a, cplx b) { return std::exp(-std::norm(a - b)); }

/// Smallest pointer separation for J^2 at t = (2k+1) pi / w_c.
inline double displacement_min_separation(const ModeParams& p) { return 4 * p.xi_d / p.omega_c; }

inline double rotation_min_separation(int g, const ModeParams& p) {
  if (g < 1) throw Error(ErrorKind::argument, "modulus must be positive");
  return 2 * std::abs(p.alpha) * std::sin(std::numbers::pi / g);
}

inline double squeezing_criterion(const ModeParams& p) {
  p.validate();
  const double x = 4 * std::exp(p.r) * p.xi_d / p.omega_c;
  return std::exp(-x * x);
}

struct PointerRow {
  double label = 0.0;  // j or Dicke weight
  cplx amplitude;
  double overlap = 1.0;  // with the previous row
};

/// J^2 pointers for j = 0, 1/2 or 1, ..., j_max (step 1 from j_min).
inline std::vector<PointerRow> displacement_table(const ModeParams& p, double t, HalfInt j_min, HalfInt j_max) {
  std::vector<PointerRow> out;
  for (int tw = j_min.twice; tw <= j_max.twice; tw += 2) {
    const auto ps = displacement_pointer(HalfInt::from_twice(tw), 0.0, t, p);
    const double ov = out.empty() ? 1.0 : coherent_overlap(out.back().amplitude, ps.amplitude);
    out.push_back({tw / 2.0, ps.amplitude, ov});
  }
  return out;
}

/// Modular J^z pointers for Dicke weights 0..n at t = 2 pi / (g xi_r).
inline std::vector<PointerRow> rotation_table(const ModeParams& p, int g, int n) {
  const double t = rotation_time(g, p);
  std::vector<PointerRow> out;
  for (int w = 0; w <= n; ++w) {
    const auto ps = rotation_pointer(n / 2.0 - w, t, p);
    const double ov = out.empty() ? 1.0 : coherent_overlap(out.back().amplitude, ps.amplitude);
    out.push_back({static_cast<double>(w), ps.amplitude, ov});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Truncated Fock-space oracle.

enum class Coupling { displacement, rotation };

struct FockEvolution {
  int n_spins = 0;
  int cutoff = 0;
  Matrix joint;  // cutoff x 2^n: joint(k, s) = <k, s|psi(t)>
  double tail = 0.0;  // population on the top 5 Fock levels
};

inline Vector coherent_state(cplx alpha, int cutoff) {
  Vector v(cutoff);
  cplx term = std::exp(-std::norm(alpha) / 2);
  for (int k = 0; k < cutoff; ++k) {
    v(k) = term;
    term *= alpha / std::sqrt(static_cast<double>(k + 1));
  }
  return v;
}

/// Evolves |spin> (x) |alpha> (vacuum for the displacement coupling) by exact
/// diagonalization of the truncated Hamiltonian.
inline FockEvolution fock_oracle(const Vector& spin, const ModeParams& p, Coupling coupling, double t,
                                 int cutoff = 60, double tail_bound = 1e-8) {
  p.validate();
  const auto ds = spin.size();
  int n = 0;
  while ((Eigen::Index{1} << n) < ds) ++n;
  if ((Eigen::Index{1} << n) != ds || n < 1 || n > 3) throw Error(ErrorKind::size, "oracle supports 1 to 3 spins");
  if (cutoff < 8) throw Error(ErrorKind::cutoff, "cutoff too small");
  Matrix a = Matrix::Zero(cutoff, cutoff);
  for (int k = 1; k < cutoff; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  const Matrix num = a.adjoint() * a;
  const Matrix jz_m = jz(n), j2 = j_squared(n, n);
  const Matrix id_s = Matrix::Identity(ds, ds), id_m = Matrix::Identity(cutoff, cutoff);
  // Mode index major: |k> (x) |s>.
  auto kron = [](const Matrix& x, const Matrix& y) {
    Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      for (Eigen::Index j = 0; j < x.cols(); ++j) out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    return out;
  };
  Matrix h = p.omega_c * kron(num, id_s) + p.omega_0 * kron(id_m, jz_m);
  cplx alpha0 = 0.0;
  if (coupling == Coupling::displacement) {
    h += p.xi_d * kron(a + a.adjoint(), j2);
  } else {
    h += p.xi_r * kron(num, jz_m);
    alpha0 = p.alpha;
  }
  const Matrix hs = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hs);
  const Vector start = kron(coherent_state(alpha0, cutoff), spin);
  Vector phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::exp(cplx(0, -es.eigenvalues()(i) * t));
  const Vector out = es.eigenvectors() * phases.cwiseProduct(es.eigenvectors().adjoint() * start);
  FockEvolution res{n, cutoff, Matrix(cutoff, ds), 0.0};
  for (int k = 0; k < cutoff; ++k) res.joint.row(k) = out.segment(k * ds, ds).transpose();
  for (int k = cutoff - 5; k < cutoff; ++k) res.tail += res.joint.row(k).squaredNorm();
  if (res.tail > tail_bound) throw Error(ErrorKind::cutoff, "Fock cutoff too small: tail population " + std::to_string(res.tail));
  return res;
}

/// Mode state conditioned on the spin component `spin` (not normalized).
inline Vector mode_component(const FockEvolution& e, const Vector& spin) {
  return e.joint * spin.conjugate();
}

/// Reads a coherent pointer e^{-i phase}|amplitude> from a mode vector.
inline PointerState read_pointer(const Vector& mode) {
  const auto cutoff = static_cast<int>(mode.size());
  cplx mean = 0.0;
  for (int k = 1; k < cutoff; ++k) mean += std::conj(mode(k - 1)) * std::sqrt(static_cast<double>(k)) * mode(k);
  mean /= mode.squaredNorm();
  const cplx ov = coherent_state(mean, cutoff).dot(mode);
  return {mean, -std::arg(ov)};
}

// ---------------------------------------------------------------------------
// Gate counts.

enum class Scheme { state_synthesis, subspace_mapping, deletion, controlled_x, teleportation };

inline const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::state_synthesis: return "state-synthesis";
    case Scheme::subspace_mapping: return "subspace-mapping";
    case Scheme::deletion: return "deletion";
    case Scheme::controlled_x: return "controlled-x";
    case Scheme::teleportation: return "teleportation";
  }
  return "unknown";
}

inline Scheme parse_scheme(const std::string& s) {
  for (auto k : {Scheme::state_synthesis, Scheme::subspace_mapping, Scheme::deletion, Scheme::controlled_x,
                 Scheme::teleportation})
    if (s == to_string(k)) return k;
  throw Error(ErrorKind::config, "unknown resource scheme '" + s + "'");
}

struct ResourceCounts {
  std::int64_t linear_gpg = 0;
  std::int64_t dispersive_gpg = 0;
  std::int64_t coupling_gates = 0;  // dispersive spin-mode couplings
  std::int64_t rotations = 0;
  std::int64_t measurements = 0;
  bool full_unitary = false;  // k = N + 1
};

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

inline ResourceCounts resource_counts(int n, int k, Scheme scheme) {
  if (n < 1 || k < 1) throw Error(ErrorKind::argument, "need N >= 1 and k >= 1");
  const std::int64_t nn = n, kk = k;
  ResourceCounts r;
  switch (scheme) {
    case Scheme::state_synthesis:
      r.linear_gpg = ceil_div(2 * nn, 3);
      r.rotations = ceil_div(4 * nn, 3);
      break;
    case Scheme::subspace_mapping:
      r.linear_gpg = ceil_div(7 * nn * kk * kk - 3 * kk, 3);
      r.rotations = ceil_div(8 * nn * kk, 3);
      r.full_unitary = k == n + 1;
      break;
    case Scheme::deletion:
      r = resource_counts(n, 2, Scheme::subspace_mapping);
      break;
    case Scheme::controlled_x:
      r.dispersive_gpg = 1;
      r.coupling_gates = 12;
      r.rotations = 2;
      break;
    case Scheme::teleportation:
      r.linear_gpg = ceil_div(2 * nn, 3);
      r.dispersive_gpg = 1;
      r.coupling_gates = 12;
      r.rotations = ceil_div(4 * nn, 3) + 3;
      r.measurements = 1;
      break;
  }
  return r;
}

}  // namespace piqec
