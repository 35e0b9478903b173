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

// Second-stage decoding inside a fixed tableau sector: T-codes,
// Knill-Laflamme recovery, return to the codespace and amplitude rebalancing.
// Vectors inside a sector are handled in T-coordinates c = B_T^dag psi, where
// the columns of B_T are the ladder vectors of the tableau.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "piqec/codes.hpp"
#include "piqec/syndrome.hpp"

namespace piqec {

// ---------------------------------------------------------------------------
// Linear-algebra helpers.

/// Extends orthonormal columns to an orthonormal basis of the full space by
/// Gram-Schmidt against the standard basis. The given columns come first.
inline Matrix complete_basis(const Matrix& cols, double tol = 1e-10) {
  const auto d = cols.rows();
  Matrix out(d, d);
  Eigen::Index k = 0;
  auto push = [&](Vector v) {
    for (Eigen::Index i = 0; i < k; ++i) v -= out.col(i) * out.col(i).dot(v);
    for (Eigen::Index i = 0; i < k; ++i) v -= out.col(i) * out.col(i).dot(v);
    const double nrm = v.norm();
    if (nrm < tol) return false;
    out.col(k++) = v / nrm;
    return true;
  };
  for (Eigen::Index i = 0; i < cols.cols(); ++i)
    if (!push(cols.col(i))) throw Error(ErrorKind::consistency, "columns are not orthonormal");
  for (Eigen::Index i = 0; i < d && k < d; ++i) {
    Vector e = Vector::Zero(d);
    e(i) = 1.0;
    push(std::move(e));
  }
  return out;
}

/// Unitary sending src.col(i) to dst.col(i); both sets must be orthonormal.
inline Matrix map_isometry(const Matrix& src, const Matrix& dst) {
  if (src.cols() != dst.cols() || src.rows() != dst.rows())
    throw Error(ErrorKind::argument, "isometry endpoints differ in shape");
  if ((src.adjoint() * src - Matrix::Identity(src.cols(), src.cols())).norm() > 1e-8 ||
      (dst.adjoint() * dst - Matrix::Identity(dst.cols(), dst.cols())).norm() > 1e-8)
    throw Error(ErrorKind::consistency, "isometry endpoints are not orthonormal");
  return complete_basis(dst) * complete_basis(src).adjoint();
}

// ---------------------------------------------------------------------------
// T-codes.

struct TCode {
  CoupledBasis basis;
  std::vector<Vector> coords;   // normalized codewords in T-coordinates
  std::vector<double> retained;  // squared norm kept by the truncation
  bool subnormalized = false;

  [[nodiscard]] const StandardYoungTableau& tableau() const { return basis.tableau(); }
  [[nodiscard]] int dimension() const { return static_cast<int>(coords.size()); }
  [[nodiscard]] FullState full_codeword(int j) const {
    return FullState(basis.tableau().n(), basis.matrix() * coords.at(static_cast<std::size_t>(j)));
  }
  [[nodiscard]] FullState encode(const std::vector<cplx>& alpha) const {
    Vector c = Vector::Zero(basis.size());
    for (int j = 0; j < dimension(); ++j) c += alpha[j] * coords[j];
    return FullState(basis.tableau().n(), basis.matrix() * c);
  }
};

/// Codeword j carries a_w on the ladder vector q = w - r2 for every supported
/// weight w with 0 <= q <= 2 j_T; dropped weights make it subnormalized and
/// the kept part is renormalized.
inline TCode build_t_code(const PICode& code, const StandardYoungTableau& t) {
  if (t.n() != code.n_qubits()) throw Error(ErrorKind::argument, "tableau size does not match code");
  TCode out{coupled_basis(t), {}, {}, false};
  const int d = t.ladder_size();
  for (int j = 0; j < code.dimension(); ++j) {
    Vector c = Vector::Zero(d);
    for (int w = 0; w <= code.n_qubits(); ++w) {
      const int q = w - t.r2();
      if (q >= 0 && q < d) c(q) = code.codeword(j)(w);
    }
    const double kept = c.squaredNorm();
    if (kept < 1e-24)
      throw Error(ErrorKind::uncorrectible_tableau,
                  "codeword " + std::to_string(j) + " has no support on tableau " + t.to_string());
    out.retained.push_back(kept);
    out.subnormalized = out.subnormalized || kept < 1.0 - 1e-12;
    out.coords.push_back(c / std::sqrt(kept));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Correctible spaces and KL recovery.

struct CorrectibleDecomposition {
  StandardYoungTableau tableau;
  int r = 0;                                 // r_T
  std::vector<std::vector<Vector>> v;        // v[j][k], T-coordinates
  Matrix w_map;                              // W_T in T-coordinates
};

/// Gram-Schmidt on the images of codeword 0; the same combinations are
/// applied to every other codeword and the KL structure is verified.
/// images[e][j] = B_T^dag K_e |j_L>.
inline CorrectibleDecomposition correctible_decomposition_from_images(
    const StandardYoungTableau& t, const std::vector<std::vector<Vector>>& images,
    double tol = 1e-8) {
  if (images.empty()) throw Error(ErrorKind::argument, "no error operators given");
  const int m = static_cast<int>(images.front().size());
  const auto d = images.front().front().size();
  // Modified Gram-Schmidt with explicit coefficients over the image list.
  std::vector<Vector> basis0;
  std::vector<Eigen::VectorXcd> coeff;  // coefficients over images
  const auto ne = static_cast<Eigen::Index>(images.size());
  for (Eigen::Index e = 0; e < ne; ++e) {
    Vector r = images[e][0];
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(ne);
    c(e) = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < basis0.size(); ++k) {
        const cplx ov = basis0[k].dot(r);
        r -= ov * basis0[k];
        c -= ov * coeff[k];
      }
    const double nrm = r.norm();
    if (nrm < tol) continue;
    basis0.push_back(r / nrm);
    coeff.push_back(c / nrm);
  }
  const int rank = static_cast<int>(basis0.size());
  if (rank * m > d)
    throw Error(ErrorKind::kl_violation, "correctible spaces exceed the sector dimension");

  CorrectibleDecomposition out{t, rank, std::vector<std::vector<Vector>>(m), {}};
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < rank; ++k) {
      Vector v = Vector::Zero(d);
      for (Eigen::Index e = 0; e < ne; ++e)
        if (coeff[k](e) != cplx{}) v += coeff[k](e) * images[e][j];
      out.v[j].push_back(std::move(v));
    }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < rank; ++k)
        for (int l = 0; l < rank; ++l) {
          const cplx ov = out.v[i][k].dot(out.v[j][l]);
          const cplx want = (i == j && k == l) ? cplx(1.0) : cplx(0.0);
          if (std::abs(ov - want) > 1e-7)
            throw Error(ErrorKind::kl_violation,
                        "correctible spaces overlap on tableau " + t.to_string());
        }
  // Every error image must lie in the span of its codeword's space.
  for (Eigen::Index e = 0; e < ne; ++e)
    for (int j = 0; j < m; ++j) {
      Vector r = images[e][j];
      for (int k = 0; k < rank; ++k) r -= out.v[j][k] * out.v[j][k].dot(r);
      if (r.norm() > 1e-7)
        throw Error(ErrorKind::kl_violation, "error image escapes the correctible spaces");
    }
  // W_T: v[j][k] -> e_{j r + k}.
  Matrix src(d, m * rank), dst = Matrix::Zero(d, m * rank);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < rank; ++k) {
      src.col(j * rank + k) = out.v[j][k];
      dst(j * rank + k, j * rank + k) = 1.0;
    }
  out.w_map = map_isometry(src, dst);
  return out;
}

inline std::vector<std::vector<Vector>> t_images(const PICode& code, const CoupledBasis& b,
                                                 const std::vector<PauliString>& errors) {
  const Matrix bt = b.matrix().adjoint();
  std::vector<FullState> words;
  for (int j = 0; j < code.dimension(); ++j) words.push_back(code.full_codeword(j));
  std::vector<std::vector<Vector>> images;
  for (const auto& e : errors) {
    auto& row = images.emplace_back();
    for (const auto& w : words) row.push_back(bt * apply_pauli(w, e).amp());
  }
  return images;
}

inline std::vector<std::vector<Vector>> t_images(const PICode& code, const CoupledBasis& b,
                                                 const std::vector<LocalOperator>& errors) {
  const Matrix bt = b.matrix().adjoint();
  std::vector<FullState> words;
  for (int j = 0; j < code.dimension(); ++j) words.push_back(code.full_codeword(j));
  std::vector<std::vector<Vector>> images;
  for (const auto& e : errors) {
    auto& row = images.emplace_back();
    for (const auto& w : words) row.push_back(bt * apply_weight_t_operator(w, e).amp());
  }
  return images;
}

/// Decomposition for a correctible error set. Any weight-t channel is covered
/// by the identity plus all Paulis up to weight t, in every position.
template <class Errors>
CorrectibleDecomposition correctible_decomposition(const PICode& code, const TCode& tc,
                                                   const Errors& errors) {
  return correctible_decomposition_from_images(tc.tableau(), t_images(code, tc.basis, errors));
}

struct KLRecovery {
  FullState state;
  ModuloOutcome outcome;
};

/// W_T, ModuloMeas with modulus r_T, then V_{T,a+1} onto the T-code.
inline KLRecovery kl_recover(const FullState& s, const TCode& tc,
                             const CorrectibleDecomposition& dec, Rng& rng) {
  const Matrix b = tc.basis.matrix();
  const int n = s.n_qubits();
  const Vector c = b.adjoint() * s.amp();
  if ((b * c - s.amp()).norm() > 1e-8 * std::max(1.0, s.norm()))
    throw Error(ErrorKind::decode, "state is not inside the tableau sector");
  const FullState mapped(n, b * (dec.w_map * c));
  auto meas = modulo_meas(mapped, dec.r, rng, tc.tableau().j_total());
  const int a = meas.outcome.a;
  const int m = tc.dimension();
  Matrix src = Matrix::Zero(b.cols(), m), dst(b.cols(), m);
  for (int j = 0; j < m; ++j) {
    src(j * dec.r + a, j) = 1.0;
    dst.col(j) = tc.coords[j];
  }
  const Vector cm = b.adjoint() * meas.state.amp();
  for (Eigen::Index q = 0; q < cm.size(); ++q) {
    const bool named = q < m * dec.r && q % dec.r == a;
    if (!named && std::abs(cm(q)) > 1e-7)
      throw Error(ErrorKind::decode, "modulo outcome inconsistent with the decomposition");
  }
  const Matrix v = map_isometry(src, dst);
  return {FullState(n, b * (v * cm)), meas.outcome};
}

/// Logical amplitudes of a state in a T-code (or a code) by overlap.
inline std::vector<cplx> logical_amplitudes(const FullState& s, const std::vector<FullState>& words) {
  std::vector<cplx> out;
  for (const auto& w : words) out.push_back(w.amp().dot(s.amp()));
  return out;
}

/// |<alpha|logical part of s>|^2 with the leakage counted as infidelity.
inline double logical_fidelity(const FullState& s, const std::vector<FullState>& words,
                               const std::vector<cplx>& alpha) {
  cplx ov = 0.0;
  const auto amps = logical_amplitudes(s, words);
  for (std::size_t j = 0; j < amps.size(); ++j) ov += std::conj(alpha[j]) * amps[j];
  return std::norm(ov) / s.amp().squaredNorm();
}

// ---------------------------------------------------------------------------
// Return to the codespace after the symmetric projection.

struct CodespaceReturn {
  SymmetricState state;
  std::vector<double> norms;  // norm of each tracked codeword image
};

/// Maps the (symmetric) normalized images of the codewords onto the
/// codewords by a unitary on the symmetric subspace and applies it.
inline CodespaceReturn return_to_codespace(const FullState& s, const std::vector<FullState>& images,
                                           const PICode& code) {
  const int n = code.n_qubits();
  const int m = code.dimension();
  if (static_cast<int>(images.size()) != m) throw Error(ErrorKind::argument, "need one image per codeword");
  if (symmetric_residual(s) > 1e-8) throw Error(ErrorKind::decode, "state is not symmetric");
  Matrix src(n + 1, m), dst(n + 1, m);
  std::vector<double> norms;
  for (int j = 0; j < m; ++j) {
    const Vector d = project_symmetric(images[j]).amp();
    norms.push_back(d.norm());
    if (norms.back() < 1e-12)
      throw Error(ErrorKind::decode, "codeword image vanished; logical information lost");
    src.col(j) = d / norms.back();
    dst.col(j) = code.codeword(j);
  }
  const Matrix u = map_isometry(src, dst);
  return {SymmetricState(n, u * project_symmetric(s).amp()), std::move(norms)};
}

// ---------------------------------------------------------------------------
// Amplitude rebalancing on the first two codewords.

struct RebalanceBasis {
  double w = 0.0;
  Vector zero_w, one_w, zero_bar, one_bar;  // Dicke coordinates
  Matrix pi, pi_bar;                        // (N+1) x (N+1)
};

/// Gram-Schmidt partners |0'>, |1'> of the codewords under E = J^z.
inline std::pair<Vector, Vector> jz_partners(const PICode& code) {
  const int n = code.n_qubits();
  Vector jz_diag(n + 1);
  for (int w = 0; w <= n; ++w) jz_diag(w) = n / 2.0 - w;
  std::vector<Vector> out;
  for (int j = 0; j < 2; ++j) {
    const Vector& c = code.codeword(j);
    Vector e = jz_diag.cwiseProduct(c);
    e -= c * c.dot(e);
    if (e.norm() < 1e-10)
      throw Error(ErrorKind::operator_choice, "J^z maps a codeword onto itself; no partner state");
    out.push_back(e.normalized());
  }
  return {out[0], out[1]};
}

inline RebalanceBasis rebalance_projectors(const PICode& code, double w) {
  if (code.dimension() < 2) throw Error(ErrorKind::invalid_code, "rebalancing needs two codewords");
  if (w < -1.0 - 1e-12 || w > 1.0 + 1e-12) throw Error(ErrorKind::argument, "w out of range");
  const auto [p0, p1] = jz_partners(code);
  const Vector& c0 = code.codeword(0);
  const Vector& c1 = code.codeword(1);
  RebalanceBasis b;
  b.w = w;
  b.zero_w = (std::sqrt(3 + w) * c0 + std::sqrt(1 - w) * p0) / 2.0;
  b.one_w = (std::sqrt(3 - w) * c1 + std::sqrt(1 + w) * p1) / 2.0;
  b.zero_bar = (std::sqrt(1 - w) * c0 - std::sqrt(3 + w) * p0) / 2.0;
  b.one_bar = (std::sqrt(1 + w) * c1 - std::sqrt(3 - w) * p1) / 2.0;
  b.pi = b.zero_w * b.zero_w.adjoint() + b.one_w * b.one_w.adjoint();
  b.pi_bar = b.zero_bar * b.zero_bar.adjoint() + b.one_bar * b.one_bar.adjoint();
  return b;
}

/// Log change of |amp_0 / amp_1| per outcome.
inline double rebalance_shift_success(double w) { return 0.5 * std::log((3 + w) / (3 - w)); }
inline double rebalance_shift_failure(double w) { return 0.5 * std::log((1 - w) / (1 + w)); }

/// Next w for a remaining log-ratio L: exact when reachable in one success,
/// otherwise the largest step toward it.
inline double choose_w(double remaining) {
  if (std::abs(remaining) <= rebalance_shift_success(0.5)) return 3.0 * std::tanh(remaining);
  return remaining > 0 ? 0.5 : -0.5;
}

struct RebalanceStep {
  double w = 0.0;
  int bit = 0;  // 0 success (S1), 1 failure (S2)
  double probability = 0.0;
};

struct RebalanceRecord {
  std::vector<RebalanceStep> steps;
  double target = 0.0;    // requested log change of |amp_0 / amp_1|
  double achieved = 0.0;  // applied log change
  bool converged = false;

  [[nodiscard]] std::string bits() const {
    std::string s;
    for (const auto& st : steps) s.push_back(static_cast<char>('0' + st.bit));
    return s;
  }
};

struct RebalanceResult {
  SymmetricState state;
  RebalanceRecord record;
};

/// One measurement of {Pi_w, Pi_bar_w, rest} followed by the map back to the
/// codespace (|0_w>,|1_w> or |0bar_w>,|1bar_w> onto |0_L>,|1_L>).
inline std::pair<SymmetricState, RebalanceStep> rebalance_step(const SymmetricState& s,
                                                               const PICode& code, double w,
                                                               Rng& rng) {
  const auto b = rebalance_projectors(code, w);
  const Vector& v = s.amp();
  const Vector good = b.pi * v, bad = b.pi_bar * v;
  const Vector leak = v - good - bad;
  const std::vector<double> probs{good.squaredNorm(), bad.squaredNorm(), leak.squaredNorm()};
  const std::size_t k = sample_index(probs, rng);
  if (k == 2) throw Error(ErrorKind::codespace_leak, "rebalancing measurement left the codespace");
  const Vector& e0 = k == 0 ? b.zero_w : b.zero_bar;
  const Vector& e1 = k == 0 ? b.one_w : b.one_bar;
  Vector out = e0.dot(v) * code.codeword(0) + e1.dot(v) * code.codeword(1);
  out /= out.norm();
  return {SymmetricState(s.n_qubits(), std::move(out)),
          RebalanceStep{w, static_cast<int>(k), probs[k]}};
}

/// Changes |amp_0 / amp_1| by the factor e^{target} using adaptive steps.
inline RebalanceResult rebalance(const SymmetricState& s, const PICode& code, double target,
                                 Rng& rng, int max_steps = 2000, double tol = 1e-6) {
  RebalanceResult res{s, {{}, target, 0.0, false}};
  while (std::abs(target - res.record.achieved) > tol) {
    if (static_cast<int>(res.record.steps.size()) >= max_steps) return res;
    const double w = choose_w(target - res.record.achieved);
    auto [next, step] = rebalance_step(res.state, code, w, rng);
    res.record.achieved += step.bit == 0 ? rebalance_shift_success(w) : rebalance_shift_failure(w);
    res.record.steps.push_back(step);
    res.state = std::move(next);
  }
  res.record.converged = true;
  return res;
}

}  // namespace piqec
