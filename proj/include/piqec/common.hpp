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

#include <bit>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace piqec {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using Rng = std::mt19937_64;

inline constexpr cplx kI{0.0, 1.0};

enum class ErrorKind {
  invalid_diagram,
  size,
  path,
  projector_set,
  argument,
  invalid_code,
  channel,
  kl_violation,
  decode,
  uncorrectible_tableau,
  operator_choice,
  codespace_leak,
  unsupported_parameter,
  calibration,
  consistency,
  cutoff,
  config,
  io,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_diagram: return "invalid-diagram";
    case ErrorKind::size: return "size";
    case ErrorKind::path: return "path";
    case ErrorKind::projector_set: return "projector-set";
    case ErrorKind::argument: return "argument";
    case ErrorKind::invalid_code: return "invalid-code";
    case ErrorKind::channel: return "channel";
    case ErrorKind::kl_violation: return "kl-violation";
    case ErrorKind::decode: return "decode";
    case ErrorKind::uncorrectible_tableau: return "uncorrectible-tableau";
    case ErrorKind::operator_choice: return "operator-choice";
    case ErrorKind::codespace_leak: return "codespace-leak";
    case ErrorKind::unsupported_parameter: return "unsupported-parameter";
    case ErrorKind::calibration: return "calibration";
    case ErrorKind::consistency: return "consistency";
    case ErrorKind::cutoff: return "cutoff";
    case ErrorKind::config: return "config";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

/// Every failure raised by the library carries a category so the CLI can
/// print a stable "error[<kind>]: <message>" line.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Spin quantum numbers kept as 2j so all combinatorics stays in integers.
struct HalfInt {
  int twice = 0;

  static constexpr HalfInt from_twice(int t) { return HalfInt{t}; }
  [[nodiscard]] constexpr double value() const { return twice / 2.0; }
  [[nodiscard]] constexpr double casimir() const {
    return value() * (value() + 1.0);
  }
  friend constexpr bool operator==(HalfInt, HalfInt) = default;
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;
};

inline std::uint64_t dim_of(int n_qubits) { return std::uint64_t{1} << n_qubits; }

inline int popcount(std::uint64_t x) { return std::popcount(x); }

/// Representative of x modulo m in [0, m).
inline int mod_pos(int x, int m) { return ((x % m) + m) % m; }

/// Bit position (from the LSB) of 1-based qubit `q` in an n-qubit index.
/// Qubit 1 is the most significant bit.
inline int bit_of(int n_qubits, int q) { return n_qubits - q; }

/// Exact binomial coefficient; returns 0 outside 0 <= k <= n.
inline std::uint64_t binom_u64(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

inline double binom(int n, int k) { return static_cast<double>(binom_u64(n, k)); }

// RNG helpers written out by hand so that sampled trajectories are identical
// across standard library implementations.

inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

/// Index drawn from a probability vector by one uniform draw against the
/// cumulative sum. Entries below `floor` are never selected. The vector is
/// renormalized when its sum is within 1e-9 of one.
inline std::size_t sample_index(const std::vector<double>& probs, Rng& rng,
                                double floor = 1e-12) {
  double total = 0.0;
  for (double p : probs) total += p;
  if (std::abs(total - 1.0) > 1e-9)
    throw Error(ErrorKind::projector_set,
                "outcome probabilities sum to " + std::to_string(total));
  double eligible = 0.0;
  for (double p : probs)
    if (p >= floor) eligible += p;
  const double u = uniform01(rng) * eligible;
  double acc = 0.0;
  std::size_t last = probs.size();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] < floor) continue;
    last = i;
    acc += probs[i];
    if (u < acc) return i;
  }
  return last;
}

inline std::vector<int> random_permutation(int n, Rng& rng) {
  std::vector<int> sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = i + 1;
  for (int i = n - 1; i > 0; --i) {
    auto j = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(i) + 1));
    std::swap(sigma[i], sigma[j]);
  }
  return sigma;
}

/// Haar-random single-qubit logical amplitudes (alpha_0, alpha_1).
inline std::vector<cplx> random_qubit_amplitudes(Rng& rng) {
  const double c2 = uniform01(rng);
  const double phi = 2.0 * std::numbers::pi * uniform01(rng);
  return {cplx(std::sqrt(c2), 0.0), std::polar(std::sqrt(1.0 - c2), phi)};
}

}  // namespace piqec
