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

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "piqec/hilbert.hpp"

namespace piqec {

struct GnuParams {
  int g = 0;
  int n = 0;
  double u = 1.0;
  int s = 0;
  int gnu = 0;  // g * n * u, required integral
};

/// A permutation-invariant code: M codewords given by Dicke amplitudes.
class PICode {
 public:
  PICode() = default;
  PICode(int n_qubits, std::vector<Vector> codewords, std::optional<GnuParams> gnu = {})
      : n_(n_qubits), words_(std::move(codewords)), gnu_(gnu) {
    if (n_ < 1) throw Error(ErrorKind::invalid_code, "code needs at least one qubit");
    for (const auto& w : words_)
      if (w.size() != n_ + 1)
        throw Error(ErrorKind::invalid_code, "codeword must have N+1 Dicke amplitudes");
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (std::abs(words_[i].norm() - 1.0) > 1e-10)
        throw Error(ErrorKind::invalid_code, "codeword " + std::to_string(i) + " is not normalized");
      for (std::size_t j = 0; j < i; ++j)
        if (std::abs(words_[i].dot(words_[j])) > 1e-10)
          throw Error(ErrorKind::invalid_code, "codewords are not orthogonal");
    }
  }

  [[nodiscard]] int n_qubits() const { return n_; }
  [[nodiscard]] int dimension() const { return static_cast<int>(words_.size()); }
  [[nodiscard]] const Vector& codeword(int j) const { return words_.at(static_cast<std::size_t>(j)); }
  [[nodiscard]] const std::vector<Vector>& codewords() const { return words_; }
  [[nodiscard]] const std::optional<GnuParams>& gnu() const { return gnu_; }

  [[nodiscard]] SymmetricState symmetric_codeword(int j) const { return {n_, codeword(j)}; }
  [[nodiscard]] FullState full_codeword(int j) const { return embed(symmetric_codeword(j)); }

  /// Weights with a nonzero amplitude in codeword j.
  [[nodiscard]] std::vector<int> support(int j, double tol = 1e-14) const {
    std::vector<int> w;
    for (int k = 0; k <= n_; ++k)
      if (std::abs(codeword(j)(k)) > tol) w.push_back(k);
    return w;
  }

 private:
  int n_ = 0;
  std::vector<Vector> words_;
  std::optional<GnuParams> gnu_;
};

/// Shifted gnu code on N = g n u + s qubits. Codeword j puts amplitude
/// 2^{-(n-1)/2} sqrt(C(n,k)) on weight g k + s for every k = j (mod 2).
inline PICode gnu_code(int g, int n, double u, int s) {
  if (g < 1 || n < 1) throw Error(ErrorKind::invalid_code, "g and n must be positive");
  if (s < 0) throw Error(ErrorKind::invalid_code, "shift must be non-negative");
  if (!(u >= 1.0 - 1e-12)) throw Error(ErrorKind::invalid_code, "scaling u must be at least 1");
  const double gnu_real = g * n * u;
  const int gnu = static_cast<int>(std::lround(gnu_real));
  if (std::abs(gnu_real - gnu) > 1e-9)
    throw Error(ErrorKind::invalid_code, "g n u must be an integer");
  const int n_qubits = gnu + s;
  if (g * n + s > n_qubits) throw Error(ErrorKind::invalid_code, "codeword weight exceeds N");
  if (n_qubits > 62) throw Error(ErrorKind::size, "qubit count too large");
  std::vector<Vector> words(2, Vector::Zero(n_qubits + 1));
  const double scale = std::pow(2.0, -(n - 1) / 2.0);
  for (int k = 0; k <= n; ++k)
    words[k % 2](g * k + s) = scale * std::sqrt(binom(n, k));
  return PICode(n_qubits, std::move(words), GnuParams{g, n, u, s, gnu});
}

inline SymmetricState encode(const PICode& code, const std::vector<cplx>& alpha) {
  if (static_cast<int>(alpha.size()) != code.dimension())
    throw Error(ErrorKind::argument, "need one amplitude per codeword");
  double nrm = 0.0;
  for (auto a : alpha) nrm += std::norm(a);
  if (std::abs(nrm - 1.0) > 1e-10) throw Error(ErrorKind::argument, "logical amplitudes must be normalized");
  Vector v = Vector::Zero(code.n_qubits() + 1);
  for (int j = 0; j < code.dimension(); ++j) v += alpha[j] * code.codeword(j);
  return {code.n_qubits(), std::move(v)};
}

// ---------------------------------------------------------------------------
// Knill-Laflamme checks.

struct KLWitness {
  bool ok = true;
  double worst = 0.0;  // largest deviation from delta_ij c_EF
  std::size_t e = 0, f = 0;
  int i = 0, j = 0;
};

/// images[e][i] = E_e |i_L>. Checks <i|E^dag F|j> = delta_ij c_EF for all pairs.
inline KLWitness kl_check_images(const std::vector<std::vector<Vector>>& images, double tol) {
  KLWitness w;
  for (std::size_t e = 0; e < images.size(); ++e)
    for (std::size_t f = e; f < images.size(); ++f) {
      const auto& a = images[e];
      const auto& b = images[f];
      const cplx c00 = a[0].dot(b[0]);
      for (int i = 0; i < static_cast<int>(a.size()); ++i)
        for (int j = 0; j < static_cast<int>(b.size()); ++j) {
          const cplx v = a[i].dot(b[j]);
          const double dev = std::abs(i == j ? v - c00 : v);
          if (dev > w.worst) w = {false, dev, e, f, i, j};
        }
    }
  w.ok = w.worst <= tol;
  return w;
}

inline KLWitness kl_check(const PICode& code, const std::vector<LocalOperator>& errors,
                          double tol = 1e-9) {
  std::vector<FullState> words;
  for (int j = 0; j < code.dimension(); ++j) words.push_back(code.full_codeword(j));
  std::vector<std::vector<Vector>> images;
  for (const auto& e : errors) {
    auto& row = images.emplace_back();
    for (const auto& w : words) row.push_back(apply_weight_t_operator(w, e).amp());
  }
  return kl_check_images(images, tol);
}

inline KLWitness kl_check(const PICode& code, const std::vector<PauliString>& errors,
                          double tol = 1e-9) {
  std::vector<FullState> words;
  for (int j = 0; j < code.dimension(); ++j) words.push_back(code.full_codeword(j));
  std::vector<std::vector<Vector>> images;
  for (const auto& e : errors) {
    auto& row = images.emplace_back();
    for (const auto& w : words) row.push_back(apply_pauli(w, e).amp());
  }
  return kl_check_images(images, tol);
}

/// Identity plus every Pauli of weight 1..t.
inline std::vector<PauliString> paulis_up_to_weight(int n, int t) {
  std::vector<PauliString> out;
  for (int w = 0; w <= t; ++w) {
    auto part = paulis_of_weight(n, w);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

/// Largest d <= d_max such that every Pauli P of weight < d obeys
/// <i|P|j> = delta_ij c_P (error detection).
inline int distance(const PICode& code, int d_max = 4, double tol = 1e-9) {
  if (code.dimension() < 2) throw Error(ErrorKind::invalid_code, "distance needs M >= 2");
  const int n = code.n_qubits();
  if (n > 14) throw Error(ErrorKind::size, "distance enumeration limited to N <= 14");
  std::vector<FullState> words;
  for (int j = 0; j < code.dimension(); ++j) words.push_back(code.full_codeword(j));
  for (int w = 1; w < d_max && w <= n; ++w) {
    for (const auto& p : paulis_of_weight(n, w)) {
      std::vector<Vector> img;
      for (const auto& c : words) img.push_back(apply_pauli(c, p).amp());
      const cplx c00 = words[0].amp().dot(img[0]);
      for (int i = 0; i < code.dimension(); ++i)
        for (int j = 0; j < code.dimension(); ++j) {
          const cplx v = words[i].amp().dot(img[j]);
          if (std::abs(i == j ? v - c00 : v) > tol) return w;
        }
    }
  }
  return d_max;
}

// ---------------------------------------------------------------------------
// Code definition files.
//
//   gnu <g> <n> <u> <s>
// or
//   qubits <N>
//   codeword
//   <w> <re> <im>
//   ...
//   codeword
//   ...
// Lines starting with '#' are ignored. u may be written as a fraction "5/4".

inline double parse_fraction(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing");
      return v;
    }
    const double num = std::stod(text.substr(0, slash));
    const double den = std::stod(text.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("zero denominator");
    return num / den;
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::config, "not a number: " + text);
  }
}

inline PICode parse_code_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n_qubits = -1;
  std::vector<std::vector<std::pair<int, cplx>>> tables;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    const std::string where = " (line " + std::to_string(line_no) + ")";
    if (key == "gnu") {
      std::string g, n, u, s;
      if (!(ls >> g >> n >> u >> s)) throw Error(ErrorKind::config, "gnu needs g n u s" + where);
      return gnu_code(static_cast<int>(parse_fraction(g)), static_cast<int>(parse_fraction(n)),
                      parse_fraction(u), static_cast<int>(parse_fraction(s)));
    }
    if (key == "qubits") {
      if (!(ls >> n_qubits) || n_qubits < 1) throw Error(ErrorKind::config, "bad qubit count" + where);
    } else if (key == "codeword") {
      tables.emplace_back();
    } else {
      if (tables.empty()) throw Error(ErrorKind::config, "amplitude before 'codeword'" + where);
      double re = 0, im = 0;
      int w = 0;
      try {
        w = std::stoi(key);
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::config, "unknown key '" + key + "'" + where);
      }
      if (!(ls >> re)) throw Error(ErrorKind::config, "missing amplitude" + where);
      ls >> im;
      tables.back().emplace_back(w, cplx(re, im));
    }
  }
  if (n_qubits < 1) throw Error(ErrorKind::config, "code file must give 'qubits N' or 'gnu ...'");
  if (tables.empty()) throw Error(ErrorKind::config, "code file has no codewords");
  std::vector<Vector> words;
  for (const auto& t : tables) {
    Vector v = Vector::Zero(n_qubits + 1);
    for (auto [w, a] : t) {
      if (w < 0 || w > n_qubits) throw Error(ErrorKind::invalid_code, "weight out of range");
      v(w) += a;
    }
    words.push_back(std::move(v));
  }
  return PICode(n_qubits, std::move(words));
}

inline PICode load_code_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::io, "cannot open code file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_code_text(ss.str());
}

}  // namespace piqec
