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

// Two-row Young diagrams and standard Young tableaux. A tableau is stored by
// its Young-Yamanouchi bits: bit k is 1 when symbol k sits in the second row,
// equivalently when the running total spin j_k decreases at step k.

#include <string>
#include <string_view>
#include <vector>

#include "piqec/common.hpp"

namespace piqec {

struct YoungDiagram {
  int r1 = 0;
  int r2 = 0;

  [[nodiscard]] int n() const { return r1 + r2; }
  [[nodiscard]] HalfInt total_spin() const { return HalfInt::from_twice(r1 - r2); }
  friend bool operator==(const YoungDiagram&, const YoungDiagram&) = default;
};

inline void validate(const YoungDiagram& d) {
  if (d.r2 < 0 || d.r1 < d.r2)
    throw Error(ErrorKind::invalid_diagram,
                "invalid diagram (" + std::to_string(d.r1) + "," + std::to_string(d.r2) + ")");
}

/// All two-row diagrams with n boxes, ordered by decreasing r1.
inline std::vector<YoungDiagram> diagrams_of(int n) {
  std::vector<YoungDiagram> out;
  for (int r2 = 0; 2 * r2 <= n; ++r2) out.push_back({n - r2, r2});
  return out;
}

/// Hook-length count C(N, r1) (2 r1 - N + 1) / (r1 + 1); the division is exact.
inline std::uint64_t syt_count(const YoungDiagram& d) {
  validate(d);
  const int n = d.n();
  return binom_u64(n, d.r1) * static_cast<std::uint64_t>(2 * d.r1 - n + 1) /
         static_cast<std::uint64_t>(d.r1 + 1);
}

/// Semistandard fillings with {1, 2}: the magnetic multiplicity r1 - r2 + 1.
inline std::uint64_t ssyt_count(const YoungDiagram& d) {
  validate(d);
  return static_cast<std::uint64_t>(d.r1 - d.r2 + 1);
}

class StandardYoungTableau {
 public:
  StandardYoungTableau() = default;

  /// Builds from Young-Yamanouchi bits; throws on a prefix that would put
  /// more boxes in row 2 than row 1.
  explicit StandardYoungTableau(std::vector<int> yy) : yy_(std::move(yy)) {
    if (yy_.empty()) throw Error(ErrorKind::path, "empty tableau");
    int twice_j = 0;
    j_path_.reserve(yy_.size());
    for (int bit : yy_) {
      if (bit != 0 && bit != 1) throw Error(ErrorKind::path, "yy entries must be 0 or 1");
      twice_j += bit == 0 ? 1 : -1;
      if (twice_j < 0)
        throw Error(ErrorKind::path, "prefix dominance violated in yy vector");
      j_path_.push_back(HalfInt::from_twice(twice_j));
      r2_ += bit;
    }
  }

  static StandardYoungTableau from_string(std::string_view bits) {
    std::vector<int> yy;
    for (char c : bits) {
      if (c != '0' && c != '1') throw Error(ErrorKind::path, "yy string must be binary");
      yy.push_back(c - '0');
    }
    return StandardYoungTableau(std::move(yy));
  }

  static StandardYoungTableau single_row(int n) {
    return StandardYoungTableau(std::vector<int>(static_cast<std::size_t>(n), 0));
  }

  [[nodiscard]] int n() const { return static_cast<int>(yy_.size()); }
  [[nodiscard]] const std::vector<int>& yy() const { return yy_; }
  [[nodiscard]] const std::vector<HalfInt>& j_path() const { return j_path_; }
  [[nodiscard]] YoungDiagram diagram() const { return {n() - r2_, r2_}; }
  [[nodiscard]] int r2() const { return r2_; }
  [[nodiscard]] HalfInt j_total() const { return j_path_.back(); }
  [[nodiscard]] int ladder_size() const { return j_total().twice + 1; }
  [[nodiscard]] bool is_single_row() const { return r2_ == 0; }

  [[nodiscard]] std::string to_string() const {
    std::string s;
    for (int b : yy_) s.push_back(static_cast<char>('0' + b));
    return s;
  }

  /// Row-wise filling, e.g. {{1,2,4},{3}}.
  [[nodiscard]] std::vector<std::vector<int>> rows() const {
    std::vector<std::vector<int>> r(2);
    for (int k = 0; k < n(); ++k) r[yy_[k]].push_back(k + 1);
    return r;
  }

  friend bool operator==(const StandardYoungTableau& a, const StandardYoungTableau& b) {
    return a.yy_ == b.yy_;
  }
  friend bool operator<(const StandardYoungTableau& a, const StandardYoungTableau& b) {
    return a.yy_ < b.yy_;
  }

 private:
  std::vector<int> yy_;
  std::vector<HalfInt> j_path_;
  int r2_ = 0;
};

/// Bratteli path (j_1, ..., j_N) to tableau. Requires j_1 = 1/2 and unit
/// half-steps staying non-negative.
inline StandardYoungTableau syt_from_j_path(const std::vector<HalfInt>& path) {
  if (path.empty() || path.front().twice != 1)
    throw Error(ErrorKind::path, "Bratteli path must start at j_1 = 1/2");
  std::vector<int> yy{0};
  for (std::size_t k = 1; k < path.size(); ++k) {
    const int step = path[k].twice - path[k - 1].twice;
    if (step != 1 && step != -1)
      throw Error(ErrorKind::path, "Bratteli path step must be +-1/2");
    if (path[k].twice < 0) throw Error(ErrorKind::path, "negative spin on path");
    yy.push_back(step > 0 ? 0 : 1);
  }
  return StandardYoungTableau(std::move(yy));
}

inline constexpr int kMaxEnumerateN = 24;

/// All tableaux of a shape in lexicographic yy order.
inline std::vector<StandardYoungTableau> enumerate_syts(const YoungDiagram& d) {
  validate(d);
  if (d.n() > kMaxEnumerateN)
    throw Error(ErrorKind::size, "enumerate_syts limited to N <= 24");
  std::vector<StandardYoungTableau> out;
  if (d.n() == 0) return out;
  std::vector<int> yy;
  yy.reserve(d.n());
  // Depth-first, 0 before 1, gives lexicographic order directly.
  auto rec = [&](auto&& self, int ones, int zeros) -> void {
    if (zeros == d.r1 && ones == d.r2) {
      out.emplace_back(yy);
      return;
    }
    if (zeros < d.r1) {
      yy.push_back(0);
      self(self, ones, zeros + 1);
      yy.pop_back();
    }
    if (ones < d.r2 && ones + 1 <= zeros) {
      yy.push_back(1);
      self(self, ones + 1, zeros);
      yy.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

/// Every tableau with n boxes, grouped by diagram (decreasing r1).
inline std::vector<StandardYoungTableau> all_syts(int n) {
  std::vector<StandardYoungTableau> out;
  for (const auto& d : diagrams_of(n)) {
    auto part = enumerate_syts(d);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

/// Parses "r1,r2".
inline YoungDiagram parse_diagram(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos)
    throw Error(ErrorKind::invalid_diagram, "diagram must be written r1,r2");
  try {
    YoungDiagram d{std::stoi(std::string(text.substr(0, comma))),
                   std::stoi(std::string(text.substr(comma + 1)))};
    validate(d);
    return d;
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::invalid_diagram, "diagram must be written r1,r2");
  }
}

}  // namespace piqec
