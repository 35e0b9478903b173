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

// Repeat-until-success projection onto the symmetric subspace.
//
// One round: move the row-2 qubits to the end, decouple them with the inverse
// CG cascade U_N ... U_l (l = N - r2 + 1), measure them in the computational
// basis and measure the tableau again. Stops on a single-row tableau.

#include <string>
#include <vector>

#include "piqec/syndrome.hpp"

namespace piqec {

struct RusRound {
  std::string tableau_before;
  std::vector<int> permutation;
  std::vector<int> bits;
  std::string tableau_after;
  double probability = 0.0;  // of the measured bits and new tableau
};

struct RusResult {
  FullState state;
  StandardYoungTableau tableau;
  std::vector<RusRound> rounds;
  bool converged = false;
};

/// Sends qubits with yy = 0 to the front and yy = 1 to the back, keeping
/// their relative order.
inline std::vector<int> row_two_to_back(const StandardYoungTableau& t) {
  const int n = t.n();
  std::vector<int> sigma(static_cast<std::size_t>(n));
  int front = 1, back = n - t.r2() + 1;
  for (int i = 0; i < n; ++i) sigma[i] = t.yy()[i] == 0 ? front++ : back++;
  return sigma;
}

/// `tracked` vectors (for example codeword images) receive every linear map
/// and projection applied to the state, without renormalization.
inline RusResult project_symmetric_rus(const FullState& s, const StandardYoungTableau& t,
                                       Rng& rng, int max_rounds = 64,
                                       std::vector<FullState>* tracked = nullptr) {
  const int n = s.n_qubits();
  if (t.n() != n) throw Error(ErrorKind::argument, "tableau size does not match state");
  RusResult res{s.normalized(), t, {}, t.is_single_row()};
  while (!res.tableau.is_single_row()) {
    if (static_cast<int>(res.rounds.size()) >= max_rounds) return res;
    RusRound round;
    round.tableau_before = res.tableau.to_string();
    round.permutation = row_two_to_back(res.tableau);
    const int first = n - res.tableau.r2() + 1;
    auto step = [&](const FullState& v) {
      FullState x = apply_permutation(v, round.permutation);
      for (int k = n; k >= first; --k) x = inverse_cg_step(x, k);
      return x;
    };
    FullState cur = step(res.state);
    if (tracked)
      for (auto& v : *tracked) v = step(v);

    const auto measured = qubit_range(first, n - first + 1);
    const auto meas = measure_qubits(cur, measured, rng);
    round.bits = meas.bits;
    double prob = meas.probability;
    cur = meas.state;
    if (tracked)
      for (auto& v : *tracked) v = project_bits(v, measured, meas.bits);

    auto syt = measure_syt(cur, rng, tracked);
    prob *= syt.syndrome.probability;
    round.tableau_after = syt.syndrome.tableau.to_string();
    round.probability = prob;
    res.state = std::move(syt.state);
    res.tableau = syt.syndrome.tableau;
    res.rounds.push_back(std::move(round));
  }
  res.converged = true;
  return res;
}

}  // namespace piqec
