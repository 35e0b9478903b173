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

// Seeded Monte-Carlo trials of the decoders. Trial i uses its own generator
// seeded with (master seed XOR i), so records do not depend on run order.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "piqec/deletion.hpp"
#include "piqec/rus.hpp"
#include "piqec/teleport.hpp"

namespace piqec {

// ---------------------------------------------------------------------------
// Channel specs: "pauli1:p", "amp-damp:gamma", "delete:t", "kraus-file:path"
// and "pauli:<P><qubit>" for one fixed Pauli (e.g. "pauli:Y4").

struct ChannelSpec {
  enum class Kind { pauli1, amp_damp, deletion, kraus_file, fixed_pauli };
  Kind kind = Kind::pauli1;
  double rate = 0.0;
  int deletions = 0;
  std::string path;
  char letter = 'I';
  int qubit = 0;
  std::string text;
};

inline ChannelSpec parse_channel_spec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::config, "channel spec needs 'kind:value': " + text);
  const std::string kind = text.substr(0, colon), value = text.substr(colon + 1);
  ChannelSpec spec;
  spec.text = text;
  if (kind == "pauli1" || kind == "amp-damp") {
    spec.kind = kind == "pauli1" ? ChannelSpec::Kind::pauli1 : ChannelSpec::Kind::amp_damp;
    spec.rate = parse_fraction(value);
    if (spec.rate < 0 || spec.rate > 1) throw Error(ErrorKind::channel, "channel rate must lie in [0,1]");
  } else if (kind == "delete") {
    spec.kind = ChannelSpec::Kind::deletion;
    spec.deletions = static_cast<int>(parse_fraction(value));
    if (spec.deletions < 1 || spec.deletions != parse_fraction(value))
      throw Error(ErrorKind::config, "deletion count must be a positive integer");
  } else if (kind == "kraus-file") {
    spec.kind = ChannelSpec::Kind::kraus_file;
    spec.path = value;
  } else if (kind == "pauli") {
    spec.kind = ChannelSpec::Kind::fixed_pauli;
    if (value.size() < 2 || std::string("XYZ").find(value[0]) == std::string::npos)
      throw Error(ErrorKind::config, "fixed Pauli spec looks like 'pauli:X3'");
    spec.letter = value[0];
    spec.qubit = static_cast<int>(parse_fraction(value.substr(1)));
  } else {
    throw Error(ErrorKind::config, "unknown channel kind '" + kind + "'");
  }
  return spec;
}

inline PauliString single_pauli(int n, char letter, int qubit) {
  if (qubit < 1 || qubit > n) throw Error(ErrorKind::argument, "Pauli qubit out of range");
  std::string s(static_cast<std::size_t>(n), 'I');
  s[static_cast<std::size_t>(qubit - 1)] = letter;
  return {s};
}

/// Kraus channel for a non-deletion spec.
inline KrausChannel build_channel(const ChannelSpec& spec, int n) {
  KrausChannel ch;
  switch (spec.kind) {
    case ChannelSpec::Kind::pauli1: ch = pauli1_channel(n, spec.rate); break;
    case ChannelSpec::Kind::amp_damp: ch = amplitude_damping_channel(n, spec.rate); break;
    case ChannelSpec::Kind::kraus_file: ch = load_kraus_file(spec.path); break;
    case ChannelSpec::Kind::fixed_pauli:
      ch.ops.push_back(single_pauli(n, spec.letter, spec.qubit).as_local());
      ch.labels.push_back(std::string(1, spec.letter) + std::to_string(spec.qubit));
      break;
    case ChannelSpec::Kind::deletion: throw Error(ErrorKind::config, "deletion is not a Kraus channel here");
  }
  for (const auto& k : ch.ops) check_support(n, k.support);
  validate(ch, n);
  return ch;
}

inline int channel_weight(const KrausChannel& ch) {
  std::size_t w = 0;
  for (const auto& k : ch.ops) w = std::max(w, k.support.size());
  return static_cast<int>(w);
}

// ---------------------------------------------------------------------------
// Configuration and records.

enum class Decoder { schur_pipeline, teleport, deletion };

inline const char* to_string(Decoder d) {
  switch (d) {
    case Decoder::schur_pipeline: return "schur-pipeline";
    case Decoder::teleport: return "teleport";
    case Decoder::deletion: return "deletion";
  }
  return "unknown";
}

inline Decoder parse_decoder(const std::string& s) {
  for (auto d : {Decoder::schur_pipeline, Decoder::teleport, Decoder::deletion})
    if (s == to_string(d)) return d;
  throw Error(ErrorKind::config, "unknown decoder '" + s + "'");
}

struct ExperimentConfig {
  PICode code;
  ChannelSpec channel;
  Decoder decoder = Decoder::schur_pipeline;
  int trials = 1;
  std::uint64_t seed = 0;
  int input_pool = 0;  // > 0: cycle through this many inputs drawn from the master seed
  bool timing = false;

  void validate() const {
    if (trials < 0) throw Error(ErrorKind::config, "trials must be non-negative");
    const bool del = channel.kind == ChannelSpec::Kind::deletion;
    if (decoder == Decoder::deletion && !del)
      throw Error(ErrorKind::config, "deletion decoder requires a deletion channel");
    if (decoder != Decoder::deletion && del)
      throw Error(ErrorKind::config, "deletion channel requires the deletion decoder");
    if (code.dimension() != 2 && decoder != Decoder::schur_pipeline)
      throw Error(ErrorKind::unsupported_parameter, "decoder needs a one-qubit code");
  }
};

struct TrialRecord {
  std::uint64_t id = 0;
  std::uint64_t seed = 0;
  std::vector<cplx> input;
  std::string branch;
  std::string syt;
  std::vector<int> modulo;  // every modulo outcome in order
  int rus_rounds = 0;
  std::string rebalance_bits;
  double rebalance_target = 0.0;
  bool converged = true;
  double fidelity = 0.0;
  std::string error;  // "kind: message" when the trial raised
  std::optional<double> wall_ms;
};

struct ExperimentSummary {
  int trials = 0;
  int failures = 0;  // raised or did not converge
  double mean_fidelity = 0.0;
  double min_fidelity = 1.0;
  std::map<std::string, int> syt_histogram;
  std::map<std::string, int> branch_histogram;
  std::map<int, int> modulo_histogram;
};

// ---------------------------------------------------------------------------
// Runner.

class Experiment {
 public:
  explicit Experiment(ExperimentConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    const int n = cfg_.code.n_qubits();
    if (cfg_.channel.kind != ChannelSpec::Kind::deletion) {
      channel_ = build_channel(cfg_.channel, n);
      errors_ = paulis_up_to_weight(n, channel_weight(channel_));
    }
    if (cfg_.decoder == Decoder::teleport) detail::check_pair(cfg_.code, cfg_.code);
    if (cfg_.decoder == Decoder::deletion) check_deletion_code(cfg_.code, cfg_.channel.deletions);
    if (cfg_.input_pool > 0) {
      Rng rng(cfg_.seed);
      for (int i = 0; i < cfg_.input_pool; ++i) pool_.push_back(random_qubit_amplitudes(rng));
    }
  }

  [[nodiscard]] const ExperimentConfig& config() const { return cfg_; }

  TrialRecord run_trial(std::uint64_t id) {
    TrialRecord rec;
    rec.id = id;
    rec.seed = cfg_.seed ^ id;
    Rng rng(rec.seed);
    const auto start = std::chrono::steady_clock::now();
    rec.input = pool_.empty() ? random_input(rng) : pool_[id % pool_.size()];
    try {
      switch (cfg_.decoder) {
        case Decoder::schur_pipeline: schur_trial(rec, rng); break;
        case Decoder::teleport: teleport_trial(rec, rng); break;
        case Decoder::deletion: deletion_trial(rec, rng); break;
      }
    } catch (const Error& e) {
      rec.error = std::string(to_string(e.kind())) + ": " + e.what();
      rec.converged = false;
      rec.fidelity = 0.0;
    }
    if (cfg_.timing)
      rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rec;
  }

  ExperimentSummary run(const std::function<void(const TrialRecord&)>& sink = {}) {
    ExperimentSummary s;
    double total = 0.0;
    for (int i = 0; i < cfg_.trials; ++i) {
      const auto rec = run_trial(static_cast<std::uint64_t>(i));
      ++s.trials;
      if (!rec.converged) ++s.failures;
      total += rec.fidelity;
      s.min_fidelity = std::min(s.min_fidelity, rec.fidelity);
      if (!rec.syt.empty()) ++s.syt_histogram[rec.syt];
      if (!rec.branch.empty()) ++s.branch_histogram[rec.branch];
      for (int a : rec.modulo) ++s.modulo_histogram[a];
      if (sink) sink(rec);
    }
    s.mean_fidelity = s.trials > 0 ? total / s.trials : 0.0;
    return s;
  }

 private:
  struct Decoding {
    TCode tc;
    CorrectibleDecomposition dec;
  };

  std::vector<cplx> random_input(Rng& rng) const {
    if (cfg_.code.dimension() == 2) return random_qubit_amplitudes(rng);
    std::normal_distribution<double> normal;
    std::vector<cplx> a(static_cast<std::size_t>(cfg_.code.dimension()));
    double nrm = 0;
    for (auto& x : a) {
      x = cplx(normal(rng), normal(rng));
      nrm += std::norm(x);
    }
    for (auto& x : a) x /= std::sqrt(nrm);
    return a;
  }

  const Decoding& decoding_for(const StandardYoungTableau& t) {
    const auto key = t.to_string();
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      auto tc = build_t_code(cfg_.code, t);
      auto dec = correctible_decomposition(cfg_.code, tc, errors_);
      it = cache_.emplace(key, Decoding{std::move(tc), std::move(dec)}).first;
    }
    return it->second;
  }

  /// Error, symmetrization, tableau measurement and KL recovery.
  std::pair<FullState, const Decoding*> stage_one(TrialRecord& rec, Rng& rng) {
    const auto psi = embed(encode(cfg_.code, rec.input));
    const auto noisy = sample_channel(psi, channel_, rng);
    rec.branch = noisy.branch < channel_.labels.size() ? channel_.labels[noisy.branch] : std::to_string(noisy.branch);
    const auto syn = measure_syt(symmetrize(noisy.state, rng), rng);
    rec.syt = syn.syndrome.tableau.to_string();
    const Decoding& d = decoding_for(syn.syndrome.tableau);
    auto kl = kl_recover(syn.state, d.tc, d.dec, rng);
    rec.modulo.push_back(kl.outcome.a);
    return {std::move(kl.state), &d};
  }

  void schur_trial(TrialRecord& rec, Rng& rng) {
    auto [state, d] = stage_one(rec, rng);
    std::vector<FullState> tracked;
    for (int j = 0; j < d->tc.dimension(); ++j) tracked.push_back(d->tc.full_codeword(j));
    const auto rus = project_symmetric_rus(state, d->tc.tableau(), rng, 64, &tracked);
    rec.rus_rounds = static_cast<int>(rus.rounds.size());
    if (!rus.converged) {
      rec.converged = false;
      return;
    }
    auto back = return_to_codespace(rus.state, tracked, cfg_.code);
    SymmetricState out = back.state;
    if (cfg_.code.dimension() == 2) {
      rec.rebalance_target = std::log(back.norms[1] / back.norms[0]);
      if (std::abs(rec.rebalance_target) > 1e-12) {
        auto rb = rebalance(out, cfg_.code, rec.rebalance_target, rng);
        rec.rebalance_bits = rb.record.bits();
        rec.converged = rb.record.converged;
        out = std::move(rb.state);
      }
    } else {
      for (double nj : back.norms)
        if (std::abs(nj - back.norms[0]) > 1e-9) rec.converged = false;
    }
    rec.fidelity = fidelity_against(encode(cfg_.code, rec.input).amp(), out.amp());
  }

  void teleport_trial(TrialRecord& rec, Rng& rng) {
    auto [state, d] = stage_one(rec, rng);
    const auto res = teleport(state, d->tc.tableau(), cfg_.code, cfg_.code, rng);
    rec.modulo.push_back(res.record.a);
    rec.fidelity = fidelity_against(encode(cfg_.code, rec.input).amp(), res.state.amp());
  }

  void deletion_trial(TrialRecord& rec, Rng& rng) {
    const int n = cfg_.code.n_qubits();
    const int t = cfg_.channel.deletions;
    if (t >= n) throw Error(ErrorKind::config, "cannot delete every qubit");
    auto perm = random_permutation(n, rng);
    std::vector<int> positions(perm.begin(), perm.begin() + t);
    std::sort(positions.begin(), positions.end());
    const auto del = delete_qubits(embed(encode(cfg_.code, rec.input)), positions, rng);
    rec.branch = "a=" + std::to_string(del.record.shift);
    const auto out = correct_deletions(del.state, cfg_.code, t, rng);
    rec.modulo.push_back(out.residue);
    rec.fidelity = fidelity_against(encode(out.target, rec.input).amp(), out.state.amp());
  }

  static double fidelity_against(const Vector& want, const Vector& got) {
    return std::norm(want.dot(got)) / (want.squaredNorm() * got.squaredNorm());
  }

  ExperimentConfig cfg_;
  KrausChannel channel_;
  std::vector<PauliString> errors_;
  std::vector<std::vector<cplx>> pool_;
  std::map<std::string, Decoding> cache_;
};

}  // namespace piqec
