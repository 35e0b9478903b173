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

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "piqec/piqec.hpp"

using json = nlohmann::ordered_json;
using namespace piqec;

namespace {

struct CodeOpts {
  int g = 0;
  int n = 0;
  std::string u = "1";
  int s = 0;
  std::string file;

  void add(CLI::App* app) {
    app->add_option("--g", g, "gap");
    app->add_option("--n", n, "occupancy");
    app->add_option("--u", u, "scale (fractions allowed)");
    app->add_option("--s", s, "shift");
    app->add_option("--code-file", file, "amplitude table");
  }

  [[nodiscard]] PICode build() const {
    if (!file.empty()) return load_code_file(file);
    if (g < 1 || n < 1) throw Error(ErrorKind::config, "need --g and --n (or --code-file)");
    return gnu_code(g, n, parse_fraction(u), s);
  }
};

struct ModeOpts {
  ModeParams p;
  double alpha_re = 0.0, alpha_im = 0.0;

  void add(CLI::App* app) {
    app->add_option("--omega-c", p.omega_c, "mode frequency");
    app->add_option("--omega-0", p.omega_0, "spin frequency");
    app->add_option("--xi-d", p.xi_d, "displacement coupling");
    app->add_option("--xi-r", p.xi_r, "rotation coupling");
    app->add_option("--alpha-re", alpha_re, "initial coherent amplitude (real part)");
    app->add_option("--alpha-im", alpha_im, "initial coherent amplitude (imaginary part)");
    app->add_option("--squeeze", p.r, "squeezing parameter");
  }

  [[nodiscard]] ModeParams params() const {
    ModeParams out = p;
    out.alpha = cplx(alpha_re, alpha_im);
    out.validate();
    return out;
  }
};

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot write '" + path + "'");
  return out;
}

json code_json(const PICode& code) {
  json j;
  j["n_qubits"] = code.n_qubits();
  j["dimension"] = code.dimension();
  if (code.gnu()) {
    const auto& p = *code.gnu();
    j["gnu"] = {{"g", p.g}, {"n", p.n}, {"u", p.u}, {"s", p.s}};
  }
  json words = json::array();
  for (int k = 0; k < code.dimension(); ++k) {
    json row = json::array();
    for (int w : code.support(k)) row.push_back({{"weight", w}, {"amplitude", cplx_json(code.codeword(k)(w))}});
    words.push_back(row);
  }
  j["codewords"] = words;
  return j;
}

void write_gnu_csv(std::ostream& out, const PICode& code) {
  out << "weight";
  for (int k = 0; k < code.dimension(); ++k) out << ",re" << k << ",im" << k;
  out << '\n';
  out.precision(17);
  for (int w = 0; w <= code.n_qubits(); ++w) {
    out << w;
    for (int k = 0; k < code.dimension(); ++k) out << ',' << code.codeword(k)(w).real() << ',' << code.codeword(k)(w).imag();
    out << '\n';
  }
}

void write_pointer_csv(std::ostream& out, const std::vector<PointerRow>& rows, const char* label) {
  out << label << ",re,im,overlap\n";
  out.precision(17);
  for (const auto& r : rows) out << r.label << ',' << r.amplitude.real() << ',' << r.amplitude.imag() << ',' << r.overlap << '\n';
}

json record_json(const TrialRecord& r) {
  json j;
  j["id"] = r.id;
  j["seed"] = r.seed;
  json in = json::array();
  for (auto a : r.input) in.push_back(cplx_json(a));
  j["input"] = in;
  j["branch"] = r.branch;
  j["syt"] = r.syt;
  j["modulo"] = r.modulo;
  j["rus_rounds"] = r.rus_rounds;
  j["rebalance"] = {{"bits", r.rebalance_bits}, {"target", r.rebalance_target}};
  j["converged"] = r.converged;
  j["fidelity"] = r.fidelity;
  if (!r.error.empty()) j["error"] = r.error;
  if (r.wall_ms) j["wall_ms"] = *r.wall_ms;
  return j;
}

json summary_json(const ExperimentSummary& s) {
  json j;
  j["trials"] = s.trials;
  j["failures"] = s.failures;
  if (s.trials > 0) {
    j["mean_fidelity"] = s.mean_fidelity;
    j["min_fidelity"] = s.min_fidelity;
  } else {
    j["mean_fidelity"] = nullptr;
    j["min_fidelity"] = nullptr;
  }
  j["syt_histogram"] = s.syt_histogram;
  j["branch_histogram"] = s.branch_histogram;
  json mod = json::object();
  for (auto [a, c] : s.modulo_histogram) mod[std::to_string(a)] = c;
  j["modulo_histogram"] = mod;
  return j;
}

struct RunOpts {
  std::string channel = "pauli1:1/10";
  std::string decoder;
  int trials = 100;
  std::uint64_t seed = 1;
  std::string out;
  std::string plot;
  int input_pool = 0;
  bool timing = false;

  void add(CLI::App* app, bool with_decoder) {
    app->add_option("--channel", channel, "channel spec");
    if (with_decoder) app->add_option("--decoder", decoder, "schur-pipeline | teleport | deletion");
    app->add_option("--trials", trials, "number of trials");
    app->add_option("--seed", seed, "master seed");
    app->add_option("--out", out, "trial records (one JSON object per line)");
    app->add_option("--emit-plot-data", plot, "per-trial CSV");
    app->add_option("--input-pool", input_pool, "cycle through this many inputs");
    app->add_flag("--timing", timing, "record wall time per trial");
  }
};

void run_experiment(const CodeOpts& code, const RunOpts& ro, Decoder decoder) {
  ExperimentConfig cfg;
  cfg.code = code.build();
  cfg.channel = parse_channel_spec(ro.channel);
  cfg.decoder = decoder;
  cfg.trials = ro.trials;
  cfg.seed = ro.seed;
  cfg.input_pool = ro.input_pool;
  cfg.timing = ro.timing;
  Experiment exp(cfg);
  std::ofstream rec_out, plot_out;
  if (!ro.out.empty()) rec_out = open_out(ro.out);
  if (!ro.plot.empty()) {
    plot_out = open_out(ro.plot);
    plot_out << "id,fidelity,syt,rus_rounds,rebalance_steps,converged\n";
    plot_out.precision(17);
  }
  const auto summary = exp.run([&](const TrialRecord& r) {
    if (rec_out.is_open()) rec_out << record_json(r).dump() << '\n';
    if (plot_out.is_open())
      plot_out << r.id << ',' << r.fidelity << ',' << r.syt << ',' << r.rus_rounds << ',' << r.rebalance_bits.size()
               << ',' << (r.converged ? 1 : 0) << '\n';
  });
  json j;
  j["code"] = code_json(cfg.code)["gnu"];
  j["channel"] = ro.channel;
  j["decoder"] = to_string(decoder);
  j["seed"] = ro.seed;
  j["summary"] = summary_json(summary);
  std::cout << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"piqec: permutation-invariant qubit code experiments"};
  app.require_subcommand(1);

  CodeOpts code_opts;
  auto* code = app.add_subcommand("code", "build and inspect codes");
  code->require_subcommand(1);
  auto* code_build = code->add_subcommand("build", "print codeword amplitudes");
  code_opts.add(code_build);
  std::string code_plot;
  code_build->add_option("--emit-plot-data", code_plot, "amplitude-vs-weight CSV");
  auto* code_dist = code->add_subcommand("check-distance", "certify the code distance");
  code_opts.add(code_dist);
  int d_max = 4;
  code_dist->add_option("--d-max", d_max, "largest distance to test");

  auto* qec = app.add_subcommand("qec", "Monte-Carlo error correction");
  qec->require_subcommand(1);
  RunOpts run_opts, del_opts, tele_opts;
  auto* qec_run = qec->add_subcommand("run", "sampled channel and decoder");
  code_opts.add(qec_run);
  run_opts.add(qec_run, true);
  auto* qec_del = qec->add_subcommand("deletion", "deletion channel and decoder");
  code_opts.add(qec_del);
  del_opts.channel = "delete:1";
  del_opts.add(qec_del, false);

  auto* tele = app.add_subcommand("teleport", "teleportation decoding");
  tele->require_subcommand(1);
  auto* tele_run = tele->add_subcommand("run", "sampled channel then teleport");
  code_opts.add(tele_run);
  tele_opts.add(tele_run, false);

  auto* tab = app.add_subcommand("tableaux", "Young diagrams and tableaux");
  tab->require_subcommand(1);
  int tab_n = 0;
  std::string diagram;
  auto* tab_count = tab->add_subcommand("count", "SYT and SSYT counts per diagram");
  tab_count->add_option("--n", tab_n, "number of qubits")->required();
  auto* tab_enum = tab->add_subcommand("enumerate", "list standard tableaux");
  tab_enum->add_option("--n", tab_n, "number of qubits");
  tab_enum->add_option("--diagram", diagram, "row lengths 'r1,r2'");

  auto* bos = app.add_subcommand("bosonic", "spin-boson measurement layer");
  bos->require_subcommand(1);
  ModeOpts mode_opts;
  std::string coupling = "displacement", pointer_out, j_min = "0", j_max = "4";
  double t_opt = -1.0;
  int bos_g = 8, bos_n = -1;
  auto* bos_ptr = bos->add_subcommand("pointer", "pointer sweep table (CSV)");
  mode_opts.add(bos_ptr);
  bos_ptr->add_option("--coupling", coupling, "displacement | rotation");
  bos_ptr->add_option("--t", t_opt, "interaction time (displacement)");
  bos_ptr->add_option("--j-min", j_min, "smallest j");
  bos_ptr->add_option("--j-max", j_max, "largest j");
  bos_ptr->add_option("--g", bos_g, "modulus (rotation)");
  bos_ptr->add_option("--n", bos_n, "number of spins (rotation, default g-1)");
  bos_ptr->add_option("--out", pointer_out, "CSV path (default stdout)");
  int res_n = 1, res_k = 1;
  std::string scheme = "state-synthesis";
  auto* bos_res = bos->add_subcommand("resources", "gate counts");
  bos_res->add_option("--n", res_n, "number of qubits");
  bos_res->add_option("--k", res_k, "number of target states");
  bos_res->add_option("--scheme", scheme, "state-synthesis | subspace-mapping | deletion | controlled-x | teleportation");

  auto* plot = app.add_subcommand("plot", "plot data");
  plot->require_subcommand(1);
  std::string plot_kind, plot_out;
  auto* plot_emit = plot->add_subcommand("emit", "write a CSV");
  plot_emit->add_option("--kind", plot_kind, "gnu-amplitudes | pointer-displacement | pointer-rotation")->required();
  plot_emit->add_option("--out", plot_out, "CSV path")->required();
  CodeOpts plot_code;
  plot_code.add(plot_emit);
  ModeOpts plot_mode;
  plot_mode.add(plot_emit);
  plot_emit->add_option("--t", t_opt, "interaction time (displacement)");
  plot_emit->add_option("--j-min", j_min, "smallest j");
  plot_emit->add_option("--j-max", j_max, "largest j");
  plot_emit->add_option("--modulus", bos_g, "modulus (rotation)");
  plot_emit->add_option("--spins", bos_n, "number of spins (rotation)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error[config]: " << e.what() << '\n';
    return 2;
  }

  auto pointer_rows = [&](const std::string& kind, const ModeParams& p) {
    if (kind == "displacement") {
      const double t = t_opt >= 0 ? t_opt : std::numbers::pi / p.omega_c;
      const auto lo = HalfInt::from_twice(static_cast<int>(std::lround(2 * parse_fraction(j_min))));
      const auto hi = HalfInt::from_twice(static_cast<int>(std::lround(2 * parse_fraction(j_max))));
      return std::pair{displacement_table(p, t, lo, hi), "j"};
    }
    if (kind == "rotation") return std::pair{rotation_table(p, bos_g, bos_n >= 0 ? bos_n : bos_g - 1), "weight"};
    throw Error(ErrorKind::config, "unknown coupling '" + kind + "'");
  };

  try {
    if (code_build->parsed()) {
      const auto c = code_opts.build();
      if (!code_plot.empty()) {
        auto out = open_out(code_plot);
        write_gnu_csv(out, c);
      }
      std::cout << code_json(c).dump(2) << '\n';
    } else if (code_dist->parsed()) {
      const auto c = code_opts.build();
      const auto start = std::chrono::steady_clock::now();
      const int d = distance(c, d_max);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      std::cout << json{{"distance", d}, {"d_max", d_max}, {"seconds", secs}}.dump(2) << '\n';
    } else if (qec_run->parsed()) {
      const auto dec = run_opts.decoder.empty() ? Decoder::schur_pipeline : parse_decoder(run_opts.decoder);
      run_experiment(code_opts, run_opts, dec);
    } else if (qec_del->parsed()) {
      run_experiment(code_opts, del_opts, Decoder::deletion);
    } else if (tele_run->parsed()) {
      run_experiment(code_opts, tele_opts, Decoder::teleport);
    } else if (tab_count->parsed()) {
      json rows = json::array();
      std::uint64_t total = 0;
      for (const auto& d : diagrams_of(tab_n)) {
        const auto f = syt_count(d);
        const auto m = ssyt_count(d);
        total += f * m;
        rows.push_back({{"diagram", std::to_string(d.r1) + "," + std::to_string(d.r2)},
                        {"j", d.total_spin().value()},
                        {"syt_count", f},
                        {"ssyt_count", m}});
      }
      std::cout << json{{"n", tab_n}, {"diagrams", rows}, {"total", total}}.dump(2) << '\n';
    } else if (tab_enum->parsed()) {
      std::vector<StandardYoungTableau> list;
      if (!diagram.empty()) {
        list = enumerate_syts(parse_diagram(diagram));
      } else {
        if (tab_n < 1) throw Error(ErrorKind::config, "need --n or --diagram");
        list = all_syts(tab_n);
      }
      json out = json::array();
      for (const auto& t : list) out.push_back(t.to_string());
      std::cout << out.dump(2) << '\n';
    } else if (bos_ptr->parsed()) {
      const auto [rows, label] = pointer_rows(coupling, mode_opts.params());
      if (pointer_out.empty()) {
        write_pointer_csv(std::cout, rows, label);
      } else {
        auto out = open_out(pointer_out);
        write_pointer_csv(out, rows, label);
      }
    } else if (bos_res->parsed()) {
      const auto r = resource_counts(res_n, res_k, parse_scheme(scheme));
      std::cout << json{{"scheme", scheme},
                        {"n", res_n},
                        {"k", res_k},
                        {"linear_gpg", r.linear_gpg},
                        {"dispersive_gpg", r.dispersive_gpg},
                        {"coupling_gates", r.coupling_gates},
                        {"rotations", r.rotations},
                        {"measurements", r.measurements},
                        {"full_unitary", r.full_unitary}}
                       .dump(2)
                << '\n';
    } else if (plot_emit->parsed()) {
      if (plot_kind == "gnu-amplitudes") {
        const auto c = plot_code.build();
        auto out = open_out(plot_out);
        write_gnu_csv(out, c);
      } else if (plot_kind == "pointer-displacement" || plot_kind == "pointer-rotation") {
        const auto [rows, label] = pointer_rows(plot_kind.substr(8), plot_mode.params());
        auto out = open_out(plot_out);
        write_pointer_csv(out, rows, label);
      } else {
        throw Error(ErrorKind::config, "unknown plot kind '" + plot_kind + "'");
      }
    }
  } catch (const Error& e) {
    std::cerr << "error[" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error[io]: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
