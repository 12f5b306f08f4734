// Copyright 2026 The pconc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// pconc: command-line front end for the P-concurrence library.

#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pconc/pconc.hpp"

using namespace pconc;
using io::json;

namespace {

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string short_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    io::write_text_file(out_path, text);
}

std::string pair_label(IndexPair p) { return "{" + std::to_string(p.lo) + "," + std::to_string(p.hi) + "}"; }

std::string witness_table(const WitnessReport& r) {
  std::ostringstream os;
  os << "Subspace                      Concurrence  Fidelity  Weight\n";
  for (const auto& row : r.rows) {
    std::string label = pair_label(row.a) + "_A x " + pair_label(row.b) + "_B";
    label.resize(30, ' ');
    os << label << fixed(row.concurrence, 3) << "        " << fixed(row.fidelity, 3) << "     "
       << fixed(row.weight, 3) << "\n";
  }
  os << "P-concurrence (" << to_string(r.mode) << "): " << fixed(r.pconcurrence, 2) << "  ["
     << fixed(r.pconcurrence, 6) << "]\n";
  return os.str();
}

// ---- state ------------------------------------------------------------------

struct StateOptions {
  std::string family = "spdc-qutrit";
  double alpha = 1.0;
  double beta = 1.0;
  std::size_t d = 3;
  double decay = 1.0;
  bool density = false;
  std::string out;
};

int run_state(const StateOptions& o) {
  BipartiteKet ket = [&] {
    if (o.family == "spdc-qutrit") return make_spdc_qutrit({o.alpha, o.beta});
    if (o.family == "max") return make_max_entangled(o.d);
    return make_spdc_qudit(o.d, o.decay);
  }();
  const json j = o.density ? io::to_json(density_from_ket(ket)) : io::to_json(ket);
  emit(o.out, j.dump(2) + "\n");
  return 0;
}

// ---- measure ----------------------------------------------------------------

struct MeasureOptions {
  std::string state;
  std::string measure = "pconc";
  std::size_t normalize_dim = 0;
  std::string pairing = "known";
  std::string format = "text";
  std::string out;
};

int run_measure(const MeasureOptions& o) {
  const io::State state = io::state_from_json(io::read_json_file(o.state));
  const DensityMatrix rho = io::as_density(state);
  const Dims dims = rho.dims();
  const std::size_t d = o.normalize_dim ? o.normalize_dim : std::min(dims.dim_a, dims.dim_b);

  double raw = 0.0;
  std::optional<MeasureName> name;
  if (o.measure == "concurrence") {
    raw = wootters_concurrence(rho);
    name = MeasureName::concurrence;
  } else if (o.measure == "iconcurrence") {
    const auto* ket = std::get_if<BipartiteKet>(&state);
    raw = ket ? i_concurrence(*ket) : i_concurrence(rho);
    name = MeasureName::i_concurrence;
  } else if (o.measure == "eof") {
    raw = eof_pure(rho);
    name = MeasureName::eof;
  } else if (o.measure == "pconc") {
    const std::size_t sd = detail::square_dim(dims);
    raw = o.pairing == "search" ? pconcurrence_search(rho).pconcurrence
                                : pconcurrence_known(rho, SubspacePairing::identity(sd)).pconcurrence;
    name = MeasureName::pconcurrence;
  } else {
    raw = purity(rho);
  }
  const double normalized = name ? normalize_measure(raw, *name, d) : raw;

  json j{{"measure", o.measure}, {"raw", raw}, {"normalized", normalized}, {"normalize_dim", d}};
  if (o.format == "json") {
    emit(o.out, j.dump(2) + "\n");
  } else {
    std::cout << o.measure << ": raw " << short_double(raw) << ", normalized (d=" << d << ") "
              << short_double(normalized) << "\n";
    if (!o.out.empty()) io::write_json_file(o.out, j);
  }
  return 0;
}

// ---- sweep / path -----------------------------------------------------------

struct GridOptions {
  std::size_t grid = 50;
  std::string out;
};

int run_sweep(const GridOptions& o) {
  emit(o.out, to_csv(qutrit_sweep(o.grid)));
  return 0;
}

int run_path(const GridOptions& o) {
  emit(o.out, to_csv(qutrit_alpha_path(o.grid)));
  return 0;
}

// ---- simulate ---------------------------------------------------------------

struct SimulateOptions {
  std::string state;
  std::string settings = "pairwise";
  double rate_hz = 1000.0;
  double time_s = 10.0;
  std::uint64_t seed = 1;
  std::string out;
};

std::vector<ProjectorSetting> settings_for(const std::string& kind, Dims dims) {
  if (kind == "qubit36") {
    if (dims != Dims{2, 2}) throw DimensionError("qubit36 settings need a 2x2 state");
    return joint_settings(qubit_setting_kets(), qubit_setting_kets());
  }
  if (kind == "mub") return joint_settings(mub_kets(dims.dim_a), mub_kets(dims.dim_b));
  return joint_settings(pairwise_overcomplete_kets(dims.dim_a), pairwise_overcomplete_kets(dims.dim_b));
}

int run_simulate(const SimulateOptions& o) {
  const DensityMatrix rho = io::as_density(io::state_from_json(io::read_json_file(o.state)));
  const TomographyRecord rec = simulate_counts(rho, settings_for(o.settings, rho.dims()), o.rate_hz, o.time_s, o.seed);
  emit(o.out, io::to_json(rec).dump(2) + "\n");
  std::uint64_t total = 0;
  for (auto c : rec.counts) total += c;
  std::cerr << "simulated " << rec.settings.size() << " settings, " << total << " coincidences\n";
  return 0;
}

// ---- reconstruct ------------------------------------------------------------

struct ReconstructOptions {
  std::string record;
  std::string method = "mle";
  std::string target;
  std::string out;
};

int run_reconstruct(const ReconstructOptions& o) {
  const TomographyRecord rec = io::record_from_json(io::read_json_file(o.record));
  std::optional<MleResult> mle;
  DensityMatrix rho = [&] {
    if (o.method == "linear") return reconstruct_linear(rec);
    mle = reconstruct_mle(rec);
    return mle->state;
  }();
  rho = validate_density(rho.matrix(), rho.dims());
  emit(o.out, io::to_json(rho).dump(2) + "\n");

  std::ostream& log = o.out.empty() ? std::cerr : std::cout;
  log << "method: " << o.method << "\npurity: " << short_double(purity(rho)) << "\n";
  if (mle) log << "iterations: " << mle->iterations << (mle->converged ? " (converged)" : " (NOT converged)") << "\n";
  if (!o.target.empty()) {
    const DensityMatrix target = io::as_density(io::state_from_json(io::read_json_file(o.target)));
    log << "fidelity to target: " << short_double(uhlmann_fidelity(rho, target)) << "\n";
  }
  return 0;
}

// ---- witness ----------------------------------------------------------------

struct WitnessOptions {
  std::string input;
  std::string pairing = "known";
  std::string mode = "auto";
  std::string method = "mle";
  std::string out;
};

int run_witness(const WitnessOptions& o) {
  const json j = io::read_json_file(o.input);
  const SearchRequest request = o.mode == "brute_force"  ? SearchRequest::brute_force
                                : o.mode == "assignment" ? SearchRequest::assignment
                                                         : SearchRequest::automatic;
  WitnessReport report;
  if (j.contains("settings")) {
    const TomographyRecord rec = io::record_from_json(j);
    const auto method = o.method == "linear" ? ReconstructionMethod::linear : ReconstructionMethod::mle;
    report = o.pairing == "search" ? pconcurrence_search(rec, request, method)
                                   : pconcurrence_known(rec, SubspacePairing::identity(rec.dims.dim_a), method);
  } else {
    const DensityMatrix rho = io::as_density(io::state_from_json(j));
    report = o.pairing == "search" ? pconcurrence_search(rho, request)
                                   : pconcurrence_known(rho, SubspacePairing::identity(detail::square_dim(rho.dims())));
  }
  std::cout << witness_table(report);
  if (!o.out.empty()) io::write_json_file(o.out, io::to_json(report));
  return 0;
}

// ---- budget -----------------------------------------------------------------

struct BudgetOptions {
  std::size_t d = 8;
  double time_s = 10.0;
  std::string format = "text";
  std::string out;
};

int run_budget(const BudgetOptions& o) {
  const Budget b = budget(o.d, o.time_s);
  if (o.format == "json") {
    emit(o.out, io::to_json(b).dump(2) + "\n");
    return 0;
  }
  std::ostringstream os;
  os << "d = " << b.d << ", K = " << b.k << " qubit subspaces, " << format_double(o.time_s) << " s per setting\n"
     << "P-concurrence: " << b.pconc_measurements << " measurements, " << fixed(b.pconc_time_s / 3600.0, 1) << " h\n"
     << "Full QST:      " << b.qst_measurements << " measurements, " << fixed(b.qst_time_s / 3600.0, 1) << " h\n"
     << "Reduction:     " << fixed(static_cast<double>(b.qst_measurements) / b.pconc_measurements, 2) << "x\n";
  std::cout << os.str();
  if (!o.out.empty()) io::write_json_file(o.out, io::to_json(b));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"P-concurrence: qubit-subspace entanglement witness for bipartite qudits"};
  app.require_subcommand(1);

  const std::vector<std::string> formats{"text", "json"};

  StateOptions so;
  auto* state = app.add_subcommand("state", "Write a state file for one of the built-in families");
  state->add_option("--family", so.family)->check(CLI::IsMember({"spdc-qutrit", "max", "spdc-qudit"}));
  state->add_option("--alpha", so.alpha);
  state->add_option("--beta", so.beta);
  state->add_option("--d", so.d)->check(CLI::PositiveNumber);
  state->add_option("--decay", so.decay);
  state->add_flag("--density", so.density, "Write a density matrix instead of a ket");
  state->add_option("--out", so.out);

  MeasureOptions mo;
  auto* measure = app.add_subcommand("measure", "Evaluate an entanglement measure of a state file");
  measure->add_option("--state", mo.state)->required()->check(CLI::ExistingFile);
  measure->add_option("--measure", mo.measure)
      ->check(CLI::IsMember({"concurrence", "iconcurrence", "eof", "pconc", "purity"}));
  measure->add_option("--normalize-dim", mo.normalize_dim, "Dimension for normalization (default min(dimA, dimB))");
  measure->add_option("--pairing", mo.pairing)->check(CLI::IsMember({"known", "search"}));
  measure->add_option("--format", mo.format)->check(CLI::IsMember(formats));
  measure->add_option("--out", mo.out);

  GridOptions sweep_o, path_o;
  auto* sweep = app.add_subcommand("sweep", "CSV of measures over the (alpha, beta) grid of the SPDC qutrit");
  sweep->add_option("--grid", sweep_o.grid)->check(CLI::Range(2, 100000));
  sweep->add_option("--out", sweep_o.out);
  auto* path = app.add_subcommand("path", "CSV of measures along alpha in [0,1] with beta = 1");
  path->add_option("--grid", path_o.grid)->check(CLI::Range(2, 100000));
  path->add_option("--out", path_o.out);

  SimulateOptions sim_o;
  auto* simulate = app.add_subcommand("simulate", "Simulate a Poisson-noise tomography record");
  simulate->add_option("--state", sim_o.state)->required()->check(CLI::ExistingFile);
  simulate->add_option("--settings", sim_o.settings)->check(CLI::IsMember({"qubit36", "pairwise", "mub"}));
  simulate->add_option("--rate", sim_o.rate_hz, "Coincidence rate in Hz for a unit-probability setting");
  simulate->add_option("--time", sim_o.time_s, "Integration time per setting in seconds");
  simulate->add_option("--seed", sim_o.seed);
  simulate->add_option("--out", sim_o.out);

  ReconstructOptions rec_o;
  auto* reconstruct = app.add_subcommand("reconstruct", "Reconstruct a density matrix from a tomography record");
  reconstruct->add_option("--record", rec_o.record)->required()->check(CLI::ExistingFile);
  reconstruct->add_option("--method", rec_o.method)->check(CLI::IsMember({"linear", "mle"}));
  reconstruct->add_option("--target", rec_o.target, "State file to report the fidelity against")
      ->check(CLI::ExistingFile);
  reconstruct->add_option("--out", rec_o.out);

  WitnessOptions wit_o;
  auto* witness = app.add_subcommand("witness", "P-concurrence report from a state file or a tomography record");
  witness->add_option("--input", wit_o.input)->required()->check(CLI::ExistingFile);
  witness->add_option("--pairing", wit_o.pairing)->check(CLI::IsMember({"known", "search"}));
  witness->add_option("--mode", wit_o.mode)->check(CLI::IsMember({"auto", "brute_force", "assignment"}));
  witness->add_option("--method", wit_o.method, "Sub-tomography reconstruction for record input")
      ->check(CLI::IsMember({"linear", "mle"}));
  witness->add_option("--out", wit_o.out);

  BudgetOptions bud_o;
  auto* budget_cmd = app.add_subcommand("budget", "Measurement count and time: P-concurrence vs full tomography");
  budget_cmd->add_option("--d", bud_o.d)->check(CLI::Range(2, 1000));
  budget_cmd->add_option("--time", bud_o.time_s);
  budget_cmd->add_option("--format", bud_o.format)->check(CLI::IsMember(formats));
  budget_cmd->add_option("--out", bud_o.out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*state) return run_state(so);
    if (*measure) return run_measure(mo);
    if (*sweep) return run_sweep(sweep_o);
    if (*path) return run_path(path_o);
    if (*simulate) return run_simulate(sim_o);
    if (*reconstruct) return run_reconstruct(rec_o);
    if (*witness) return run_witness(wit_o);
    if (*budget_cmd) return run_budget(bud_o);
  } catch (const std::exception& e) {
    std::cerr << "pconc: error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
