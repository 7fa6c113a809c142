// Command-line experiment runner for the randomized-deletion library.
// Exit codes: 0 success, 1 operation precondition violated, 2 bad
// configuration or command line.

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rdel/analysis.hpp"
#include "rdel/classical.hpp"
#include "rdel/deletion.hpp"
#include "rdel/errors.hpp"
#include "rdel/family.hpp"
#include "rdel/linalg.hpp"
#include "rdel/rng.hpp"

namespace {

using rdel::complex_t;

struct CommonOpts {
  std::uint64_t seed = 0;
  std::string out;
  std::string family;
};

struct AmplitudeOpts {
  double alpha_re = 1.0;
  double alpha_im = 0.0;
  double beta_re = 0.0;
  double beta_im = 0.0;
};

struct RegisterOpts {
  std::string path;
  std::string bits;
};

void add_seed(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--seed", opts.seed, "random seed (default 0)");
}

void add_out(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--out", opts.out, "output file (default: stdout)");
}

void add_family(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option(
      "--family", opts.family,
      "standard-state family: 'haar', inline JSON, or a JSON file path "
      "(default: uniform {|H>, |V>})");
}

void add_amplitudes(CLI::App* cmd, AmplitudeOpts& opts) {
  cmd->add_option("--alpha-re", opts.alpha_re, "Re(alpha) (default 1)");
  cmd->add_option("--alpha-im", opts.alpha_im, "Im(alpha)");
  cmd->add_option("--beta-re", opts.beta_re, "Re(beta)");
  cmd->add_option("--beta-im", opts.beta_im, "Im(beta)");
}

void add_register(CLI::App* cmd, RegisterOpts& opts, const char* bits_help) {
  cmd->add_option("--register", opts.path,
                  "register file (text format: 'empty_flag: 0|1' header, "
                  "then 'b1 b2' per line)");
  cmd->add_option("--bits", opts.bits, bits_help);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rdel::ConfigError("cannot open output file '" + path + "'");
  out << content;
}

void write_report(const CommonOpts& opts, const nlohmann::json& report) {
  write_output(opts.out, report.dump(2) + "\n");
}

rdel::StateFamily load_family(const std::string& spec) {
  if (spec.empty()) return rdel::StateFamily::hv();
  if (spec == "haar") return rdel::StateFamily::haar();
  nlohmann::json parsed;
  try {
    if (spec.front() == '{') {
      parsed = nlohmann::json::parse(spec);
    } else {
      std::ifstream in(spec);
      if (!in)
        throw rdel::ConfigError("cannot open family file '" + spec + "'");
      in >> parsed;
    }
  } catch (const nlohmann::json::exception& e) {
    throw rdel::ConfigError(std::string("family: invalid JSON: ") + e.what());
  }
  return rdel::StateFamily::from_json(parsed);
}

// --register loads the file as-is; --bits b1b2... builds a register whose
// copy slots are blank (for cloning) or identical (for deletion).
rdel::LabeledRegister load_register(const RegisterOpts& opts,
                                    bool identical_pairs) {
  if (!opts.path.empty() && !opts.bits.empty())
    throw rdel::ConfigError("give --register or --bits, not both");
  if (opts.path.empty() && opts.bits.empty())
    throw rdel::ConfigError("need --register or --bits");
  if (!opts.path.empty()) {
    std::ifstream in(opts.path);
    if (!in)
      throw rdel::ConfigError("cannot open register file '" + opts.path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return rdel::register_from_text(text.str());
  }
  rdel::LabeledRegister reg;
  for (char c : opts.bits) {
    if (c != '0' && c != '1')
      throw rdel::ConfigError("--bits must contain only 0 and 1");
    const rdel::Bit b = static_cast<rdel::Bit>(c - '0');
    reg.pairs.push_back(
        {b, identical_pairs ? b : static_cast<rdel::Bit>(0)});
  }
  return reg;
}

// Parse (alpha, beta), check normalization within 1e-9, then renormalize so
// downstream operations see an exactly unit pair.
std::pair<complex_t, complex_t> parse_amplitudes(const AmplitudeOpts& opts) {
  const complex_t alpha{opts.alpha_re, opts.alpha_im};
  const complex_t beta{opts.beta_re, opts.beta_im};
  const double sq = std::norm(alpha) + std::norm(beta);
  if (std::abs(sq - 1.0) > 1e-9)
    throw rdel::ConfigError(
        "|alpha|^2 + |beta|^2 must equal 1 (within 1e-9)");
  const double scale = 1.0 / std::sqrt(sq);
  return {alpha * scale, beta * scale};
}

nlohmann::json amplitude_params(complex_t alpha, complex_t beta) {
  return {{"alpha", {alpha.real(), alpha.imag()}},
          {"beta", {beta.real(), beta.imag()}}};
}

nlohmann::json state_to_json(const rdel::StateVector& s) {
  nlohmann::json amps = nlohmann::json::array();
  for (std::size_t i = 0; i < s.dim(); ++i)
    amps.push_back({s.amp(i).real(), s.amp(i).imag()});
  return {{"dims", s.dims()}, {"amps", amps}};
}

nlohmann::json matrix_to_json(const rdel::Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---- subcommand runners ----

void run_truth_table(const CommonOpts& common) {
  std::ostringstream out;
  for (rdel::Bit a : {0, 1})
    for (rdel::Bit b : {0, 1}) {
      const rdel::BitPair in{a, b};
      const rdel::BitPair mapped = rdel::cnot_pair(in);
      out << "|" << int(in.first) << ">|" << int(in.second) << "> -> |"
          << int(mapped.first) << ">|" << int(mapped.second) << ">\n";
    }
  write_output(common.out, out.str());
}

void run_clone(const CommonOpts& common, const RegisterOpts& reg_opts) {
  const auto reg = load_register(reg_opts, /*identical_pairs=*/false);
  write_output(common.out, rdel::register_to_text(rdel::clone_sequence(reg)));
}

void run_delete(const CommonOpts& common, const RegisterOpts& reg_opts) {
  const auto reg = load_register(reg_opts, /*identical_pairs=*/true);
  write_output(common.out,
               rdel::register_to_text(rdel::cnot_delete_sequence(reg)));
}

void run_rdelete_classical(const CommonOpts& common,
                           const RegisterOpts& reg_opts) {
  const auto reg = load_register(reg_opts, /*identical_pairs=*/true);
  rdel::RngStream rng = rdel::RngStream(common.seed).split(0);
  write_output(common.out,
               rdel::register_to_text(rdel::r_delete_classical(reg, rng)));
}

void run_rdelete_quantum(const CommonOpts& common,
                         const AmplitudeOpts& amp_opts) {
  const auto family = load_family(common.family);
  const auto [alpha, beta] = parse_amplitudes(amp_opts);
  rdel::RngStream rng = rdel::RngStream(common.seed).split(0);
  const rdel::DeletionIsometry iso = rdel::build_r_deletion(family, rng);

  const rdel::StateVector psi({2}, {alpha, beta});
  const rdel::StateVector input = rdel::tensor(psi, psi);
  const rdel::StateVector output = iso.apply(input);

  nlohmann::json params = amplitude_params(alpha, beta);
  params["family"] = family.describe();
  write_report(common,
               rdel::make_report("rdelete-quantum", common.seed, params,
                                 {{"isometry", iso.to_json()},
                                  {"input", state_to_json(input)},
                                  {"output", state_to_json(output)}}));
}

void run_witness(const CommonOpts& common, const AmplitudeOpts& amp_opts) {
  const auto family = load_family(common.family);
  const auto [alpha, beta] = parse_amplitudes(amp_opts);
  rdel::RngStream rng = rdel::RngStream(common.seed).split(0);
  const rdel::DeletionIsometry iso = rdel::build_r_deletion(family, rng);
  auto [label, state] = family.sample(rng);
  const rdel::WitnessReport report =
      rdel::eq9_residual(alpha, beta, iso,
                         rdel::SampledState{std::move(label), std::move(state)},
                         family.describe());

  nlohmann::json params = amplitude_params(alpha, beta);
  params["family"] = family.describe();
  write_report(common, rdel::make_report("witness", common.seed, params,
                                         report.to_json()));
}

void run_residual_stats(const CommonOpts& common,
                        const AmplitudeOpts& amp_opts, std::uint64_t trials,
                        double threshold, const std::string& format) {
  const auto family = load_family(common.family);
  const auto [alpha, beta] = parse_amplitudes(amp_opts);
  rdel::RngStream rng(common.seed);
  const rdel::ResidualSummary summary =
      rdel::residual_statistics(family, alpha, beta, trials, rng, threshold);

  if (format == "csv") {
    write_output(common.out, summary.to_csv());
    return;
  }
  nlohmann::json params = amplitude_params(alpha, beta);
  params["family"] = family.describe();
  params["trials"] = trials;
  params["threshold"] = threshold;
  write_report(common, rdel::make_report("residual-stats", common.seed,
                                         params, summary.to_json()));
}

void run_channel(const CommonOpts& common, const std::string& mode,
                 std::uint64_t samples) {
  const auto family = load_family(common.family);
  rdel::QuantumChannel channel = [&] {
    if (mode == "exact") return rdel::averaged_channel_exact(family);
    rdel::RngStream rng = rdel::RngStream(common.seed).split(0);
    return rdel::averaged_channel_sampled(family, samples, rng);
  }();

  nlohmann::json results = channel.to_json();
  results["min_eigenvalue"] = channel.min_choi_eigenvalue();
  results["tp_defect"] = channel.tp_defect();
  write_report(common,
               rdel::make_report("channel", common.seed,
                                 {{"family", family.describe()},
                                  {"mode", mode},
                                  {"samples", samples}},
                                 results));
}

void run_entropy(const CommonOpts& common, std::uint64_t slots) {
  const auto family = load_family(common.family);
  const rdel::EntropyReport report = rdel::entropy_account(family, slots);
  write_report(common,
               rdel::make_report("entropy", common.seed,
                                 {{"family", family.describe()},
                                  {"slots", slots}},
                                 report.to_json()));
}

void run_holevo(const CommonOpts& common, const std::string& ensemble,
                std::uint64_t ensemble_size) {
  const auto family = load_family(common.family);
  std::vector<std::pair<double, rdel::StateVector>> inputs;
  if (ensemble == "hv") {
    inputs = {{0.5, rdel::ket_h()}, {0.5, rdel::ket_v()}};
  } else {
    if (ensemble_size == 0)
      throw rdel::ConfigError("--ensemble-size must be >= 1");
    rdel::RngStream rng = rdel::RngStream(common.seed).split(0);
    const rdel::StateFamily haar = rdel::StateFamily::haar();
    const double p = 1.0 / static_cast<double>(ensemble_size);
    for (std::uint64_t i = 0; i < ensemble_size; ++i)
      inputs.emplace_back(p, haar.sample(rng).second);
  }
  const double chi = rdel::holevo_leak(family, inputs);
  write_report(common,
               rdel::make_report("holevo", common.seed,
                                 {{"family", family.describe()},
                                  {"ensemble", ensemble},
                                  {"members", inputs.size()}},
                                 {{"chi_bits", chi}}));
}

void run_reuse(const CommonOpts& common) {
  const auto family = load_family(common.family);
  const rdel::DensityMatrix rho_bar = family.average();
  const rdel::StateVector prepared = rdel::reuse_prepare(rho_bar);
  write_report(common,
               rdel::make_report("reuse", common.seed,
                                 {{"family", family.describe()}},
                                 {{"rho_bar", matrix_to_json(rho_bar.entries())},
                                  {"prepared", state_to_json(prepared)},
                                  {"entropy_bits",
                                   rdel::von_neumann_entropy(rho_bar)}}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "rdel - randomized deletion of classical bits and qubits: exact "
      "simulation, linearity-violation witnesses, and entropy/leakage "
      "accounting"};
  app.require_subcommand(1);

  CommonOpts common;
  AmplitudeOpts amps;
  RegisterOpts reg_opts;
  std::uint64_t trials = 1000;
  double threshold = 0.1;
  std::string format = "json";
  std::string mode = "exact";
  std::uint64_t samples = 1000;
  std::uint64_t slots = 2;
  std::string ensemble = "hv";
  std::uint64_t ensemble_size = 10;

  auto* truth = app.add_subcommand(
      "truth-table",
      "Print the controlled-not action on the four classical bit pairs");
  add_out(truth, common);

  auto* clone = app.add_subcommand(
      "clone",
      "Imprint the first bits of a blank register onto its copy slots");
  add_register(clone, reg_opts,
               "first components of a blank register, e.g. 0110");
  add_out(clone, common);

  auto* del = app.add_subcommand(
      "delete",
      "Zero the copy slots of an identical-pair register (reversible "
      "controlled-not deletion)");
  add_register(del, reg_opts, "bits of an identical-pair register, e.g. 0110");
  add_out(del, common);

  auto* rdc = app.add_subcommand(
      "rdelete-classical",
      "Replace each copy slot with a fair random bit and label the register "
      "empty");
  add_register(rdc, reg_opts, "bits of an identical-pair register, e.g. 0110");
  add_seed(rdc, common);
  add_out(rdc, common);

  auto* rdq = app.add_subcommand(
      "rdelete-quantum",
      "Build a randomized-deletion isometry from the family and apply it to "
      "psi x psi (slot randomized, remnant recorded in the ancilla)");
  add_family(rdq, common);
  add_amplitudes(rdq, amps);
  add_seed(rdq, common);
  add_out(rdq, common);

  auto* wit = app.add_subcommand(
      "witness",
      "Residual between the actual randomized-deletion output on psi x psi "
      "and the fixed-blank linear-ancilla hypothesis (zero only for "
      "singleton families)");
  add_family(wit, common);
  add_amplitudes(wit, amps);
  add_seed(wit, common);
  add_out(wit, common);

  auto* stats = app.add_subcommand(
      "residual-stats",
      "Distribution of the linearity-violation residual over fresh draws, "
      "one sub-stream per trial");
  add_family(stats, common);
  add_amplitudes(stats, amps);
  stats->add_option("--trials", trials, "number of trials (default 1000)");
  stats->add_option("--threshold", threshold,
                    "violation threshold for the summary (default 0.1)");
  stats->add_option("--format", format, "json or csv (default json)")
      ->check(CLI::IsMember({"json", "csv"}));
  add_seed(stats, common);
  add_out(stats, common);

  auto* chan = app.add_subcommand(
      "channel",
      "Average the deletion isometry over its draws and dump the Choi "
      "matrix with positivity/trace diagnostics");
  add_family(chan, common);
  chan->add_option("--mode", mode, "exact or mc (default exact)")
      ->check(CLI::IsMember({"exact", "mc"}));
  chan->add_option("--samples", samples,
                   "draw count for mc mode (default 1000)");
  add_seed(chan, common);
  add_out(chan, common);

  auto* ent = app.add_subcommand(
      "entropy",
      "Entropy of the randomized slot average against the n-bit "
      "full-randomization bound");
  add_family(ent, common);
  ent->add_option("--slots", slots, "total register slots n (default 2)");
  add_out(ent, common);

  auto* hol = app.add_subcommand(
      "holevo",
      "Holevo information carried by the deleted slot about the input "
      "ensemble (zero: the remnant is informationless)");
  add_family(hol, common);
  hol->add_option("--ensemble", ensemble,
                  "input ensemble: hv or haar (default hv)")
      ->check(CLI::IsMember({"hv", "haar"}));
  hol->add_option("--ensemble-size", ensemble_size,
                  "haar ensemble size (default 10)");
  add_seed(hol, common);
  add_out(hol, common);

  auto* reuse = app.add_subcommand(
      "reuse",
      "Diagonalize the randomized slot average and prepare its dominant "
      "eigenvector for reuse");
  add_family(reuse, common);
  add_out(reuse, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  try {
    if (truth->parsed()) run_truth_table(common);
    if (clone->parsed()) run_clone(common, reg_opts);
    if (del->parsed()) run_delete(common, reg_opts);
    if (rdc->parsed()) run_rdelete_classical(common, reg_opts);
    if (rdq->parsed()) run_rdelete_quantum(common, amps);
    if (wit->parsed()) run_witness(common, amps);
    if (stats->parsed())
      run_residual_stats(common, amps, trials, threshold, format);
    if (chan->parsed()) run_channel(common, mode, samples);
    if (ent->parsed()) run_entropy(common, slots);
    if (hol->parsed()) run_holevo(common, ensemble, ensemble_size);
    if (reuse->parsed()) run_reuse(common);
  } catch (const rdel::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rdel::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
