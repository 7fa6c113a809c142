#include "rdel/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "rdel/errors.hpp"

namespace rdel {

namespace {

void require_unit_pair(complex_t alpha, complex_t beta, const char* op) {
  const double sq = std::norm(alpha) + std::norm(beta);
  if (std::abs(sq - 1.0) > kNormTol)
    throw ParameterError(std::string(op) +
                         ": |alpha|^2 + |beta|^2 must equal 1");
}

// |q> x |sigma> x |ancilla k> in the 12-dim output space.
StateVector branch(std::size_t q, const StateVector& sigma, std::size_t anc) {
  std::vector<complex_t> amps(12, complex_t{0.0, 0.0});
  for (std::size_t j = 0; j < 2; ++j) amps[(q * 2 + j) * 3 + anc] = sigma.amp(j);
  return StateVector({2, 2, 3}, std::move(amps));
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += "\"";
  return out;
}

nlohmann::json complex_to_json(complex_t v) {
  return {v.real(), v.imag()};
}

}  // namespace

nlohmann::json WitnessReport::to_json() const {
  return {{"alpha", complex_to_json(alpha)},
          {"beta", complex_to_json(beta)},
          {"family", family},
          {"sigma1", sigma1.label},
          {"sigma2", draw.sigma2.label},
          {"sigma3", draw.sigma3.label},
          {"sigma4", draw.sigma4.label},
          {"sigma5", draw.sigma5.label},
          {"residual", residual}};
}

WitnessReport eq9_residual(complex_t alpha, complex_t beta,
                           const DeletionIsometry& iso,
                           const SampledState& sigma1,
                           std::string family_desc) {
  require_unit_pair(alpha, beta, "eq9_residual");
  if (sigma1.state.dim() != 2 || !sigma1.state.is_normalized())
    throw ParameterError("eq9_residual: sigma1 must be a normalized qubit");

  const double sqrt2 = std::sqrt(2.0);
  // Actual output on psi psi |A>.
  const StateVector lhs = iso.basis_image(0).scaled(alpha * alpha) +
                          iso.basis_image(3).scaled(beta * beta) +
                          phi_state(iso).scaled(sqrt2 * alpha * beta);
  // Fixed-sigma, linear-ancilla hypothesis, the same sigma1 in all terms.
  const StateVector& s1 = sigma1.state;
  const StateVector rhs = branch(0, s1, 1).scaled(alpha * alpha) +
                          branch(1, s1, 2).scaled(beta * beta) +
                          (branch(0, s1, 2) + branch(1, s1, 1))
                              .scaled(alpha * beta);

  WitnessReport report;
  report.alpha = alpha;
  report.beta = beta;
  report.draw = iso.draw();
  report.sigma1 = sigma1;
  report.residual = (lhs - rhs).norm();
  report.family = std::move(family_desc);
  return report;
}

nlohmann::json ResidualSummary::to_json() const {
  nlohmann::json trial_rows = nlohmann::json::array();
  for (const auto& t : trials) {
    trial_rows.push_back({{"trial", t.index},
                          {"sigma1", t.sigma1},
                          {"sigma2", t.sigma2},
                          {"sigma3", t.sigma3},
                          {"sigma4", t.sigma4},
                          {"sigma5", t.sigma5},
                          {"residual", t.residual}});
  }
  return {{"trials", trials.size()},
          {"min_residual", min_residual},
          {"max_residual", max_residual},
          {"mean_residual", mean_residual},
          {"threshold", threshold},
          {"fraction_above", fraction_above},
          {"rows", trial_rows}};
}

std::string ResidualSummary::to_csv() const {
  std::string out = "trial,sigma1,sigma2,sigma3,sigma4,sigma5,residual\n";
  for (const auto& t : trials) {
    out += std::to_string(t.index) + "," + csv_quote(t.sigma1) + "," +
           csv_quote(t.sigma2) + "," + csv_quote(t.sigma3) + "," +
           csv_quote(t.sigma4) + "," + csv_quote(t.sigma5) + "," +
           format_double(t.residual) + "\n";
  }
  return out;
}

ResidualSummary residual_statistics(const StateFamily& family, complex_t alpha,
                                    complex_t beta, std::uint64_t trials,
                                    RngStream& rng, double threshold) {
  if (trials < 1) throw ParameterError("residual_statistics: trials must be >= 1");
  require_unit_pair(alpha, beta, "residual_statistics");

  ResidualSummary summary;
  summary.threshold = threshold;
  summary.trials.reserve(trials);
  double sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  std::uint64_t above = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    RngStream sub = rng.split(t);
    const DeletionIsometry iso = build_r_deletion(family, sub);
    auto [label, state] = family.sample(sub);
    const WitnessReport report = eq9_residual(
        alpha, beta, iso, SampledState{std::move(label), std::move(state)});
    const auto& d = report.draw;
    summary.trials.push_back(ResidualTrial{t, report.sigma1.label,
                                           d.sigma2.label, d.sigma3.label,
                                           d.sigma4.label, d.sigma5.label,
                                           report.residual});
    sum += report.residual;
    lo = std::min(lo, report.residual);
    hi = std::max(hi, report.residual);
    if (report.residual > threshold) ++above;
  }
  summary.min_residual = lo;
  summary.max_residual = hi;
  summary.mean_residual = sum / static_cast<double>(trials);
  summary.fraction_above =
      static_cast<double>(above) / static_cast<double>(trials);
  return summary;
}

double ancilla_linear_hypothesis_error(const DeletionIsometry& iso,
                                       complex_t alpha, complex_t beta) {
  require_unit_pair(alpha, beta, "ancilla_linear_hypothesis_error");
  const StateVector psi({2}, {alpha, beta});
  const StateVector out = iso.apply(tensor(psi, psi));
  const DensityMatrix rho_anc = partial_trace(pure_density(out), {2});
  // F(rho, |phi>) = <phi| rho |phi> with |A_psi> = alpha|A_H> + beta|A_V>.
  const StateVector target =
      ancilla_h().scaled(alpha) + ancilla_v().scaled(beta);
  complex_t fidelity{0.0, 0.0};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c)
      fidelity += std::conj(target.amp(r)) * rho_anc.entry(r, c) *
                  target.amp(c);
  return 1.0 - fidelity.real();
}

nlohmann::json EntropyReport::to_json() const {
  return {{"family", family},
          {"deleted_slot_entropy_bits", deleted_slot_entropy},
          {"total_slots", total_slots},
          {"bound_bits", bound}};
}

EntropyReport entropy_account(const StateFamily& family,
                              std::uint64_t n_slots) {
  if (n_slots < 1) throw ParameterError("entropy_account: n_slots must be >= 1");
  EntropyReport report;
  report.family = family.describe();
  report.deleted_slot_entropy = von_neumann_entropy(family.average());
  report.total_slots = n_slots;
  report.bound = static_cast<double>(n_slots);
  return report;
}

double holevo_leak(
    const StateFamily& family,
    const std::vector<std::pair<double, StateVector>>& ensemble) {
  if (ensemble.empty()) throw ParameterError("holevo_leak: empty ensemble");
  double total = 0.0;
  for (const auto& [p, psi] : ensemble) {
    if (p < 0.0) throw ParameterError("holevo_leak: negative probability");
    if (psi.dim() != 2 || !psi.is_normalized(1e-9))
      throw ParameterError("holevo_leak: ensemble states must be normalized qubits");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw ParameterError("holevo_leak: probabilities must sum to 1");

  const QuantumChannel channel = averaged_channel_exact(family);
  std::vector<std::pair<double, DensityMatrix>> marginals;
  marginals.reserve(ensemble.size());
  for (const auto& [p, psi] : ensemble) {
    const StateVector input = tensor(psi.normalized(), psi.normalized());
    const DensityMatrix out = channel.apply(pure_density(input));
    marginals.emplace_back(p, partial_trace(out, {1}));
  }

  Matrix avg(2, 2);
  double avg_entropy = 0.0;
  for (const auto& [p, rho] : marginals) {
    avg.accumulate(rho.entries(), p);
    avg_entropy += p * von_neumann_entropy(rho);
  }
  const DensityMatrix rho_avg({2}, std::move(avg));
  return von_neumann_entropy(rho_avg) - avg_entropy;
}

nlohmann::json make_report(const std::string& experiment, std::uint64_t seed,
                           nlohmann::json params, nlohmann::json results) {
  return {{"experiment", experiment},
          {"seed", seed},
          {"params", std::move(params)},
          {"results", std::move(results)}};
}

}  // namespace rdel
