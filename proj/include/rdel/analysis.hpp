#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rdel/deletion.hpp"
#include "rdel/family.hpp"
#include "rdel/linalg.hpp"
#include "rdel/rng.hpp"

namespace rdel {

// One evaluation of the linearity-violation witness: how far the actual
// randomized-deletion output on psi psi |A> is from the fixed-sigma,
// linear-ancilla hypothesis
//   alpha^2 |H,S_s1,A_H> + beta^2 |V,S_s1,A_V>
//   + alpha beta (|H,S_s1,A_V> + |V,S_s1,A_H>).
// residual = Euclidean norm of the 12-dim difference. Zero for singleton
// families; generically positive otherwise.
struct WitnessReport {
  complex_t alpha;
  complex_t beta;
  DeletionDraw draw;
  SampledState sigma1;
  double residual = 0.0;
  std::string family;

  nlohmann::json to_json() const;
};

// ParameterError unless |alpha|^2 + |beta|^2 = 1 within kNormTol.
WitnessReport eq9_residual(complex_t alpha, complex_t beta,
                           const DeletionIsometry& iso,
                           const SampledState& sigma1,
                           std::string family_desc = "");

struct ResidualTrial {
  std::uint64_t index = 0;
  std::string sigma1, sigma2, sigma3, sigma4, sigma5;
  double residual = 0.0;
};

struct ResidualSummary {
  std::vector<ResidualTrial> trials;
  double min_residual = 0.0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double threshold = 0.0;
  double fraction_above = 0.0;

  nlohmann::json to_json() const;
  // "trial,sigma1,...,sigma5,residual" header plus one row per trial.
  std::string to_csv() const;
};

// Fresh isometry and sigma1 per trial, from rng.split(trial index).
ResidualSummary residual_statistics(const StateFamily& family, complex_t alpha,
                                    complex_t beta, std::uint64_t trials,
                                    RngStream& rng, double threshold = 0.1);

// 1 - <A_psi| rho_anc |A_psi> where rho_anc is the ancilla reduction of the
// actual output on psi psi |A> and |A_psi> = alpha|A_H> + beta|A_V> is the
// linear-ancilla hypothesis. Zero for basis inputs and singleton families.
double ancilla_linear_hypothesis_error(const DeletionIsometry& iso,
                                       complex_t alpha, complex_t beta);

// Entropy generated by randomizing one slot of an n-slot register, against
// the n-bit full-randomization bound.
struct EntropyReport {
  std::string family;
  double deleted_slot_entropy = 0.0;  // S(rho_bar), in bits
  std::uint64_t total_slots = 0;
  double bound = 0.0;  // = total_slots bits

  nlohmann::json to_json() const;
};

EntropyReport entropy_account(const StateFamily& family,
                              std::uint64_t n_slots);

// Holevo quantity of the deleted-slot marginals of the exact averaged
// channel across the input ensemble {(p_i, psi_i)}; the deletion map leaks
// nothing, so this is 0 up to rounding. ParameterError unless the
// probabilities sum to 1 (within 1e-9) and every psi_i is a normalized qubit.
double holevo_leak(const StateFamily& family,
                   const std::vector<std::pair<double, StateVector>>& ensemble);

// Report envelope shared by the CLI: {"experiment", "seed", "params",
// "results"}.
nlohmann::json make_report(const std::string& experiment, std::uint64_t seed,
                           nlohmann::json params, nlohmann::json results);

}  // namespace rdel
