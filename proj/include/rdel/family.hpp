#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rdel/linalg.hpp"
#include "rdel/rng.hpp"

namespace rdel {

// Computational basis of each qubit slot: |H> = (1,0), |V> = (0,1).
StateVector ket_h();
StateVector ket_v();

struct FamilyMember {
  std::string label;
  StateVector state;  // dim-2, normalized
  double prob = 0.0;
};

// A labeled family of pure qubit states to draw the post-deletion slot
// content from: either a finite discrete set with probabilities, or the
// Haar measure on pure qubit states.
class StateFamily {
 public:
  // Validates: >= 1 member, normalized states, probs >= 0 summing to 1.
  static StateFamily discrete(std::vector<FamilyMember> members);
  static StateFamily uniform(
      std::vector<std::pair<std::string, StateVector>> members);
  static StateFamily singleton(std::string label, StateVector state);
  static StateFamily haar();

  // The default two-member family: uniform {|H>, |V>}.
  static StateFamily hv();

  bool is_haar() const { return haar_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<FamilyMember>& members() const { return members_; }

  // Draw one standard state. Discrete: a member with its probability.
  // Haar: uniform on pure qubit states (two complex Gaussian amplitudes,
  // normalized), labeled by its amplitudes.
  std::pair<std::string, StateVector> sample(RngStream& rng) const;

  // rho_bar = sum_i p_i |S_i><S_i|; the Haar average is I/2 analytically.
  DensityMatrix average() const;

  std::string describe() const;

  // {"kind":"discrete","members":[{"label":..,"amps":[[re,im],[re,im]],
  //  "prob":..},...]} or {"kind":"haar"}. Probs may be omitted across the
  // board for a uniform family. ConfigError on malformed input.
  nlohmann::json to_json() const;
  static StateFamily from_json(const nlohmann::json& j);

 private:
  StateFamily() = default;
  bool haar_ = false;
  std::vector<FamilyMember> members_;
};

}  // namespace rdel
