#pragma once

#include <cstddef>
#include <string>

#include <json.hpp>

#include "rdel/family.hpp"
#include "rdel/linalg.hpp"
#include "rdel/rng.hpp"

namespace rdel {

// Three-dimensional ancilla: |A> (ready), |A_H>, |A_V>. The minimal space
// that makes the four basis images of the deletion map orthonormal.
inline constexpr std::size_t kAncillaDim = 3;
StateVector ancilla_ready();
StateVector ancilla_h();
StateVector ancilla_v();

struct SampledState {
  std::string label;
  StateVector state;  // dim-2, normalized
};

// The four standard states drawn when a deletion map is built, used on the
// basis inputs |HH>, |VV>, |HV>, |VH> respectively.
struct DeletionDraw {
  SampledState sigma2, sigma3, sigma4, sigma5;
};

// Single-shot randomized deletion with a fixed draw record: the linear
// extension of
//   |H>|H>|A> -> |H>|S_s2>|A_H>,   |V>|V>|A> -> |V>|S_s3>|A_V>,
//   |H>|V>|A> -> |H>|S_s4>|A_V>,   |V>|H>|A> -> |V>|S_s5>|A_H>
// to the whole two-qubit space (ancilla fixed at |A>). Column-orthonormal
// for every draw: the kept qubit and the ancilla remnant are orthogonal
// across any two basis images.
class DeletionIsometry {
 public:
  explicit DeletionIsometry(DeletionDraw draw);

  static constexpr std::size_t kInputDim = 4;    // qubit x qubit
  static constexpr std::size_t kOutputDim = 12;  // qubit x qubit x ancilla

  const DeletionDraw& draw() const { return draw_; }
  const Matrix& matrix() const { return matrix_; }  // 12 x 4

  // Input basis order: 0=HH, 1=HV, 2=VH, 3=VV (first qubit major).
  StateVector basis_image(std::size_t input_index) const;

  // Apply to a two-qubit state (dims {2,2}); output dims {2,2,3}.
  StateVector apply(const StateVector& two_qubit) const;

  nlohmann::json to_json() const;

 private:
  DeletionDraw draw_;
  Matrix matrix_;
};

// Quantum controlled-not on a two-qubit state: |00>->|00>, |01>->|01>,
// |10>->|11>, |11>->|10>, extended linearly.
StateVector cnot_quantum(const StateVector& two_qubit);

// Sample sigma2..sigma5 independently from the family and build the map.
DeletionIsometry build_r_deletion(const StateFamily& family, RngStream& rng);

// Fixed-blank deletion: the singleton-family special case where every draw
// is the same standard state Sigma.
DeletionIsometry ordinary_deletion(const StateVector& sigma);

// Image of (1/sqrt2)(|H>|V> + |V>|H>)|A> under the map:
// (1/sqrt2)(|H,S_s4,A_V> + |V,S_s5,A_H>).
StateVector phi_state(const DeletionIsometry& iso);

// Replace the second slot with the first, whatever the second holds.
// The first argument must be a basis state |H> or |V>; anything else is a
// DomainError (cloning an arbitrary unknown state would contradict the
// no-cloning theorem).
StateVector r_clone_quantum(const StateVector& first,
                            const StateVector& second);

// Dominant eigenvector of the randomized slot average: the pure state
// prepared for reuse. Depends only on rho_bar, never on the deleted input.
StateVector reuse_prepare(const DensityMatrix& rho_bar);

// The draw-averaged deletion map in Choi form. Index convention:
// row = input_index * 12 + output_index, so the partial trace over the
// output block diagonal must give the identity on the input space.
class QuantumChannel {
 public:
  static constexpr std::size_t kInputDim = 4;
  static constexpr std::size_t kOutputDim = 12;

  explicit QuantumChannel(Matrix choi);

  const Matrix& choi() const { return choi_; }  // 48 x 48

  // rho_in over dims {2,2} -> output over dims {2,2,3}.
  DensityMatrix apply(const DensityMatrix& rho_in) const;

  // max |Tr_out(choi) - I_4|; 0 for a trace-preserving map.
  double tp_defect() const;

  // Minimum Choi eigenvalue; >= 0 (within tolerance) iff completely positive.
  double min_choi_eigenvalue() const;

  nlohmann::json to_json() const;

 private:
  Matrix choi_;
};

// Exact ensemble average over all |family|^4 draw tuples, weighted by the
// product probabilities. Discrete families only; |family| <= 8 (4096 terms).
QuantumChannel averaged_channel_exact(const StateFamily& family);

// Monte Carlo estimate from n_samples independent draws.
QuantumChannel averaged_channel_sampled(const StateFamily& family,
                                        std::size_t n_samples,
                                        RngStream& rng);

}  // namespace rdel
