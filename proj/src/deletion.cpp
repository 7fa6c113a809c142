#include "rdel/deletion.hpp"

#include <cmath>
#include <utility>

#include "rdel/errors.hpp"

namespace rdel {

namespace {

const std::vector<std::size_t> kPairDims{2, 2};
const std::vector<std::size_t> kOutputDims{2, 2, 3};

void require_two_qubit(const StateVector& s, const char* op) {
  if (s.dims() != kPairDims)
    throw ShapeError(std::string(op) + ": expected a two-qubit state");
}

void require_qubit(const StateVector& s, const char* op) {
  if (s.dim() != 2)
    throw ShapeError(std::string(op) + ": expected a single qubit");
}

// |q> x |sigma> x |ancilla basis k>, written directly into the 12-dim space.
StateVector branch(std::size_t q, const StateVector& sigma, std::size_t anc) {
  std::vector<complex_t> amps(12, complex_t{0.0, 0.0});
  for (std::size_t j = 0; j < 2; ++j) amps[(q * 2 + j) * 3 + anc] = sigma.amp(j);
  return StateVector(kOutputDims, std::move(amps));
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

StateVector ancilla_ready() { return StateVector::basis({3}, 0); }
StateVector ancilla_h() { return StateVector::basis({3}, 1); }
StateVector ancilla_v() { return StateVector::basis({3}, 2); }

DeletionIsometry::DeletionIsometry(DeletionDraw draw)
    : draw_(std::move(draw)), matrix_(kOutputDim, kInputDim) {
  for (const auto* s :
       {&draw_.sigma2, &draw_.sigma3, &draw_.sigma4, &draw_.sigma5}) {
    require_qubit(s->state, "DeletionIsometry");
    if (!s->state.is_normalized())
      throw DomainError("DeletionIsometry: draw state is not normalized");
  }
  // Columns: images of HH, HV, VH, VV. The kept qubit keeps the input's
  // first slot; the ancilla remnant records the input's second slot.
  const StateVector images[4] = {
      branch(0, draw_.sigma2.state, 1),  // HH -> H, S_s2, A_H
      branch(0, draw_.sigma4.state, 2),  // HV -> H, S_s4, A_V
      branch(1, draw_.sigma5.state, 1),  // VH -> V, S_s5, A_H
      branch(1, draw_.sigma3.state, 2),  // VV -> V, S_s3, A_V
  };
  for (std::size_t col = 0; col < kInputDim; ++col)
    for (std::size_t row = 0; row < kOutputDim; ++row)
      matrix_(row, col) = images[col].amp(row);
}

StateVector DeletionIsometry::basis_image(std::size_t input_index) const {
  if (input_index >= kInputDim)
    throw ShapeError("basis_image: index out of range");
  std::vector<complex_t> amps(kOutputDim);
  for (std::size_t row = 0; row < kOutputDim; ++row)
    amps[row] = matrix_(row, input_index);
  return StateVector(kOutputDims, std::move(amps));
}

StateVector DeletionIsometry::apply(const StateVector& two_qubit) const {
  require_two_qubit(two_qubit, "DeletionIsometry::apply");
  std::vector<complex_t> amps(kOutputDim, complex_t{0.0, 0.0});
  for (std::size_t col = 0; col < kInputDim; ++col) {
    const complex_t a = two_qubit.amp(col);
    if (a == complex_t{0.0, 0.0}) continue;
    for (std::size_t row = 0; row < kOutputDim; ++row)
      amps[row] += matrix_(row, col) * a;
  }
  return StateVector(kOutputDims, std::move(amps));
}

nlohmann::json DeletionIsometry::to_json() const {
  return {{"draw",
           {{"sigma2", draw_.sigma2.label},
            {"sigma3", draw_.sigma3.label},
            {"sigma4", draw_.sigma4.label},
            {"sigma5", draw_.sigma5.label}}},
          {"matrix", matrix_to_json(matrix_)}};
}

StateVector cnot_quantum(const StateVector& two_qubit) {
  require_two_qubit(two_qubit, "cnot_quantum");
  std::vector<complex_t> amps = two_qubit.amps();
  std::swap(amps[2], amps[3]);  // |10> <-> |11>
  return StateVector(kPairDims, std::move(amps));
}

DeletionIsometry build_r_deletion(const StateFamily& family, RngStream& rng) {
  DeletionDraw draw;
  auto next = [&] {
    auto [label, state] = family.sample(rng);
    return SampledState{std::move(label), std::move(state)};
  };
  draw.sigma2 = next();
  draw.sigma3 = next();
  draw.sigma4 = next();
  draw.sigma5 = next();
  return DeletionIsometry(std::move(draw));
}

DeletionIsometry ordinary_deletion(const StateVector& sigma) {
  require_qubit(sigma, "ordinary_deletion");
  const SampledState s{"Sigma", sigma.normalized()};
  return DeletionIsometry(DeletionDraw{s, s, s, s});
}

StateVector phi_state(const DeletionIsometry& iso) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return (iso.basis_image(1) + iso.basis_image(2)).scaled(inv_sqrt2);
}

StateVector r_clone_quantum(const StateVector& first,
                            const StateVector& second) {
  require_qubit(first, "r_clone_quantum");
  require_qubit(second, "r_clone_quantum");
  const bool is_h = std::abs(first.amp(0) - complex_t{1.0, 0.0}) <= kNormTol &&
                    std::abs(first.amp(1)) <= kNormTol;
  const bool is_v = std::abs(first.amp(0)) <= kNormTol &&
                    std::abs(first.amp(1) - complex_t{1.0, 0.0}) <= kNormTol;
  if (!is_h && !is_v)
    throw DomainError(
        "r_clone_quantum: first slot must be a basis state |H> or |V>; "
        "cloning an arbitrary state is forbidden by the no-cloning theorem");
  return tensor(first, first);
}

StateVector reuse_prepare(const DensityMatrix& rho_bar) {
  if (rho_bar.dim() != 2)
    throw ShapeError("reuse_prepare: expected a qubit density matrix");
  return eigendecompose(rho_bar).front().second;
}

QuantumChannel::QuantumChannel(Matrix choi) : choi_(std::move(choi)) {
  if (choi_.rows() != kInputDim * kOutputDim ||
      choi_.cols() != kInputDim * kOutputDim)
    throw ShapeError("QuantumChannel: Choi matrix must be 48 x 48");
}

DensityMatrix QuantumChannel::apply(const DensityMatrix& rho_in) const {
  if (rho_in.dims() != kPairDims)
    throw ShapeError("QuantumChannel::apply: expected a two-qubit input");
  Matrix out(kOutputDim, kOutputDim);
  for (std::size_t i = 0; i < kInputDim; ++i)
    for (std::size_t j = 0; j < kInputDim; ++j) {
      const complex_t rij = rho_in.entry(i, j);
      if (rij == complex_t{0.0, 0.0}) continue;
      for (std::size_t a = 0; a < kOutputDim; ++a)
        for (std::size_t b = 0; b < kOutputDim; ++b)
          out(a, b) += rij * choi_(i * kOutputDim + a, j * kOutputDim + b);
    }
  return DensityMatrix(kOutputDims, std::move(out));
}

double QuantumChannel::tp_defect() const {
  Matrix traced(kInputDim, kInputDim);
  for (std::size_t i = 0; i < kInputDim; ++i)
    for (std::size_t j = 0; j < kInputDim; ++j) {
      complex_t acc{0.0, 0.0};
      for (std::size_t a = 0; a < kOutputDim; ++a)
        acc += choi_(i * kOutputDim + a, j * kOutputDim + a);
      traced(i, j) = acc;
    }
  return Matrix::max_abs_diff(traced, Matrix::identity(kInputDim));
}

double QuantumChannel::min_choi_eigenvalue() const {
  return hermitian_eigenvalues(choi_).back();
}

nlohmann::json QuantumChannel::to_json() const {
  return {{"choi", matrix_to_json(choi_)}};
}

namespace {

// vec of the isometry under the Choi index convention:
// w[input * 12 + output] = V(output, input).
void accumulate_choi(Matrix& choi, const DeletionIsometry& iso,
                     double weight) {
  const std::size_t n = QuantumChannel::kInputDim * QuantumChannel::kOutputDim;
  std::vector<complex_t> w(n);
  for (std::size_t i = 0; i < QuantumChannel::kInputDim; ++i)
    for (std::size_t a = 0; a < QuantumChannel::kOutputDim; ++a)
      w[i * QuantumChannel::kOutputDim + a] = iso.matrix()(a, i);
  for (std::size_t r = 0; r < n; ++r) {
    if (w[r] == complex_t{0.0, 0.0}) continue;
    for (std::size_t c = 0; c < n; ++c)
      choi(r, c) += weight * w[r] * std::conj(w[c]);
  }
}

}  // namespace

QuantumChannel averaged_channel_exact(const StateFamily& family) {
  if (family.is_haar())
    throw DomainError(
        "averaged_channel_exact: exact averaging needs a discrete family");
  const auto& members = family.members();
  const std::size_t k = members.size();
  if (k > 8)
    throw CapacityError(
        "averaged_channel_exact: family too large for exact enumeration "
        "(max 8 members)");
  const std::size_t n = QuantumChannel::kInputDim * QuantumChannel::kOutputDim;
  Matrix choi(n, n);
  for (std::size_t i2 = 0; i2 < k; ++i2)
    for (std::size_t i3 = 0; i3 < k; ++i3)
      for (std::size_t i4 = 0; i4 < k; ++i4)
        for (std::size_t i5 = 0; i5 < k; ++i5) {
          const double p = members[i2].prob * members[i3].prob *
                           members[i4].prob * members[i5].prob;
          if (p == 0.0) continue;
          DeletionIsometry iso(DeletionDraw{
              SampledState{members[i2].label, members[i2].state},
              SampledState{members[i3].label, members[i3].state},
              SampledState{members[i4].label, members[i4].state},
              SampledState{members[i5].label, members[i5].state}});
          accumulate_choi(choi, iso, p);
        }
  return QuantumChannel(std::move(choi));
}

QuantumChannel averaged_channel_sampled(const StateFamily& family,
                                        std::size_t n_samples,
                                        RngStream& rng) {
  if (n_samples == 0)
    throw ParameterError("averaged_channel_sampled: n_samples must be >= 1");
  const std::size_t n = QuantumChannel::kInputDim * QuantumChannel::kOutputDim;
  Matrix choi(n, n);
  const double w = 1.0 / static_cast<double>(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s)
    accumulate_choi(choi, build_r_deletion(family, rng), w);
  return QuantumChannel(std::move(choi));
}

}  // namespace rdel
