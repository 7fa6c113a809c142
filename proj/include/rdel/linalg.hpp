#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace rdel {

using complex_t = std::complex<double>;

// Tolerances used throughout. Well above double-precision noise at the
// dimensions handled here (<= 48), far below any signal the tests probe.
inline constexpr double kNormTol = 1e-12;
inline constexpr double kHermTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;

// Tensor products refuse to grow past this total dimension.
inline constexpr std::size_t kTensorDimCap = 4096;

bool is_finite(complex_t value);

// Dense row-major complex matrix. Only the handful of operations the
// library needs; dimensions stay small, so plain loops everywhere.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  complex_t& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const complex_t& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  const std::vector<complex_t>& data() const { return data_; }

  Matrix adjoint() const;
  complex_t trace() const;
  double max_abs() const;

  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix operator*(const Matrix& other) const;
  Matrix scaled(complex_t factor) const;
  Matrix& accumulate(const Matrix& other, double weight);

  // max_ij |a_ij - b_ij|
  static double max_abs_diff(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<complex_t> data_;
};

// Complex amplitude vector over a tensor-product basis. Subsystems are
// zero-based, leftmost factor = slot 0. Row-major (mixed radix) indexing:
// index = ((i0 * d1 + i1) * d2 + i2) ...
class StateVector {
 public:
  StateVector() = default;
  StateVector(std::vector<std::size_t> dims, std::vector<complex_t> amps);

  // Basis vector |index> over the given dims.
  static StateVector basis(std::vector<std::size_t> dims, std::size_t index);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<complex_t>& amps() const { return amps_; }
  complex_t amp(std::size_t i) const { return amps_[i]; }

  double norm() const;
  bool is_normalized(double tol = kNormTol) const;
  StateVector normalized() const;

  StateVector operator+(const StateVector& other) const;
  StateVector operator-(const StateVector& other) const;
  StateVector scaled(complex_t factor) const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<complex_t> amps_;
};

// Kronecker product; dims concatenate. CapacityError past kTensorDimCap.
StateVector tensor(const StateVector& a, const StateVector& b);

// <a|b>, conjugate-linear in the first argument. ShapeError on dims mismatch.
complex_t inner(const StateVector& a, const StateVector& b);

// Hermitian, trace-1 matrix over a tensor-product basis.
class DensityMatrix {
 public:
  DensityMatrix() = default;

  // Validates Hermiticity and unit trace (DomainError beyond tolerance).
  DensityMatrix(std::vector<std::size_t> dims, Matrix entries);

  static DensityMatrix maximally_mixed(std::vector<std::size_t> dims);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }
  complex_t entry(std::size_t r, std::size_t c) const {
    return entries_(r, c);
  }

  double min_eigenvalue() const;

 private:
  std::vector<std::size_t> dims_;
  Matrix entries_;
};

// |s><s|.
DensityMatrix pure_density(const StateVector& s);

// Mixture sum_i p_i |s_i><s_i|; probabilities need not be normalized here.
DensityMatrix mixture(const std::vector<std::pair<double, StateVector>>& parts);

// Trace out every subsystem not in `keep`. Keep indices are zero-based slot
// numbers; the output keeps them in ascending slot order. ShapeError on an
// empty, duplicate, or out-of-range keep set.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::size_t>& keep);

struct EigenPair {
  double value;
  std::vector<complex_t> vector;
};

// Eigenvalues of a Hermitian matrix, sorted descending.
// DomainError if the input is non-Hermitian beyond kHermTol.
std::vector<double> hermitian_eigenvalues(const Matrix& m);

// Full eigensystem of a Hermitian matrix, eigenvalues descending.
// The eigenbasis is canonical: within each cluster of equal eigenvalues
// (within kHermTol) the vectors are rebuilt by projecting the standard basis
// in index order, every vector's largest-magnitude amplitude is made real
// positive, and cluster members are ordered by the index of that amplitude.
// This pins reuse preparation to a single deterministic output.
std::vector<EigenPair> hermitian_eigensystem(const Matrix& m);

std::vector<std::pair<double, StateVector>> eigendecompose(
    const DensityMatrix& rho);

// S(rho) = -sum_i lambda_i log2 lambda_i, with 0 log 0 := 0. In bits.
double von_neumann_entropy(const DensityMatrix& rho);

// (1/2) ||a - b||_1. ShapeError on dims mismatch.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// Schmidt coefficients (descending singular values of the coefficient
// matrix) of a bipartite pure state. Requires exactly two subsystems.
std::vector<double> schmidt_coefficients(const StateVector& s);

}  // namespace rdel
