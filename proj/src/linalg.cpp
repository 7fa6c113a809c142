#include "rdel/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "rdel/errors.hpp"

namespace rdel {

namespace {

std::size_t product(const std::vector<std::size_t>& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

void require_same_dims(const std::vector<std::size_t>& a,
                       const std::vector<std::size_t>& b,
                       const char* op) {
  if (a != b) throw ShapeError(std::string(op) + ": subsystem dims mismatch");
}

void require_finite(const std::vector<complex_t>& values, const char* op) {
  for (const auto& v : values) {
    if (!is_finite(v)) throw DomainError(std::string(op) + ": non-finite amplitude");
  }
}

Eigen::MatrixXcd to_eigen(const Matrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

void require_hermitian(const Matrix& m, const char* op) {
  if (m.rows() != m.cols())
    throw ShapeError(std::string(op) + ": matrix is not square");
  double dev = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      dev = std::max(dev, std::abs(m(r, c) - std::conj(m(c, r))));
  if (dev > kHermTol)
    throw DomainError(std::string(op) + ": matrix is not Hermitian");
}

// First index attaining the maximum amplitude magnitude.
std::size_t argmax_abs(const std::vector<complex_t>& v) {
  std::size_t best = 0;
  double best_mag = std::abs(v[0]);
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > best_mag) {
      best = i;
      best_mag = mag;
    }
  }
  return best;
}

// Rotate the global phase so the largest-magnitude amplitude is real >= 0.
void canonicalize_phase(std::vector<complex_t>& v) {
  const complex_t pivot = v[argmax_abs(v)];
  const double mag = std::abs(pivot);
  if (mag == 0.0) return;
  const complex_t phase = std::conj(pivot) / mag;
  for (auto& a : v) a *= phase;
}

}  // namespace

bool is_finite(complex_t value) {
  return std::isfinite(value.real()) && std::isfinite(value.imag());
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, complex_t{0.0, 0.0}) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      out(c, r) = std::conj((*this)(r, c));
  return out;
}

complex_t Matrix::trace() const {
  complex_t t{0.0, 0.0};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

Matrix Matrix::operator+(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw ShapeError("Matrix add: shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw ShapeError("Matrix sub: shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= other.data_[i];
  return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw ShapeError("Matrix mul: shape mismatch");
  Matrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const complex_t a = (*this)(r, k);
      if (a == complex_t{0.0, 0.0}) continue;
      for (std::size_t c = 0; c < other.cols_; ++c)
        out(r, c) += a * other(k, c);
    }
  return out;
}

Matrix Matrix::scaled(complex_t factor) const {
  Matrix out = *this;
  for (auto& v : out.data_) v *= factor;
  return out;
}

Matrix& Matrix::accumulate(const Matrix& other, double weight) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw ShapeError("Matrix accumulate: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i)
    data_[i] += weight * other.data_[i];
  return *this;
}

double Matrix::max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data_.size(); ++i)
    m = std::max(m, std::abs(a.data_[i] - b.data_[i]));
  return m;
}

StateVector::StateVector(std::vector<std::size_t> dims,
                         std::vector<complex_t> amps)
    : dims_(std::move(dims)), amps_(std::move(amps)) {
  if (amps_.size() != product(dims_))
    throw ShapeError("StateVector: amplitude count does not match dims");
  for (std::size_t d : dims_) {
    if (d == 0) throw ShapeError("StateVector: zero subsystem dimension");
  }
  require_finite(amps_, "StateVector");
}

StateVector StateVector::basis(std::vector<std::size_t> dims,
                               std::size_t index) {
  const std::size_t n = product(dims);
  if (index >= n) throw ShapeError("StateVector::basis: index out of range");
  std::vector<complex_t> amps(n, complex_t{0.0, 0.0});
  amps[index] = 1.0;
  return StateVector(std::move(dims), std::move(amps));
}

double StateVector::norm() const {
  double sq = 0.0;
  for (const auto& a : amps_) sq += std::norm(a);
  return std::sqrt(sq);
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw DomainError("normalized: zero vector");
  return scaled(1.0 / n);
}

StateVector StateVector::operator+(const StateVector& other) const {
  require_same_dims(dims_, other.dims_, "StateVector add");
  std::vector<complex_t> amps(amps_.size());
  for (std::size_t i = 0; i < amps.size(); ++i)
    amps[i] = amps_[i] + other.amps_[i];
  return StateVector(dims_, std::move(amps));
}

StateVector StateVector::operator-(const StateVector& other) const {
  require_same_dims(dims_, other.dims_, "StateVector sub");
  std::vector<complex_t> amps(amps_.size());
  for (std::size_t i = 0; i < amps.size(); ++i)
    amps[i] = amps_[i] - other.amps_[i];
  return StateVector(dims_, std::move(amps));
}

StateVector StateVector::scaled(complex_t factor) const {
  std::vector<complex_t> amps = amps_;
  for (auto& a : amps) a *= factor;
  return StateVector(dims_, std::move(amps));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  const std::size_t total = a.dim() * b.dim();
  if (total > kTensorDimCap)
    throw CapacityError("tensor: total dimension exceeds cap");
  std::vector<std::size_t> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  std::vector<complex_t> amps(total);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      amps[i * b.dim() + j] = a.amp(i) * b.amp(j);
  return StateVector(std::move(dims), std::move(amps));
}

complex_t inner(const StateVector& a, const StateVector& b) {
  require_same_dims(a.dims(), b.dims(), "inner");
  complex_t acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i)
    acc += std::conj(a.amp(i)) * b.amp(i);
  return acc;
}

DensityMatrix::DensityMatrix(std::vector<std::size_t> dims, Matrix entries)
    : dims_(std::move(dims)), entries_(std::move(entries)) {
  const std::size_t n = product(dims_);
  if (entries_.rows() != n || entries_.cols() != n)
    throw ShapeError("DensityMatrix: entries do not match dims");
  require_hermitian(entries_, "DensityMatrix");
  // 2x headroom over kNormTol: |s><s| of a 1e-12-normalized state may be
  // off unit trace by twice that.
  if (std::abs(entries_.trace() - complex_t{1.0, 0.0}) > 2e-12)
    throw DomainError("DensityMatrix: trace is not 1");
}

DensityMatrix DensityMatrix::maximally_mixed(std::vector<std::size_t> dims) {
  const std::size_t n = product(dims);
  Matrix m = Matrix::identity(n).scaled(1.0 / static_cast<double>(n));
  return DensityMatrix(std::move(dims), std::move(m));
}

double DensityMatrix::min_eigenvalue() const {
  const auto eigs = hermitian_eigenvalues(entries_);
  return eigs.back();
}

DensityMatrix pure_density(const StateVector& s) {
  Matrix m(s.dim(), s.dim());
  for (std::size_t r = 0; r < s.dim(); ++r)
    for (std::size_t c = 0; c < s.dim(); ++c)
      m(r, c) = s.amp(r) * std::conj(s.amp(c));
  return DensityMatrix(s.dims(), std::move(m));
}

DensityMatrix mixture(
    const std::vector<std::pair<double, StateVector>>& parts) {
  if (parts.empty()) throw ParameterError("mixture: empty ensemble");
  const std::size_t n = parts.front().second.dim();
  double total = 0.0;
  Matrix m(n, n);
  for (const auto& [p, s] : parts) {
    if (p < 0.0) throw ParameterError("mixture: negative weight");
    require_same_dims(s.dims(), parts.front().second.dims(), "mixture");
    total += p;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        m(r, c) += p * s.amp(r) * std::conj(s.amp(c));
  }
  if (total <= 0.0) throw ParameterError("mixture: weights sum to zero");
  return DensityMatrix(parts.front().second.dims(),
                       m.scaled(1.0 / total));
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::size_t>& keep) {
  const auto& dims = rho.dims();
  if (keep.empty()) throw ShapeError("partial_trace: empty keep set");
  std::vector<std::size_t> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
    throw ShapeError("partial_trace: duplicate keep index");
  if (kept.back() >= dims.size())
    throw ShapeError("partial_trace: keep index out of range");

  std::vector<std::size_t> traced;
  for (std::size_t s = 0; s < dims.size(); ++s)
    if (!std::binary_search(kept.begin(), kept.end(), s)) traced.push_back(s);

  std::vector<std::size_t> kept_dims, traced_dims;
  for (std::size_t s : kept) kept_dims.push_back(dims[s]);
  for (std::size_t s : traced) traced_dims.push_back(dims[s]);
  const std::size_t kept_total = product(kept_dims);
  const std::size_t traced_total = product(traced_dims);

  // Strides of each slot in the full row-major index.
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t s = dims.size(); s-- > 1;)
    stride[s - 1] = stride[s] * dims[s];

  auto full_index = [&](std::size_t kept_idx, std::size_t traced_idx) {
    std::size_t idx = 0;
    for (std::size_t k = kept.size(); k-- > 0;) {
      idx += (kept_idx % kept_dims[k]) * stride[kept[k]];
      kept_idx /= kept_dims[k];
    }
    for (std::size_t t = traced.size(); t-- > 0;) {
      idx += (traced_idx % traced_dims[t]) * stride[traced[t]];
      traced_idx /= traced_dims[t];
    }
    return idx;
  };

  Matrix out(kept_total, kept_total);
  for (std::size_t r = 0; r < kept_total; ++r)
    for (std::size_t c = 0; c < kept_total; ++c) {
      complex_t acc{0.0, 0.0};
      for (std::size_t t = 0; t < traced_total; ++t)
        acc += rho.entry(full_index(r, t), full_index(c, t));
      out(r, c) = acc;
    }
  return DensityMatrix(std::move(kept_dims), std::move(out));
}

std::vector<double> hermitian_eigenvalues(const Matrix& m) {
  require_hermitian(m, "hermitian_eigenvalues");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      to_eigen(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw DomainError("hermitian_eigenvalues: eigensolver failed");
  std::vector<double> values(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + m.rows());
  std::sort(values.rbegin(), values.rend());
  return values;
}

std::vector<EigenPair> hermitian_eigensystem(const Matrix& m) {
  require_hermitian(m, "hermitian_eigensystem");
  const std::size_t n = m.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m));
  if (solver.info() != Eigen::Success)
    throw DomainError("hermitian_eigensystem: eigensolver failed");

  std::vector<EigenPair> pairs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t src = n - 1 - i;  // Eigen sorts ascending
    pairs[i].value = solver.eigenvalues()(src);
    pairs[i].vector.resize(n);
    for (std::size_t r = 0; r < n; ++r)
      pairs[i].vector[r] = solver.eigenvectors()(r, src);
  }

  // Rebuild each degenerate cluster from the projector so the basis does not
  // depend on solver internals: project standard basis vectors in index
  // order and Gram-Schmidt them.
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && std::abs(pairs[end].value - pairs[start].value) <= kHermTol)
      ++end;
    const std::size_t size = end - start;
    if (size > 1) {
      Matrix proj(n, n);
      for (std::size_t k = start; k < end; ++k)
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c)
            proj(r, c) += pairs[k].vector[r] * std::conj(pairs[k].vector[c]);

      std::vector<std::vector<complex_t>> basis;
      for (std::size_t j = 0; j < n && basis.size() < size; ++j) {
        std::vector<complex_t> w(n);
        for (std::size_t r = 0; r < n; ++r) w[r] = proj(r, j);
        for (const auto& u : basis) {
          complex_t ov{0.0, 0.0};
          for (std::size_t r = 0; r < n; ++r) ov += std::conj(u[r]) * w[r];
          for (std::size_t r = 0; r < n; ++r) w[r] -= ov * u[r];
        }
        double nrm = 0.0;
        for (const auto& a : w) nrm += std::norm(a);
        nrm = std::sqrt(nrm);
        if (nrm > 1e-7) {
          for (auto& a : w) a /= nrm;
          basis.push_back(std::move(w));
        }
      }
      for (std::size_t k = 0; k < basis.size(); ++k)
        pairs[start + k].vector = std::move(basis[k]);
    }
    for (std::size_t k = start; k < end; ++k)
      canonicalize_phase(pairs[k].vector);
    std::stable_sort(pairs.begin() + start, pairs.begin() + end,
                     [](const EigenPair& a, const EigenPair& b) {
                       return argmax_abs(a.vector) < argmax_abs(b.vector);
                     });
    start = end;
  }
  return pairs;
}

std::vector<std::pair<double, StateVector>> eigendecompose(
    const DensityMatrix& rho) {
  auto pairs = hermitian_eigensystem(rho.entries());
  std::vector<std::pair<double, StateVector>> out;
  out.reserve(pairs.size());
  for (auto& p : pairs)
    out.emplace_back(p.value, StateVector(rho.dims(), std::move(p.vector)));
  return out;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lambda : hermitian_eigenvalues(rho.entries())) {
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return s;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dims(a.dims(), b.dims(), "trace_distance");
  const Matrix diff = a.entries() - b.entries();
  double sum = 0.0;
  for (double lambda : hermitian_eigenvalues(diff)) sum += std::abs(lambda);
  return 0.5 * sum;
}

std::vector<double> schmidt_coefficients(const StateVector& s) {
  if (s.dims().size() != 2)
    throw ShapeError("schmidt_coefficients: need exactly two subsystems");
  const DensityMatrix reduced = partial_trace(pure_density(s), {0});
  std::vector<double> coeffs;
  for (double lambda : hermitian_eigenvalues(reduced.entries()))
    coeffs.push_back(std::sqrt(std::max(lambda, 0.0)));
  return coeffs;
}

}  // namespace rdel
