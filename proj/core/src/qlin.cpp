// Copyright 2026 The bellsim Authors
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

#include "bellsim/qlin.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bellsim/errors.hpp"

namespace bellsim::qlin {
namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DomainError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                      std::to_string(b.cols()));
  }
}

void require_square_on(const ComplexMatrix& m, const TensorSpace& space, const char* what) {
  if (!m.is_square() || m.rows() != space.dimension()) {
    throw DomainError(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()) + " but the space has dimension " +
                      std::to_string(space.dimension()));
  }
}

// Mixed-radix digits of `index` with subsystem 0 most significant.
void split_index(std::size_t index, std::span<const std::size_t> dims, std::span<std::size_t> out) {
  for (std::size_t i = dims.size(); i-- > 0;) {
    out[i] = index % dims[i];
    index /= dims[i];
  }
}

std::size_t join_index(std::span<const std::size_t> digits, std::span<const std::size_t> dims) {
  std::size_t index = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) index = index * dims[i] + digits[i];
  return index;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DomainError("ComplexMatrix: expected " + std::to_string(rows_ * cols_) +
                      " entries, got " + std::to_string(entries_.size()));
  }
  for (const Complex& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw DomainError("ComplexMatrix: non-finite entry");
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return ComplexMatrix(n, n, std::move(e));
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Complex> e;
  e.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DomainError("ComplexMatrix::from_rows: ragged rows");
    e.insert(e.end(), row.begin(), row.end());
  }
  return ComplexMatrix(r, c, std::move(e));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  const std::size_t n = values.size();
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = values[i];
  return ComplexMatrix(n, n, std::move(e));
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket, std::span<const Complex> bra) {
  std::vector<Complex> e(ket.size() * bra.size());
  for (std::size_t i = 0; i < ket.size(); ++i) {
    for (std::size_t j = 0; j < bra.size(); ++j) e[i * bra.size() + j] = ket[i] * std::conj(bra[j]);
  }
  return ComplexMatrix(ket.size(), bra.size(), std::move(e));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  std::vector<Complex> e(entries_.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) e[j * rows_ + i] = std::conj((*this)(i, j));
  }
  return ComplexMatrix(cols_, rows_, std::move(e));
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw DomainError("trace of a non-square matrix");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "operator+");
  std::vector<Complex> e(a.entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.entries_[i] + b.entries_[i];
  return ComplexMatrix(a.rows_, a.cols_, std::move(e));
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "operator-");
  std::vector<Complex> e(a.entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.entries_[i] - b.entries_[i];
  return ComplexMatrix(a.rows_, a.cols_, std::move(e));
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw DomainError("operator*: inner dimensions " + std::to_string(a.cols_) + " and " +
                      std::to_string(b.rows_) + " differ");
  }
  std::vector<Complex> e(a.rows_ * b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0)) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) e[i * b.cols_ + j] += aik * b(k, j);
    }
  }
  return ComplexMatrix(a.rows_, b.cols_, std::move(e));
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& m) {
  std::vector<Complex> e(m.entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = s * m.entries_[i];
  return ComplexMatrix(m.rows_, m.cols_, std::move(e));
}

std::vector<Complex> ComplexMatrix::apply(std::span<const Complex> v) const {
  if (v.size() != cols_) throw DomainError("apply: vector length does not match columns");
  std::vector<Complex> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return worst;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.is_square() && max_abs_diff(m, m.adjoint()) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  return m.is_square() && max_abs_diff(m.adjoint() * m, ComplexMatrix::identity(m.rows())) <= tol;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  std::vector<Complex> e(rows * cols);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          e[(i * b.rows() + k) * cols + (j * b.cols() + l)] = aij * b(k, l);
        }
      }
    }
  }
  return ComplexMatrix(rows, cols, std::move(e));
}

std::vector<Complex> tensor_product(std::span<const Complex> a, std::span<const Complex> b) {
  std::vector<Complex> out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) out[i * b.size() + k] = a[i] * b[k];
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (!m.is_square()) throw DomainError("hermitian_eigenvalues: matrix is not square");
  const std::size_t n = m.rows();
  const std::size_t big = 2 * n;
  // Real symmetric embedding; each eigenvalue of m appears twice.
  std::vector<double> a(big * big);
  auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * big + c]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // Symmetrize so tiny Hermiticity defects cannot stall the sweeps.
      const Complex h = 0.5 * (m(i, j) + std::conj(m(j, i)));
      at(i, j) = h.real();
      at(i + n, j + n) = h.real();
      at(i, j + n) = -h.imag();
      at(i + n, j) = h.imag();
    }
  }

  double scale = 0.0;
  for (double x : a) scale += x * x;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < big; ++p) {
      for (std::size_t q = p + 1; q < big; ++q) off += at(p, q) * at(p, q);
    }
    if (off <= 1e-32 * scale || off == 0.0) break;
    for (std::size_t p = 0; p < big; ++p) {
      for (std::size_t q = p + 1; q < big; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        at(p, p) -= t * apq;
        at(q, q) += t * apq;
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        for (std::size_t r = 0; r < big; ++r) {
          if (r == p || r == q) continue;
          const double arp = at(r, p);
          const double arq = at(r, q);
          at(r, p) = at(p, r) = c * arp - s * arq;
          at(r, q) = at(q, r) = s * arp + c * arq;
        }
      }
    }
  }

  std::vector<double> doubled(big);
  for (std::size_t i = 0; i < big; ++i) doubled[i] = at(i, i);
  std::sort(doubled.begin(), doubled.end());
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
  return out;
}

TensorSpace::TensorSpace(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw DomainError("TensorSpace: at least one subsystem is required");
  for (std::size_t d : dims_) {
    if (d == 0) throw DomainError("TensorSpace: subsystem dimension must be >= 1");
    dimension_ *= d;
  }
}

TensorSpace TensorSpace::concat(const TensorSpace& other) const {
  std::vector<std::size_t> dims = dims_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return TensorSpace(std::move(dims));
}

PureState::PureState(TensorSpace space, std::vector<Complex> amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != space_.dimension()) {
    throw DomainError("PureState: " + std::to_string(amplitudes_.size()) +
                      " amplitudes for a space of dimension " +
                      std::to_string(space_.dimension()));
  }
  double norm2 = 0.0;
  for (const Complex& z : amplitudes_) norm2 += std::norm(z);
  if (!(std::abs(norm2 - 1.0) <= kAlgebraTolerance)) {
    throw DomainError("PureState: squared norm " + std::to_string(norm2) + " is not 1");
  }
}

PureState PureState::normalized(TensorSpace space, std::vector<Complex> amplitudes) {
  double norm2 = 0.0;
  for (const Complex& z : amplitudes) norm2 += std::norm(z);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw DomainError("state vector cannot be normalized (zero or non-finite norm)");
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (Complex& z : amplitudes) z *= inv;
  return PureState(std::move(space), std::move(amplitudes));
}

PureState PureState::basis(TensorSpace space, std::size_t index) {
  if (index >= space.dimension()) throw DomainError("PureState::basis: index out of range");
  std::vector<Complex> amps(space.dimension());
  amps[index] = 1.0;
  return PureState(std::move(space), std::move(amps));
}

PureState tensor_product(const PureState& a, const PureState& b) {
  return PureState(a.space().concat(b.space()), tensor_product(a.amplitudes(), b.amplitudes()));
}

DensityMatrix::DensityMatrix(TensorSpace space, ComplexMatrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  require_square_on(matrix_, space_, "DensityMatrix");
  if (!is_hermitian(matrix_)) throw DomainError("DensityMatrix: matrix is not Hermitian");
  const Complex tr = matrix_.trace();
  if (!(std::abs(tr - 1.0) <= kAlgebraTolerance)) {
    throw DomainError("DensityMatrix: trace " + std::to_string(tr.real()) + " is not 1");
  }
  const std::vector<double> eig = hermitian_eigenvalues(matrix_);
  if (eig.front() < kEigenvalueFloor) {
    throw DomainError("DensityMatrix: negative eigenvalue " + std::to_string(eig.front()));
  }
}

DensityMatrix::DensityMatrix(const PureState& psi)
    : DensityMatrix(psi.space(), ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes())) {}

DensityMatrix DensityMatrix::maximally_mixed(TensorSpace space) {
  const std::size_t d = space.dimension();
  return DensityMatrix(space, Complex(1.0 / static_cast<double>(d)) * ComplexMatrix::identity(d));
}

UnitaryOperator::UnitaryOperator(TensorSpace space, ComplexMatrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  require_square_on(matrix_, space_, "UnitaryOperator");
  if (!is_unitary(matrix_)) throw DomainError("UnitaryOperator: matrix is not unitary");
}

UnitaryOperator UnitaryOperator::identity(TensorSpace space) {
  const std::size_t d = space.dimension();
  return UnitaryOperator(std::move(space), ComplexMatrix::identity(d));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(a.space().concat(b.space()), tensor_product(a.matrix(), b.matrix()));
}

UnitaryOperator tensor_product(const UnitaryOperator& a, const UnitaryOperator& b) {
  return UnitaryOperator(a.space().concat(b.space()), tensor_product(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  const std::vector<std::size_t>& dims = rho.space().dims();
  const std::size_t n_sub = dims.size();
  if (keep.empty()) throw DomainError("partial_trace: keep set is empty");
  std::vector<bool> kept(n_sub, false);
  for (std::size_t k : keep) {
    if (k >= n_sub) {
      throw DomainError("partial_trace: subsystem index " + std::to_string(k) +
                        " out of range for " + std::to_string(n_sub) + " subsystems");
    }
    if (kept[k]) throw DomainError("partial_trace: duplicate subsystem index");
    kept[k] = true;
  }

  std::vector<std::size_t> kept_dims;
  std::vector<std::size_t> traced_dims;
  for (std::size_t i = 0; i < n_sub; ++i) (kept[i] ? kept_dims : traced_dims).push_back(dims[i]);
  if (traced_dims.empty()) return rho;

  const TensorSpace out_space(kept_dims);
  const std::size_t out_dim = out_space.dimension();
  const std::size_t traced_dim = rho.dimension() / out_dim;

  std::vector<std::size_t> kept_row(kept_dims.size());
  std::vector<std::size_t> kept_col(kept_dims.size());
  std::vector<std::size_t> traced(traced_dims.size());
  std::vector<std::size_t> full_row(n_sub);
  std::vector<std::size_t> full_col(n_sub);

  // Assemble a full multi-index from kept and traced digits.
  auto merge = [&](std::span<const std::size_t> k, std::span<const std::size_t> t,
                   std::span<std::size_t> full) {
    std::size_t ki = 0;
    std::size_t ti = 0;
    for (std::size_t i = 0; i < n_sub; ++i) full[i] = kept[i] ? k[ki++] : t[ti++];
  };

  std::vector<Complex> out(out_dim * out_dim);
  const ComplexMatrix& m = rho.matrix();
  for (std::size_t r = 0; r < out_dim; ++r) {
    split_index(r, kept_dims, kept_row);
    for (std::size_t c = 0; c < out_dim; ++c) {
      split_index(c, kept_dims, kept_col);
      Complex sum = 0.0;
      for (std::size_t t = 0; t < traced_dim; ++t) {
        split_index(t, traced_dims, traced);
        merge(kept_row, traced, full_row);
        merge(kept_col, traced, full_col);
        sum += m(join_index(full_row, dims), join_index(full_col, dims));
      }
      out[r * out_dim + c] = sum;
    }
  }
  return DensityMatrix(out_space, ComplexMatrix(out_dim, out_dim, std::move(out)));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep) {
  return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

DensityMatrix evolve(const DensityMatrix& rho, const UnitaryOperator& u) {
  if (!(rho.space() == u.space())) {
    throw DomainError("evolve: state and unitary live on different spaces");
  }
  ComplexMatrix out = u.matrix() * rho.matrix() * u.matrix().adjoint();
  // Restore exact Hermiticity lost to roundoff.
  out = Complex(0.5) * (out + out.adjoint());
  return DensityMatrix(rho.space(), std::move(out));
}

double expectation(const DensityMatrix& rho, const ComplexMatrix& observable) {
  if (observable.rows() != rho.dimension() || observable.cols() != rho.dimension()) {
    throw DomainError("expectation: observable dimension does not match the state");
  }
  if (!is_hermitian(observable)) throw DomainError("expectation: observable is not Hermitian");
  const ComplexMatrix& m = rho.matrix();
  Complex tr = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t k = 0; k < m.cols(); ++k) tr += m(i, k) * observable(k, i);
  }
  if (std::abs(tr.imag()) > kAlgebraTolerance) {
    throw InternalError("expectation: imaginary part " + std::to_string(tr.imag()));
  }
  return tr.real();
}

double purity(const DensityMatrix& rho) {
  const ComplexMatrix& m = rho.matrix();
  double sum = 0.0;
  // tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho.
  for (const Complex& z : m.entries()) sum += std::norm(z);
  return sum;
}

}  // namespace bellsim::qlin
