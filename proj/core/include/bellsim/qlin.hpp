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

// Dense complex linear algebra over small multipartite Hilbert spaces.
//
// Kronecker convention: subsystem 0 is the slowest-varying index (the
// leftmost factor of a tensor product). Everything in the library that
// builds or splits a composite space relies on this ordering.

#ifndef BELLSIM_QLIN_HPP_
#define BELLSIM_QLIN_HPP_

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace bellsim::qlin {

using Complex = std::complex<double>;

inline constexpr double kAlgebraTolerance = 1e-10;
inline constexpr double kEigenvalueFloor = -1e-9;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  // Zero-filled rows x cols matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  // Row-major entries. Throws DomainError on a size mismatch or a
  // non-finite entry.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
  static ComplexMatrix diagonal(std::span<const Complex> values);
  // |ket><bra|
  static ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  std::span<const Complex> entries() const { return entries_; }

  const Complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  ComplexMatrix adjoint() const;
  Complex trace() const;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& m);
  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) = default;

  // Matrix-vector product.
  std::vector<Complex> apply(std::span<const Complex> v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

// Largest entrywise |a - b|. Shapes must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool is_hermitian(const ComplexMatrix& m, double tol = kAlgebraTolerance);
bool is_unitary(const ComplexMatrix& m, double tol = kAlgebraTolerance);

// Kronecker product, `a` as the slow index.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<Complex> tensor_product(std::span<const Complex> a, std::span<const Complex> b);

// Eigenvalues of a Hermitian matrix in ascending order (cyclic Jacobi on
// the real-symmetric embedding [[Re, -Im], [Im, Re]]).
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

// Ordered subsystem dimensions of a composite space.
class TensorSpace {
 public:
  TensorSpace() = default;
  explicit TensorSpace(std::vector<std::size_t> dims);
  TensorSpace(std::initializer_list<std::size_t> dims)
      : TensorSpace(std::vector<std::size_t>(dims)) {}

  static TensorSpace single(std::size_t dim) { return TensorSpace({dim}); }

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t subsystem_count() const { return dims_.size(); }
  std::size_t dimension() const { return dimension_; }

  // The space of `*this` followed by `other`.
  TensorSpace concat(const TensorSpace& other) const;

  friend bool operator==(const TensorSpace& a, const TensorSpace& b) { return a.dims_ == b.dims_; }

 private:
  std::vector<std::size_t> dims_;
  std::size_t dimension_ = 1;
};

class PureState {
 public:
  // Throws DomainError unless sum |psi_a|^2 == 1 within 1e-10.
  PureState(TensorSpace space, std::vector<Complex> amplitudes);

  // Rescales to unit norm; throws DomainError on a zero or non-finite vector.
  static PureState normalized(TensorSpace space, std::vector<Complex> amplitudes);
  static PureState basis(TensorSpace space, std::size_t index);

  const TensorSpace& space() const { return space_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }

 private:
  TensorSpace space_;
  std::vector<Complex> amplitudes_;
};

PureState tensor_product(const PureState& a, const PureState& b);

// Hermitian, unit-trace, positive semidefinite; validated on construction.
class DensityMatrix {
 public:
  DensityMatrix(TensorSpace space, ComplexMatrix matrix);
  explicit DensityMatrix(const PureState& psi);

  static DensityMatrix maximally_mixed(TensorSpace space);

  const TensorSpace& space() const { return space_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dimension() const { return matrix_.rows(); }

 private:
  TensorSpace space_;
  ComplexMatrix matrix_;
};

class UnitaryOperator {
 public:
  // Throws DomainError unless ||U^dagger U - I||_max <= 1e-10.
  UnitaryOperator(TensorSpace space, ComplexMatrix matrix);

  static UnitaryOperator identity(TensorSpace space);

  const TensorSpace& space() const { return space_; }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  TensorSpace space_;
  ComplexMatrix matrix_;
};

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);
UnitaryOperator tensor_product(const UnitaryOperator& a, const UnitaryOperator& b);

// Reduced state on the subsystems listed in `keep` (any order, duplicates
// rejected); the result keeps them in their original order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep);

// U rho U^dagger
DensityMatrix evolve(const DensityMatrix& rho, const UnitaryOperator& u);

// Re tr(rho A). The observable must be Hermitian within 1e-10.
double expectation(const DensityMatrix& rho, const ComplexMatrix& observable);

// tr(rho^2)
double purity(const DensityMatrix& rho);

}  // namespace bellsim::qlin

#endif  // BELLSIM_QLIN_HPP_
