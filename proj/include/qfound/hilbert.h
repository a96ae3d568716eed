// Copyright 2026 The qfound Authors
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

#ifndef QFOUND_HILBERT_H
#define QFOUND_HILBERT_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qfound {

using Complex = std::complex<double>;

/// Absolute tolerance used when a caller does not supply one.
inline constexpr double kDefaultTol = 1e-10;
/// Eigenvalues closer than this are treated as one degenerate cluster.
inline constexpr double kClusterTol = 1e-8;

class StateVector {
   public:
    StateVector() = default;
    explicit StateVector(size_t dim);
    explicit StateVector(std::vector<Complex> amplitudes);
    StateVector(std::initializer_list<Complex> amplitudes);

    /// The k-th standard basis vector.
    static StateVector basis(size_t dim, size_t k);

    size_t dim() const noexcept {
        return amps_.size();
    }
    Complex &operator[](size_t k) {
        return amps_[k];
    }
    const Complex &operator[](size_t k) const {
        return amps_[k];
    }
    std::span<const Complex> amplitudes() const noexcept {
        return amps_;
    }

    double norm() const;
    bool is_normalized(double tol = kDefaultTol) const;
    StateVector normalized() const;
    StateVector conj() const;

    StateVector &operator+=(const StateVector &other);
    StateVector &operator-=(const StateVector &other);
    StateVector &operator*=(Complex scale);

    bool operator==(const StateVector &other) const = default;

   private:
    std::vector<Complex> amps_;
};

StateVector operator+(StateVector a, const StateVector &b);
StateVector operator-(StateVector a, const StateVector &b);
StateVector operator*(Complex scale, StateVector v);

/// <a|b>, anti-linear in the first argument.
Complex inner(const StateVector &a, const StateVector &b);
/// Kronecker product; `a` occupies the slow (left) index.
StateVector kron(const StateVector &a, const StateVector &b);
/// True when |<a|b>| = |a||b| within tol, i.e. equal up to a global phase.
bool equal_up_to_phase(const StateVector &a, const StateVector &b, double tol = kDefaultTol);
/// Largest |<v_i|v_j> - delta_ij| over the family.
double orthonormality_error(std::span<const StateVector> family);
bool is_orthonormal(std::span<const StateVector> family, double tol = kDefaultTol);

/// Dense square complex matrix, row-major.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(size_t dim);
    ComplexMatrix(size_t dim, std::vector<Complex> row_major);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(size_t dim);
    static ComplexMatrix diagonal(std::span<const double> entries);
    static ComplexMatrix from_columns(std::span<const StateVector> columns);
    /// |a><b|
    static ComplexMatrix outer(const StateVector &a, const StateVector &b);

    size_t dim() const noexcept {
        return dim_;
    }
    Complex &operator()(size_t row, size_t col) {
        return data_[row * dim_ + col];
    }
    const Complex &operator()(size_t row, size_t col) const {
        return data_[row * dim_ + col];
    }
    std::span<const Complex> entries() const noexcept {
        return data_;
    }
    StateVector column(size_t col) const;

    ComplexMatrix adjoint() const;
    ComplexMatrix conj() const;
    ComplexMatrix transpose() const;
    Complex trace() const;

    /// max |M_ij - conj(M_ji)|
    double hermiticity_error() const;
    bool is_hermitian(double tol = kDefaultTol) const;
    bool is_unitary(double tol = kDefaultTol) const;
    double max_abs() const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scale);

    bool operator==(const ComplexMatrix &other) const = default;

   private:
    size_t dim_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
StateVector operator*(const ComplexMatrix &m, const StateVector &v);

/// max_ij |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/// Kronecker product: result(i*dim(b)+k, j*dim(b)+l) = a(i,j)*b(k,l).
/// The left factor acts on the first tensor slot (Alice, system 2), the right
/// factor on the second slot (Bob, system 1).
ComplexMatrix tensor_product(const ComplexMatrix &a, const ComplexMatrix &b);

/// (op (x) 1) psi for psi on C^n (x) C^n, with n = op.dim().
StateVector apply_on_first(const ComplexMatrix &op, const StateVector &psi);
/// (1 (x) op) psi for psi on C^n (x) C^n, with n = op.dim().
StateVector apply_on_second(const ComplexMatrix &op, const StateVector &psi);

/// ab - ba. Throws DimensionMismatch.
ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b);

struct Eigenpair {
    double value;
    StateVector vector;
};

/// Spectrum of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Eigenvalues come back ascending. Each eigenvector has its first component
/// with modulus above 1e-9 rotated onto the positive real axis. Inside a
/// degenerate cluster (gaps <= kClusterTol) vectors are re-orthonormalized and
/// ordered lexicographically by (re, im) of their components; only the cluster
/// projector is stable there. Throws NotHermitian when the hermiticity error
/// exceeds `tol`.
std::vector<Eigenpair> eigendecompose(const ComplexMatrix &m, double tol = kDefaultTol);

/// One eigenvalue cluster with its spectral projector.
struct SpectralCluster {
    double value;
    std::vector<StateVector> vectors;
    ComplexMatrix projector;
};

/// Groups the output of eigendecompose into degenerate clusters. The cluster
/// value is the mean of its member eigenvalues.
std::vector<SpectralCluster> spectral_clusters(const ComplexMatrix &m, double tol = kDefaultTol);

}  // namespace qfound

#endif
