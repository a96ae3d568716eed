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

#ifndef QFOUND_ENTANGLE_H
#define QFOUND_ENTANGLE_H

#include <vector>

#include "qfound/hilbert.h"

namespace qfound {

/// Psi = sum_n c_n psi_n (x) phi_n on H (x) H.
///
/// psi_n (basis_alice) spans the left tensor slot, phi_n (basis_bob) the
/// right one. Coefficients are real and non-negative.
class EntangledState {
   public:
    /// Validates the invariants: equal dimensions, orthonormal bases,
    /// non-negative coefficients with unit sum of squares.
    EntangledState(std::vector<StateVector> basis_alice, std::vector<StateVector> basis_bob,
                   std::vector<double> coeffs, double tol = kDefaultTol);

    size_t dim() const noexcept {
        return coeffs_.size();
    }
    const std::vector<StateVector> &basis_alice() const noexcept {
        return alice_;
    }
    const std::vector<StateVector> &basis_bob() const noexcept {
        return bob_;
    }
    const std::vector<double> &coeffs() const noexcept {
        return coeffs_;
    }

    bool is_maximally_entangled(double tol = kDefaultTol) const;
    /// Amplitudes in the product basis, index i*N+k for |i>_alice |k>_bob.
    StateVector amplitudes() const;
    /// Same state with the roles of the two bases exchanged.
    EntangledState swapped() const;

   private:
    std::vector<StateVector> alice_;
    std::vector<StateVector> bob_;
    std::vector<double> coeffs_;
};

/// Anti-unitary U = C Utilde, where C is complex conjugation in the phi basis.
///
/// `unitary_factor` is Utilde written in phi coordinates and
/// `conjugation_basis` holds the phi vectors. For x with phi coordinates x_n,
/// U x has phi coordinates conj(Utilde x) = conj(Utilde) conj(x).
struct AntiUnitary {
    ComplexMatrix unitary_factor;
    std::vector<StateVector> conjugation_basis;

    StateVector apply(const StateVector &x) const;
    StateVector apply_inverse(const StateVector &y) const;
    /// K such that U x = K conj(x) in the computational basis.
    ComplexMatrix standard_factor() const;
};

EntangledState make_max_entangled(std::vector<StateVector> basis_alice, std::vector<StateVector> basis_bob,
                                  double tol = kDefaultTol);

/// Schmidt form of a normalized vector on C^N (x) C^N, coefficients descending.
/// Throws NotNormalized, DimensionMismatch if the length is not a square.
EntangledState schmidt_decompose(const StateVector &v, double tol = kDefaultTol);

/// U with U phi_n = psi_n, extended anti-linearly.
AntiUnitary build_U(const EntangledState &state, double tol = kDefaultTol);

/// Otilde = U O U^{-1}, evaluated as K conj(O) K^dagger with K = U's standard factor.
ComplexMatrix partner_operator(const EntangledState &state, const ComplexMatrix &o, double tol = kDefaultTol);

/// || (Otilde (x) 1 - 1 (x) O) Psi ||. Otilde sits on Alice's slot.
double check_perfect_correlation(const EntangledState &state, const ComplexMatrix &o, double tol = kDefaultTol);

/// Psi_a (x) Psi_b regrouped onto (H_a (x) H_b) (x) (H_a (x) H_b).
EntangledState product_of_entangled(const EntangledState &a, const EntangledState &b, double tol = kDefaultTol);

/// Reorders a vector on (Ha(x)Ha)(x)(Hb(x)Hb) into (Ha(x)Hb)(x)(Ha(x)Hb).
StateVector regroup_product(const StateVector &ab, size_t dim_a, size_t dim_b);

/// || Psi - N^{-1/2} sum_k U chi_k (x) chi_k || for an orthonormal basis chi.
/// The spin singlet (|ud> - |du>)/sqrt2 written in the bases
/// psi = (-|d>, |u>), phi = (|u>, |d>).
EntangledState singlet();

double verify_basis_invariance(const EntangledState &state, const std::vector<StateVector> &new_basis,
                               double tol = kDefaultTol);

}  // namespace qfound

#endif
