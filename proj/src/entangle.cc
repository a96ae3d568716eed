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

#include "qfound/entangle.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qfound/error.h"

namespace qfound {

namespace {

void require_max_entangled(const EntangledState &state, double tol) {
    if (!state.is_maximally_entangled(tol)) {
        throw Error(ErrorCode::NotMaximallyEntangled, "Schmidt coefficients are not all 1/sqrt(N)");
    }
}

void require_basis(const std::vector<StateVector> &basis, size_t dim, double tol, const char *what) {
    if (basis.size() != dim) {
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has the wrong number of vectors");
    }
    for (const auto &v : basis) {
        if (v.dim() != dim) {
            throw Error(ErrorCode::DimensionMismatch, std::string(what) + " vector has the wrong length");
        }
    }
    if (!is_orthonormal(basis, tol)) {
        throw Error(ErrorCode::NotOrthonormal,
                    std::string(what) + " orthonormality error " + std::to_string(orthonormality_error(basis)));
    }
}

}  // namespace

EntangledState::EntangledState(std::vector<StateVector> basis_alice, std::vector<StateVector> basis_bob,
                               std::vector<double> coeffs, double tol)
    : alice_(std::move(basis_alice)), bob_(std::move(basis_bob)), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        throw Error(ErrorCode::DimensionMismatch, "entangled state needs at least one term");
    }
    require_basis(alice_, coeffs_.size(), tol, "alice basis");
    require_basis(bob_, coeffs_.size(), tol, "bob basis");
    double total = 0;
    for (double c : coeffs_) {
        if (c < 0) {
            throw Error(ErrorCode::InvalidParameter, "Schmidt coefficients must be non-negative");
        }
        total += c * c;
    }
    if (std::abs(total - 1.0) > tol) {
        throw Error(ErrorCode::NotNormalized, "sum of squared coefficients is " + std::to_string(total));
    }
}

bool EntangledState::is_maximally_entangled(double tol) const {
    double target = 1.0 / std::sqrt(static_cast<double>(dim()));
    return std::all_of(coeffs_.begin(), coeffs_.end(), [&](double c) { return std::abs(c - target) <= tol; });
}

StateVector EntangledState::amplitudes() const {
    StateVector psi(dim() * dim());
    for (size_t n = 0; n < dim(); ++n) {
        psi += coeffs_[n] * kron(alice_[n], bob_[n]);
    }
    return psi;
}

EntangledState EntangledState::swapped() const {
    return EntangledState(bob_, alice_, coeffs_);
}

StateVector AntiUnitary::apply(const StateVector &x) const {
    size_t n = conjugation_basis.size();
    StateVector coords(n);
    for (size_t k = 0; k < n; ++k) {
        coords[k] = inner(conjugation_basis[k], x);
    }
    StateVector mapped = (unitary_factor * coords).conj();
    StateVector out(x.dim());
    for (size_t k = 0; k < n; ++k) {
        out += mapped[k] * conjugation_basis[k];
    }
    return out;
}

StateVector AntiUnitary::apply_inverse(const StateVector &y) const {
    size_t n = conjugation_basis.size();
    StateVector coords(n);
    for (size_t k = 0; k < n; ++k) {
        coords[k] = std::conj(inner(conjugation_basis[k], y));
    }
    StateVector pre = unitary_factor.adjoint() * coords;
    StateVector out(y.dim());
    for (size_t k = 0; k < n; ++k) {
        out += pre[k] * conjugation_basis[k];
    }
    return out;
}

ComplexMatrix AntiUnitary::standard_factor() const {
    ComplexMatrix phi = ComplexMatrix::from_columns(conjugation_basis);
    return phi * unitary_factor.conj() * phi.transpose();
}

EntangledState make_max_entangled(std::vector<StateVector> basis_alice, std::vector<StateVector> basis_bob,
                                  double tol) {
    if (basis_alice.size() != basis_bob.size()) {
        throw Error(ErrorCode::DimensionMismatch, "bases have different sizes");
    }
    size_t n = basis_alice.size();
    std::vector<double> coeffs(n, 1.0 / std::sqrt(static_cast<double>(n)));
    return EntangledState(std::move(basis_alice), std::move(basis_bob), std::move(coeffs), tol);
}

EntangledState schmidt_decompose(const StateVector &v, double tol) {
    size_t n = static_cast<size_t>(std::llround(std::sqrt(static_cast<double>(v.dim()))));
    if (n == 0 || n * n != v.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "vector length " + std::to_string(v.dim()) + " is not N^2");
    }
    if (!v.is_normalized(tol)) {
        throw Error(ErrorCode::NotNormalized, "norm is " + std::to_string(v.norm()));
    }
    ComplexMatrix amp(n, std::vector<Complex>(v.amplitudes().begin(), v.amplitudes().end()));
    ComplexMatrix reduced = amp * amp.adjoint();
    auto eig = eigendecompose(0.5 * (reduced + reduced.adjoint()), tol);
    std::reverse(eig.begin(), eig.end());

    struct Term {
        double coeff;
        StateVector alice;
        StateVector bob;
    };
    std::vector<Term> terms;
    std::vector<StateVector> bob_vectors;
    std::vector<double> coeffs;
    std::vector<StateVector> alice_vectors;
    for (auto &[value, psi] : eig) {
        // phi_n = M^T conj(psi_n) / c_n
        StateVector w(n);
        for (size_t k = 0; k < n; ++k) {
            Complex total = 0;
            for (size_t i = 0; i < n; ++i) {
                total += std::conj(psi[i]) * amp(i, k);
            }
            w[k] = total;
        }
        terms.push_back({w.norm(), psi, w});
    }
    std::stable_sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) { return a.coeff > b.coeff; });

    // Gram-Schmidt over the bob side; vanishing terms are completed from the
    // standard basis.
    std::vector<StateVector> done;
    size_t next_seed = 0;
    for (auto &term : terms) {
        StateVector cand = term.coeff > 1e-13 ? term.bob : StateVector(n);
        if (term.coeff <= 1e-13) {
            term.coeff = 0;
        }
        while (true) {
            for (const auto &d : done) {
                cand -= inner(d, cand) * d;
            }
            if (cand.norm() > 1e-6) {
                break;
            }
            cand = StateVector::basis(n, next_seed++);
        }
        term.bob = cand.normalized();
        done.push_back(term.bob);
    }

    for (auto &term : terms) {
        alice_vectors.push_back(std::move(term.alice));
        bob_vectors.push_back(std::move(term.bob));
        coeffs.push_back(term.coeff);
    }
    return EntangledState(std::move(alice_vectors), std::move(bob_vectors), std::move(coeffs), tol);
}

AntiUnitary build_U(const EntangledState &state, double tol) {
    require_max_entangled(state, tol);
    size_t n = state.dim();
    ComplexMatrix factor(n);
    // Utilde = conj(Phi^dagger Psi): column n holds conj(<phi_m|psi_n>).
    for (size_t row = 0; row < n; ++row) {
        for (size_t col = 0; col < n; ++col) {
            factor(row, col) = std::conj(inner(state.basis_bob()[row], state.basis_alice()[col]));
        }
    }
    return AntiUnitary{std::move(factor), state.basis_bob()};
}

ComplexMatrix partner_operator(const EntangledState &state, const ComplexMatrix &o, double tol) {
    if (o.dim() != state.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "operator and state dimensions differ");
    }
    if (!o.is_hermitian(tol)) {
        throw Error(ErrorCode::NotHermitian, "hermiticity error " + std::to_string(o.hermiticity_error()));
    }
    ComplexMatrix k = build_U(state, tol).standard_factor();
    return k * o.conj() * k.adjoint();
}

double check_perfect_correlation(const EntangledState &state, const ComplexMatrix &o, double tol) {
    ComplexMatrix partner = partner_operator(state, o, tol);
    StateVector psi = state.amplitudes();
    return (apply_on_first(partner, psi) - apply_on_second(o, psi)).norm();
}

EntangledState product_of_entangled(const EntangledState &a, const EntangledState &b, double tol) {
    require_max_entangled(a, tol);
    require_max_entangled(b, tol);
    std::vector<StateVector> alice, bob;
    std::vector<double> coeffs;
    for (size_t i = 0; i < a.dim(); ++i) {
        for (size_t j = 0; j < b.dim(); ++j) {
            alice.push_back(kron(a.basis_alice()[i], b.basis_alice()[j]));
            bob.push_back(kron(a.basis_bob()[i], b.basis_bob()[j]));
            coeffs.push_back(a.coeffs()[i] * b.coeffs()[j]);
        }
    }
    return EntangledState(std::move(alice), std::move(bob), std::move(coeffs), tol);
}

StateVector regroup_product(const StateVector &ab, size_t dim_a, size_t dim_b) {
    size_t na2 = dim_a * dim_a, nb2 = dim_b * dim_b, nab = dim_a * dim_b;
    if (ab.dim() != na2 * nb2) {
        throw Error(ErrorCode::DimensionMismatch, "product vector has the wrong length");
    }
    StateVector out(ab.dim());
    for (size_t ia = 0; ia < dim_a; ++ia) {
        for (size_t ka = 0; ka < dim_a; ++ka) {
            for (size_t ib = 0; ib < dim_b; ++ib) {
                for (size_t kb = 0; kb < dim_b; ++kb) {
                    size_t from = (ia * dim_a + ka) * nb2 + (ib * dim_b + kb);
                    size_t to = (ia * dim_b + ib) * nab + (ka * dim_b + kb);
                    out[to] = ab[from];
                }
            }
        }
    }
    return out;
}

double verify_basis_invariance(const EntangledState &state, const std::vector<StateVector> &new_basis, double tol) {
    require_max_entangled(state, tol);
    require_basis(new_basis, state.dim(), tol, "new basis");
    AntiUnitary u = build_U(state, tol);
    StateVector expanded(state.dim() * state.dim());
    for (const auto &chi : new_basis) {
        expanded += kron(u.apply(chi), chi);
    }
    expanded *= 1.0 / std::sqrt(static_cast<double>(state.dim()));
    return (state.amplitudes() - expanded).norm();
}

EntangledState singlet() {
    StateVector up{1.0, 0.0}, down{0.0, 1.0};
    return make_max_entangled({-1.0 * down, up}, {up, down});
}

}  // namespace qfound
