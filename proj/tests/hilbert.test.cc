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

#include "qfound/hilbert.h"

#include "gtest/gtest.h"

#include "oracle.test.h"
#include "qfound/rng.h"
#include "qfound/sampling.h"

using namespace qfound;
using namespace qfound_test;

namespace {

const Complex I{0, 1};

ComplexMatrix sigma_x() {
    return {{0, 1}, {1, 0}};
}
ComplexMatrix sigma_y() {
    return {{0, -I}, {I, 0}};
}
ComplexMatrix sigma_z() {
    return {{1, 0}, {0, -1}};
}

}  // namespace

TEST(hilbert, state_vector_basics) {
    StateVector v{3.0, Complex(0, 4)};
    ASSERT_EQ(v.dim(), 2u);
    ASSERT_DOUBLE_EQ(v.norm(), 5.0);
    ASSERT_FALSE(v.is_normalized());
    ASSERT_TRUE(v.normalized().is_normalized());
    ASSERT_EQ(v.conj()[1], Complex(0, -4));
    ASSERT_EQ(StateVector::basis(3, 1), (StateVector{0.0, 1.0, 0.0}));
    ASSERT_EQ((StateVector{1.0, 2.0} + StateVector{3.0, 4.0}), (StateVector{4.0, 6.0}));
}

TEST(hilbert, inner_is_conjugate_linear_in_first_argument) {
    StateVector a{I, 1.0}, b{1.0, 1.0};
    ASSERT_EQ(inner(a, b), naive_inner(a, b));
    ASSERT_EQ(inner(a, b), Complex(1, -1));
    ASSERT_EQ(inner(2.0 * I * a, b), -2.0 * I * inner(a, b));
}

TEST(hilbert, equal_up_to_phase) {
    StateVector a = StateVector{1.0, I}.normalized();
    ASSERT_TRUE(equal_up_to_phase(a, std::polar(1.0, 0.7) * a));
    ASSERT_FALSE(equal_up_to_phase(a, StateVector{1.0, -I}.normalized()));
}

TEST(hilbert, orthonormality) {
    auto b = standard_basis(3);
    ASSERT_TRUE(is_orthonormal(b));
    b[2] = StateVector{0.0, 1.0, 1.0};
    ASSERT_FALSE(is_orthonormal(b));
}

TEST(hilbert, matrix_invariants) {
    ASSERT_EQ(ComplexMatrix(3).entries().size(), 9u);
    ASSERT_TRUE(sigma_y().is_hermitian());
    ASSERT_TRUE(sigma_y().is_unitary());
    ComplexMatrix skew{{0, 1}, {-1, 0}};
    ASSERT_FALSE(skew.is_hermitian());
    ASSERT_DOUBLE_EQ(skew.hermiticity_error(), 2.0);
    ComplexMatrix almost{{1, 0}, {1e-11, 1}};
    ASSERT_TRUE(almost.is_hermitian());
    ASSERT_EQ(sigma_y().adjoint(), sigma_y());
    ASSERT_EQ(sigma_y().conj(), -1.0 * sigma_y());
    ASSERT_EQ(sigma_y().transpose(), -1.0 * sigma_y());
    ASSERT_EQ(sigma_z().trace(), Complex(0));
}

TEST(hilbert, product_matches_naive) {
    Rng rng(11);
    auto a = random_unitary(4, rng), b = random_hermitian(4, rng);
    ASSERT_LE(max_entry_diff(a * b, naive_product(a, b)), 1e-13);
    auto v = random_state(4, rng);
    ASSERT_LE((a * v - naive_apply(a, v)).norm(), 1e-13);
}

TEST(hilbert, tensor_product) {
    ASSERT_EQ(tensor_product(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));
    std::array<double, 4> d{1, 1, -1, -1};
    ASSERT_EQ(tensor_product(sigma_z(), ComplexMatrix::identity(2)), ComplexMatrix::diagonal(d));
    ASSERT_EQ(tensor_product(sigma_z(), sigma_x()), naive_kron(sigma_z(), sigma_x()));
    ASSERT_EQ(kron(StateVector{1.0, 2.0}, StateVector{3.0, I}), naive_kron(StateVector{1.0, 2.0}, StateVector{3.0, I}));
}

TEST(hilbert, tensor_product_mixed_product_property) {
    Rng rng(5);
    for (size_t na : {2, 3}) {
        for (size_t nb : {2, 3}) {
            auto a = random_hermitian(na, rng), b = random_unitary(nb, rng);
            auto x = random_state(na, rng), y = random_state(nb, rng);
            auto lhs = tensor_product(a, b) * kron(x, y);
            auto rhs = kron(a * x, b * y);
            ASSERT_LE((lhs - rhs).norm(), 1e-12);
        }
    }
}

TEST(hilbert, apply_on_slots) {
    Rng rng(8);
    auto a = random_hermitian(3, rng);
    auto psi = random_state(9, rng);
    auto id = ComplexMatrix::identity(3);
    ASSERT_LE((apply_on_first(a, psi) - naive_apply(naive_kron(a, id), psi)).norm(), 1e-13);
    ASSERT_LE((apply_on_second(a, psi) - naive_apply(naive_kron(id, a), psi)).norm(), 1e-13);
}

TEST(hilbert, eigendecompose_diagonal) {
    auto pairs = eigendecompose(sigma_z());
    ASSERT_EQ(pairs.size(), 2u);
    ASSERT_EQ(pairs[0].value, -1.0);
    ASSERT_EQ(pairs[1].value, 1.0);
    ASSERT_TRUE(equal_up_to_phase(pairs[0].vector, StateVector{0.0, 1.0}));
}

TEST(hilbert, eigendecompose_spin1_sz_squared) {
    auto s = spin1_reference();
    auto pairs = eigendecompose(s[2] * s[2]);
    ASSERT_NEAR(pairs[0].value, 0.0, 1e-12);
    ASSERT_NEAR(pairs[1].value, 1.0, 1e-12);
    ASSERT_NEAR(pairs[2].value, 1.0, 1e-12);
}

TEST(hilbert, eigendecompose_matches_closed_form) {
    Rng rng(21);
    for (size_t n : {2, 3}) {
        for (int k = 0; k < 50; ++k) {
            auto m = random_hermitian(n, rng);
            auto oracle = closed_form_eigenvalues(m);
            auto pairs = eigendecompose(m);
            for (size_t i = 0; i < n; ++i) {
                ASSERT_NEAR(pairs[i].value, oracle[i], 1e-9);
            }
        }
    }
}

TEST(hilbert, eigendecompose_reconstructs) {
    Rng rng(3);
    for (size_t n : {1, 2, 4, 6, 9}) {
        auto m = random_hermitian(n, rng);
        auto pairs = eigendecompose(m);
        ComplexMatrix rebuilt(n);
        for (size_t i = 0; i < n; ++i) {
            rebuilt += pairs[i].value * ComplexMatrix::outer(pairs[i].vector, pairs[i].vector);
            if (i > 0) {
                ASSERT_LE(pairs[i - 1].value, pairs[i].value);
            }
            for (size_t j = 0; j < i; ++j) {
                ASSERT_LE(std::abs(naive_inner(pairs[i].vector, pairs[j].vector)), 1e-9);
            }
            ASSERT_NEAR(naive_norm(pairs[i].vector), 1.0, 1e-12);
        }
        ASSERT_LE(max_entry_diff(rebuilt, m), 1e-9);
    }
}

TEST(hilbert, eigendecompose_degenerate_cluster) {
    Rng rng(4);
    auto u = random_unitary(4, rng);
    std::array<double, 4> d{2, 2, 2, -1};
    auto m = u * ComplexMatrix::diagonal(d) * u.adjoint();
    auto clusters = spectral_clusters(m);
    ASSERT_EQ(clusters.size(), 2u);
    ASSERT_NEAR(clusters[0].value, -1.0, 1e-10);
    ASSERT_EQ(clusters[1].vectors.size(), 3u);
    ComplexMatrix total = clusters[0].projector + clusters[1].projector;
    ASSERT_LE(max_abs_diff(total, ComplexMatrix::identity(4)), 1e-10);
    ASSERT_LE(max_abs_diff(clusters[1].projector * clusters[1].projector, clusters[1].projector), 1e-10);
}

TEST(hilbert, eigendecompose_is_deterministic_on_degenerate_input) {
    auto pairs = eigendecompose(ComplexMatrix::identity(3));
    for (size_t k = 0; k < 3; ++k) {
        ASSERT_EQ(pairs[k].value, 1.0);
    }
    // Lexicographic order of the phase-fixed vectors puts e_3 first.
    ASSERT_TRUE(equal_up_to_phase(pairs[0].vector, StateVector::basis(3, 2)));
    ASSERT_TRUE(equal_up_to_phase(pairs[2].vector, StateVector::basis(3, 0)));
}

TEST(hilbert, eigendecompose_rejects_non_hermitian) {
    ComplexMatrix skew{{0, 1}, {-1, 0}};
    ASSERT_EQ(thrown_code([&] { eigendecompose(skew); }), ErrorCode::NotHermitian);
}

TEST(hilbert, commutator) {
    ASSERT_EQ(commutator(sigma_z(), sigma_z()).max_abs(), 0.0);
    auto expected = naive_product(sigma_x(), sigma_z()) - naive_product(sigma_z(), sigma_x());
    ASSERT_EQ(commutator(sigma_x(), sigma_z()), expected);
    ASSERT_LE(max_abs_diff(commutator(sigma_x(), sigma_z()), -2.0 * I * sigma_y()), 1e-15);
    auto s = spin1_reference();
    ASSERT_LE(commutator(s[0] * s[0], s[1] * s[1]).max_abs(), 1e-12);
    ASSERT_EQ(thrown_code([&] { commutator(sigma_x(), ComplexMatrix::identity(3)); }),
              ErrorCode::DimensionMismatch);
}

TEST(hilbert, commutator_of_hermitian_is_anti_hermitian) {
    Rng rng(9);
    for (int k = 0; k < 20; ++k) {
        auto a = random_hermitian(3, rng), b = random_hermitian(3, rng);
        auto c = commutator(a, b);
        ASSERT_LE((c + c.adjoint()).max_abs(), 1e-12);
    }
}
