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

#include "qfound/sampling.h"

namespace qfound {

ComplexMatrix random_hermitian(size_t dim, Rng &rng) {
    ComplexMatrix m(dim);
    for (size_t i = 0; i < dim; ++i) {
        m(i, i) = rng.normal();
        for (size_t j = i + 1; j < dim; ++j) {
            double re = rng.normal();
            double im = rng.normal();
            m(i, j) = Complex(re, im);
            m(j, i) = Complex(re, -im);
        }
    }
    return m;
}

StateVector random_state(size_t dim, Rng &rng) {
    StateVector v(dim);
    for (size_t k = 0; k < dim; ++k) {
        double re = rng.normal();
        double im = rng.normal();
        v[k] = Complex(re, im);
    }
    return v.normalized();
}

std::vector<StateVector> random_basis(size_t dim, Rng &rng) {
    std::vector<StateVector> basis;
    while (basis.size() < dim) {
        StateVector v = random_state(dim, rng);
        for (const auto &b : basis) {
            v -= inner(b, v) * b;
        }
        if (v.norm() < 1e-6) {
            continue;
        }
        v = v.normalized();
        for (const auto &b : basis) {
            v -= inner(b, v) * b;
        }
        basis.push_back(v.normalized());
    }
    return basis;
}

ComplexMatrix random_unitary(size_t dim, Rng &rng) {
    return ComplexMatrix::from_columns(random_basis(dim, rng));
}

std::vector<StateVector> standard_basis(size_t dim) {
    std::vector<StateVector> basis;
    for (size_t k = 0; k < dim; ++k) {
        basis.push_back(StateVector::basis(dim, k));
    }
    return basis;
}

}  // namespace qfound
