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

#ifndef QFOUND_SAMPLING_H
#define QFOUND_SAMPLING_H

#include <vector>

#include "qfound/hilbert.h"
#include "qfound/rng.h"

namespace qfound {

/// Entries with independent standard normal real and imaginary parts,
/// symmetrized to be Hermitian.
ComplexMatrix random_hermitian(size_t dim, Rng &rng);

/// Gram-Schmidt of a complex Gaussian matrix (Haar distributed up to phases).
ComplexMatrix random_unitary(size_t dim, Rng &rng);

/// Columns of random_unitary.
std::vector<StateVector> random_basis(size_t dim, Rng &rng);

/// Normalized complex Gaussian vector.
StateVector random_state(size_t dim, Rng &rng);

std::vector<StateVector> standard_basis(size_t dim);

}  // namespace qfound

#endif
