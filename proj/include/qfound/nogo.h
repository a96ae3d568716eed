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

#ifndef QFOUND_NOGO_H
#define QFOUND_NOGO_H

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qfound/hilbert.h"
#include "qfound/measure.h"

namespace qfound {

using Vec3 = std::array<double, 3>;
using Frame = std::array<Vec3, 3>;

/// Projective ray in R^3, stored with unit norm and its first nonzero
/// component positive.
struct Ray {
    Vec3 direction;
    int id;
};

using Triple = std::array<int, 3>;
using Pair = std::array<int, 2>;

/// Orthogonality tolerance for ray structure.
inline constexpr double kRayOrthoTol = 1e-9;

/// Rays together with every orthogonal triple and every orthogonal pair that
/// is not contained in a triple. Built only through from_directions, which
/// recomputes the structure by exhaustive scan.
class RaySet {
   public:
    /// Normalizes and sign-canonicalizes each direction. Throws InvalidRaySet
    /// on zero vectors or projectively repeated rays.
    static RaySet from_directions(std::span<const Vec3> directions);

    const std::vector<Ray> &rays() const noexcept {
        return rays_;
    }
    const std::vector<Triple> &triples() const noexcept {
        return triples_;
    }
    const std::vector<Pair> &pairs() const noexcept {
        return pairs_;
    }
    size_t size() const noexcept {
        return rays_.size();
    }

    /// The rays at the given positions, with structure recomputed.
    RaySet subset(std::span<const int> indices) const;

   private:
    std::vector<Ray> rays_;
    std::vector<Triple> triples_;
    std::vector<Pair> pairs_;
};

/// Re-checks every RaySet invariant (unit norms, orthogonality of stored
/// relations, completeness of the stored structure). Throws InvalidRaySet.
void validate(const RaySet &rs);

RaySet peres_rays();
RaySet coordinate_triad();

/// v(S_u^2) for each ray: 0, 1, or unassigned.
enum class Color : int8_t { Unassigned = -1, Zero = 0, One = 1 };

struct Coloring {
    std::vector<Color> assignment;

    bool complete() const;
};

/// Lists human-readable violations of the triple/pair rules; empty when the
/// coloring is complete and valid.
std::vector<std::string> coloring_violations(const RaySet &rs, const Coloring &coloring);

struct SearchStats {
    uint64_t nodes = 0;
    uint64_t exhausted_branches = 0;
    int max_depth = 0;
};

struct UnsatCertificate {
    SearchStats stats;
};

struct ColoringFound {
    Coloring coloring;
    SearchStats stats;
};

using ColoringResult = std::variant<ColoringFound, UnsatCertificate>;

/// Exhaustive backtracking with unit propagation. Branches on the unassigned
/// ray in the most triples that still lack a 0 (lowest id on ties). An
/// UnsatCertificate means no valid coloring exists.
ColoringResult search_coloring(const RaySet &rs);

/// S_x, S_y, S_z for spin 1 in the m = (1, 0, -1) basis, hbar = 1.
std::array<ComplexMatrix, 3> spin1_matrices();

/// S_u^2 for each axis u of an orthonormal frame. Throws NotOrthonormal.
std::array<ComplexMatrix, 3> spin1_squares(const Frame &frame, double tol = kDefaultTol);

/// Completes two orthogonal unit vectors to a right-handed frame.
Frame frame_from(const Vec3 &a, const Vec3 &b);

struct MagicSquare {
    std::array<std::array<ComplexMatrix, 3>, 3> cells;
    std::array<std::array<std::string, 3>, 3> labels;
    std::array<int, 3> row_signs;
    std::array<int, 3> col_signs;
};

/// Pauli matrices.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// Two-qubit grid
///   ZI IZ ZZ
///   IX XI XX
///   ZX XZ YY
/// with all row products +1 and column products (+1, +1, -1).
MagicSquare mermin_square();

struct SquareCheck {
    double max_commutator;
    double max_square_error;
    std::array<double, 3> row_product_error;
    std::array<double, 3> col_product_error;
};

/// Measures how far the square is from its invariants.
SquareCheck check_square(const MagicSquare &sq);

/// Throws InvalidSquare when an invariant fails beyond `tol`.
void validate(const MagicSquare &sq, double tol = kDefaultTol);

struct RefutationReport {
    uint64_t assignments_checked;
    uint64_t satisfying;
    /// Product of the six sign targets.
    int parity_product;
    SquareCheck check;
};

/// Number of +-1 fillings of a 3x3 grid whose row products match row_signs and
/// column products match col_signs, by enumerating all 512.
uint64_t count_sign_assignments(const std::array<int, 3> &row_signs, const std::array<int, 3> &col_signs);

RefutationReport refute_product_valuemap(const MagicSquare &sq, double tol = kDefaultTol);

/// O -> v(O) inferred from partner outcomes under locality.
struct PartialValueMap {
    std::map<std::string, double> values;
    /// Observables that received more than one inferred value.
    std::map<std::string, std::vector<double>> conflicts;
    /// Records where the measured value differed from the inferred one.
    std::vector<std::string> correlation_failures;
    /// Requested observables with no record.
    std::vector<std::string> missing;
};

/// Builds the value map from trial records of a single entangled state.
/// `observables` restricts the map when non-empty. Throws InconsistentState
/// when the records carry different state tags.
PartialValueMap valuemap_from_trials(const std::vector<EPRTrialRecord> &records,
                                     const std::vector<std::string> &observables = {});

}  // namespace qfound

#endif
