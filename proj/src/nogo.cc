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

#include "qfound/nogo.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "qfound/error.h"

namespace qfound {

namespace {

double dot(const Vec3 &a, const Vec3 &b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 cross(const Vec3 &a, const Vec3 &b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

bool orthogonal(const Vec3 &a, const Vec3 &b) {
    return std::abs(dot(a, b)) <= kRayOrthoTol;
}

Vec3 canonical(const Vec3 &v) {
    double n = std::sqrt(dot(v, v));
    if (!(n > 1e-12)) {
        throw Error(ErrorCode::InvalidRaySet, "zero-length ray direction");
    }
    Vec3 u{v[0] / n, v[1] / n, v[2] / n};
    for (double x : u) {
        if (std::abs(x) > 1e-12) {
            if (x < 0) {
                u = {-u[0], -u[1], -u[2]};
            }
            break;
        }
    }
    return u;
}

struct Structure {
    std::vector<Triple> triples;
    std::vector<Pair> pairs;
};

Structure scan(const std::vector<Ray> &rays) {
    const int n = static_cast<int>(rays.size());
    std::vector<std::vector<char>> orth(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            orth[i][j] = orth[j][i] = orthogonal(rays[i].direction, rays[j].direction);
        }
    }
    Structure s;
    std::vector<std::vector<char>> covered(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (!orth[i][j]) {
                continue;
            }
            for (int k = j + 1; k < n; ++k) {
                if (orth[i][k] && orth[j][k]) {
                    s.triples.push_back({i, j, k});
                    covered[i][j] = covered[i][k] = covered[j][k] = 1;
                }
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (orth[i][j] && !covered[i][j]) {
                s.pairs.push_back({i, j});
            }
        }
    }
    return s;
}

class Solver {
   public:
    explicit Solver(const RaySet &rs) : n_(static_cast<int>(rs.size())), triples_(rs.triples()) {
        color_.assign(n_, Color::Unassigned);
        in_triples_.resize(n_);
        neighbors_.resize(n_);
        for (int t = 0; t < static_cast<int>(triples_.size()); ++t) {
            const auto &tri = triples_[t];
            for (int a : tri) {
                in_triples_[a].push_back(t);
                for (int b : tri) {
                    if (a != b) {
                        neighbors_[a].push_back(b);
                    }
                }
            }
        }
        for (const auto &[a, b] : rs.pairs()) {
            neighbors_[a].push_back(b);
            neighbors_[b].push_back(a);
        }
    }

    bool solve(int depth) {
        ++stats_.nodes;
        stats_.max_depth = std::max(stats_.max_depth, depth);
        int pick = -1;
        int best = -1;
        for (int r = 0; r < n_; ++r) {
            if (color_[r] != Color::Unassigned) {
                continue;
            }
            int score = 0;
            for (int t : in_triples_[r]) {
                if (!has_zero(t)) {
                    ++score;
                }
            }
            if (score > best) {
                best = score;
                pick = r;
            }
        }
        if (pick < 0) {
            return true;
        }
        // A ray in no open triple can always take 1 safely.
        const Color order[2] = {best > 0 ? Color::Zero : Color::One, best > 0 ? Color::One : Color::Zero};
        for (Color c : order) {
            size_t mark = trail_.size();
            if (assign(pick, c) && solve(depth + 1)) {
                return true;
            }
            undo(mark);
            ++stats_.exhausted_branches;
        }
        return false;
    }

    Coloring coloring() const {
        return Coloring{color_};
    }
    const SearchStats &stats() const {
        return stats_;
    }

   private:
    bool has_zero(int t) const {
        for (int r : triples_[t]) {
            if (color_[r] == Color::Zero) {
                return true;
            }
        }
        return false;
    }

    // Assigns and propagates; false on conflict. The trail records every
    // assignment so undo() can roll back.
    bool assign(int ray, Color c) {
        std::vector<int> queue;
        color_[ray] = c;
        trail_.push_back(ray);
        queue.push_back(ray);
        while (!queue.empty()) {
            int r = queue.back();
            queue.pop_back();
            if (color_[r] == Color::Zero) {
                for (int nb : neighbors_[r]) {
                    if (color_[nb] == Color::Zero) {
                        return false;
                    }
                    if (color_[nb] == Color::Unassigned) {
                        color_[nb] = Color::One;
                        trail_.push_back(nb);
                        queue.push_back(nb);
                    }
                }
            }
            for (int t : in_triples_[r]) {
                int ones = 0, open = -1, open_count = 0;
                for (int x : triples_[t]) {
                    if (color_[x] == Color::One) {
                        ++ones;
                    } else if (color_[x] == Color::Unassigned) {
                        open = x;
                        ++open_count;
                    }
                }
                if (ones == 3) {
                    return false;
                }
                if (ones == 2 && open_count == 1) {
                    color_[open] = Color::Zero;
                    trail_.push_back(open);
                    queue.push_back(open);
                }
            }
        }
        return true;
    }

    void undo(size_t mark) {
        while (trail_.size() > mark) {
            color_[trail_.back()] = Color::Unassigned;
            trail_.pop_back();
        }
    }

    int n_;
    const std::vector<Triple> &triples_;
    std::vector<Color> color_;
    std::vector<std::vector<int>> in_triples_;
    std::vector<std::vector<int>> neighbors_;
    std::vector<int> trail_;
    SearchStats stats_;
};

ComplexMatrix kron2(const ComplexMatrix &a, const ComplexMatrix &b) {
    return tensor_product(a, b);
}

}  // namespace

RaySet RaySet::from_directions(std::span<const Vec3> directions) {
    RaySet rs;
    for (const auto &d : directions) {
        Vec3 u = canonical(d);
        for (const auto &existing : rs.rays_) {
            if (std::abs(std::abs(dot(existing.direction, u)) - 1.0) <= 1e-12) {
                throw Error(ErrorCode::InvalidRaySet, "ray " + std::to_string(rs.rays_.size()) +
                                                          " repeats ray " + std::to_string(existing.id));
            }
        }
        rs.rays_.push_back({u, static_cast<int>(rs.rays_.size())});
    }
    auto s = scan(rs.rays_);
    rs.triples_ = std::move(s.triples);
    rs.pairs_ = std::move(s.pairs);
    return rs;
}

RaySet RaySet::subset(std::span<const int> indices) const {
    std::vector<Vec3> dirs;
    dirs.reserve(indices.size());
    for (int i : indices) {
        if (i < 0 || i >= static_cast<int>(rays_.size())) {
            throw Error(ErrorCode::InvalidRaySet, "subset index out of range");
        }
        dirs.push_back(rays_[i].direction);
    }
    return from_directions(dirs);
}

void validate(const RaySet &rs) {
    const auto &rays = rs.rays();
    for (size_t i = 0; i < rays.size(); ++i) {
        if (rays[i].id != static_cast<int>(i)) {
            throw Error(ErrorCode::InvalidRaySet, "ray ids must be 0..n-1 in order");
        }
        if (std::abs(std::sqrt(dot(rays[i].direction, rays[i].direction)) - 1.0) > 1e-12) {
            throw Error(ErrorCode::InvalidRaySet, "ray " + std::to_string(i) + " is not unit length");
        }
    }
    auto in_range = [&](int r) { return r >= 0 && r < static_cast<int>(rays.size()); };
    for (const auto &t : rs.triples()) {
        for (int a = 0; a < 3; ++a) {
            if (!in_range(t[a])) {
                throw Error(ErrorCode::InvalidRaySet, "triple index out of range");
            }
        }
        if (!orthogonal(rays[t[0]].direction, rays[t[1]].direction) ||
            !orthogonal(rays[t[0]].direction, rays[t[2]].direction) ||
            !orthogonal(rays[t[1]].direction, rays[t[2]].direction)) {
            throw Error(ErrorCode::InvalidRaySet, "stored triple is not mutually orthogonal");
        }
    }
    for (const auto &p : rs.pairs()) {
        if (!in_range(p[0]) || !in_range(p[1]) || !orthogonal(rays[p[0]].direction, rays[p[1]].direction)) {
            throw Error(ErrorCode::InvalidRaySet, "stored pair is not orthogonal");
        }
    }
    auto fresh = scan(rays);
    std::set<Triple> have_t(rs.triples().begin(), rs.triples().end());
    std::set<Pair> have_p(rs.pairs().begin(), rs.pairs().end());
    if (have_t != std::set<Triple>(fresh.triples.begin(), fresh.triples.end()) ||
        have_p != std::set<Pair>(fresh.pairs.begin(), fresh.pairs.end())) {
        throw Error(ErrorCode::InvalidRaySet, "stored structure does not match the orthogonality scan");
    }
}

RaySet peres_rays() {
    // Components from {0, +-1, +-sqrt2}; squared-component patterns
    // (0,0,1) (0,1,1) (0,1,2) (1,1,2) give the 3 + 6 + 12 + 12 Peres rays.
    const double r2 = std::numbers::sqrt2;
    const double values[5] = {0.0, 1.0, -1.0, r2, -r2};
    const std::set<std::array<int, 3>> patterns = {{0, 0, 1}, {0, 1, 1}, {0, 1, 2}, {1, 1, 2}};
    std::vector<Vec3> dirs;
    for (double x : values) {
        for (double y : values) {
            for (double z : values) {
                Vec3 v{x, y, z};
                std::array<int, 3> pattern;
                for (int k = 0; k < 3; ++k) {
                    pattern[k] = static_cast<int>(std::lround(v[k] * v[k]));
                }
                std::sort(pattern.begin(), pattern.end());
                if (!patterns.contains(pattern)) {
                    continue;
                }
                Vec3 u = canonical(v);
                bool seen = std::any_of(dirs.begin(), dirs.end(), [&](const Vec3 &d) {
                    return std::abs(std::abs(dot(canonical(d), u)) - 1.0) <= 1e-12;
                });
                if (!seen) {
                    dirs.push_back(v);
                }
            }
        }
    }
    // Deterministic order: coordinate axes first, then by pattern and value.
    std::stable_sort(dirs.begin(), dirs.end(), [](const Vec3 &a, const Vec3 &b) {
        auto weight = [](const Vec3 &v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; };
        return weight(a) < weight(b);
    });
    return RaySet::from_directions(dirs);
}

RaySet coordinate_triad() {
    const Vec3 axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    return RaySet::from_directions(axes);
}

bool Coloring::complete() const {
    return std::none_of(assignment.begin(), assignment.end(), [](Color c) { return c == Color::Unassigned; });
}

std::vector<std::string> coloring_violations(const RaySet &rs, const Coloring &coloring) {
    std::vector<std::string> out;
    if (coloring.assignment.size() != rs.size()) {
        out.push_back("assignment size differs from ray count");
        return out;
    }
    for (size_t r = 0; r < rs.size(); ++r) {
        if (coloring.assignment[r] == Color::Unassigned) {
            out.push_back("ray " + std::to_string(r) + " unassigned");
        }
    }
    for (const auto &t : rs.triples()) {
        int zeros = 0;
        for (int r : t) {
            zeros += coloring.assignment[r] == Color::Zero;
        }
        if (zeros != 1) {
            out.push_back("triple (" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) +
                          ") has " + std::to_string(zeros) + " zeros");
        }
    }
    for (const auto &p : rs.pairs()) {
        if (coloring.assignment[p[0]] == Color::Zero && coloring.assignment[p[1]] == Color::Zero) {
            out.push_back("pair (" + std::to_string(p[0]) + "," + std::to_string(p[1]) + ") has two zeros");
        }
    }
    return out;
}

ColoringResult search_coloring(const RaySet &rs) {
    validate(rs);
    Solver solver(rs);
    if (solver.solve(0)) {
        return ColoringFound{solver.coloring(), solver.stats()};
    }
    return UnsatCertificate{solver.stats()};
}

std::array<ComplexMatrix, 3> spin1_matrices() {
    const double h = 1.0 / std::numbers::sqrt2;
    const Complex i(0, 1);
    ComplexMatrix sx{{0, h, 0}, {h, 0, h}, {0, h, 0}};
    ComplexMatrix sy{{0, -i * h, 0}, {i * h, 0, -i * h}, {0, i * h, 0}};
    ComplexMatrix sz{{1, 0, 0}, {0, 0, 0}, {0, 0, -1}};
    return {sx, sy, sz};
}

std::array<ComplexMatrix, 3> spin1_squares(const Frame &frame, double tol) {
    for (int a = 0; a < 3; ++a) {
        for (int b = a; b < 3; ++b) {
            double expect = a == b ? 1.0 : 0.0;
            if (std::abs(dot(frame[a], frame[b]) - expect) > tol) {
                throw Error(ErrorCode::NotOrthonormal, "frame is not orthonormal");
            }
        }
    }
    auto s = spin1_matrices();
    std::array<ComplexMatrix, 3> out;
    for (int a = 0; a < 3; ++a) {
        ComplexMatrix su = frame[a][0] * s[0] + frame[a][1] * s[1] + frame[a][2] * s[2];
        out[a] = su * su;
    }
    return out;
}

Frame frame_from(const Vec3 &a, const Vec3 &b) {
    Vec3 ua = canonical(a);
    Vec3 ub = canonical(b);
    Vec3 c = cross(ua, ub);
    return {ua, ub, c};
}

ComplexMatrix pauli_x() {
    return ComplexMatrix{{0, 1}, {1, 0}};
}

ComplexMatrix pauli_y() {
    const Complex i(0, 1);
    return ComplexMatrix{{0, -i}, {i, 0}};
}

ComplexMatrix pauli_z() {
    return ComplexMatrix{{1, 0}, {0, -1}};
}

MagicSquare mermin_square() {
    const ComplexMatrix id = ComplexMatrix::identity(2);
    const ComplexMatrix x = pauli_x(), y = pauli_y(), z = pauli_z();
    MagicSquare sq;
    sq.cells = {{
        {kron2(z, id), kron2(id, z), kron2(z, z)},
        {kron2(id, x), kron2(x, id), kron2(x, x)},
        {kron2(z, x), kron2(x, z), kron2(y, y)},
    }};
    sq.labels = {{{"ZI", "IZ", "ZZ"}, {"IX", "XI", "XX"}, {"ZX", "XZ", "YY"}}};
    sq.row_signs = {1, 1, 1};
    sq.col_signs = {1, 1, -1};
    return sq;
}

SquareCheck check_square(const MagicSquare &sq) {
    SquareCheck check{0.0, 0.0, {}, {}};
    const size_t n = sq.cells[0][0].dim();
    const ComplexMatrix id = ComplexMatrix::identity(n);
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            const auto &m = sq.cells[a][b];
            check.max_square_error = std::max(check.max_square_error, max_abs_diff(m * m, id));
            check.max_square_error = std::max(check.max_square_error, m.hermiticity_error());
            for (int c = b + 1; c < 3; ++c) {
                check.max_commutator = std::max(check.max_commutator, commutator(m, sq.cells[a][c]).max_abs());
                check.max_commutator = std::max(check.max_commutator, commutator(sq.cells[b][a], sq.cells[c][a]).max_abs());
            }
        }
    }
    for (int k = 0; k < 3; ++k) {
        ComplexMatrix row = sq.cells[k][0] * sq.cells[k][1] * sq.cells[k][2];
        ComplexMatrix col = sq.cells[0][k] * sq.cells[1][k] * sq.cells[2][k];
        check.row_product_error[k] = max_abs_diff(row, static_cast<double>(sq.row_signs[k]) * id);
        check.col_product_error[k] = max_abs_diff(col, static_cast<double>(sq.col_signs[k]) * id);
    }
    return check;
}

void validate(const MagicSquare &sq, double tol) {
    const size_t n = sq.cells[0][0].dim();
    for (const auto &row : sq.cells) {
        for (const auto &m : row) {
            if (m.dim() != n) {
                throw Error(ErrorCode::InvalidSquare, "cells have different dimensions");
            }
        }
    }
    for (int k = 0; k < 3; ++k) {
        if (std::abs(sq.row_signs[k]) != 1 || std::abs(sq.col_signs[k]) != 1) {
            throw Error(ErrorCode::InvalidSquare, "sign targets must be +-1");
        }
    }
    auto c = check_square(sq);
    if (c.max_commutator > tol) {
        throw Error(ErrorCode::InvalidSquare, "operators in a row or column do not commute");
    }
    if (c.max_square_error > tol) {
        throw Error(ErrorCode::InvalidSquare, "a cell is not a Hermitian involution");
    }
    for (int k = 0; k < 3; ++k) {
        if (c.row_product_error[k] > tol || c.col_product_error[k] > tol) {
            throw Error(ErrorCode::InvalidSquare, "a line product does not match its sign target");
        }
    }
    int parity = 1;
    for (int k = 0; k < 3; ++k) {
        parity *= sq.row_signs[k] * sq.col_signs[k];
    }
    if (parity != -1) {
        throw Error(ErrorCode::InvalidSquare, "sign targets must multiply to -1");
    }
}

uint64_t count_sign_assignments(const std::array<int, 3> &row_signs, const std::array<int, 3> &col_signs) {
    uint64_t count = 0;
    for (uint32_t mask = 0; mask < 512; ++mask) {
        int v[3][3];
        for (int cell = 0; cell < 9; ++cell) {
            v[cell / 3][cell % 3] = (mask >> cell) & 1 ? -1 : 1;
        }
        bool ok = true;
        for (int k = 0; k < 3 && ok; ++k) {
            ok = v[k][0] * v[k][1] * v[k][2] == row_signs[k] && v[0][k] * v[1][k] * v[2][k] == col_signs[k];
        }
        count += ok;
    }
    return count;
}

RefutationReport refute_product_valuemap(const MagicSquare &sq, double tol) {
    validate(sq, tol);
    int parity = 1;
    for (int k = 0; k < 3; ++k) {
        parity *= sq.row_signs[k] * sq.col_signs[k];
    }
    return RefutationReport{512, count_sign_assignments(sq.row_signs, sq.col_signs), parity, check_square(sq)};
}

PartialValueMap valuemap_from_trials(const std::vector<EPRTrialRecord> &records,
                                     const std::vector<std::string> &observables) {
    PartialValueMap map;
    if (records.empty()) {
        map.missing = observables;
        return map;
    }
    const std::string &tag = records.front().state_tag;
    std::set<std::string> wanted(observables.begin(), observables.end());
    for (const auto &r : records) {
        if (r.state_tag != tag) {
            throw Error(ErrorCode::InconsistentState,
                        "records come from states '" + tag + "' and '" + r.state_tag + "'");
        }
        if (!wanted.empty() && !wanted.contains(r.observable_id)) {
            continue;
        }
        // Locality: the partner outcome fixes v(O) before O is measured.
        double inferred = r.alice_value;
        if (r.bob_value != inferred) {
            map.correlation_failures.push_back(r.observable_id + "@" + std::to_string(r.rng_seed));
        }
        auto [it, inserted] = map.values.emplace(r.observable_id, inferred);
        if (!inserted && it->second != inferred) {
            auto &list = map.conflicts[r.observable_id];
            if (list.empty()) {
                list.push_back(it->second);
            }
            if (std::find(list.begin(), list.end(), inferred) == list.end()) {
                list.push_back(inferred);
            }
        }
    }
    for (const auto &o : observables) {
        if (!map.values.contains(o)) {
            map.missing.push_back(o);
        }
    }
    return map;
}

}  // namespace qfound
