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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qfound/error.h"

namespace qfound {

namespace {

void require_same_dim(size_t a, size_t b, const char *what) {
    if (a != b) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

// Rotates v so that its first component with modulus above `floor` is real
// and positive.
void fix_phase(StateVector &v, double floor = 1e-9) {
    for (size_t k = 0; k < v.dim(); ++k) {
        double mag = std::abs(v[k]);
        if (mag > floor) {
            v *= std::conj(v[k]) / mag;
            v[k] = Complex(std::abs(v[k]), 0.0);
            return;
        }
    }
}

bool lex_less(const StateVector &a, const StateVector &b) {
    for (size_t k = 0; k < a.dim(); ++k) {
        if (a[k].real() != b[k].real()) {
            return a[k].real() < b[k].real();
        }
        if (a[k].imag() != b[k].imag()) {
            return a[k].imag() < b[k].imag();
        }
    }
    return false;
}

void gram_schmidt(std::vector<StateVector> &vs) {
    for (size_t i = 0; i < vs.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
            vs[i] -= inner(vs[j], vs[i]) * vs[j];
        }
        vs[i] = vs[i].normalized();
    }
}

}  // namespace

StateVector::StateVector(size_t dim) : amps_(dim) {
}

StateVector::StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
}

StateVector::StateVector(std::initializer_list<Complex> amplitudes) : amps_(amplitudes) {
}

StateVector StateVector::basis(size_t dim, size_t k) {
    StateVector v(dim);
    v[k] = 1.0;
    return v;
}

double StateVector::norm() const {
    double total = 0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return std::sqrt(total);
}

bool StateVector::is_normalized(double tol) const {
    return std::abs(norm() - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
    double n = norm();
    if (n == 0) {
        throw Error(ErrorCode::NotNormalized, "cannot normalize the zero vector");
    }
    StateVector out = *this;
    out *= 1.0 / n;
    return out;
}

StateVector StateVector::conj() const {
    StateVector out = *this;
    for (auto &a : out.amps_) {
        a = std::conj(a);
    }
    return out;
}

StateVector &StateVector::operator+=(const StateVector &other) {
    require_same_dim(dim(), other.dim(), "vector add");
    for (size_t k = 0; k < amps_.size(); ++k) {
        amps_[k] += other.amps_[k];
    }
    return *this;
}

StateVector &StateVector::operator-=(const StateVector &other) {
    require_same_dim(dim(), other.dim(), "vector subtract");
    for (size_t k = 0; k < amps_.size(); ++k) {
        amps_[k] -= other.amps_[k];
    }
    return *this;
}

StateVector &StateVector::operator*=(Complex scale) {
    for (auto &a : amps_) {
        a *= scale;
    }
    return *this;
}

StateVector operator+(StateVector a, const StateVector &b) {
    a += b;
    return a;
}

StateVector operator-(StateVector a, const StateVector &b) {
    a -= b;
    return a;
}

StateVector operator*(Complex scale, StateVector v) {
    v *= scale;
    return v;
}

Complex inner(const StateVector &a, const StateVector &b) {
    require_same_dim(a.dim(), b.dim(), "inner product");
    Complex total = 0;
    for (size_t k = 0; k < a.dim(); ++k) {
        total += std::conj(a[k]) * b[k];
    }
    return total;
}

StateVector kron(const StateVector &a, const StateVector &b) {
    StateVector out(a.dim() * b.dim());
    for (size_t i = 0; i < a.dim(); ++i) {
        for (size_t k = 0; k < b.dim(); ++k) {
            out[i * b.dim() + k] = a[i] * b[k];
        }
    }
    return out;
}

bool equal_up_to_phase(const StateVector &a, const StateVector &b, double tol) {
    if (a.dim() != b.dim()) {
        return false;
    }
    return std::abs(std::abs(inner(a, b)) - a.norm() * b.norm()) <= tol &&
           std::abs(a.norm() - b.norm()) <= tol;
}

double orthonormality_error(std::span<const StateVector> family) {
    double worst = 0;
    for (size_t i = 0; i < family.size(); ++i) {
        for (size_t j = i; j < family.size(); ++j) {
            Complex expect = i == j ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(inner(family[i], family[j]) - expect));
        }
    }
    return worst;
}

bool is_orthonormal(std::span<const StateVector> family, double tol) {
    if (family.empty()) {
        return false;
    }
    for (const auto &v : family) {
        if (v.dim() != family.front().dim()) {
            return false;
        }
    }
    return orthonormality_error(family) <= tol;
}

ComplexMatrix::ComplexMatrix(size_t dim) : dim_(dim), data_(dim * dim) {
}

ComplexMatrix::ComplexMatrix(size_t dim, std::vector<Complex> row_major)
    : dim_(dim), data_(std::move(row_major)) {
    if (data_.size() != dim_ * dim_) {
        throw Error(ErrorCode::DimensionMismatch,
                    "matrix of dim " + std::to_string(dim_) + " needs " + std::to_string(dim_ * dim_) +
                        " entries, got " + std::to_string(data_.size()));
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
    data_.reserve(dim_ * dim_);
    for (const auto &row : rows) {
        require_same_dim(row.size(), dim_, "matrix row length");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(size_t dim) {
    ComplexMatrix m(dim);
    for (size_t k = 0; k < dim; ++k) {
        m(k, k) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
    ComplexMatrix m(entries.size());
    for (size_t k = 0; k < entries.size(); ++k) {
        m(k, k) = entries[k];
    }
    return m;
}

ComplexMatrix ComplexMatrix::from_columns(std::span<const StateVector> columns) {
    ComplexMatrix m(columns.size());
    for (size_t j = 0; j < columns.size(); ++j) {
        require_same_dim(columns[j].dim(), columns.size(), "column length");
        for (size_t i = 0; i < columns.size(); ++i) {
            m(i, j) = columns[j][i];
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::outer(const StateVector &a, const StateVector &b) {
    require_same_dim(a.dim(), b.dim(), "outer product");
    ComplexMatrix m(a.dim());
    for (size_t i = 0; i < a.dim(); ++i) {
        for (size_t j = 0; j < b.dim(); ++j) {
            m(i, j) = a[i] * std::conj(b[j]);
        }
    }
    return m;
}

StateVector ComplexMatrix::column(size_t col) const {
    StateVector v(dim_);
    for (size_t i = 0; i < dim_; ++i) {
        v[i] = (*this)(i, col);
    }
    return v;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(dim_);
    for (size_t i = 0; i < dim_; ++i) {
        for (size_t j = 0; j < dim_; ++j) {
            m(i, j) = std::conj((*this)(j, i));
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix m = *this;
    for (auto &x : m.data_) {
        x = std::conj(x);
    }
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(dim_);
    for (size_t i = 0; i < dim_; ++i) {
        for (size_t j = 0; j < dim_; ++j) {
            m(i, j) = (*this)(j, i);
        }
    }
    return m;
}

Complex ComplexMatrix::trace() const {
    Complex total = 0;
    for (size_t k = 0; k < dim_; ++k) {
        total += (*this)(k, k);
    }
    return total;
}

double ComplexMatrix::hermiticity_error() const {
    double worst = 0;
    for (size_t i = 0; i < dim_; ++i) {
        for (size_t j = i; j < dim_; ++j) {
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        }
    }
    return worst;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    return hermiticity_error() <= tol;
}

bool ComplexMatrix::is_unitary(double tol) const {
    return max_abs_diff(adjoint() * *this, identity(dim_)) <= tol;
}

double ComplexMatrix::max_abs() const {
    double worst = 0;
    for (const auto &x : data_) {
        worst = std::max(worst, std::abs(x));
    }
    return worst;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_dim(dim_, other.dim_, "matrix add");
    for (size_t k = 0; k < data_.size(); ++k) {
        data_[k] += other.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_dim(dim_, other.dim_, "matrix subtract");
    for (size_t k = 0; k < data_.size(); ++k) {
        data_[k] -= other.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) {
    for (auto &x : data_) {
        x *= scale;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

ComplexMatrix operator*(Complex scale, ComplexMatrix m) {
    m *= scale;
    return m;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a.dim(), b.dim(), "matrix product");
    size_t n = a.dim();
    ComplexMatrix out(n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t k = 0; k < n; ++k) {
            Complex aik = a(i, k);
            if (aik == Complex(0)) {
                continue;
            }
            for (size_t j = 0; j < n; ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

StateVector operator*(const ComplexMatrix &m, const StateVector &v) {
    require_same_dim(m.dim(), v.dim(), "matrix-vector product");
    StateVector out(v.dim());
    for (size_t i = 0; i < m.dim(); ++i) {
        Complex total = 0;
        for (size_t j = 0; j < m.dim(); ++j) {
            total += m(i, j) * v[j];
        }
        out[i] = total;
    }
    return out;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a.dim(), b.dim(), "matrix comparison");
    double worst = 0;
    for (size_t k = 0; k < a.entries().size(); ++k) {
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return worst;
}

ComplexMatrix tensor_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    size_t nb = b.dim();
    ComplexMatrix out(a.dim() * nb);
    for (size_t i = 0; i < a.dim(); ++i) {
        for (size_t j = 0; j < a.dim(); ++j) {
            Complex aij = a(i, j);
            for (size_t k = 0; k < nb; ++k) {
                for (size_t l = 0; l < nb; ++l) {
                    out(i * nb + k, j * nb + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

StateVector apply_on_first(const ComplexMatrix &op, const StateVector &psi) {
    size_t n = op.dim();
    require_same_dim(psi.dim(), n * n, "bipartite vector length");
    StateVector out(psi.dim());
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            Complex oij = op(i, j);
            if (oij == Complex(0)) {
                continue;
            }
            for (size_t k = 0; k < n; ++k) {
                out[i * n + k] += oij * psi[j * n + k];
            }
        }
    }
    return out;
}

StateVector apply_on_second(const ComplexMatrix &op, const StateVector &psi) {
    size_t n = op.dim();
    require_same_dim(psi.dim(), n * n, "bipartite vector length");
    StateVector out(psi.dim());
    for (size_t i = 0; i < n; ++i) {
        for (size_t k = 0; k < n; ++k) {
            Complex total = 0;
            for (size_t l = 0; l < n; ++l) {
                total += op(k, l) * psi[i * n + l];
            }
            out[i * n + k] = total;
        }
    }
    return out;
}

ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a.dim(), b.dim(), "commutator");
    return a * b - b * a;
}

std::vector<Eigenpair> eigendecompose(const ComplexMatrix &m, double tol) {
    if (double err = m.hermiticity_error(); err > tol) {
        throw Error(ErrorCode::NotHermitian, "hermiticity error " + std::to_string(err));
    }
    const size_t n = m.dim();
    // Work on the exactly Hermitian part.
    ComplexMatrix a = 0.5 * (m + m.adjoint());
    ComplexMatrix v = ComplexMatrix::identity(n);

    double scale = std::max(a.max_abs(), 1e-300);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (size_t p = 0; p < n; ++p) {
            for (size_t q = p + 1; q < n; ++q) {
                off += std::norm(a(p, q));
            }
        }
        if (std::sqrt(off) <= 1e-15 * scale) {
            break;
        }
        for (size_t p = 0; p < n; ++p) {
            for (size_t q = p + 1; q < n; ++q) {
                Complex apq = a(p, q);
                double mag = std::abs(apq);
                if (mag <= 1e-300) {
                    continue;
                }
                // Phase D = diag(1, e^{-i phi}) makes the (p,q) entry real, then a
                // real Jacobi rotation annihilates it. The combined 2x2 block is G.
                Complex phase = std::conj(apq) / mag;
                double app = a(p, p).real();
                double aqq = a(q, q).real();
                double theta = (aqq - app) / (2.0 * mag);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                Complex g00 = c, g01 = s, g10 = -s * phase, g11 = c * phase;

                for (size_t k = 0; k < n; ++k) {
                    Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * g00 + akq * g10;
                    a(k, q) = akp * g01 + akq * g11;
                }
                for (size_t k = 0; k < n; ++k) {
                    Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(g00) * apk + std::conj(g10) * aqk;
                    a(q, k) = std::conj(g01) * apk + std::conj(g11) * aqk;
                }
                a(p, q) = 0;
                a(q, p) = 0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (size_t k = 0; k < n; ++k) {
                    Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * g00 + vkq * g10;
                    v(k, q) = vkp * g01 + vkq * g11;
                }
            }
        }
    }

    std::vector<Eigenpair> pairs;
    pairs.reserve(n);
    for (size_t k = 0; k < n; ++k) {
        pairs.push_back({a(k, k).real(), v.column(k)});
    }
    std::sort(pairs.begin(), pairs.end(), [](const Eigenpair &x, const Eigenpair &y) { return x.value < y.value; });

    for (size_t start = 0; start < n;) {
        size_t end = start + 1;
        while (end < n && pairs[end].value - pairs[end - 1].value <= kClusterTol) {
            ++end;
        }
        std::vector<StateVector> cluster;
        for (size_t k = start; k < end; ++k) {
            cluster.push_back(pairs[k].vector);
        }
        gram_schmidt(cluster);
        for (auto &vec : cluster) {
            fix_phase(vec);
        }
        if (cluster.size() > 1) {
            std::sort(cluster.begin(), cluster.end(), lex_less);
        }
        for (size_t k = start; k < end; ++k) {
            pairs[k].vector = std::move(cluster[k - start]);
        }
        start = end;
    }
    return pairs;
}

std::vector<SpectralCluster> spectral_clusters(const ComplexMatrix &m, double tol) {
    auto pairs = eigendecompose(m, tol);
    std::vector<SpectralCluster> out;
    for (size_t start = 0; start < pairs.size();) {
        size_t end = start + 1;
        while (end < pairs.size() && pairs[end].value - pairs[end - 1].value <= kClusterTol) {
            ++end;
        }
        SpectralCluster cluster{0.0, {}, ComplexMatrix(m.dim())};
        for (size_t k = start; k < end; ++k) {
            cluster.value += pairs[k].value;
            cluster.projector += ComplexMatrix::outer(pairs[k].vector, pairs[k].vector);
            cluster.vectors.push_back(std::move(pairs[k].vector));
        }
        cluster.value /= static_cast<double>(end - start);
        out.push_back(std::move(cluster));
        start = end;
    }
    return out;
}

}  // namespace qfound
