// Copyright 2026 The qdepth Authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace qdepth {

using complex_t = std::complex<double>;

/// Dense square complex matrix, row-major. Used for small gate blocks
/// (2^k x 2^k with k bounded) and for extracted circuit unitaries.
class Matrix {
   public:
    Matrix() = default;

    explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    Matrix(std::size_t dim, std::vector<complex_t> row_major) : dim_(dim), data_(std::move(row_major)) {
        if (data_.size() != dim_ * dim_) {
            throw std::invalid_argument("Matrix: expected " + std::to_string(dim_ * dim_) + " entries, got " +
                                        std::to_string(data_.size()));
        }
    }

    Matrix(std::initializer_list<std::initializer_list<complex_t>> rows) : dim_(rows.size()) {
        data_.reserve(dim_ * dim_);
        for (const auto &row : rows) {
            if (row.size() != dim_) {
                throw std::invalid_argument("Matrix: rows must have equal length matching the row count");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t dim) {
        Matrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static Matrix diagonal(const std::vector<complex_t> &diag) {
        Matrix m(diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) {
            m(i, i) = diag[i];
        }
        return m;
    }

    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] bool empty() const { return dim_ == 0; }

    complex_t &operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const complex_t &operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

    [[nodiscard]] const std::vector<complex_t> &data() const { return data_; }

    [[nodiscard]] Matrix adjoint() const {
        Matrix out(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        if (a.dim_ != b.dim_) {
            throw std::invalid_argument("Matrix product: dimension mismatch");
        }
        Matrix out(a.dim_);
        for (std::size_t r = 0; r < a.dim_; ++r) {
            for (std::size_t k = 0; k < a.dim_; ++k) {
                const complex_t lhs = a(r, k);
                if (lhs == complex_t{}) {
                    continue;
                }
                for (std::size_t c = 0; c < a.dim_; ++c) {
                    out(r, c) += lhs * b(k, c);
                }
            }
        }
        return out;
    }

    friend bool operator==(const Matrix &a, const Matrix &b) = default;

    [[nodiscard]] Matrix pow(unsigned exponent) const {
        Matrix result = identity(dim_);
        for (unsigned i = 0; i < exponent; ++i) {
            result = result * (*this);
        }
        return result;
    }

    [[nodiscard]] bool is_diagonal() const {
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                if (r != c && (*this)(r, c) != complex_t{}) {
                    return false;
                }
            }
        }
        return true;
    }

   private:
    std::size_t dim_ = 0;
    std::vector<complex_t> data_;
};

/// Largest entrywise modulus of a - b.
inline double max_abs_diff(const Matrix &a, const Matrix &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    }
    return worst;
}

/// ||U^dagger U - I||_max.
inline double unitarity_error(const Matrix &u) { return max_abs_diff(u.adjoint() * u, Matrix::identity(u.dim())); }

inline bool is_unitary(const Matrix &u, double tol = 1e-12) { return !u.empty() && unitarity_error(u) <= tol; }

inline bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

namespace gates {

inline Matrix hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return Matrix{{s, s}, {s, -s}};
}

inline Matrix pauli_x() { return Matrix{{0.0, 1.0}, {1.0, 0.0}}; }

inline Matrix pauli_z() { return Matrix{{1.0, 0.0}, {0.0, -1.0}}; }

inline Matrix phase(double theta) { return Matrix{{1.0, 0.0}, {0.0, std::polar(1.0, theta)}}; }

}  // namespace gates

}  // namespace qdepth
