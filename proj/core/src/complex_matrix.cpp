/*
 * Copyright 2026 The uasim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "uasim/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "uasim/errors.hpp"
#include "uasim/random_stream.hpp"

namespace uasim {

namespace {

std::string shape(const ComplexMatrix& a) {
    return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(op) + ": shape mismatch " + shape(a) + " vs " + shape(b));
    }
}

constexpr int kMaxJacobiSweeps = 100;

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionError("ComplexMatrix: data length " + std::to_string(data_.size()) +
                             " does not match " + std::to_string(rows_) + "x" +
                             std::to_string(cols_));
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw DimensionError("ComplexMatrix: ragged initializer");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out(i, i) = 1.0;
    }
    return out;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> entries) {
    ComplexMatrix out(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        out(i, i) = entries[i];
    }
    return out;
}

const Complex& ComplexMatrix::at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) {
        throw DimensionError("ComplexMatrix::at: index (" + std::to_string(r) + "," +
                             std::to_string(c) + ") out of range for " + shape(*this));
    }
    return (*this)(r, c);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator+");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator-");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
    for (auto& z : data_) {
        z *= scalar;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex scalar, ComplexMatrix a) { return a *= scalar; }
ComplexMatrix operator*(ComplexMatrix a, Complex scalar) { return a *= scalar; }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul: inner dimensions differ, " + shape(a) + " * " + shape(b));
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = a(i, j);
        }
    }
    return out;
}

HermitianEigen eig_hermitian(const ComplexMatrix& h) {
    if (!h.is_square()) {
        throw DimensionError("eig_hermitian: matrix is " + shape(h));
    }
    const std::size_t n = h.rows();
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            asym = std::max(asym, std::abs(h(i, j) - std::conj(h(j, i))));
        }
    }
    if (!(asym < 1e-10)) {
        throw DomainError("eig_hermitian: matrix is not Hermitian (max |h - h^dagger| = " +
                          std::to_string(asym) + ")");
    }

    ComplexMatrix a = h;
    ComplexMatrix v = ComplexMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
    }

    const double scale = frobenius_norm(a);
    const double off_target = std::pow(1e-16 * scale, 2);

    for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += std::norm(a(p, q));
            }
        }
        if (off <= off_target || off == 0.0) {
            break;
        }

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex b = a(p, q);
                const double bmod = std::abs(b);
                if (bmod < 1e-300) {
                    continue;
                }
                const Complex phase = std::conj(b / bmod);
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * bmod);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Rotation G on (p, q): diag(1, phase) * [[c, s], [-s, c]].
                const Complex g00 = c;
                const Complex g01 = s;
                const Complex g10 = -s * phase;
                const Complex g11 = c * phase;

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * g00 + akq * g10;
                    a(k, q) = akp * g01 + akq * g11;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(g00) * apk + std::conj(g10) * aqk;
                    a(q, k) = std::conj(g01) * apk + std::conj(g11) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * g00 + vkq * g10;
                    v(k, q) = vkp * g01 + vkq * g11;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t col = 0; col < n; ++col) {
        out.values[col] = a(order[col], order[col]).real();
        for (std::size_t row = 0; row < n; ++row) {
            out.vectors(row, col) = v(row, order[col]);
        }
    }
    return out;
}

double operator_norm(const ComplexMatrix& a) {
    if (a.empty()) {
        return 0.0;
    }
    ComplexMatrix gram = matmul(dagger(a), a);
    // exact Hermitian symmetry, rounding can break it by an ulp
    for (std::size_t i = 0; i < gram.rows(); ++i) {
        gram(i, i) = gram(i, i).real();
        for (std::size_t j = i + 1; j < gram.cols(); ++j) {
            const Complex avg = 0.5 * (gram(i, j) + std::conj(gram(j, i)));
            gram(i, j) = avg;
            gram(j, i) = std::conj(avg);
        }
    }
    const auto eig = eig_hermitian(gram);
    return std::sqrt(std::max(0.0, eig.values.back()));
}

double max_abs(const ComplexMatrix& a) {
    double out = 0.0;
    for (const auto& z : a.data()) {
        out = std::max(out, std::abs(z));
    }
    return out;
}

double frobenius_norm(const ComplexMatrix& a) {
    double sum = 0.0;
    for (const auto& z : a.data()) {
        sum += std::norm(z);
    }
    return std::sqrt(sum);
}

double unitarity_defect(const ComplexMatrix& a) {
    return operator_norm(matmul(dagger(a), a) - ComplexMatrix::identity(a.cols()));
}

bool is_unitary(const ComplexMatrix& a, double tol) {
    return a.is_square() && !a.empty() && all_finite(a) && unitarity_defect(a) < tol;
}

Complex determinant(const ComplexMatrix& a) {
    if (!a.is_square()) {
        throw DimensionError("determinant: matrix is " + shape(a));
    }
    ComplexMatrix lu = a;
    const std::size_t n = a.rows();
    Complex det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(lu(i, k)) > std::abs(lu(pivot, k))) {
                pivot = i;
            }
        }
        if (lu(pivot, k) == Complex{}) {
            return 0.0;
        }
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(lu(k, j), lu(pivot, j));
            }
            det = -det;
        }
        det *= lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex factor = lu(i, k) / lu(k, k);
            for (std::size_t j = k; j < n; ++j) {
                lu(i, j) -= factor * lu(k, j);
            }
        }
    }
    return det;
}

ComplexMatrix dft(std::size_t n) {
    if (n == 0) {
        throw DomainError("dft: size must be at least 1");
    }
    ComplexMatrix out(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            const double angle =
                2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
            out(j, k) = std::polar(norm, angle);
        }
    }
    return out;
}

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, RandomStream& rng) {
    ComplexMatrix out(rows, cols);
    const double sigma = std::sqrt(0.5);
    for (auto& z : out.data()) {
        const double re = rng.normal();
        const double im = rng.normal();
        z = Complex(sigma * re, sigma * im);
    }
    return out;
}

ComplexMatrix haar_random(std::size_t m, RandomStream& rng) {
    if (m == 0) {
        throw DomainError("haar_random: size must be at least 1");
    }
    ComplexMatrix q = ginibre(m, m, rng);
    for (std::size_t j = 0; j < m; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                Complex proj = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    proj += std::conj(q(i, k)) * q(i, j);
                }
                for (std::size_t i = 0; i < m; ++i) {
                    q(i, j) -= proj * q(i, k);
                }
            }
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            norm += std::norm(q(i, j));
        }
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < m; ++i) {
            q(i, j) /= norm;
        }
    }
    return q;
}

ComplexMatrix sub_matrix(const ComplexMatrix& a,
                         std::span<const std::size_t> row_idx,
                         std::span<const std::size_t> col_idx) {
    for (std::size_t r : row_idx) {
        if (r >= a.rows()) {
            throw DimensionError("sub_matrix: row index " + std::to_string(r) +
                                 " out of range for " + shape(a));
        }
    }
    for (std::size_t c : col_idx) {
        if (c >= a.cols()) {
            throw DimensionError("sub_matrix: column index " + std::to_string(c) +
                                 " out of range for " + shape(a));
        }
    }
    ComplexMatrix out(row_idx.size(), col_idx.size());
    for (std::size_t p = 0; p < row_idx.size(); ++p) {
        for (std::size_t q = 0; q < col_idx.size(); ++q) {
            out(p, q) = a(row_idx[p], col_idx[q]);
        }
    }
    return out;
}

ComplexMatrix direct_sum(std::span<const ComplexMatrix> blocks) {
    std::size_t total = 0;
    for (const auto& b : blocks) {
        if (!b.is_square()) {
            throw DimensionError("direct_sum: block is " + shape(b) + ", expected square");
        }
        total += b.rows();
    }
    ComplexMatrix out(total, total);
    std::size_t offset = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i) {
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(offset + i, offset + j) = b(i, j);
            }
        }
        offset += b.rows();
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

ComplexMatrix top_left(const ComplexMatrix& a, std::size_t rows, std::size_t cols) {
    if (rows > a.rows() || cols > a.cols()) {
        throw DimensionError("top_left: " + std::to_string(rows) + "x" + std::to_string(cols) +
                             " corner exceeds " + shape(a));
    }
    ComplexMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            out(i, j) = a(i, j);
        }
    }
    return out;
}

bool all_finite(const ComplexMatrix& a) {
    return std::all_of(a.data().begin(), a.data().end(), [](const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

} // namespace uasim
