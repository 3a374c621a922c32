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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace uasim {

using Complex = std::complex<double>;

class RandomStream;

/**
 * Dense row-major complex matrix.
 *
 * Small by design (the library never needs more than ~10^3 entries), so all
 * operations return new values and the type is cheap to copy around between
 * worker threads.
 */
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
    static ComplexMatrix diagonal(std::span<const Complex> entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const noexcept {
        return data_[r * cols_ + c];
    }

    /// Bounds-checked access; throws DimensionError.
    const Complex& at(std::size_t r, std::size_t c) const;

    std::span<const Complex> data() const noexcept { return data_; }
    std::span<Complex> data() noexcept { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scalar);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scalar, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex scalar);

/// Standard matrix product. Throws DimensionError unless a.cols() == b.rows().
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Conjugate transpose.
ComplexMatrix dagger(const ComplexMatrix& a);

/// Plain (non-conjugating) transpose.
ComplexMatrix transpose(const ComplexMatrix& a);

/// Result of eig_hermitian: h = vectors * diag(values) * vectors^dagger.
struct HermitianEigen {
    std::vector<double> values;  ///< ascending
    ComplexMatrix vectors;       ///< eigenvectors in columns, unitary
};

/**
 * Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
 * rotations. Throws DomainError when max|h - h^dagger| >= 1e-10.
 */
HermitianEigen eig_hermitian(const ComplexMatrix& h);

/// Largest singular value, sqrt(lambda_max(a^dagger a)) via eig_hermitian.
double operator_norm(const ComplexMatrix& a);

/// Largest entry modulus.
double max_abs(const ComplexMatrix& a);

/// Frobenius norm.
double frobenius_norm(const ComplexMatrix& a);

/// ||a^dagger a - I||_op; zero for an exact isometry.
double unitarity_defect(const ComplexMatrix& a);

bool is_unitary(const ComplexMatrix& a, double tol);

/// Determinant by partial-pivot LU.
Complex determinant(const ComplexMatrix& a);

/// Entries exp(2 pi i jk / n) / sqrt(n). Throws DomainError for n == 0.
ComplexMatrix dft(std::size_t n);

/**
 * Haar-distributed unitary: QR of a complex Ginibre matrix with the diagonal
 * of R normalised to positive reals. The QR uses Gram-Schmidt with one
 * re-orthogonalisation pass, which produces that normalisation directly.
 */
ComplexMatrix haar_random(std::size_t m, RandomStream& rng);

/// i.i.d. standard complex Gaussian entries, E|z|^2 = 1.
ComplexMatrix ginibre(std::size_t rows, std::size_t cols, RandomStream& rng);

/// result(p, q) = a(row_idx[p], col_idx[q]); repeated indices allowed.
ComplexMatrix sub_matrix(const ComplexMatrix& a,
                         std::span<const std::size_t> row_idx,
                         std::span<const std::size_t> col_idx);

/// Block-diagonal assembly of square blocks.
ComplexMatrix direct_sum(std::span<const ComplexMatrix> blocks);

/// Kronecker product.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Top-left rows x cols corner.
ComplexMatrix top_left(const ComplexMatrix& a, std::size_t rows, std::size_t cols);

/// True iff every entry is finite.
bool all_finite(const ComplexMatrix& a);

} // namespace uasim
