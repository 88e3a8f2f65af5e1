// SPDX-License-Identifier: Apache-2.0
//
// nearfar: NOMA user clustering for near-field / far-field coexistence
// Copyright (C) 2026 The nearfar authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef NEARFAR_NUMERICS_HPP
#define NEARFAR_NUMERICS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nearfar
{

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

/// Raised when a Gram matrix has no usable pivot (colinear columns).
class SingularMatrixError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Dense complex matrix, row-major.
class ComplexMatrix
{
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0})
    {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("ComplexMatrix: dimensions must be positive.");
    }

    static ComplexMatrix identity(std::size_t n)
    {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    /// Builds a matrix whose columns are the given vectors (all of equal length).
    static ComplexMatrix from_columns(std::span<const ComplexVector> columns)
    {
        if (columns.empty())
            throw std::invalid_argument("ComplexMatrix::from_columns: no columns.");
        ComplexMatrix m(columns.front().size(), columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c)
        {
            if (columns[c].size() != m.rows_)
                throw std::invalid_argument("ComplexMatrix::from_columns: ragged columns.");
            for (std::size_t r = 0; r < m.rows_; ++r)
                m(r, c) = columns[c][r];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    cplx &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    ComplexVector column(std::size_t c) const
    {
        ComplexVector v(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            v[r] = (*this)(r, c);
        return v;
    }

    std::span<const cplx> entries() const noexcept { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// Returns sum_l conj(a_l) * b_l.
inline cplx hermitian_product(std::span<const cplx> a, std::span<const cplx> b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("hermitian_product: dimension mismatch.");
    cplx acc{0.0, 0.0};
    for (std::size_t l = 0; l < a.size(); ++l)
        acc += std::conj(a[l]) * b[l];
    return acc;
}

inline double squared_norm(std::span<const cplx> a)
{
    double acc = 0.0;
    for (const auto &x : a)
        acc += std::norm(x);
    return acc;
}

/// A^H * B
inline ComplexMatrix adjoint_product(const ComplexMatrix &a, const ComplexMatrix &b)
{
    if (a.rows() != b.rows())
        throw std::invalid_argument("adjoint_product: dimension mismatch.");
    ComplexMatrix out(a.cols(), b.cols());
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
        {
            cplx acc{0.0, 0.0};
            for (std::size_t r = 0; r < a.rows(); ++r)
                acc += std::conj(a(r, i)) * b(r, j);
            out(i, j) = acc;
        }
    return out;
}

/// A * B
inline ComplexMatrix product(const ComplexMatrix &a, const ComplexMatrix &b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("product: dimension mismatch.");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
        {
            const cplx aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) += aik * b(k, j);
        }
    return out;
}

inline double frobenius_norm(const ComplexMatrix &a)
{
    return std::sqrt(squared_norm(a.entries()));
}

namespace detail
{

// LU factors with partial pivoting of a square system, kept so that the
// refinement steps reuse the same factorization.
class LuFactors
{
public:
    explicit LuFactors(ComplexMatrix a) : lu_(std::move(a)), perm_(lu_.rows())
    {
        const std::size_t n = lu_.rows();
        for (std::size_t i = 0; i < n; ++i)
            perm_[i] = i;

        double largest_initial = 0.0;
        for (auto x : lu_.entries())
            largest_initial = std::max(largest_initial, std::abs(x));
        const double floor = 1e-12 * largest_initial;

        for (std::size_t col = 0; col < n; ++col)
        {
            std::size_t pivot = col;
            double best = std::abs(lu_(col, col));
            for (std::size_t r = col + 1; r < n; ++r)
                if (std::abs(lu_(r, col)) > best)
                {
                    best = std::abs(lu_(r, col));
                    pivot = r;
                }
            if (!(best > floor))
                throw SingularMatrixError("solve_gram: Gram matrix is rank deficient.");
            if (pivot != col)
            {
                for (std::size_t c = 0; c < n; ++c)
                    std::swap(lu_(col, c), lu_(pivot, c));
                std::swap(perm_[col], perm_[pivot]);
            }
            for (std::size_t r = col + 1; r < n; ++r)
            {
                const cplx factor = lu_(r, col) / lu_(col, col);
                lu_(r, col) = factor;
                for (std::size_t c = col + 1; c < n; ++c)
                    lu_(r, c) -= factor * lu_(col, c);
            }
        }
    }

    ComplexMatrix solve(const ComplexMatrix &b) const
    {
        const std::size_t n = lu_.rows();
        ComplexMatrix x(n, b.cols());
        for (std::size_t j = 0; j < b.cols(); ++j)
        {
            std::vector<cplx> y(n);
            for (std::size_t i = 0; i < n; ++i)
            {
                cplx acc = b(perm_[i], j);
                for (std::size_t k = 0; k < i; ++k)
                    acc -= lu_(i, k) * y[k];
                y[i] = acc;
            }
            for (std::size_t i = n; i-- > 0;)
            {
                cplx acc = y[i];
                for (std::size_t k = i + 1; k < n; ++k)
                    acc -= lu_(i, k) * x(k, j);
                x(i, j) = acc / lu_(i, i);
            }
        }
        return x;
    }

private:
    ComplexMatrix lu_;
    std::vector<std::size_t> perm_;
};

} // namespace detail

/// Solves (H^H H) X = B by Gaussian elimination with partial pivoting on the
/// K x K Gram matrix. Two rounds of iterative refinement bring the residual
/// down to round-off of the Gram product. Throws SingularMatrixError when a
/// pivot falls below 1e-12 of the largest initial Gram entry.
inline ComplexMatrix solve_gram(const ComplexMatrix &h, const ComplexMatrix &b)
{
    if (h.cols() > h.rows())
        throw SingularMatrixError("solve_gram: more columns than rows, Gram matrix cannot be full rank.");
    if (b.rows() != h.cols())
        throw std::invalid_argument("solve_gram: right-hand side has wrong row count.");

    const ComplexMatrix gram = adjoint_product(h, h);
    const detail::LuFactors lu(gram);
    ComplexMatrix x = lu.solve(b);

    for (int step = 0; step < 2; ++step)
    {
        const ComplexMatrix gx = product(gram, x);
        ComplexMatrix residual(b.rows(), b.cols());
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                residual(i, j) = b(i, j) - gx(i, j);
        const ComplexMatrix dx = lu.solve(residual);
        for (std::size_t i = 0; i < x.rows(); ++i)
            for (std::size_t j = 0; j < x.cols(); ++j)
                x(i, j) += dx(i, j);
    }
    return x;
}

} // namespace nearfar

#endif
