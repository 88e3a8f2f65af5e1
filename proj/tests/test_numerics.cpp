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

#include <catch_amalgamated.hpp>

#include "oracles.hpp"

#include <nearfar/numerics.hpp>
#include <nearfar/random.hpp>

#include <cmath>
#include <complex>

using namespace nearfar;

namespace
{

ComplexMatrix random_matrix(Rng &rng, std::size_t rows, std::size_t cols)
{
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    return m;
}

double residual_ratio(const ComplexMatrix &h, const ComplexMatrix &x, const ComplexMatrix &b)
{
    const ComplexMatrix gx = product(adjoint_product(h, h), x);
    double num = 0.0;
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            num += std::norm(gx(i, j) - b(i, j));
    return std::sqrt(num) / frobenius_norm(b);
}

} // namespace

TEST_CASE("Numerics - Hermitian product", "[numerics]")
{
    const ComplexVector a{{1.0, 0.0}, {0.0, 1.0}};
    CHECK(std::abs(hermitian_product(a, a) - cplx(2.0, 0.0)) < 1e-15);

    const ComplexVector e1{1.0, 0.0}, e2{0.0, 1.0};
    CHECK(std::abs(hermitian_product(e1, e2)) == 0.0);

    // (1+j, 2) against (1, j): conj(1+j) * 1 + 2 * j
    const ComplexVector u{{1.0, 1.0}, {2.0, 0.0}};
    const ComplexVector v{{1.0, 0.0}, {0.0, 1.0}};
    const cplx expected = std::conj(cplx(1.0, 1.0)) * cplx(1.0, 0.0) + cplx(2.0, 0.0) * cplx(0.0, 1.0);
    CHECK(std::abs(hermitian_product(u, v) - expected) < 1e-15);
    CHECK(std::abs(hermitian_product(u, v) - cplx(1.0, 1.0)) < 1e-15);

    const ComplexVector short_v{1.0};
    CHECK_THROWS_AS(hermitian_product(u, short_v), std::invalid_argument);
}

TEST_CASE("Numerics - Self product is a non-negative real", "[numerics]")
{
    Rng rng(11);
    for (int t = 0; t < 200; ++t)
    {
        ComplexVector a(1 + rng.index(16));
        for (auto &x : a)
            x = cplx(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        const cplx s = hermitian_product(a, a);
        CHECK(std::abs(s.imag()) <= 1e-12 * s.real());
        CHECK(s.real() > 0.0);
        CHECK(std::abs(s.real() - squared_norm(a)) <= 1e-12 * s.real());
        CHECK(std::abs(s - oracle::dot(a, a)) <= 1e-12 * s.real());
    }
    const ComplexVector zero(5, cplx{0.0, 0.0});
    CHECK(hermitian_product(zero, zero) == cplx(0.0, 0.0));
}

TEST_CASE("Numerics - Matrix shape and products", "[numerics]")
{
    CHECK_THROWS_AS(ComplexMatrix(0, 3), std::invalid_argument);

    const std::vector<ComplexVector> cols{{{1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}}, {{0.0, 1.0}, {0.0, 0.0}, {1.0, 1.0}}};
    const ComplexMatrix m = ComplexMatrix::from_columns(cols);
    REQUIRE(m.rows() == 3);
    REQUIRE(m.cols() == 2);
    CHECK(m.entries().size() == 6);
    CHECK(m(2, 1) == cplx(1.0, 1.0));
    CHECK(m.column(0) == cols[0]);

    const ComplexMatrix g = adjoint_product(m, m);
    CHECK(std::abs(g(0, 0) - cplx(14.0, 0.0)) < 1e-14);
    CHECK(std::abs(g(0, 1) - oracle::dot(cols[0], cols[1])) < 1e-14);
    CHECK(std::abs(g(1, 0) - std::conj(g(0, 1))) < 1e-14);

    const ComplexMatrix i3 = ComplexMatrix::identity(3);
    const ComplexMatrix same = product(i3, m);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 2; ++c)
            CHECK(same(r, c) == m(r, c));
    CHECK_THROWS_AS(product(m, m), std::invalid_argument);
}

TEST_CASE("Numerics - Gram solve on small fixed systems", "[numerics]")
{
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    const ComplexMatrix x = solve_gram(i2, i2);
    CHECK(std::abs(x(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(x(1, 1) - 1.0) < 1e-15);
    CHECK(std::abs(x(0, 1)) < 1e-15);

    // Columns (2,0) and (0,1): Gram = diag(4, 1)
    ComplexMatrix h(2, 2);
    h(0, 0) = 2.0;
    h(1, 1) = 1.0;
    const ComplexMatrix y = solve_gram(h, i2);
    CHECK(std::abs(y(0, 0) - 0.25) < 1e-15);
    CHECK(std::abs(y(1, 1) - 1.0) < 1e-15);
    CHECK(std::abs(y(0, 1)) < 1e-15);
    CHECK(std::abs(y(1, 0)) < 1e-15);

    Rng rng(3);
    const ComplexMatrix r = random_matrix(rng, 4, 3);
    const ComplexMatrix i3 = ComplexMatrix::identity(3);
    CHECK(residual_ratio(r, solve_gram(r, i3), i3) <= 1e-9);
}

TEST_CASE("Numerics - Gram solve residual on random systems", "[numerics]")
{
    Rng rng(2024);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t)
    {
        const std::size_t k = 1 + rng.index(8);
        const std::size_t rows = k + rng.index(60);
        const ComplexMatrix h = random_matrix(rng, rows, k);
        const ComplexMatrix b = random_matrix(rng, k, 1 + rng.index(3));
        worst = std::max(worst, residual_ratio(h, solve_gram(h, b), b));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("Numerics - Gram solve rejects singular and malformed input", "[numerics]")
{
    ComplexMatrix h(3, 2);
    h(0, 0) = 1.0;
    h(1, 0) = 2.0;
    h(0, 1) = 2.0;
    h(1, 1) = 4.0; // second column = 2 x first
    CHECK_THROWS_AS(solve_gram(h, ComplexMatrix::identity(2)), SingularMatrixError);

    ComplexMatrix wide(2, 3);
    wide(0, 0) = wide(1, 1) = wide(0, 2) = 1.0;
    CHECK_THROWS_AS(solve_gram(wide, ComplexMatrix::identity(3)), SingularMatrixError);

    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    CHECK_THROWS_AS(solve_gram(i2, ComplexMatrix::identity(3)), std::invalid_argument);
}
