// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "pheig/error.hpp"
#include "pheig/filter.hpp"
#include "pheig/oracle.hpp"
#include "support.hpp"

using namespace pheig;
using pheig::testing::definite;
using pheig::testing::random_matrix;

namespace {

FilterConfig config(double mu_1, double mu_nevex, int degree) {
    SpectralBounds b;
    b.mu_1 = mu_1;
    b.mu_n = -mu_1;
    b.mu_nevex = mu_nevex;
    return FilterConfig::from_bounds(degree, b);
}

} // namespace

TEST(Filter, DegreeRounding) {
    int d = 13;
    EXPECT_TRUE(round_degree_to_even(d));
    EXPECT_EQ(d, 14);
    EXPECT_FALSE(round_degree_to_even(d));
    EXPECT_EQ(d, 14);
}

TEST(Filter, ConfigValidation) {
    EXPECT_THROW(config(-2, -1, 3).validate(), ValidationError);
    EXPECT_THROW(config(-2, -1, 0).validate(), ValidationError);
    EXPECT_NO_THROW(config(-2, -1, 2).validate());
    FilterConfig bad = config(-2, -1, 4);
    bad.scale_ref = 0.0;
    EXPECT_THROW(bad.validate(), ValidationError);
}

TEST(Filter, ScalarValueAnchors) {
    auto c = config(-2.0, -0.5, 10);
    // The scaled polynomial equals one at the reference point.
    EXPECT_NEAR(scalar_filter_value(-2.0, c), 1.0, 1e-14);
    // Inside the damped interval it is bounded by the boundary gain.
    const double edge = std::abs(scalar_filter_value(-0.5, c));
    EXPECT_NEAR(std::abs(scalar_filter_value(c.center + c.half_width, c)), edge, 1e-14);
    for (double x = -0.5; x <= 2.0; x += 0.05) EXPECT_LE(std::abs(scalar_filter_value(x, c)), edge * (1 + 1e-12));
    EXPECT_LT(edge, 1e-3);
    EXPECT_LE(std::abs(scalar_filter_value(c.center, c)), edge * (1 + 1e-12));
}

TEST(Filter, VectorMatchesScalarOnEigenvector) {
    auto h = pheig::testing::two_by_two();
    auto eig = direct_solve_definite(h);
    auto c = config(-1.9364916731037085 * 1.01, -1.0, 8);
    for (size_t j = 0; j < 2; ++j) {
        Matrix v = eig.V.cols_range(j, 1);
        Matrix y = chebyshev_filter(h, v, c);
        const double p = scalar_filter_value(eig.lambdas[j], c);
        EXPECT_LE(max_abs_diff(y, p * v), 1e-12 * std::abs(p));
    }
}

TEST(Filter, DampingMatchesScalarRatio) {
    auto h = definite(8, 6);
    auto eig = direct_solve_definite(h);
    auto c = config(eig.lambdas.front() * 1.01, eig.lambdas[3], 12);
    Matrix yt = chebyshev_filter(h, eig.V.cols_range(0, 1), c);
    Matrix yd = chebyshev_filter(h, eig.V.cols_range(10, 1), c);
    const double ratio = norm2(yd.col(0)) / norm2(yt.col(0));
    const double bound = std::abs(scalar_filter_value(eig.lambdas[10], c) / scalar_filter_value(eig.lambdas[0], c));
    EXPECT_NEAR(ratio, bound, 1e-10 * bound + 1e-15);
    EXPECT_LT(ratio, 1e-3);
}

TEST(Filter, PreservesInvariantSubspaces) {
    BseHamiltonian h(Matrix::identity(3), Matrix(3, 3));
    Matrix x(6, 1);
    x(1, 0) = 1;
    auto c = config(-1.1, -0.9, 2);
    Matrix y = chebyshev_filter(h, x, c);
    for (size_t i = 0; i < 6; ++i)
        if (i != 1) EXPECT_EQ(y(i, 0), cplx(0));
}

TEST(Filter, AlternatingKernelsMatchPlainKernel) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        auto h = definite(16, s);
        auto c = config(-1.01 * norm2_H(h), -1.5, 20);
        Matrix x = random_matrix(32, 4, s);
        c.plain_only = false;
        Matrix a = chebyshev_filter(h, x, c);
        c.plain_only = true;
        Matrix p = chebyshev_filter(h, x, c);
        EXPECT_LE(max_abs_diff(a, p), 1e-12 * p.max_abs());
    }
}

TEST(Filter, CountsFlops) {
    auto h = definite(8, 1);
    FlopCounter fc;
    chebyshev_filter(h, random_matrix(16, 2, 1), config(-10, -1, 4), &fc);
    EXPECT_GT(fc.total, 4 * gemm_flops(16, 2, 8));
}

TEST(Filter, RejectsWrongShape) {
    auto h = definite(4, 1);
    EXPECT_THROW(chebyshev_filter(h, Matrix(6, 1), config(-10, -1, 4)), DimensionError);
}
