// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "pheig/error.hpp"
#include "pheig/lanczos.hpp"
#include "pheig/oracle.hpp"
#include "support.hpp"

using namespace pheig;
using pheig::testing::definite;

TEST(Lanczos, TwoByTwoTerminatesExactly) {
    auto b = estimate_bounds(pheig::testing::two_by_two(), 1, 2, 0);
    EXPECT_NEAR(b.mu_1, -1.9364916731037085 * 1.01, 1e-12);
    EXPECT_NEAR(b.mu_n, 1.9364916731037085 * 1.01, 1e-12);
    EXPECT_EQ(b.mu_n, -b.mu_1);
    EXPECT_GE(b.mu_nevex, b.mu_1);
    EXPECT_LE(b.mu_nevex, 0.0);
}

TEST(Lanczos, DiagonalBoundsBracketSpectrum) {
    auto b = estimate_bounds(pheig::testing::diagonal_tda(8), 2, 16, 1);
    EXPECT_LE(b.mu_1, -8.0);
    EXPECT_GE(b.mu_1, -8.0 * 1.01 - 1e-9);
    EXPECT_GE(b.mu_n, 8.0);
}

TEST(Lanczos, NodesAreAWeightedDistribution) {
    auto b = estimate_bounds(definite(32, 4), 4, 24, 9);
    double s = 0;
    for (size_t i = 0; i < b.ritz_nodes.size(); ++i) {
        s += b.ritz_nodes[i].weight;
        if (i) EXPECT_LE(b.ritz_nodes[i - 1].theta, b.ritz_nodes[i].theta);
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
    EXPECT_EQ(b.steps % 2, 0);
    EXPECT_LE(b.imag_defect, 1e-10);
}

TEST(Lanczos, Deterministic) {
    auto h = definite(16, 2);
    auto a = estimate_bounds(h, 4, 12, 5);
    auto b = estimate_bounds(h, 4, 12, 5);
    EXPECT_EQ(a.mu_1, b.mu_1);
    EXPECT_EQ(a.mu_nevex, b.mu_nevex);
}

TEST(Lanczos, RejectsBadArguments) {
    auto h = definite(4, 1);
    EXPECT_THROW(estimate_bounds(h, 2, 5, 0), ValidationError);
    EXPECT_THROW(estimate_bounds(h, 2, 0, 0), ValidationError);
    EXPECT_THROW(estimate_bounds(h, 0, 4, 0), ValidationError);
    EXPECT_THROW(estimate_bounds(h, 5, 4, 0), ValidationError);
}

TEST(Lanczos, CutoffBracketsOracleOnMostSeeds) {
    const size_t m = 64, nevex = 8;
    int ok_lo = 0, ok_hi = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        auto h = definite(m, s);
        auto eig = direct_solve_definite(h, false);
        auto b = estimate_bounds(h, nevex, kDefaultLanczosSteps, s);
        if (eig.lambdas.front() >= b.mu_1) ++ok_lo;
        // 5% slack measured on |mu_nevex|, since the cutoff is negative.
        if (eig.lambdas[nevex - 1] <= b.mu_nevex + 0.05 * std::abs(b.mu_nevex)) ++ok_hi;
    }
    EXPECT_EQ(ok_lo, 100);
    EXPECT_GE(ok_hi, 95);
}

TEST(Lanczos, UpdateCutoff) {
    SpectralBounds b;
    b.mu_1 = -3.0;
    b.mu_n = 3.0;
    b.mu_nevex = -0.1;
    auto u = update_cutoff(b, {-0.5});
    EXPECT_EQ(u.mu_nevex, -0.5);
    EXPECT_EQ(u.mu_n, -u.mu_1);
    auto v = update_cutoff(b, {-2.0, -0.7, -1.2});
    EXPECT_EQ(v.mu_nevex, -0.7);
    auto w = update_cutoff(b, {-5.0});
    EXPECT_EQ(w.mu_nevex, -3.0);
    EXPECT_THROW(update_cutoff(b, {}), ValidationError);
}
