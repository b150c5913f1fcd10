// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "pheig/error.hpp"
#include "pheig/oracle.hpp"
#include "pheig/solver.hpp"
#include "pheig/verify.hpp"
#include "support.hpp"

using namespace pheig;
using pheig::testing::definite;

namespace {

SolverConfig config(size_t nev, std::uint64_t seed) {
    SolverConfig c;
    c.nev = nev;
    c.seed = seed;
    return c;
}

double max_oracle_gap(const SolveResult& r, const FullEigendecomposition& eig) {
    double g = 0;
    for (size_t i = 0; i < r.lambdas.size(); ++i) g = std::max(g, std::abs(r.lambdas[i] - eig.lambdas[i]));
    return g;
}

} // namespace

TEST(Solver, PolicyNames) {
    EXPECT_EQ(rr_policy_from_string("auto"), RrPolicy::auto_select);
    EXPECT_EQ(rr_policy_from_string("hermitian"), RrPolicy::hermitian);
    EXPECT_EQ(rr_policy_from_string("backup"), RrPolicy::backup);
    EXPECT_EQ(rr_policy_from_string("galerkin"), RrPolicy::galerkin_reference);
    EXPECT_THROW(rr_policy_from_string("fast"), ValidationError);
    EXPECT_STREQ(to_string(RrPolicy::backup), "backup");
}

TEST(Solver, ConfigValidation) {
    auto c = config(3, 0);
    EXPECT_NO_THROW(c.validate(12));
    EXPECT_THROW(c.validate(10), ValidationError);
    c.nev = 0;
    EXPECT_THROW(c.validate(12), ValidationError);
    c = config(1, 0);
    c.deg = 3;
    EXPECT_THROW(c.validate(12), ValidationError);
    c = config(1, 0);
    c.tol = 0;
    EXPECT_THROW(c.validate(12), ValidationError);
    c = config(1, 0);
    c.initial = Matrix(12, 1);
    EXPECT_THROW(c.validate(12), ValidationError);
}

TEST(Solver, MatchesOracleOnGeneratedInstance) {
    auto h = definite(48, 2);
    auto eig = direct_solve_definite(h);
    auto c = config(4, 2);
    auto r = solve(h, c);
    ASSERT_TRUE(r.converged);
    EXPECT_LE(r.iterations, 25);
    EXPECT_LE(max_oracle_gap(r, eig), 10 * c.tol * norm2_H(h));
    for (double res : r.residual_norms) EXPECT_LE(res, c.tol);
    EXPECT_EQ(r.V.cols(), 4u);
    EXPECT_EQ(r.backup_events, 0u);
}

TEST(Solver, BlockExtensionOfTwoByTwo) {
    Matrix a = Matrix::from_rows(2, 2, {2, 0, 0, 3});
    Matrix b = Matrix::from_rows(2, 2, {0.5, 0, 0, 0.5});
    BseHamiltonian h(a, b);
    auto c = config(1, 0);
    c.nex = 1;
    auto r = solve(h, c);
    ASSERT_TRUE(r.converged);
    EXPECT_NEAR(r.lambdas[0], -std::sqrt(8.75), 1e-10);
}

TEST(Solver, BlockDiagonalLimit) {
    auto h = pheig::testing::diagonal_tda(20);
    auto r = solve(h, config(3, 1));
    ASSERT_TRUE(r.converged);
    EXPECT_NEAR(r.lambdas[0], -20.0, 1e-9);
    EXPECT_NEAR(r.lambdas[1], -19.0, 1e-9);
    EXPECT_NEAR(r.lambdas[2], -18.0, 1e-9);
}

TEST(Solver, GalerkinReferenceParity) {
    auto h = definite(40, 3, 0.0);
    auto c = config(4, 3);
    auto ours = solve(h, c);
    c.rr = RrPolicy::galerkin_reference;
    auto ref = solve(h, c);
    ASSERT_TRUE(ours.converged);
    ASSERT_TRUE(ref.converged);
    EXPECT_LE(ours.iterations, ref.iterations + 2);
    for (size_t i = 0; i < 4; ++i) EXPECT_NEAR(ours.lambdas[i], ref.lambdas[i], 1e-7);
    EXPECT_THROW(solve(definite(8, 1), c), ValidationError);
}

TEST(Solver, BackupPolicyConverges) {
    auto h = definite(32, 5);
    auto eig = direct_solve_definite(h);
    auto c = config(3, 5);
    c.rr = RrPolicy::backup;
    auto r = solve(h, c);
    ASSERT_TRUE(r.converged);
    EXPECT_EQ(r.backup_events, static_cast<size_t>(r.trace.size()));
    EXPECT_LE(max_oracle_gap(r, eig), 10 * c.tol * norm2_H(h));
}

TEST(Solver, TraceAndCutoffsAreConsistent) {
    auto h = definite(64, 8);
    auto r = solve(h, config(4, 8));
    ASSERT_FALSE(r.trace.empty());
    EXPECT_EQ(r.trace.front().iter, 1);
    EXPECT_EQ(r.trace.back().iter, r.iterations);
    for (size_t i = 1; i < r.trace.size(); ++i) EXPECT_GE(r.trace[i].locked, r.trace[i - 1].locked);
    EXPECT_EQ(r.final_bounds.mu_n, -r.final_bounds.mu_1);
    EXPECT_GT(r.flops.filter, 0.0);
    EXPECT_GT(r.flops.total(), r.flops.filter);
}

TEST(Solver, DeterministicForFixedSeed) {
    auto h = definite(24, 4);
    auto c = config(2, 11);
    c.reproducible = true;
    auto a = solve(h, c), b = solve(h, c);
    ASSERT_EQ(a.lambdas.size(), b.lambdas.size());
    for (size_t i = 0; i < a.lambdas.size(); ++i) EXPECT_EQ(a.lambdas[i], b.lambdas[i]);
}

TEST(Solver, WarmStartWithConvergedVectorsSkipsFiltering) {
    auto h = definite(16, 6);
    auto eig = direct_solve_definite(h);
    auto c = config(2, 0);
    c.initial = eig.V.cols_range(0, 4);
    auto r = solve(h, c);
    ASSERT_TRUE(r.converged);
    EXPECT_EQ(r.iterations, 0);
    EXPECT_EQ(r.flops.filter, 0.0);
    EXPECT_EQ(r.seconds.filter, 0.0);
    EXPECT_NEAR(r.lambdas[0], eig.lambdas[0], 1e-12 * norm2_H(h));
}

TEST(Solver, FilterDominatesFlopModel) {
    // n = 1024 with nev at about 2% of n.
    auto h = definite(512, 12);
    auto r = solve(h, config(20, 12));
    ASSERT_TRUE(r.converged);
    EXPECT_GE(r.flops.filter / r.flops.total(), 0.6);
}

TEST(Solver, OutOfBracketRitzValueDoesNotBlockLocking) {
    // This instance grows a Ritz value far below mu_1 in its second iteration.
    auto h = definite(256, 22);
    auto c = config(16, 22);
    c.nex = 16;
    c.rr = RrPolicy::hermitian;
    c.maxiter = 25;
    auto r = solve(h, c);
    ASSERT_TRUE(r.converged);
    EXPECT_LE(r.iterations, 15);
    const auto eig = direct_solve_definite(h, false);
    for (size_t i = 0; i < 16; ++i) EXPECT_NEAR(r.lambdas[i], eig.lambdas[i], 1e-7);
}

TEST(Solver, MaxiterExhaustionIsBestEffort) {
    auto h = definite(64, 1);
    auto c = config(4, 1);
    c.maxiter = 1;
    c.tol = 1e-15;
    auto r = solve(h, c);
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.lambdas.size(), 4u);
    EXPECT_EQ(r.iterations, 1);
}

TEST(Solver, RejectsIndefinite) {
    GeneratorSpec g;
    g.m = 8;
    g.coupling_ratio = 1.5;
    g.mode = GeneratorMode::indefinite;
    EXPECT_THROW(solve(generate(g), config(1, 0)), IndefiniteError);
}

TEST(Solver, SingularWarmStartAbortsOrFallsBack) {
    auto h = definite(6, 2);
    auto c = config(1, 0);
    c.nex = 2;
    c.initial = verify::singular_q1_block(6, 3, 1);
    c.rr = RrPolicy::hermitian;
    try {
        solve(h, c);
        FAIL() << "expected SolveAbort";
    } catch (const SolveAbort& e) {
        EXPECT_TRUE(e.trace().empty());
    }
    c.rr = RrPolicy::auto_select;
    auto r = solve(h, c);
    ASSERT_FALSE(r.trace.empty());
    EXPECT_TRUE(r.trace.front().fallback);
    EXPECT_EQ(r.trace.front().variant, RrVariant::nonhermitian_backup);
    EXPECT_GE(r.backup_events, 1u);
    EXPECT_TRUE(r.converged);
}

TEST(CompleteSpectrum, TwoByTwoPartner) {
    auto h = pheig::testing::two_by_two();
    SolveResult r;
    auto eig = direct_solve_definite(h);
    r.lambdas = {eig.lambdas[0]};
    r.V = eig.V.cols_range(0, 1);
    r.converged = true;
    auto full = complete_spectrum(h, r);
    ASSERT_EQ(full.lambdas.size(), 2u);
    EXPECT_NEAR(full.lambdas[1], 1.9364916731037085, 1e-15);
    for (double res : full.residual_norms) EXPECT_LE(res, 1e-9);
    for (size_t j = 0; j < 2; ++j) {
        cplx uv = dot(full.U.col(j), full.V.col(j));
        EXPECT_GT(uv.real(), 0.0);
        EXPECT_LE(std::abs(uv.imag()), 1e-15);
    }
}

TEST(CompleteSpectrum, BlockDiagonalPartnersMirrorSupport) {
    auto h = pheig::testing::diagonal_tda(6);
    auto r = solve(h, config(2, 0));
    auto full = complete_spectrum(h, r);
    ASSERT_EQ(full.lambdas.size(), 4u);
    EXPECT_NEAR(full.lambdas[3], 6.0, 1e-9);
    EXPECT_NEAR(std::abs(full.V(5, 3)), 1.0, 1e-9);
    EXPECT_NEAR(std::abs(full.V(11, 0)), 1.0, 1e-9);
}
