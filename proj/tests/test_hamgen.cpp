// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "pheig/error.hpp"
#include "pheig/hamgen.hpp"
#include "pheig/linalg.hpp"
#include "pheig/oracle.hpp"
#include "support.hpp"

using namespace pheig;
using pheig::testing::definite;
using pheig::testing::two_by_two;

TEST(Generator, FrozenSmallInstance) {
    // Independent reference implementation of the generator, m = 3, seed 5.
    GeneratorSpec g;
    g.m = 3;
    g.seed = 5;
    auto h = generate(g);
    EXPECT_NEAR(h.A()(0, 0).real(), 2.6428177933843777, 1e-13);
    EXPECT_NEAR(h.A()(0, 1).real(), 1.1130774729361355, 1e-13);
    EXPECT_NEAR(h.A()(0, 1).imag(), -0.55842264351487492, 1e-13);
    EXPECT_NEAR(h.B()(1, 2).real(), 0.066547920306286978, 1e-13);
    EXPECT_NEAR(h.B()(1, 2).imag(), -0.12999023676450114, 1e-13);

    auto eig = direct_solve_definite(h, false);
    const double ref[] = {-4.74305514600734, -2.10173481182175, -1.00706008085287,
                          1.00706008085287,  2.10173481182175,  4.74305514600734};
    for (size_t i = 0; i < 6; ++i) EXPECT_NEAR(eig.lambdas[i], ref[i], 1e-12);
    EXPECT_NEAR(cond_of_H(h), 6.54231310214391, 1e-11);
    EXPECT_NEAR(norm2_H(h), 4.99398239520254, 1e-12);
}

TEST(Generator, Deterministic) {
    auto a = definite(8, 3);
    auto b = definite(8, 3);
    EXPECT_EQ(max_abs_diff(a.A(), b.A()), 0.0);
    EXPECT_EQ(max_abs_diff(a.B(), b.B()), 0.0);
    EXPECT_GT(max_abs_diff(a.A(), definite(8, 4).A()), 0.0);
}

TEST(Generator, BlocksHaveRequiredSymmetry) {
    auto h = definite(10, 1);
    EXPECT_EQ(linalg::hermitian_defect(h.A()), 0.0);
    EXPECT_EQ(linalg::symmetric_defect(h.B()), 0.0);
}

TEST(Generator, CouplingRatioIsHonored) {
    auto h = definite(12, 9, 0.3);
    auto ea = linalg::heev(h.A(), false);
    double sb = linalg::singular_values(h.B()).front();
    EXPECT_NEAR(sb / ea.values.front(), 0.3, 1e-12);
    EXPECT_GE(ea.values.front(), 1.0 - 1e-12);
}

TEST(Generator, SmallCouplingIsDefinite) {
    GeneratorSpec g;
    g.m = 1;
    g.seed = 12;
    g.coupling_ratio = 0.25;
    EXPECT_EQ(is_definite(generate(g)), Definiteness::definite);
}

TEST(Generator, ZeroCouplingGivesMirroredSpectrum) {
    auto h = definite(6, 2, 0.0);
    EXPECT_EQ(h.B().max_abs(), 0.0);
    auto ea = linalg::heev(h.A(), false);
    auto eig = direct_solve_definite(h, false);
    for (size_t i = 0; i < 6; ++i) {
        EXPECT_NEAR(eig.lambdas[6 + i], ea.values[i], 1e-12);
        EXPECT_NEAR(eig.lambdas[5 - i], -ea.values[i], 1e-12);
    }
}

TEST(Generator, DefiniteOnManySeedsAndSizes) {
    for (size_t m : {1, 2, 4, 8, 16, 32, 64})
        for (std::uint64_t s = 0; s < 100; ++s) {
            auto h = definite(m, s);
            BseHamiltonian fresh(h.A(), h.B());
            ASSERT_EQ(is_definite(fresh), Definiteness::definite) << "m=" << m << " seed=" << s;
        }
}

TEST(Generator, IndefiniteMode) {
    GeneratorSpec g;
    g.m = 8;
    g.seed = 4;
    g.coupling_ratio = 1.5;
    g.mode = GeneratorMode::indefinite;
    auto h = generate(g);
    EXPECT_EQ(is_definite(h), Definiteness::indefinite);
}

TEST(Generator, RejectsBadSpecs) {
    GeneratorSpec g;
    g.coupling_ratio = 1.5;
    EXPECT_THROW(g.validate(), ValidationError);
    g.coupling_ratio = -0.1;
    EXPECT_THROW(g.validate(), ValidationError);
    GeneratorSpec z;
    z.m = 0;
    EXPECT_THROW(z.validate(), ValidationError);
}

TEST(FieldOfValues, ScalarCase) {
    auto b = field_of_values_bounds(two_by_two());
    EXPECT_DOUBLE_EQ(b.re_bound, 2.0);
    EXPECT_DOUBLE_EQ(b.im_bound, 0.5);
    auto t = field_of_values_bounds(definite(4, 1, 0.0));
    EXPECT_EQ(t.im_bound, 0.0);
}

TEST(FieldOfValues, IndefiniteEigenvaluesInsideBox) {
    GeneratorSpec g;
    g.m = 8;
    g.seed = 17;
    g.coupling_ratio = 2.0;
    g.mode = GeneratorMode::indefinite;
    auto h = generate(g);
    auto box = field_of_values_bounds(h);
    auto eig = dense_general_eig(h.materialize());
    const double slack = 1e-10 * norm2_H(h);
    for (cplx l : eig.values) {
        EXPECT_LE(std::abs(l.real()), box.re_bound + slack);
        EXPECT_LE(std::abs(l.imag()), box.im_bound + slack);
    }
}

TEST(Quadruplets, TwoByTwoPartner) {
    auto h = two_by_two();
    Matrix v = Matrix::from_rows(2, 1, {0.99202969626716675, -0.12600429248272796});
    Matrix u = apply_S(v);
    double r = eigen_residual(h, 1.9364916731037085, v);
    auto p = quadruplet_partners(h, 1.9364916731037085, u, v, std::max(r, 1e-15));
    EXPECT_NEAR(p.neg_conj_pair.lambda.real(), -1.9364916731037085, 1e-15);
    EXPECT_LE(p.neg_conj_pair.residual, 1e-10);
    EXPECT_LE(p.neg_pair.residual, 1e-10);
    // Real lambda: (conj(lambda), S u) coincides with (lambda, v).
    EXPECT_LE(max_abs_diff(p.conj_pair.vector, v), 1e-15);
}

TEST(Quadruplets, BlockDiagonalPartnerIsMirrored) {
    Matrix a = Matrix::from_rows(2, 2, {cplx(2, 0), cplx(0, 1), cplx(0, -1), cplx(2, 0)});
    BseHamiltonian h(a, Matrix(2, 2));
    auto ea = linalg::heev(a);
    Matrix v(4, 1);
    v(0, 0) = ea.vectors(0, 1);
    v(1, 0) = ea.vectors(1, 1);
    auto p = quadruplet_partners(h, ea.values[1], apply_S(v), v, 1e-14);
    EXPECT_EQ(p.neg_conj_pair.vector(0, 0), cplx(0));
    EXPECT_EQ(p.neg_conj_pair.vector(1, 0), cplx(0));
    EXPECT_NEAR(std::abs(p.neg_conj_pair.vector(2, 0)), std::abs(v(0, 0)), 1e-15);
    EXPECT_LE(p.neg_conj_pair.residual, 1e-13);
}

TEST(Quadruplets, RejectsNonEigenpair) {
    auto h = two_by_two();
    Matrix v = Matrix::from_rows(2, 1, {1, 0});
    EXPECT_THROW(quadruplet_partners(h, 1.0, v, v, 1e-8), ValidationError);
}
