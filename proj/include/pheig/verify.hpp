// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pheig/hamiltonian.hpp"

namespace pheig::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    bool skipped = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct Report {
    std::vector<CheckResult> checks;
    bool all_passed() const;
    std::string format() const;
};

struct Options {
    std::uint64_t seed = 0;
    size_t k = 8;                  // width of random test subspaces, clamped to m
    size_t general_eig_cap = 256;  // largest n for dense general eigensolves
};

// Random n x k block with orthonormal columns.
Matrix random_orthonormal(size_t n, size_t k, std::uint64_t seed);

// Q whose first column mixes e_1 and e_{m+1} equally, so sigma_1(Q1) = 1/sqrt(2) and
// Q^* S Q is singular.
Matrix singular_q1_block(size_t m, size_t k, std::uint64_t seed);

CheckResult check_structure(const Matrix& a, const Matrix& b);
CheckResult check_definiteness(const BseHamiltonian& h);
CheckResult check_quadruplets(const BseHamiltonian& h, const Options& opt);
CheckResult check_field_of_values(const BseHamiltonian& h, const Options& opt);
CheckResult check_cond_identity(const BseHamiltonian& h);
CheckResult check_spectrum_symmetry(const BseHamiltonian& h);
CheckResult check_left_vectors(const BseHamiltonian& h);
CheckResult check_biorthogonality(const BseHamiltonian& h);
CheckResult check_qsq_law(const Matrix& q);
CheckResult check_singular_value_complement(const Matrix& q);
CheckResult check_interlacing(const BseHamiltonian& h, const Matrix& q);
CheckResult check_dual_basis(const Matrix& q);
CheckResult check_dual_norm(const Matrix& q);
CheckResult check_ritz_interval(const BseHamiltonian& h, const Matrix& q);
CheckResult check_singular_detection(const BseHamiltonian& h, const Options& opt);

struct SlopeSweep {
    std::vector<double> eps;
    std::vector<double> err_hermitian;
    std::vector<double> err_backup;
    std::vector<double> kappa; // hermitian-variant kappa at each eps
    double slope_hermitian = 0.0;
    double slope_backup = 0.0;
};

// Q = orth([v_1 + eps e, v_2, ..., v_k]) around the smallest eigenpair; errors of the
// Ritz value nearest lambda_1 for both reductions.
SlopeSweep quadratic_sweep(const BseHamiltonian& h, const std::vector<double>& eps, size_t k, std::uint64_t seed);
CheckResult check_quadratic_slope(const BseHamiltonian& h, const Options& opt);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Structure check first; if it fails the remaining checks are skipped.
Report run_suite(const Matrix& a, const Matrix& b, const Options& opt);

} // namespace pheig::verify
