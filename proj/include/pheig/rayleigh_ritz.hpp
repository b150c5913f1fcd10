// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "pheig/hamiltonian.hpp"

namespace pheig {

enum class RrVariant { hermitian_equiv, nonhermitian_backup };

const char* to_string(RrVariant v);

// Threshold on |lambda_min(Q^* S Q)| below which the hermitian variant is refused and
// diagonal entries of the backup M are treated as zero.
inline constexpr double kSingularMThreshold = 1e-8;

struct ReducedProblem {
    RrVariant variant = RrVariant::hermitian_equiv;
    Matrix W;              // Q^* S H Q (hermitian variant) or Q^* H Q (backup)
    Matrix L;              // lower Cholesky factor of W (hermitian variant)
    Matrix M;              // Q^* S Q
    Matrix G;              // the matrix actually diagonalized
    std::vector<double> d; // backup scaling (1 + diag(-2 Q2^* Q2))^{-1}
    double lambda_min_M = 0.0; // eigenvalue of M with the smallest magnitude
};

struct RitzSet {
    std::vector<double> values; // ascending
    Matrix vectors;             // unit columns
    Matrix h_vectors;           // H * vectors, reused by residuals()
    std::vector<double> residual_norms;
    std::vector<bool> converged;
    std::vector<double> imag_parts; // discarded imaginary parts (backup variant)
};

struct RrResult {
    RitzSet ritz;
    ReducedProblem reduced;
};

// Throws ReductionError if chol(W) fails or |lambda_min(M)| < kSingularMThreshold.
RrResult build_hermitian_rq(const BseHamiltonian& h, const Matrix& q, FlopCounter* fc = nullptr);

// Throws NumericalError if the general eigensolver fails.
RrResult build_backup_rq(const BseHamiltonian& h, const Matrix& q, FlopCounter* fc = nullptr);

// r_i = ||H v_i - lambda_i v_i||_2. Uses ritz.h_vectors when it has the right shape.
void residuals(const BseHamiltonian& h, RitzSet& ritz, FlopCounter* fc = nullptr);

struct LockResult {
    std::vector<size_t> locked; // ascending eigenvalue order
    std::vector<size_t> active; // original relative order
};

// Marks r_i <= threshold as converged and locks the leading run of converged values,
// at most max_new of them.
LockResult lock_converged(RitzSet& ritz, double threshold, size_t max_new);

struct SpectralScale {
    double cond_H = 1.0; // cond(SH) = cond(H)
    double rho_SH = 1.0; // ||H||_2
};

struct ConvergenceDiagnostics {
    double lambda_min_M = 0.0; // 0 when singular
    bool singular = false;
    double delta_tilde_bound = 0.0; // sqrt(cond(H)) / |lambda_min(M)|
    double ritz_interval = 0.0;     // Ritz values lie in [-ritz_interval, ritz_interval]
    std::vector<double> kappa;      // per Ritz value
    std::vector<bool> spurious;     // outside the Ritz interval
};

// ||H - lambda I||_2 is bounded by rho(SH) + |lambda| unless exact_shift_norm, which
// evaluates the spectral radius of SH - lambda S densely.
ConvergenceDiagnostics diagnostics(const BseHamiltonian& h, const Matrix& q, const RitzSet& ritz,
                                   const SpectralScale& scale, bool exact_shift_norm = false);

// ||H - lambda I||_2 for real lambda, via the hermitian matrix SH - lambda S.
double shifted_norm(const BseHamiltonian& h, double lambda);

enum class DualChoice { full, diagonal };

// Q_L = [S Q - Q (Q^* S Q - M)] M^{-1}. For the diagonal choice, entries of diag(Q^* S Q)
// below kSingularMThreshold in magnitude are replaced by 1. Throws NumericalError if the
// full M is singular.
Matrix dual_basis_explicit(const Matrix& q, DualChoice choice);

// Q^* S Q.
Matrix s_gram(const Matrix& q, FlopCounter* fc = nullptr);

} // namespace pheig
