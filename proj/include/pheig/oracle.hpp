// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "pheig/hamiltonian.hpp"
#include "pheig/linalg.hpp"

namespace pheig {

struct FullEigendecomposition {
    std::vector<double> lambdas; // ascending
    Matrix V;                    // right eigenvectors, unit columns
    Matrix U;                    // left eigenvectors, U = S V
    std::vector<double> D;       // diag(V^* S V), carries the sign of lambda
};

// Dense solve of a definite H via SH = L L^*, L^* S L y = lambda y, v = L^{-*} y.
// Throws IndefiniteError when the Cholesky factorization fails.
FullEigendecomposition direct_solve_definite(const BseHamiltonian& h, bool want_vectors = true);

struct ShExtremes {
    double min = 0.0;
    double max = 0.0;
};

// Extreme eigenvalues of SH (hermitian eigensolve, no vectors).
ShExtremes sh_extremes(const BseHamiltonian& h);

// lambda_max(SH) / lambda_min(SH); equals sigma_max(H) / sigma_min(H). IndefiniteError if SH is not PD.
double cond_of_H(const BseHamiltonian& h);

// ||H||_2 = rho(SH), since S is unitary.
double norm2_H(const BseHamiltonian& h);

// Hermitian eigensolve with input check ||G - G^*||_max <= 1e-10 ||G||_max.
linalg::HermitianEig dense_hermitian_eig(const Matrix& g);

struct DenseGeneralEig {
    std::vector<cplx> values; // sorted by real part, stable
    Matrix vectors;           // right, unit columns
    Matrix left;              // left (u^* G = lambda u^*), only when requested
};

DenseGeneralEig dense_general_eig(const Matrix& g, bool want_left = false);

struct GalerkinRitz {
    std::vector<double> values;
    Matrix vectors;
};

// Reference hermitian Rayleigh-Ritz (Q^* H Q) for B = 0, where H itself is hermitian.
// Throws ValidationError if B is nonzero.
GalerkinRitz galerkin_rayleigh_ritz(const BseHamiltonian& h, const Matrix& q, FlopCounter* fc = nullptr);

} // namespace pheig
