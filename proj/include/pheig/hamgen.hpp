// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "pheig/hamiltonian.hpp"

namespace pheig {

enum class GeneratorMode { definite, indefinite };

struct GeneratorSpec {
    size_t m = 16;
    std::uint64_t seed = 0;
    double alpha = 1.0;          // lambda_min(A) >= alpha
    double coupling_ratio = 0.5; // ||B||_2 / lambda_min(A)
    GeneratorMode mode = GeneratorMode::definite;

    // Throws ValidationError on m = 0, alpha <= 0, negative ratio, or ratio >= 1 in definite mode.
    void validate() const;
};

// A = C C^* / m + alpha I, B = gamma (D + D^T)/2 with C, D complex Gaussian.
// Definite mode returns a Hamiltonian with its definiteness flag set.
BseHamiltonian generate(const GeneratorSpec& spec);

struct FieldOfValuesBounds {
    double re_bound = 0.0; // spectral radius of A
    double im_bound = 0.0; // largest singular value of B
};

FieldOfValuesBounds field_of_values_bounds(const BseHamiltonian& h);

struct EigenPair {
    cplx lambda;
    Matrix vector; // n x 1
    double residual = 0.0;
};

struct QuadrupletPartners {
    EigenPair conj_pair;     // (conj(lambda), S u)
    EigenPair neg_pair;      // (-lambda, J conj(u))
    EigenPair neg_conj_pair; // (-conj(lambda), K conj(v))
};

// ||H v - lambda v|| and ||H^* u - conj(lambda) u|| must both be <= tol_in,
// otherwise ValidationError. Partner residuals are measured and returned.
QuadrupletPartners quadruplet_partners(const BseHamiltonian& h, cplx lambda, const Matrix& u, const Matrix& v,
                                       double tol_in);

// ||H x - lambda x||_2 for a single column.
double eigen_residual(const BseHamiltonian& h, cplx lambda, const Matrix& x);

} // namespace pheig
