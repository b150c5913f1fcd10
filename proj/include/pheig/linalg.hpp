// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "pheig/matrix.hpp"

namespace pheig::linalg {

// In-place lower Cholesky factor (upper triangle zeroed). Returns false if A is not
// numerically positive definite; A is then unspecified.
bool cholesky_lower(Matrix& a, FlopCounter* fc = nullptr);

enum class Side { left, right };

// Solves op(L) X = B (side left) or X op(L) = B (side right) in place, L lower triangular.
void trsm_lower(Side side, Op op, const Matrix& l, MatrixView b, FlopCounter* fc = nullptr);

struct HermitianEig {
    std::vector<double> values; // ascending
    Matrix vectors;             // unitary, column j pairs with values[j]
};

// Eigendecomposition of a hermitian matrix; only the lower triangle is referenced.
HermitianEig heev(const Matrix& a, bool want_vectors = true, FlopCounter* fc = nullptr);

struct GeneralEig {
    std::vector<cplx> values; // LAPACK order
    Matrix right;             // unit 2-norm columns
    Matrix left;              // empty unless requested
};

GeneralEig geev(const Matrix& a, bool want_left = false, FlopCounter* fc = nullptr);

std::vector<double> singular_values(const Matrix& a);

struct Svd {
    std::vector<double> s; // descending
    Matrix u;              // rows x min(rows, cols)
    Matrix vt;             // min(rows, cols) x cols
};

Svd svd(const Matrix& a);

struct HouseholderQr {
    Matrix q;                  // rows x cols, orthonormal columns
    std::vector<double> r_abs_diag;
};

HouseholderQr householder_qr(const Matrix& a, FlopCounter* fc = nullptr);

// Real symmetric tridiagonal eigensolve. Returns ascending values and, for each, the
// first component of its unit eigenvector.
struct TridiagEig {
    std::vector<double> values;
    std::vector<double> first_components;
};

TridiagEig tridiagonal_eig(const std::vector<double>& diag, const std::vector<double>& offdiag);

// Largest |A - A^*| entry.
double hermitian_defect(const Matrix& a);
// Largest |A - A^T| entry.
double symmetric_defect(const Matrix& a);

// (A + A^*)/2, exactly hermitian in floating point.
Matrix hermitian_part(const Matrix& a);

} // namespace pheig::linalg
