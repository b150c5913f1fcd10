// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "pheig/matrix.hpp"

namespace pheig {

enum class QrMethod { cholqr, householder };

const char* to_string(QrMethod m);

struct QrResult {
    Matrix q;
    QrMethod method = QrMethod::cholqr;
};

inline constexpr double kCholQrFallbackDefect = 1e-8;
inline constexpr double kCholQrMinDiagRatio = 1e-6;
inline constexpr double kRankTol = 1e-11;

// Orthonormal basis of span(X). Columns are normalized first, then CholQR2 runs; the
// Householder path takes over if the Gram factorization fails, the first-pass R is too
// ill-conditioned, or ||Q^* Q - I||_max > 1e-8. Throws RankDeficientError when
// Householder finds |R_ii| < 1e-11. Column phases follow fix_column_phases.
QrResult cholqr_with_fallback(const Matrix& x, FlopCounter* fc = nullptr);

// Q = [Y, Q_active] with Y the locked vectors (not re-orthonormalized) and Q_active an
// orthonormal basis orthogonal to S Y.
struct SearchSpace {
    Matrix q;
    size_t locked = 0;
    QrMethod method = QrMethod::cholqr;

    size_t nevex() const { return q.cols(); }
    size_t active_count() const { return q.cols() - locked; }
    Matrix active() const { return q.cols_range(locked, active_count()); }
    Matrix q1() const { return q.block(0, 0, q.rows() / 2, q.cols()); }
    Matrix q2() const { return q.block(q.rows() / 2, 0, q.rows() / 2, q.cols()); }
};

// Orthonormalizes [S Y, Vhat] and replaces the leading block by Y.
SearchSpace s_orthonormalize(const Matrix& vhat, const Matrix& locked_y, FlopCounter* fc = nullptr);

} // namespace pheig
