// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#include "pheig/ortho.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pheig/error.hpp"
#include "pheig/hamiltonian.hpp"
#include "pheig/linalg.hpp"

namespace pheig {

const char* to_string(QrMethod m) { return m == QrMethod::cholqr ? "cholqr" : "householder"; }

namespace {

// One CholQR pass: Q = X R^{-1} with R^* R = X^* X. Returns false on Cholesky failure.
bool cholqr_pass(Matrix& q, double* min_diag_ratio, FlopCounter* fc) {
    Matrix g = linalg::hermitian_part(matmul(q, q, Op::conj_trans, Op::none, fc));
    if (!linalg::cholesky_lower(g, fc)) return false;
    if (min_diag_ratio) {
        double lo = INFINITY, hi = 0.0;
        for (size_t i = 0; i < g.rows(); ++i) {
            lo = std::min(lo, g(i, i).real());
            hi = std::max(hi, g(i, i).real());
        }
        *min_diag_ratio = hi > 0.0 ? lo / hi : 0.0;
    }
    // X = Q L^*  =>  Q = X L^{-*}.
    linalg::trsm_lower(linalg::Side::right, Op::conj_trans, g, q.view(), fc);
    return true;
}

Matrix householder_path(const Matrix& x, FlopCounter* fc) {
    auto qr = linalg::householder_qr(x, fc);
    for (size_t i = 0; i < qr.r_abs_diag.size(); ++i) {
        if (qr.r_abs_diag[i] < kRankTol) {
            std::ostringstream os;
            os << "numerically rank-deficient block: |R(" << i << "," << i << ")| = " << qr.r_abs_diag[i]
               << " < " << kRankTol;
            throw RankDeficientError(os.str());
        }
    }
    return std::move(qr.q);
}

} // namespace

QrResult cholqr_with_fallback(const Matrix& x, FlopCounter* fc) {
    if (x.cols() > x.rows()) throw DimensionError("cholqr_with_fallback: more columns than rows");
    Matrix xn(x);
    for (size_t j = 0; j < xn.cols(); ++j) {
        const double nrm = norm2(xn.col(j));
        if (!(nrm > 0.0) || !std::isfinite(nrm)) {
            std::ostringstream os;
            os << "column " << j << " has norm " << nrm;
            throw RankDeficientError(os.str());
        }
        scale(xn.col(j), 1.0 / nrm);
    }

    QrResult r;
    Matrix q = xn;
    double ratio = 0.0;
    bool ok = cholqr_pass(q, &ratio, fc) && ratio >= kCholQrMinDiagRatio && cholqr_pass(q, nullptr, fc) &&
              orthonormality_defect(q) <= kCholQrFallbackDefect;
    if (ok) {
        r.q = std::move(q);
        r.method = QrMethod::cholqr;
    } else {
        r.q = householder_path(xn, fc);
        r.method = QrMethod::householder;
    }
    fix_column_phases(r.q);
    return r;
}

SearchSpace s_orthonormalize(const Matrix& vhat, const Matrix& locked_y, FlopCounter* fc) {
    const size_t n = vhat.rows(), locked = locked_y.cols(), k = vhat.cols();
    if (locked > 0 && locked_y.rows() != n) throw DimensionError("s_orthonormalize: row count mismatch");
    Matrix x(n, locked + k);
    if (locked > 0) x.set_block(0, 0, apply_S(locked_y));
    x.set_block(0, locked, vhat);
    QrResult qr = cholqr_with_fallback(x, fc);

    SearchSpace s;
    s.q = std::move(qr.q);
    s.locked = locked;
    s.method = qr.method;
    if (locked > 0) s.q.set_block(0, 0, locked_y);
    return s;
}

} // namespace pheig
