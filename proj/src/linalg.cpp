// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#include "pheig/linalg.hpp"

#include <algorithm>
#include <cblas.h>
#include <cmath>
#include <lapacke.h>
#include <string>

#include "pheig/error.hpp"

namespace pheig::linalg {

namespace {

lapack_complex_double* lp(cplx* p) { return reinterpret_cast<lapack_complex_double*>(p); }
int as_int(size_t v) { return static_cast<int>(v); }

void require_square(const Matrix& a, const char* who) {
    if (a.rows() != a.cols()) throw DimensionError(std::string(who) + ": matrix must be square");
}

} // namespace

bool cholesky_lower(Matrix& a, FlopCounter* fc) {
    require_square(a, "cholesky_lower");
    const size_t n = a.rows();
    if (n == 0) return true;
    const int info = LAPACKE_zpotrf(LAPACK_COL_MAJOR, 'L', as_int(n), lp(a.data()), as_int(n));
    count_flops(fc, 8.0 * static_cast<double>(n) * n * n / 6.0);
    if (info != 0) return false;
    for (size_t j = 1; j < n; ++j)
        for (size_t i = 0; i < j; ++i) a(i, j) = 0.0;
    for (size_t i = 0; i < n; ++i)
        if (!(a(i, i).real() > 0.0) || !std::isfinite(a(i, i).real())) return false;
    return true;
}

void trsm_lower(Side side, Op op, const Matrix& l, MatrixView b, FlopCounter* fc) {
    require_square(l, "trsm_lower");
    const size_t n = l.rows();
    if ((side == Side::left ? b.rows : b.cols) != n) throw DimensionError("trsm_lower: shape mismatch");
    if (b.rows == 0 || b.cols == 0) return;
    const cplx one(1.0);
    const CBLAS_TRANSPOSE t = op == Op::none ? CblasNoTrans : op == Op::trans ? CblasTrans : CblasConjTrans;
    cblas_ztrsm(CblasColMajor, side == Side::left ? CblasLeft : CblasRight, CblasLower, t, CblasNonUnit,
                as_int(b.rows), as_int(b.cols), &one, l.data(), as_int(std::max<size_t>(n, 1)), b.ptr, as_int(b.ld));
    count_flops(fc, 4.0 * static_cast<double>(n) * n * (side == Side::left ? b.cols : b.rows));
}

HermitianEig heev(const Matrix& a, bool want_vectors, FlopCounter* fc) {
    require_square(a, "heev");
    const size_t n = a.rows();
    HermitianEig out;
    out.values.resize(n);
    Matrix w(a);
    if (n == 0) return out;
    const int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'L', as_int(n), lp(w.data()),
                                    as_int(n), out.values.data());
    if (info != 0) throw NumericalError("hermitian eigensolver failed, info=" + std::to_string(info));
    count_flops(fc, (want_vectors ? 9.0 : 4.0 / 3.0) * 8.0 * static_cast<double>(n) * n * n / 3.0);
    if (want_vectors) out.vectors = std::move(w);
    return out;
}

GeneralEig geev(const Matrix& a, bool want_left, FlopCounter* fc) {
    require_square(a, "geev");
    const size_t n = a.rows();
    GeneralEig out;
    if (n == 0) return out;
    Matrix w(a);
    out.values.resize(n);
    out.right = Matrix(n, n);
    if (want_left) out.left = Matrix(n, n);
    const int info =
        LAPACKE_zgeev(LAPACK_COL_MAJOR, want_left ? 'V' : 'N', 'V', as_int(n), lp(w.data()), as_int(n),
                      lp(out.values.data()), want_left ? lp(out.left.data()) : nullptr, as_int(n),
                      lp(out.right.data()), as_int(n));
    if (info != 0) throw NumericalError("general eigensolver failed to converge, info=" + std::to_string(info));
    count_flops(fc, 8.0 * 10.0 * static_cast<double>(n) * n * n);
    return out;
}

std::vector<double> singular_values(const Matrix& a) {
    const size_t m = a.rows(), n = a.cols(), k = std::min(m, n);
    std::vector<double> s(k);
    if (k == 0) return s;
    Matrix w(a);
    std::vector<double> superb(k);
    const int info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'N', 'N', as_int(m), as_int(n), lp(w.data()), as_int(m),
                                    s.data(), nullptr, 1, nullptr, 1, superb.data());
    if (info != 0) throw NumericalError("SVD failed to converge, info=" + std::to_string(info));
    return s;
}

Svd svd(const Matrix& a) {
    const size_t m = a.rows(), n = a.cols(), k = std::min(m, n);
    Svd out;
    out.s.resize(k);
    out.u = Matrix(m, k);
    out.vt = Matrix(k, n);
    if (k == 0) return out;
    Matrix w(a);
    std::vector<double> superb(k);
    const int info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'S', 'S', as_int(m), as_int(n), lp(w.data()), as_int(m),
                                    out.s.data(), lp(out.u.data()), as_int(m), lp(out.vt.data()),
                                    as_int(std::max<size_t>(k, 1)), superb.data());
    if (info != 0) throw NumericalError("SVD failed to converge, info=" + std::to_string(info));
    return out;
}

HouseholderQr householder_qr(const Matrix& a, FlopCounter* fc) {
    const size_t m = a.rows(), n = a.cols();
    if (n > m) throw DimensionError("householder_qr: more columns than rows");
    HouseholderQr out;
    out.q = a;
    out.r_abs_diag.resize(n);
    if (n == 0) return out;
    std::vector<cplx> tau(n);
    int info = LAPACKE_zgeqrf(LAPACK_COL_MAJOR, as_int(m), as_int(n), lp(out.q.data()), as_int(m), lp(tau.data()));
    if (info != 0) throw NumericalError("zgeqrf failed, info=" + std::to_string(info));
    for (size_t i = 0; i < n; ++i) out.r_abs_diag[i] = std::abs(out.q(i, i));
    info = LAPACKE_zungqr(LAPACK_COL_MAJOR, as_int(m), as_int(n), as_int(n), lp(out.q.data()), as_int(m),
                          lp(tau.data()));
    if (info != 0) throw NumericalError("zungqr failed, info=" + std::to_string(info));
    count_flops(fc, 2.0 * 8.0 * (static_cast<double>(m) * n * n - static_cast<double>(n) * n * n / 3.0));
    return out;
}

TridiagEig tridiagonal_eig(const std::vector<double>& diag, const std::vector<double>& offdiag) {
    const size_t n = diag.size();
    if (n == 0) return {};
    if (offdiag.size() + 1 != n) throw DimensionError("tridiagonal_eig: offdiag must have n-1 entries");
    std::vector<double> d(diag), e(offdiag);
    e.resize(std::max<size_t>(n, 1));
    std::vector<double> z(n * n);
    const int info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'V', as_int(n), d.data(), e.data(), z.data(), as_int(n));
    if (info != 0) throw NumericalError("tridiagonal eigensolver failed, info=" + std::to_string(info));
    TridiagEig out;
    out.values = d;
    out.first_components.resize(n);
    for (size_t j = 0; j < n; ++j) out.first_components[j] = z[j * n];
    return out;
}

double hermitian_defect(const Matrix& a) {
    require_square(a, "hermitian_defect");
    double m = 0.0;
    for (size_t j = 0; j < a.cols(); ++j)
        for (size_t i = 0; i <= j; ++i) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

double symmetric_defect(const Matrix& a) {
    require_square(a, "symmetric_defect");
    double m = 0.0;
    for (size_t j = 0; j < a.cols(); ++j)
        for (size_t i = 0; i < j; ++i) m = std::max(m, std::abs(a(i, j) - a(j, i)));
    return m;
}

Matrix hermitian_part(const Matrix& a) {
    require_square(a, "hermitian_part");
    Matrix h(a.rows(), a.cols());
    for (size_t j = 0; j < a.cols(); ++j)
        for (size_t i = 0; i < a.rows(); ++i) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return h;
}

} // namespace pheig::linalg
