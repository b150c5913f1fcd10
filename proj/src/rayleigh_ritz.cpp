// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#include "pheig/rayleigh_ritz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pheig/error.hpp"
#include "pheig/linalg.hpp"
#include "pheig/oracle.hpp"

namespace pheig {

const char* to_string(RrVariant v) { return v == RrVariant::hermitian_equiv ? "hermitian" : "backup"; }

namespace {

double min_magnitude(const std::vector<double>& v) {
    double best = std::numeric_limits<double>::infinity(), val = 0.0;
    for (double x : v)
        if (std::abs(x) < best) {
            best = std::abs(x);
            val = x;
        }
    return val;
}

// I - 2 Q2^* Q2, equal to Q^* S Q for orthonormal Q.
Matrix m_from_lower_half(const Matrix& q, FlopCounter* fc) {
    const size_t m = q.rows() / 2, k = q.cols();
    const ConstMatrixView q2 = q.block_view(m, 0, m, k);
    Matrix mm = Matrix::identity(k);
    gemm(Op::conj_trans, Op::none, -2.0, q2, q2, 1.0, mm.view(), fc);
    return linalg::hermitian_part(mm);
}

// Sorts Ritz values ascending (stable) and forms unit Ritz vectors Q w and H Q w.
void finish_ritz(RitzSet& r, const Matrix& q, const Matrix& hq, const Matrix& w, std::vector<double> values,
                 std::vector<double> imag, FlopCounter* fc) {
    const auto perm = stable_argsort(values);
    const Matrix ws = permute_columns(w, perm);
    r.values.clear();
    r.imag_parts.clear();
    for (size_t i : perm) {
        r.values.push_back(values[i]);
        r.imag_parts.push_back(imag.empty() ? 0.0 : imag[i]);
    }
    r.vectors = matmul(q, ws, Op::none, Op::none, fc);
    r.h_vectors = matmul(hq, ws, Op::none, Op::none, fc);
    for (size_t j = 0; j < r.vectors.cols(); ++j) {
        const double nrm = norm2(r.vectors.col(j));
        if (nrm > 0.0) {
            scale(r.vectors.col(j), 1.0 / nrm);
            scale(r.h_vectors.col(j), 1.0 / nrm);
        }
    }
    r.residual_norms.assign(values.size(), std::numeric_limits<double>::infinity());
    r.converged.assign(values.size(), false);
}

} // namespace

Matrix s_gram(const Matrix& q, FlopCounter* fc) { return linalg::hermitian_part(matmul(q, apply_S(q), Op::conj_trans, Op::none, fc)); }

RrResult build_hermitian_rq(const BseHamiltonian& h, const Matrix& q, FlopCounter* fc) {
    if (q.rows() != h.dim()) throw DimensionError("build_hermitian_rq: Q has the wrong row count");
    RrResult out;
    ReducedProblem& red = out.reduced;
    red.variant = RrVariant::hermitian_equiv;

    red.M = m_from_lower_half(q, fc);
    red.lambda_min_M = min_magnitude(linalg::heev(red.M, false, fc).values);
    if (std::abs(red.lambda_min_M) < kSingularMThreshold) {
        std::ostringstream os;
        os << "Q^* S Q is numerically singular (|lambda_min| = " << std::abs(red.lambda_min_M) << ")";
        throw ReductionError(os.str());
    }

    const Matrix hq = apply_H(h, q, fc);
    red.W = linalg::hermitian_part(matmul(q, apply_S(hq), Op::conj_trans, Op::none, fc));
    red.L = red.W;
    if (!linalg::cholesky_lower(red.L, fc)) throw ReductionError("Q^* S H Q is not positive definite");

    // G = L^{-1} M L^{-*}.
    red.G = red.M;
    linalg::trsm_lower(linalg::Side::right, Op::conj_trans, red.L, red.G.view(), fc);
    linalg::trsm_lower(linalg::Side::left, Op::none, red.L, red.G.view(), fc);
    red.G = linalg::hermitian_part(red.G);
    auto eig = linalg::heev(red.G, true, fc);

    std::vector<double> values(eig.values.size());
    for (size_t i = 0; i < values.size(); ++i) values[i] = 1.0 / eig.values[i];
    Matrix w = std::move(eig.vectors);
    linalg::trsm_lower(linalg::Side::left, Op::conj_trans, red.L, w.view(), fc);
    finish_ritz(out.ritz, q, hq, w, std::move(values), {}, fc);
    return out;
}

RrResult build_backup_rq(const BseHamiltonian& h, const Matrix& q, FlopCounter* fc) {
    if (q.rows() != h.dim()) throw DimensionError("build_backup_rq: Q has the wrong row count");
    const size_t k = q.cols();
    RrResult out;
    ReducedProblem& red = out.reduced;
    red.variant = RrVariant::nonhermitian_backup;

    const Matrix hq = apply_H(h, q, fc);
    red.W = matmul(q, hq, Op::conj_trans, Op::none, fc);
    red.M = m_from_lower_half(q, fc);
    red.lambda_min_M = min_magnitude(linalg::heev(red.M, false, fc).values);

    // Oblique projection with the diagonal dual-basis choice:
    // G = D^{-1} [Q^* S H Q - (Q^* S Q - D) Q^* H Q], D = diag(Q^* S Q) with zeros set to 1.
    red.d.resize(k);
    Matrix e = red.M;
    for (size_t i = 0; i < k; ++i) {
        double di = red.M(i, i).real();
        if (std::abs(di) < kSingularMThreshold) di = 1.0;
        red.d[i] = 1.0 / di;
        e(i, i) -= di;
    }
    red.G = matmul(q, apply_S(hq), Op::conj_trans, Op::none, fc);
    gemm(Op::none, Op::none, -1.0, e, red.W, 1.0, red.G.view(), fc);
    for (size_t j = 0; j < k; ++j)
        for (size_t i = 0; i < k; ++i) red.G(i, j) *= red.d[i];

    auto eig = linalg::geev(red.G, false, fc);
    std::vector<double> values(k), imag(k);
    for (size_t i = 0; i < k; ++i) {
        values[i] = eig.values[i].real();
        imag[i] = eig.values[i].imag();
    }
    finish_ritz(out.ritz, q, hq, eig.right, std::move(values), std::move(imag), fc);
    return out;
}

void residuals(const BseHamiltonian& h, RitzSet& ritz, FlopCounter* fc) {
    const size_t k = ritz.vectors.cols();
    if (ritz.h_vectors.rows() != ritz.vectors.rows() || ritz.h_vectors.cols() != k)
        ritz.h_vectors = apply_H(h, ritz.vectors, fc);
    ritz.residual_norms.resize(k);
    ritz.converged.resize(k, false);
    Matrix r = ritz.h_vectors;
    for (size_t j = 0; j < k; ++j) {
        auto rc = r.col(j);
        auto vc = ritz.vectors.col(j);
        for (size_t i = 0; i < rc.size(); ++i) rc[i] -= ritz.values[j] * vc[i];
        ritz.residual_norms[j] = norm2(rc);
    }
    count_flops(fc, 8.0 * static_cast<double>(h.dim()) * k);
}

LockResult lock_converged(RitzSet& ritz, double threshold, size_t max_new) {
    const size_t k = ritz.values.size();
    ritz.converged.assign(k, false);
    for (size_t i = 0; i < k; ++i) ritz.converged[i] = ritz.residual_norms[i] <= threshold;
    LockResult lr;
    size_t i = 0;
    while (i < k && i < max_new && ritz.converged[i]) lr.locked.push_back(i++);
    for (; i < k; ++i) lr.active.push_back(i);
    return lr;
}

double shifted_norm(const BseHamiltonian& h, double lambda) {
    Matrix t = h.materialize_SH();
    const size_t n = h.dim(), m = h.half_dim();
    for (size_t i = 0; i < n; ++i) t(i, i) -= (i < m ? lambda : -lambda);
    const auto ev = linalg::heev(t, false).values;
    return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

ConvergenceDiagnostics diagnostics(const BseHamiltonian& h, const Matrix& q, const RitzSet& ritz,
                                   const SpectralScale& scale, bool exact_shift_norm) {
    ConvergenceDiagnostics d;
    const double lmin = min_magnitude(linalg::heev(s_gram(q), false).values);
    const size_t k = ritz.values.size();
    d.kappa.resize(k);
    d.spurious.assign(k, false);
    if (std::abs(lmin) < kSingularMThreshold) {
        d.singular = true;
        d.lambda_min_M = 0.0;
        d.delta_tilde_bound = d.ritz_interval = std::numeric_limits<double>::infinity();
        std::fill(d.kappa.begin(), d.kappa.end(), std::numeric_limits<double>::infinity());
        return d;
    }
    d.lambda_min_M = lmin;
    const double inv = 1.0 / std::abs(lmin);
    d.delta_tilde_bound = std::sqrt(scale.cond_H) * inv;
    d.ritz_interval = scale.rho_SH * inv;
    for (size_t i = 0; i < k; ++i) {
        const double lam = ritz.values[i];
        const double shift = exact_shift_norm ? shifted_norm(h, lam) : scale.rho_SH + std::abs(lam);
        d.kappa[i] = std::sqrt(scale.cond_H) * shift * inv;
        d.spurious[i] = std::abs(lam) > d.ritz_interval;
    }
    return d;
}

Matrix dual_basis_explicit(const Matrix& q, DualChoice choice) {
    const size_t k = q.cols();
    const Matrix qsq = s_gram(q);
    Matrix mm(k, k);
    if (choice == DualChoice::full) {
        const double lmin = min_magnitude(linalg::heev(qsq, false).values);
        if (std::abs(lmin) < kSingularMThreshold) throw NumericalError("dual_basis_explicit: Q^* S Q is singular");
        mm = qsq;
    } else {
        for (size_t i = 0; i < k; ++i) {
            const double di = qsq(i, i).real();
            mm(i, i) = std::abs(di) < kSingularMThreshold ? 1.0 : di;
        }
    }
    // X = S Q - Q (Q^* S Q - M), then Q_L = X M^{-1}.
    Matrix x = apply_S(q);
    gemm(Op::none, Op::none, -1.0, q, qsq - mm, 1.0, x.view());
    if (choice == DualChoice::diagonal) {
        for (size_t j = 0; j < k; ++j) scale(x.col(j), 1.0 / mm(j, j).real());
        return x;
    }
    auto eig = linalg::heev(mm);
    Matrix vinv = eig.vectors;
    for (size_t j = 0; j < k; ++j) scale(vinv.col(j), 1.0 / eig.values[j]);
    const Matrix minv = matmul(vinv, eig.vectors, Op::none, Op::conj_trans);
    return matmul(x, minv);
}

} // namespace pheig
