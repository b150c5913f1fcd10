// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#include "pheig/hamiltonian.hpp"

#include <cmath>
#include <sstream>

#include "pheig/error.hpp"
#include "pheig/linalg.hpp"
#include "pheig/log.hpp"

namespace pheig {

namespace {

constexpr double kSymmetryTol = 1e-12;

void require_even_rows(const Matrix& x, size_t n, const char* who) {
    if (x.rows() != n || n % 2 != 0)
        throw DimensionError(std::string(who) + ": expected " + std::to_string(n) + " rows, got " +
                             std::to_string(x.rows()));
}

Matrix symmetrized(const Matrix& b) {
    Matrix s(b.rows(), b.cols());
    for (size_t j = 0; j < b.cols(); ++j)
        for (size_t i = 0; i < b.rows(); ++i) s(i, j) = 0.5 * (b(i, j) + b(j, i));
    return s;
}

} // namespace

const char* to_string(Definiteness d) {
    switch (d) {
    case Definiteness::definite: return "definite";
    case Definiteness::indefinite: return "indefinite";
    default: return "unknown";
    }
}

BseHamiltonian::BseHamiltonian(Matrix a, Matrix b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.rows() != a_.cols() || b_.rows() != b_.cols() || a_.rows() != b_.rows())
        throw DimensionError("A and B must be square of equal size");
    if (a_.rows() == 0) throw DimensionError("half-dimension must be at least 1");
    if (!a_.all_finite() || !b_.all_finite()) throw ValidationError("non-finite entry in A or B");

    const double da = linalg::hermitian_defect(a_);
    const double db = linalg::symmetric_defect(b_);
    const double sa = kSymmetryTol * a_.max_abs();
    const double sb = kSymmetryTol * b_.max_abs();
    if (da > sa) {
        std::ostringstream os;
        os << "A is not hermitian: defect " << da << " exceeds " << sa;
        throw ValidationError(os.str());
    }
    if (db > sb) {
        std::ostringstream os;
        os << "B is not symmetric: defect " << db << " exceeds " << sb;
        throw ValidationError(os.str());
    }
    if (da > 0.0) {
        std::ostringstream os;
        os << "symmetrizing A (hermitian defect " << da << ")";
        log_warning(os.str());
    }
    if (db > 0.0) {
        std::ostringstream os;
        os << "symmetrizing B (symmetric defect " << db << ")";
        log_warning(os.str());
    }
    a_ = linalg::hermitian_part(a_);
    b_ = symmetrized(b_);
}

BseHamiltonian::BseHamiltonian(const BseHamiltonian& o) : a_(o.a_), b_(o.b_), flag_(o.definiteness()) {}

BseHamiltonian& BseHamiltonian::operator=(const BseHamiltonian& o) {
    if (this != &o) {
        a_ = o.a_;
        b_ = o.b_;
        flag_.store(o.definiteness());
    }
    return *this;
}

Matrix BseHamiltonian::materialize() const {
    const size_t m = half_dim();
    Matrix h(2 * m, 2 * m);
    for (size_t j = 0; j < m; ++j)
        for (size_t i = 0; i < m; ++i) {
            h(i, j) = a_(i, j);
            h(i, j + m) = b_(i, j);
            h(i + m, j) = -std::conj(b_(i, j));
            h(i + m, j + m) = -std::conj(a_(i, j));
        }
    return h;
}

Matrix BseHamiltonian::materialize_SH() const {
    const size_t m = half_dim();
    Matrix h(2 * m, 2 * m);
    for (size_t j = 0; j < m; ++j)
        for (size_t i = 0; i < m; ++i) {
            h(i, j) = a_(i, j);
            h(i, j + m) = b_(i, j);
            h(i + m, j) = std::conj(b_(i, j));
            h(i + m, j + m) = std::conj(a_(i, j));
        }
    return h;
}

double BseHamiltonian::entry_scale() const { return std::max(a_.max_abs(), b_.max_abs()); }

void apply_S_inplace(MatrixView x) {
    if (x.rows % 2 != 0) throw DimensionError("apply_S: odd row count");
    const size_t m = x.rows / 2;
    for (size_t j = 0; j < x.cols; ++j)
        for (size_t i = m; i < x.rows; ++i) x(i, j) = -x(i, j);
}

Matrix apply_S(const Matrix& x) {
    Matrix y(x);
    apply_S_inplace(y.view());
    return y;
}

Matrix apply_K(const Matrix& x) {
    if (x.rows() % 2 != 0) throw DimensionError("apply_K: odd row count");
    const size_t m = x.rows() / 2;
    Matrix y(x.rows(), x.cols());
    y.set_block(0, 0, x.block_view(m, 0, m, x.cols()));
    y.set_block(m, 0, x.block_view(0, 0, m, x.cols()));
    return y;
}

Matrix apply_J(const Matrix& x) {
    if (x.rows() % 2 != 0) throw DimensionError("apply_J: odd row count");
    const size_t m = x.rows() / 2;
    Matrix y(x.rows(), x.cols());
    for (size_t j = 0; j < x.cols(); ++j)
        for (size_t i = 0; i < m; ++i) {
            y(i, j) = x(i + m, j);
            y(i + m, j) = -x(i, j);
        }
    return y;
}

Matrix apply_H(const BseHamiltonian& h, const Matrix& x, FlopCounter* fc) {
    const size_t m = h.half_dim();
    require_even_rows(x, 2 * m, "apply_H");
    const size_t k = x.cols();
    Matrix y(2 * m, k);
    if (k == 0) return y;
    // Lower half: -(conj(B) X1 + conj(A) X2) = -conj(B conj(X1) + A conj(X2)).
    const Matrix xc = x.conj();
    const ConstMatrixView x1 = x.block_view(0, 0, m, k), x2 = x.block_view(m, 0, m, k);
    const ConstMatrixView x1c = xc.block_view(0, 0, m, k), x2c = xc.block_view(m, 0, m, k);
    MatrixView up = y.block_view(0, 0, m, k), lo = y.block_view(m, 0, m, k);
    gemm(Op::none, Op::none, 1.0, h.A(), x1, 0.0, up, fc);
    gemm(Op::none, Op::none, 1.0, h.B(), x2, 1.0, up, fc);
    gemm(Op::none, Op::none, 1.0, h.B(), x1c, 0.0, lo, fc);
    gemm(Op::none, Op::none, 1.0, h.A(), x2c, 1.0, lo, fc);
    for (size_t j = 0; j < k; ++j)
        for (size_t i = 0; i < m; ++i) lo(i, j) = -std::conj(lo(i, j));
    return y;
}

Matrix apply_H_via_adjoint(const BseHamiltonian& h, const Matrix& x, FlopCounter* fc) {
    const size_t m = h.half_dim();
    require_even_rows(x, 2 * m, "apply_H_via_adjoint");
    const size_t k = x.cols();
    Matrix y(2 * m, k);
    if (k == 0) return y;
    // H^* = [[A^*, -B^T], [B^*, -A^T]]. With Z = S X: H^* Z has upper A^* X1 + B^T X2 and
    // lower B^* X1 + A^T X2; the outer S negates the lower half.
    Matrix z = apply_S(x);
    const ConstMatrixView z1 = z.block_view(0, 0, m, k), z2 = z.block_view(m, 0, m, k);
    MatrixView up = y.block_view(0, 0, m, k), lo = y.block_view(m, 0, m, k);
    gemm(Op::conj_trans, Op::none, 1.0, h.A(), z1, 0.0, up, fc);
    gemm(Op::trans, Op::none, -1.0, h.B(), z2, 1.0, up, fc);
    gemm(Op::conj_trans, Op::none, 1.0, h.B(), z1, 0.0, lo, fc);
    gemm(Op::trans, Op::none, -1.0, h.A(), z2, 1.0, lo, fc);
    apply_S_inplace(y.view());
    return y;
}

StructureReport validate_pseudo_hermitian(const Matrix& h) {
    if (h.rows() != h.cols()) throw DimensionError("validate_pseudo_hermitian: matrix must be square");
    if (h.rows() % 2 != 0) throw DimensionError("validate_pseudo_hermitian: odd dimension");
    const size_t n = h.rows(), m = n / 2;
    StructureReport r;
    // (S H)_ij = s_i h_ij and (H^* S)_ij = conj(h_ji) s_j.
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i) {
            const double si = i < m ? 1.0 : -1.0, sj = j < m ? 1.0 : -1.0;
            r.defect = std::max(r.defect, std::abs(si * h(i, j) - std::conj(h(j, i)) * sj));
        }
    // BSE block form: H21 = -conj(H12), H22 = -conj(H11).
    for (size_t j = 0; j < m; ++j)
        for (size_t i = 0; i < m; ++i) {
            r.defect = std::max(r.defect, std::abs(h(m + i, j) + std::conj(h(i, m + j))));
            r.defect = std::max(r.defect, std::abs(h(m + i, m + j) + std::conj(h(i, j))));
        }
    r.threshold = kSymmetryTol * h.max_abs();
    r.ok = r.defect <= r.threshold;
    return r;
}

Definiteness is_definite(const BseHamiltonian& h) {
    const Definiteness cached = h.definiteness();
    if (cached != Definiteness::unknown) return cached;
    Matrix sh = h.materialize_SH();
    const Definiteness d = linalg::cholesky_lower(sh) ? Definiteness::definite : Definiteness::indefinite;
    h.cache_definiteness(d);
    return d;
}

} // namespace pheig
