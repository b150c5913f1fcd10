// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#include "pheig/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pheig/error.hpp"

namespace pheig {

FullEigendecomposition direct_solve_definite(const BseHamiltonian& h, bool want_vectors) {
    const size_t n = h.dim();
    Matrix l = h.materialize_SH();
    if (!linalg::cholesky_lower(l)) {
        h.cache_definiteness(Definiteness::indefinite);
        throw IndefiniteError("SH is not positive definite; the direct solver needs a definite H");
    }
    h.cache_definiteness(Definiteness::definite);

    Matrix t = matmul(l, apply_S(l), Op::conj_trans);
    t = linalg::hermitian_part(t);
    auto eig = linalg::heev(t, want_vectors);

    FullEigendecomposition out;
    out.lambdas = eig.values;
    if (!want_vectors) return out;

    Matrix v = std::move(eig.vectors);
    linalg::trsm_lower(linalg::Side::left, Op::conj_trans, l, v.view());
    normalize_columns(v);
    fix_column_phases(v);
    out.U = apply_S(v);
    out.D.resize(n);
    for (size_t j = 0; j < n; ++j) out.D[j] = dot(v.col(j), out.U.col(j)).real();
    out.V = std::move(v);
    return out;
}

ShExtremes sh_extremes(const BseHamiltonian& h) {
    const auto ev = linalg::heev(h.materialize_SH(), false).values;
    return {ev.front(), ev.back()};
}

double cond_of_H(const BseHamiltonian& h) {
    const ShExtremes e = sh_extremes(h);
    if (!(e.min > 0.0)) throw IndefiniteError("cond_of_H needs a definite H");
    return e.max / e.min;
}

double norm2_H(const BseHamiltonian& h) {
    const ShExtremes e = sh_extremes(h);
    return std::max(std::abs(e.min), std::abs(e.max));
}

linalg::HermitianEig dense_hermitian_eig(const Matrix& g) {
    if (g.rows() != g.cols()) throw DimensionError("dense_hermitian_eig: matrix must be square");
    const double defect = linalg::hermitian_defect(g);
    const double limit = 1e-10 * g.max_abs();
    if (defect > limit) {
        std::ostringstream os;
        os << "dense_hermitian_eig: input not hermitian (defect " << defect << " > " << limit << ")";
        throw ValidationError(os.str());
    }
    return linalg::heev(linalg::hermitian_part(g));
}

DenseGeneralEig dense_general_eig(const Matrix& g, bool want_left) {
    if (g.rows() != g.cols()) throw DimensionError("dense_general_eig: matrix must be square");
    if (g.rows() == 0) throw DimensionError("dense_general_eig: empty matrix");
    auto eig = linalg::geev(g, want_left);
    std::vector<double> keys(eig.values.size());
    for (size_t i = 0; i < keys.size(); ++i) keys[i] = eig.values[i].real();
    const auto perm = stable_argsort(keys);
    DenseGeneralEig out;
    for (size_t i : perm) out.values.push_back(eig.values[i]);
    out.vectors = permute_columns(eig.right, perm);
    if (want_left) out.left = permute_columns(eig.left, perm);
    return out;
}

GalerkinRitz galerkin_rayleigh_ritz(const BseHamiltonian& h, const Matrix& q, FlopCounter* fc) {
    if (h.B().max_abs() != 0.0) throw ValidationError("galerkin_rayleigh_ritz requires B = 0");
    const Matrix hq = apply_H(h, q, fc);
    const Matrix g = linalg::hermitian_part(matmul(q, hq, Op::conj_trans, Op::none, fc));
    auto eig = linalg::heev(g, true, fc);
    GalerkinRitz out;
    out.values = eig.values;
    out.vectors = matmul(q, eig.vectors, Op::none, Op::none, fc);
    normalize_columns(out.vectors);
    return out;
}

} // namespace pheig
