// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#include "pheig/hamgen.hpp"

#include <cmath>
#include <sstream>

#include "pheig/error.hpp"
#include "pheig/linalg.hpp"
#include "pheig/rng.hpp"

namespace pheig {

void GeneratorSpec::validate() const {
    if (m == 0) throw ValidationError("m must be at least 1");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be positive and finite");
    if (!(coupling_ratio >= 0.0) || !std::isfinite(coupling_ratio))
        throw ValidationError("coupling ratio must be non-negative and finite");
    if (mode == GeneratorMode::definite && coupling_ratio >= 1.0)
        throw ValidationError("definite mode requires coupling ratio < 1");
}

BseHamiltonian generate(const GeneratorSpec& spec) {
    spec.validate();
    const size_t m = spec.m;

    Matrix c = CounterRng(spec.seed, RngStream::generator_c).complex_gaussian_matrix(m, m);
    c *= 1.0 / std::sqrt(static_cast<double>(m));
    Matrix a = matmul(c, c, Op::none, Op::conj_trans);
    for (size_t i = 0; i < m; ++i) a(i, i) += spec.alpha;
    a = linalg::hermitian_part(a);

    Matrix b(m, m);
    if (spec.coupling_ratio > 0.0) {
        const Matrix d = CounterRng(spec.seed, RngStream::generator_d).complex_gaussian_matrix(m, m);
        for (size_t j = 0; j < m; ++j)
            for (size_t i = 0; i < m; ++i) b(i, j) = 0.5 * (d(i, j) + d(j, i));
        const double lam_min_a = linalg::heev(a, false).values.front();
        const double smax = linalg::singular_values(b).front();
        if (smax > 0.0) b *= spec.coupling_ratio * lam_min_a / smax;
    }

    BseHamiltonian h(std::move(a), std::move(b));
    const Definiteness d = is_definite(h);
    if (spec.mode == GeneratorMode::definite && d != Definiteness::definite) {
        std::ostringstream os;
        os << "internal error: definite-mode generation produced an indefinite SH (m=" << m << ", seed=" << spec.seed
           << ")";
        throw NumericalError(os.str());
    }
    return h;
}

FieldOfValuesBounds field_of_values_bounds(const BseHamiltonian& h) {
    const auto ev = linalg::heev(h.A(), false).values;
    FieldOfValuesBounds f;
    f.re_bound = std::max(std::abs(ev.front()), std::abs(ev.back()));
    f.im_bound = linalg::singular_values(h.B()).front();
    return f;
}

double eigen_residual(const BseHamiltonian& h, cplx lambda, const Matrix& x) {
    Matrix r = apply_H(h, x);
    axpy(-lambda, x, r.view());
    return r.frobenius();
}

namespace {

double adjoint_residual(const BseHamiltonian& h, cplx lambda, const Matrix& u) {
    // H^* u = S H S u.
    Matrix r = apply_S(apply_H(h, apply_S(u)));
    axpy(-std::conj(lambda), u, r.view());
    return r.frobenius();
}

} // namespace

QuadrupletPartners quadruplet_partners(const BseHamiltonian& h, cplx lambda, const Matrix& u, const Matrix& v,
                                       double tol_in) {
    if (u.rows() != h.dim() || v.rows() != h.dim() || u.cols() != 1 || v.cols() != 1)
        throw DimensionError("quadruplet_partners: u and v must be n x 1");
    const double rv = eigen_residual(h, lambda, v);
    const double ru = adjoint_residual(h, lambda, u);
    if (rv > tol_in || ru > tol_in) {
        std::ostringstream os;
        os << "input is not an eigenpair to " << tol_in << " (right residual " << rv << ", left residual " << ru
           << ")";
        throw ValidationError(os.str());
    }
    QuadrupletPartners q;
    q.conj_pair.lambda = std::conj(lambda);
    q.conj_pair.vector = apply_S(u);
    q.neg_pair.lambda = -lambda;
    q.neg_pair.vector = apply_J(u.conj());
    q.neg_conj_pair.lambda = -std::conj(lambda);
    q.neg_conj_pair.vector = apply_K(v.conj());
    for (EigenPair* p : {&q.conj_pair, &q.neg_pair, &q.neg_conj_pair})
        p->residual = eigen_residual(h, p->lambda, p->vector);
    return q;
}

} // namespace pheig
