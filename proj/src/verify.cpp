// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#include "pheig/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pheig/error.hpp"
#include "pheig/hamgen.hpp"
#include "pheig/io.hpp"
#include "pheig/linalg.hpp"
#include "pheig/oracle.hpp"
#include "pheig/ortho.hpp"
#include "pheig/rayleigh_ritz.hpp"
#include "pheig/rng.hpp"

namespace pheig::verify {

namespace {

constexpr double kTheoremTol = 1e-10;
constexpr double kDualNormTol = 1e-8;
constexpr double kResidualFloor = 1e-14;

CheckResult make(std::string name, double measured, double threshold, std::string detail = {}) {
    CheckResult c;
    c.name = std::move(name);
    c.measured = measured;
    c.threshold = threshold;
    c.passed = measured <= threshold;
    c.detail = std::move(detail);
    return c;
}

CheckResult skipped(std::string name, std::string why) {
    CheckResult c;
    c.name = std::move(name);
    c.passed = true;
    c.skipped = true;
    c.detail = std::move(why);
    return c;
}

double left_residual(const BseHamiltonian& h, cplx lambda, const Matrix& u) {
    Matrix r = apply_S(apply_H(h, apply_S(u)));
    axpy(-std::conj(lambda), u, r.view());
    return r.frobenius();
}

double column_norm2(const Matrix& m) { return m.cols() ? linalg::singular_values(m).front() : 0.0; }

Matrix column(const Matrix& m, size_t j) { return m.cols_range(j, 1); }

} // namespace

bool Report::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string Report::format() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.skipped ? "SKIP" : c.passed ? "PASS" : "FAIL") << "  " << c.name;
        if (!c.skipped) os << "  measured=" << io::fmt17(c.measured) << "  threshold=" << io::fmt17(c.threshold);
        if (!c.detail.empty()) os << "  (" << c.detail << ")";
        os << "\n";
    }
    size_t failed = 0;
    for (const auto& c : checks) failed += c.passed ? 0 : 1;
    os << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << "\n";
    return os.str();
}

Matrix random_orthonormal(size_t n, size_t k, std::uint64_t seed) {
    return cholqr_with_fallback(CounterRng(seed, RngStream::test_aux).complex_gaussian_matrix(n, k)).q;
}

Matrix singular_q1_block(size_t m, size_t k, std::uint64_t seed) {
    if (k > 2 * m - 1) throw DimensionError("singular_q1_block: k too large");
    Matrix x = CounterRng(seed, RngStream::test_aux).complex_gaussian_matrix(2 * m, k);
    for (size_t j = 0; j < k; ++j) x(0, j) = x(m, j) = 0.0;
    for (size_t i = 0; i < 2 * m; ++i) x(i, 0) = 0.0;
    x(0, 0) = x(m, 0) = 1.0 / std::sqrt(2.0);
    if (k == 1) return x;
    // CholQR keeps the zero rows exactly zero, so column 0 stays S-orthogonal to the rest.
    const Matrix rest = cholqr_with_fallback(x.cols_range(1, k - 1)).q;
    x.set_block(0, 1, rest);
    return x;
}

CheckResult check_structure(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows() || a.rows() == 0)
        return make("structure: S H = H^* S", std::numeric_limits<double>::infinity(), 0.0, "A and B shapes differ");
    const size_t m = a.rows();
    Matrix h(2 * m, 2 * m);
    for (size_t j = 0; j < m; ++j)
        for (size_t i = 0; i < m; ++i) {
            h(i, j) = a(i, j);
            h(i, j + m) = b(i, j);
            h(i + m, j) = -std::conj(b(i, j));
            h(i + m, j + m) = -std::conj(a(i, j));
        }
    const StructureReport r = validate_pseudo_hermitian(h);
    std::ostringstream os;
    os << "A hermitian defect " << linalg::hermitian_defect(a) << ", B symmetric defect " << linalg::symmetric_defect(b);
    return make("structure: S H = H^* S", r.defect, r.threshold, os.str());
}

CheckResult check_definiteness(const BseHamiltonian& h) {
    const ShExtremes e = sh_extremes(h);
    CheckResult c = skipped("definiteness of SH", std::string(to_string(is_definite(h))));
    c.skipped = false;
    c.measured = e.min;
    c.detail += ", informational";
    return c;
}

CheckResult check_quadruplets(const BseHamiltonian& h, const Options& opt) {
    const char* name = "quadruplet partners: residual <= 10 x input";
    cplx lambda;
    Matrix u, v;
    double hnorm;
    if (is_definite(h) == Definiteness::definite) {
        const auto eig = direct_solve_definite(h);
        lambda = eig.lambdas.front();
        v = column(eig.V, 0);
        u = column(eig.U, 0);
        hnorm = norm2_H(h);
    } else {
        if (h.dim() > opt.general_eig_cap) return skipped(name, "indefinite and n above the dense cap");
        const Matrix hd = h.materialize();
        const auto eig = dense_general_eig(hd, true);
        size_t best = 0;
        for (size_t i = 0; i < eig.values.size(); ++i)
            if (std::abs(eig.values[i].imag()) > std::abs(eig.values[best].imag())) best = i;
        lambda = eig.values[best];
        v = column(eig.vectors, best);
        u = column(eig.left, best);
        normalize_columns(u);
        hnorm = linalg::singular_values(hd).front();
    }
    const double r_in = std::max(eigen_residual(h, lambda, v), left_residual(h, lambda, u));
    const double tol_in = std::max(r_in, kResidualFloor * hnorm);
    const auto q = quadruplet_partners(h, lambda, u, v, tol_in);
    const double worst = std::max({q.conj_pair.residual, q.neg_pair.residual, q.neg_conj_pair.residual});
    std::ostringstream os;
    os << "lambda = " << lambda.real() << (lambda.imag() < 0 ? " - " : " + ") << std::abs(lambda.imag())
       << "i, input residual " << r_in;
    return make(name, worst, 10.0 * tol_in, os.str());
}

CheckResult check_field_of_values(const BseHamiltonian& h, const Options& opt) {
    const char* name = "field of values: |Re| <= rho(A), |Im| <= sigma_max(B)";
    const FieldOfValuesBounds f = field_of_values_bounds(h);
    std::vector<cplx> lambdas;
    double hnorm;
    if (is_definite(h) == Definiteness::definite) {
        for (double x : direct_solve_definite(h, false).lambdas) lambdas.emplace_back(x, 0.0);
        hnorm = norm2_H(h);
    } else {
        if (h.dim() > opt.general_eig_cap) return skipped(name, "indefinite and n above the dense cap");
        const Matrix hd = h.materialize();
        lambdas = dense_general_eig(hd).values;
        hnorm = linalg::singular_values(hd).front();
    }
    double excess = -std::numeric_limits<double>::infinity();
    for (const auto& z : lambdas)
        excess = std::max({excess, std::abs(z.real()) - f.re_bound, std::abs(z.imag()) - f.im_bound});
    std::ostringstream os;
    os << "box " << f.re_bound << " x " << f.im_bound << ", " << lambdas.size() << " eigenvalues";
    return make(name, excess, kTheoremTol * hnorm, os.str());
}

CheckResult check_cond_identity(const BseHamiltonian& h) {
    const double c_sh = cond_of_H(h);
    const auto s = linalg::singular_values(h.materialize());
    const double c_h = s.front() / s.back();
    std::ostringstream os;
    os << "cond(SH) = " << c_sh << ", cond(H) = " << c_h;
    return make("cond(SH) = cond(H), relative", std::abs(c_sh - c_h) / c_sh, kTheoremTol, os.str());
}

CheckResult check_spectrum_symmetry(const BseHamiltonian& h) {
    const auto l = direct_solve_definite(h, false).lambdas;
    double worst = 0.0;
    for (size_t i = 0; i < l.size(); ++i) worst = std::max(worst, std::abs(l[i] + l[l.size() - 1 - i]));
    return make("spectrum antisymmetric: lambda_i = -lambda_{n+1-i}", worst, kTheoremTol * norm2_H(h));
}

CheckResult check_left_vectors(const BseHamiltonian& h) {
    const auto eig = direct_solve_definite(h);
    double worst = 0.0;
    for (size_t j = 0; j < eig.lambdas.size(); ++j)
        worst = std::max(worst, left_residual(h, eig.lambdas[j], apply_S(column(eig.V, j))));
    return make("left pairs (lambda, S v): residual", worst, kTheoremTol * norm2_H(h));
}

CheckResult check_biorthogonality(const BseHamiltonian& h) {
    const auto eig = direct_solve_definite(h);
    Matrix d = matmul(eig.V, eig.U, Op::conj_trans);
    double off = 0.0, dmin = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < d.cols(); ++j)
        for (size_t i = 0; i < d.rows(); ++i) {
            if (i == j) dmin = std::min(dmin, std::abs(d(i, i)));
            else off = std::max(off, std::abs(d(i, j)));
        }
    std::ostringstream os;
    os << "min |d_ii| = " << dmin;
    return make("bi-orthogonality: offdiag(V^* S V)", off, kTheoremTol, os.str());
}

CheckResult check_qsq_law(const Matrix& q) {
    const size_t m = q.rows() / 2;
    auto ev = linalg::heev(s_gram(q), false).values;
    auto s = linalg::singular_values(q.block(0, 0, m, q.cols()));
    std::vector<double> pred(q.cols(), -1.0);
    for (size_t i = 0; i < s.size(); ++i) pred[i] = 2.0 * s[i] * s[i] - 1.0;
    std::sort(pred.begin(), pred.end());
    double worst = 0.0;
    for (size_t i = 0; i < ev.size(); ++i) worst = std::max(worst, std::abs(ev[i] - pred[i]));
    return make("eig(Q^* S Q) = 2 sigma(Q1)^2 - 1", worst, kTheoremTol);
}

CheckResult check_singular_value_complement(const Matrix& q) {
    const size_t m = q.rows() / 2, k = q.cols();
    auto s1 = linalg::singular_values(q.block(0, 0, m, k));
    auto s2 = linalg::singular_values(q.block(m, 0, m, k));
    s1.resize(k, 0.0);
    s2.resize(k, 0.0);
    std::vector<double> a, b;
    for (double x : s1) a.push_back(1.0 - x * x);
    for (double x : s2) b.push_back(x * x);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double worst = 0.0;
    for (size_t i = 0; i < k; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return make("sigma(Q2)^2 = 1 - sigma(Q1)^2", worst, kTheoremTol);
}

CheckResult check_interlacing(const BseHamiltonian& h, const Matrix& q) {
    const auto em = linalg::heev(s_gram(q), false).values;
    const Matrix sh = h.materialize_SH();
    const auto esh = linalg::heev(sh, false).values;
    const auto ew = linalg::heev(linalg::hermitian_part(matmul(q, matmul(sh, q), Op::conj_trans)), false).values;
    const double scale = std::max(std::abs(esh.front()), std::abs(esh.back()));
    double excess = std::max(std::abs(em.front()), std::abs(em.back())) - 1.0;
    excess = std::max({excess, (esh.front() - ew.front()) / scale, (ew.back() - esh.back()) / scale});
    return make("interlacing: eig(Q^* S Q) in [-1,1], eig(Q^* SH Q) in [min, max] eig(SH)", excess, kTheoremTol);
}

CheckResult check_dual_basis(const Matrix& q) {
    double worst = 0.0;
    for (auto choice : {DualChoice::full, DualChoice::diagonal}) {
        const Matrix ql = dual_basis_explicit(q, choice);
        Matrix g = matmul(ql, q, Op::conj_trans);
        for (size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
        worst = std::max(worst, g.max_abs());
    }
    return make("dual basis: Q_L^* Q = I, full and diagonal M", worst, kTheoremTol);
}

CheckResult check_dual_norm(const Matrix& q) {
    const Matrix ql = dual_basis_explicit(q, DualChoice::full);
    double lmin = std::numeric_limits<double>::infinity();
    for (double x : linalg::heev(s_gram(q), false).values) lmin = std::min(lmin, std::abs(x));
    const double predicted = 1.0 / lmin;
    const double actual = column_norm2(ql);
    std::ostringstream os;
    os << "||Q_L||_2 = " << actual << ", 1/|lambda_min| = " << predicted;
    return make("||Q_L||_2 = 1/|lambda_min(Q^* S Q)|, relative", std::abs(actual - predicted) / predicted, kDualNormTol,
                os.str());
}

CheckResult check_ritz_interval(const BseHamiltonian& h, const Matrix& q) {
    const char* name = "Ritz values inside +-rho(SH)/|lambda_min(M)|";
    if (is_definite(h) != Definiteness::definite) return skipped(name, "needs a definite H");
    RrResult rr;
    try {
        rr = build_hermitian_rq(h, q);
    } catch (const ReductionError& e) {
        return skipped(name, std::string("reduction refused: ") + e.what());
    }
    const ShExtremes e = sh_extremes(h);
    const auto d = diagnostics(h, q, rr.ritz, {e.max / e.min, e.max});
    double excess = -std::numeric_limits<double>::infinity();
    for (double x : rr.ritz.values) excess = std::max(excess, std::abs(x) / d.ritz_interval - 1.0);
    std::ostringstream os;
    os << "interval half-width " << d.ritz_interval;
    return make(name, excess, kTheoremTol, os.str());
}

CheckResult check_singular_detection(const BseHamiltonian& h, const Options& opt) {
    const size_t m = h.half_dim();
    const size_t k = std::min(opt.k, 2 * m - 1);
    const Matrix q = singular_q1_block(m, k, opt.seed);
    const auto d = diagnostics(h, q, RitzSet{}, {1.0, 1.0});
    bool refused = false;
    try {
        (void)build_hermitian_rq(h, q);
    } catch (const ReductionError&) {
        refused = true;
    }
    bool backup_finite = true;
    if (is_definite(h) == Definiteness::definite) {
        const auto rr = build_backup_rq(h, q);
        for (double x : rr.ritz.values) backup_finite = backup_finite && std::isfinite(x);
    }
    CheckResult c;
    c.name = "singular Q1 construction: lambda_min(M) = 0 detected";
    double lmin = std::numeric_limits<double>::infinity();
    for (double x : linalg::heev(s_gram(q), false).values) lmin = std::min(lmin, std::abs(x));
    c.measured = lmin;
    c.threshold = kSingularMThreshold;
    c.passed = d.singular && refused && backup_finite;
    c.detail = std::string("flagged ") + (d.singular ? "yes" : "no") + ", hermitian refused " + (refused ? "yes" : "no") +
               ", backup finite " + (backup_finite ? "yes" : "no");
    return c;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ValidationError("loglog_slope needs two or more points");
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= x.size();
    my /= y.size();
    double sxy = 0.0, sxx = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

SlopeSweep quadratic_sweep(const BseHamiltonian& h, const std::vector<double>& eps, size_t k, std::uint64_t seed) {
    const size_t n = h.dim();
    k = std::min(k, h.half_dim());
    const auto eig = direct_solve_definite(h);
    const double lambda1 = eig.lambdas.front();
    const ShExtremes ext = sh_extremes(h);
    const double cond = ext.max / ext.min;
    const double shift = shifted_norm(h, lambda1);

    Matrix e = CounterRng(seed, RngStream::test_aux).complex_gaussian_matrix(n, 1);
    normalize_columns(e);

    SlopeSweep s;
    s.eps = eps;
    for (double ep : eps) {
        Matrix x = eig.V.cols_range(0, k);
        axpy(ep, e, x.block_view(0, 0, n, 1));
        const Matrix q = cholqr_with_fallback(x).q;
        auto nearest = [&](const std::vector<double>& vals) {
            double best = std::numeric_limits<double>::infinity();
            for (double v : vals) best = std::min(best, std::abs(v - lambda1));
            return best;
        };
        const auto herm = build_hermitian_rq(h, q);
        const auto back = build_backup_rq(h, q);
        s.err_hermitian.push_back(nearest(herm.ritz.values));
        s.err_backup.push_back(nearest(back.ritz.values));
        s.kappa.push_back(std::sqrt(cond) * shift / std::abs(herm.reduced.lambda_min_M));
    }
    s.slope_hermitian = loglog_slope(s.eps, s.err_hermitian);
    s.slope_backup = loglog_slope(s.eps, s.err_backup);
    return s;
}

CheckResult check_quadratic_slope(const BseHamiltonian& h, const Options& opt) {
    const SlopeSweep s = quadratic_sweep(h, {1e-2, 1e-3, 1e-4}, opt.k, opt.seed);
    std::ostringstream os;
    os << "hermitian slope " << s.slope_hermitian << ", backup slope " << s.slope_backup;
    double bound_ratio = 0.0;
    for (size_t i = 0; i < s.eps.size(); ++i)
        bound_ratio = std::max(bound_ratio, s.err_hermitian[i] / (10.0 * s.kappa[i] * s.eps[i] * s.eps[i]));
    os << ", max err / (10 kappa eps^2) = " << bound_ratio;
    CheckResult c = make("quadratic Ritz convergence: |slope - 2|", std::abs(s.slope_hermitian - 2.0), 0.2, os.str());
    c.passed = c.passed && bound_ratio <= 1.0 && s.slope_backup >= 1.0;
    return c;
}

Report run_suite(const Matrix& a, const Matrix& b, const Options& opt) {
    Report rep;
    rep.checks.push_back(check_structure(a, b));
    if (!rep.checks.back().passed) return rep;
    const BseHamiltonian h(a, b);
    const bool definite = is_definite(h) == Definiteness::definite;
    const size_t m = h.half_dim();
    const size_t k = std::min(opt.k, m);
    const Matrix q = random_orthonormal(h.dim(), k, opt.seed);

    rep.checks.push_back(check_definiteness(h));
    rep.checks.push_back(check_quadruplets(h, opt));
    rep.checks.push_back(check_field_of_values(h, opt));
    if (definite) {
        rep.checks.push_back(check_cond_identity(h));
        rep.checks.push_back(check_spectrum_symmetry(h));
        rep.checks.push_back(check_left_vectors(h));
        rep.checks.push_back(check_biorthogonality(h));
    }
    rep.checks.push_back(check_qsq_law(q));
    rep.checks.push_back(check_singular_value_complement(q));
    rep.checks.push_back(check_interlacing(h, q));
    rep.checks.push_back(check_dual_basis(q));
    rep.checks.push_back(check_dual_norm(q));
    rep.checks.push_back(check_ritz_interval(h, q));
    if (m >= 2) rep.checks.push_back(check_singular_detection(h, opt));
    if (definite && m >= 2) rep.checks.push_back(check_quadratic_slope(h, opt));
    return rep;
}

} // namespace pheig::verify
