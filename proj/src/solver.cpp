// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#include "pheig/solver.hpp"

#include <algorithm>
#include <cblas.h>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "pheig/error.hpp"
#include "pheig/log.hpp"
#include "pheig/oracle.hpp"
#include "pheig/rng.hpp"

namespace pheig {

const char* to_string(RrPolicy p) {
    switch (p) {
    case RrPolicy::hermitian: return "hermitian";
    case RrPolicy::backup: return "backup";
    case RrPolicy::galerkin_reference: return "galerkin";
    default: return "auto";
    }
}

RrPolicy rr_policy_from_string(const std::string& s) {
    if (s == "auto") return RrPolicy::auto_select;
    if (s == "hermitian") return RrPolicy::hermitian;
    if (s == "backup") return RrPolicy::backup;
    if (s == "galerkin") return RrPolicy::galerkin_reference;
    throw ValidationError("unknown Rayleigh-Ritz policy '" + s + "' (expected auto, hermitian or backup)");
}

void SolverConfig::validate(size_t n) const {
    std::ostringstream os;
    if (nev == 0) os << "nev must be at least 1";
    else if (2 * nevex() > n) os << "nev + nex = " << nevex() << " exceeds n/2 = " << n / 2;
    else if (deg < 2 || deg % 2 != 0) os << "filter degree must be even and at least 2, got " << deg;
    else if (!(tol > 0.0) || !std::isfinite(tol)) os << "tol must be positive";
    else if (maxiter < 1) os << "maxiter must be at least 1";
    else if (lanczos_steps < 2 || lanczos_steps % 2 != 0) os << "Lanczos steps must be even and at least 2";
    else if (initial && (initial->rows() != n || initial->cols() != nevex()))
        os << "initial block must be " << n << " x " << nevex();
    const std::string msg = os.str();
    if (!msg.empty()) throw ValidationError(msg);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Locked {
    std::vector<double> values;
    std::vector<double> residuals;
    Matrix vectors; // n x locked
};

void append_columns(Matrix& dst, const Matrix& src, const std::vector<size_t>& cols) {
    Matrix out(src.rows(), dst.cols() + cols.size());
    if (dst.cols() > 0) out.set_block(0, 0, dst);
    for (size_t j = 0; j < cols.size(); ++j) {
        auto c = src.col(cols[j]);
        std::copy(c.begin(), c.end(), out.col(dst.cols() + j).begin());
    }
    dst = std::move(out);
}

struct ReductionOutcome {
    RitzSet ritz;
    RrVariant variant = RrVariant::hermitian_equiv;
    bool fallback = false;
    double lambda_min_M = 0.0;
};

ReductionOutcome reduce(const BseHamiltonian& h, const Matrix& q, RrPolicy policy, FlopCounter* fc) {
    ReductionOutcome o;
    if (policy == RrPolicy::galerkin_reference) {
        auto g = galerkin_rayleigh_ritz(h, q, fc);
        o.ritz.values = std::move(g.values);
        o.ritz.vectors = std::move(g.vectors);
        o.ritz.imag_parts.assign(o.ritz.values.size(), 0.0);
        o.lambda_min_M = 1.0;
        return o;
    }
    if (policy != RrPolicy::backup) {
        try {
            auto r = build_hermitian_rq(h, q, fc);
            o.ritz = std::move(r.ritz);
            o.lambda_min_M = r.reduced.lambda_min_M;
            return o;
        } catch (const ReductionError& e) {
            if (policy == RrPolicy::hermitian) throw NumericalError(std::string("hermitian reduction failed: ") + e.what());
            log_info(std::string("switching to backup reduction: ") + e.what());
            o.fallback = true;
        }
    }
    auto r = build_backup_rq(h, q, fc);
    o.ritz = std::move(r.ritz);
    o.variant = RrVariant::nonhermitian_backup;
    o.lambda_min_M = r.reduced.lambda_min_M;
    return o;
}

// Ritz values outside [mu_1, mu_n] cannot be eigenvalues; they come from a nearly
// S-neutral direction in the search space. Moving them behind the rest keeps them
// out of the locking window, where a stuck spurious value would block every lock.
size_t demote_out_of_bracket(RitzSet& r, const SpectralBounds& b) {
    const size_t k = r.values.size();
    std::vector<size_t> perm;
    for (size_t i = 0; i < k; ++i)
        if (r.values[i] >= b.mu_1 && r.values[i] <= b.mu_n) perm.push_back(i);
    const size_t inside = perm.size();
    if (inside == k) return k;
    for (size_t i = 0; i < k; ++i)
        if (r.values[i] < b.mu_1 || r.values[i] > b.mu_n) perm.push_back(i);
    auto pick = [&](const auto& v) {
        std::remove_cvref_t<decltype(v)> out(v.size());
        for (size_t i = 0; i < perm.size(); ++i) out[i] = v[perm[i]];
        return out;
    };
    r.values = pick(r.values);
    r.residual_norms = pick(r.residual_norms);
    if (r.imag_parts.size() == k) r.imag_parts = pick(r.imag_parts);
    r.vectors = permute_columns(r.vectors, perm);
    if (r.h_vectors.cols() == k) r.h_vectors = permute_columns(r.h_vectors, perm);
    return inside;
}

} // namespace

SolveResult solve(const BseHamiltonian& h, const SolverConfig& cfg) {
    const size_t n = h.dim();
    cfg.validate(n);
    if (is_definite(h) != Definiteness::definite)
        throw IndefiniteError("SH is not positive definite; the solver handles definite Hamiltonians only");
    if (cfg.rr == RrPolicy::galerkin_reference && h.B().max_abs() != 0.0)
        throw ValidationError("the galerkin reference policy requires B = 0");
    if (cfg.reproducible) openblas_set_num_threads(1);

    const size_t nev = cfg.nev, nevex = cfg.nevex();
    SolveResult res;
    FlopCounter fl_lanczos, fl_filter, fl_ortho, fl_rr, fl_res;

    auto t0 = Clock::now();
    res.bounds = estimate_bounds(h, nevex, cfg.lanczos_steps, cfg.seed, &fl_lanczos);
    res.seconds.lanczos = seconds_since(t0);
    SpectralBounds bounds = res.bounds;
    res.normalizer = cfg.rel_res ? std::abs(bounds.mu_1) / kBoundInflation : 1.0;
    const double threshold = cfg.tol * res.normalizer;

    Matrix vhat = cfg.initial ? *cfg.initial
                              : CounterRng(cfg.seed, RngStream::solver_init).complex_gaussian_matrix(n, nevex);
    Locked locked;
    locked.vectors = Matrix(n, 0);
    RitzSet last;

    auto total_flops = [&] { return fl_lanczos.total + fl_filter.total + fl_ortho.total + fl_rr.total + fl_res.total; };

    // A warm start is checked before any filtering so converged input costs no filter work.
    const int first_iter = cfg.initial ? 0 : 1;
    for (int it = first_iter; it <= cfg.maxiter; ++it) {
        const double flops_before = total_flops();
        IterationRecord rec;
        rec.iter = it;
        rec.k = vhat.cols();
        rec.mu_nevex = bounds.mu_nevex;

        if (it > 0) {
            t0 = Clock::now();
            FilterConfig fcfg = FilterConfig::from_bounds(cfg.deg, bounds);
            fcfg.plain_only = cfg.plain_filter;
            vhat = chebyshev_filter(h, vhat, fcfg, &fl_filter);
            res.seconds.filter += seconds_since(t0);
        }

        t0 = Clock::now();
        SearchSpace space = s_orthonormalize(vhat, locked.vectors, &fl_ortho);
        rec.qr = space.method;
        res.seconds.ortho += seconds_since(t0);

        t0 = Clock::now();
        ReductionOutcome red;
        try {
            red = reduce(h, space.active(), cfg.rr, &fl_rr);
        } catch (const NumericalError& e) {
            std::ostringstream os;
            os << "iteration " << it << ": " << e.what();
            throw SolveAbort(os.str(), res.trace);
        }
        res.seconds.rr += seconds_since(t0);
        rec.variant = red.variant;
        rec.fallback = red.fallback;
        rec.lambda_min_M = red.lambda_min_M;
        if (red.variant == RrVariant::nonhermitian_backup) ++res.backup_events;

        t0 = Clock::now();
        residuals(h, red.ritz, &fl_res);
        res.seconds.residuals += seconds_since(t0);

        rec.max_res = *std::max_element(red.ritz.residual_norms.begin(), red.ritz.residual_norms.end());
        const size_t inside = demote_out_of_bracket(red.ritz, bounds);
        const LockResult lr = lock_converged(red.ritz, threshold, inside);
        for (size_t i : lr.locked) {
            locked.values.push_back(red.ritz.values[i]);
            locked.residuals.push_back(red.ritz.residual_norms[i]);
        }
        append_columns(locked.vectors, red.ritz.vectors, lr.locked);

        rec.locked = locked.values.size();
        rec.min_res_unlocked = std::numeric_limits<double>::quiet_NaN();
        std::vector<double> active_values, cutoff_values;
        Matrix next(n, 0);
        append_columns(next, red.ritz.vectors, lr.active);
        for (size_t i : lr.active) {
            active_values.push_back(red.ritz.values[i]);
            if (i < inside) cutoff_values.push_back(red.ritz.values[i]);
            const double r = red.ritz.residual_norms[i];
            if (!(rec.min_res_unlocked <= r)) rec.min_res_unlocked = r;
        }
        rec.flops = total_flops() - flops_before;
        res.trace.push_back(rec);
        res.iterations = it;

        // Keep the unconverged part for a best-effort answer.
        last = RitzSet{};
        last.values = active_values;
        last.vectors = next;
        for (size_t i : lr.active) last.residual_norms.push_back(red.ritz.residual_norms[i]);

        if (locked.values.size() >= nev || lr.active.empty()) break;
        vhat = std::move(next);
        if (!cutoff_values.empty()) bounds = update_cutoff(bounds, cutoff_values);
    }
    res.final_bounds = bounds;
    res.converged = locked.values.size() >= nev;

    std::vector<double> values = locked.values, resid = locked.residuals;
    Matrix vecs = locked.vectors;
    if (!res.converged) {
        values.insert(values.end(), last.values.begin(), last.values.end());
        resid.insert(resid.end(), last.residual_norms.begin(), last.residual_norms.end());
        std::vector<size_t> all(last.values.size());
        for (size_t i = 0; i < all.size(); ++i) all[i] = i;
        append_columns(vecs, last.vectors, all);
    }
    // Out-of-bracket leftovers go last in a best-effort answer.
    std::vector<double> keys = values;
    for (double& v : keys)
        if (v < bounds.mu_1 || v > bounds.mu_n) v = std::numeric_limits<double>::max();
    auto perm = stable_argsort(keys);
    perm.resize(std::min(nev, perm.size()));
    for (size_t i : perm) {
        res.lambdas.push_back(values[i]);
        res.residual_norms.push_back(resid[i]);
    }
    res.V = permute_columns(vecs, perm);

    res.flops.lanczos = fl_lanczos.total;
    res.flops.filter = fl_filter.total;
    res.flops.ortho = fl_ortho.total;
    res.flops.rr = fl_rr.total;
    res.flops.residuals = fl_res.total;
    return res;
}

CompletedSpectrum complete_spectrum(const BseHamiltonian& h, const SolveResult& result) {
    const size_t n = h.dim(), k = result.lambdas.size();
    Matrix v(n, 2 * k);
    std::vector<double> lam(2 * k);
    v.set_block(0, 0, result.V);
    v.set_block(0, k, apply_K(result.V.conj()));
    for (size_t i = 0; i < k; ++i) {
        lam[i] = result.lambdas[i];
        lam[k + i] = -result.lambdas[i];
    }
    const auto perm = stable_argsort(lam);
    CompletedSpectrum out;
    out.V = permute_columns(v, perm);
    out.U = apply_S(out.V);
    for (size_t j = 0; j < out.V.cols(); ++j) {
        out.lambdas.push_back(lam[perm[j]]);
        if (dot(out.U.col(j), out.V.col(j)).real() < 0.0) scale(out.U.col(j), -1.0);
    }
    Matrix r = apply_H(h, out.V);
    for (size_t j = 0; j < out.V.cols(); ++j) {
        auto rc = r.col(j);
        auto vc = out.V.col(j);
        for (size_t i = 0; i < n; ++i) rc[i] -= out.lambdas[j] * vc[i];
        out.residual_norms.push_back(norm2(rc));
    }
    return out;
}

} // namespace pheig
