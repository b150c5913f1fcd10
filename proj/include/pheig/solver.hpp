// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pheig/error.hpp"
#include "pheig/filter.hpp"
#include "pheig/lanczos.hpp"
#include "pheig/ortho.hpp"
#include "pheig/rayleigh_ritz.hpp"

namespace pheig {

enum class RrPolicy {
    auto_select,        // hermitian, backup for the iteration when it is refused
    hermitian,          // hermitian only; a refusal aborts the solve
    backup,             // backup only
    galerkin_reference, // Q^* H Q on hermitian H (B = 0), for baseline comparisons
};

const char* to_string(RrPolicy p);
RrPolicy rr_policy_from_string(const std::string& s);

struct SolverConfig {
    size_t nev = 1;
    std::optional<size_t> nex; // defaults to nev
    int deg = kDefaultDegree;
    double tol = 1e-8;
    int maxiter = 25;
    RrPolicy rr = RrPolicy::auto_select;
    std::uint64_t seed = 0;
    int lanczos_steps = kDefaultLanczosSteps;
    bool rel_res = false;      // divide residuals by |mu_1| / 1.01
    bool plain_filter = false; // plain kernel on every filter step
    bool reproducible = false; // single-threaded BLAS
    std::optional<Matrix> initial; // n x nevex warm start; replaces the random block

    size_t nex_value() const { return nex.value_or(nev); }
    size_t nevex() const { return nev + nex_value(); }
    // Throws ValidationError for nev = 0, nevex > n/2, odd or small deg, tol <= 0,
    // maxiter < 1, or odd Lanczos steps.
    void validate(size_t n) const;
};

struct IterationRecord {
    int iter = 0;
    size_t locked = 0;
    size_t k = 0; // active columns entering the iteration
    double max_res = 0.0;
    double min_res_unlocked = 0.0; // NaN when nothing is left active
    double mu_nevex = 0.0;         // cutoff used by this iteration's filter
    RrVariant variant = RrVariant::hermitian_equiv;
    bool fallback = false; // auto policy switched to backup
    double lambda_min_M = 0.0;
    double flops = 0.0;
    QrMethod qr = QrMethod::cholqr;
};

struct PhaseStats {
    double lanczos = 0.0;
    double filter = 0.0;
    double ortho = 0.0;
    double rr = 0.0;
    double residuals = 0.0;
    double total() const { return lanczos + filter + ortho + rr + residuals; }
};

struct SolveResult {
    std::vector<double> lambdas; // nev ascending
    Matrix V;                    // n x nev
    std::vector<double> residual_norms;
    int iterations = 0;
    bool converged = false;
    std::vector<IterationRecord> trace;
    SpectralBounds bounds;       // from Lanczos
    SpectralBounds final_bounds; // after the last cutoff update
    double normalizer = 1.0;     // residual threshold is tol * normalizer
    size_t backup_events = 0;
    PhaseStats seconds;
    PhaseStats flops;
};

// Raised when both reductions fail in one iteration; carries the trace so far.
class SolveAbort : public NumericalError {
public:
    SolveAbort(const std::string& msg, std::vector<IterationRecord> trace)
        : NumericalError(msg), trace_(std::move(trace)) {}
    const std::vector<IterationRecord>& trace() const { return trace_; }

private:
    std::vector<IterationRecord> trace_;
};

// Filtered subspace iteration for the nev most negative eigenpairs of a definite H.
// Throws IndefiniteError when SH is not positive definite.
SolveResult solve(const BseHamiltonian& h, const SolverConfig& cfg);

struct CompletedSpectrum {
    std::vector<double> lambdas; // ascending, 2 * nev values
    Matrix V;                    // right eigenvectors
    Matrix U;                    // left eigenvectors, sign(v^* S v) S v so that u^* v > 0
    std::vector<double> residual_norms;
};

// Adds the partner (-lambda, K conj(v)) of every pair and the left vectors.
CompletedSpectrum complete_spectrum(const BseHamiltonian& h, const SolveResult& result);

} // namespace pheig
