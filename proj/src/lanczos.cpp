// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#include "pheig/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pheig/error.hpp"
#include "pheig/linalg.hpp"
#include "pheig/rng.hpp"

namespace pheig {

namespace {

constexpr int kMaxRestarts = 3;
constexpr double kBreakdownTol = 1e-10;
constexpr double kTwinGap = 0.05;

struct Recurrence {
    std::vector<double> alpha;
    std::vector<double> beta; // beta[j] couples steps j and j+1
    double imag_defect = 0.0;
};

// S-weighted inner product x^* S y for single columns.
cplx s_dot(const Matrix& x, const Matrix& y) {
    const size_t m = x.rows() / 2;
    cplx s(0.0);
    for (size_t i = 0; i < m; ++i) s += std::conj(x(i, 0)) * y(i, 0);
    for (size_t i = m; i < 2 * m; ++i) s -= std::conj(x(i, 0)) * y(i, 0);
    return s;
}

// Runs up to `steps` steps; stops early on breakdown. Keeps p_j = H v_j so each step
// costs one product with H.
Recurrence run(const BseHamiltonian& h, Matrix v, int steps, FlopCounter* fc) {
    Recurrence r;
    Matrix p = apply_H(h, v, fc);
    const double nrm2 = s_dot(v, p).real();
    if (!(nrm2 > 0.0)) return r;
    v *= 1.0 / std::sqrt(nrm2);
    p *= 1.0 / std::sqrt(nrm2);

    Matrix v_prev(v.rows(), 1), p_prev(v.rows(), 1);
    double beta = 0.0, scale = 0.0, alpha_max = 0.0;
    for (int j = 0; j < steps; ++j) {
        const cplx a = s_dot(p, p);
        r.alpha.push_back(a.real());
        alpha_max = std::max(alpha_max, std::abs(a.real()));
        r.imag_defect = std::max(r.imag_defect, std::abs(a.imag()));
        scale = std::max({scale, std::abs(a.real()), beta});
        if (j + 1 == steps) break;

        Matrix q = apply_H(h, p, fc);
        // w = p - a v - beta v_prev and H w = q - a p - beta p_prev.
        Matrix w = p, hw = q;
        axpy(-a.real(), v, w.view());
        axpy(-beta, v_prev, w.view());
        axpy(-a.real(), p, hw.view());
        axpy(-beta, p_prev, hw.view());
        const double b2 = s_dot(w, hw).real();
        if (!(b2 > 0.0) || std::sqrt(b2) <= kBreakdownTol * scale) break;
        beta = std::sqrt(b2);
        r.beta.push_back(beta);
        v_prev = std::move(v);
        p_prev = std::move(p);
        v = std::move(w);
        p = std::move(hw);
        v *= 1.0 / beta;
        p *= 1.0 / beta;
    }
    if (alpha_max > 0.0) r.imag_defect /= alpha_max;
    return r;
}

} // namespace

SpectralBounds estimate_bounds(const BseHamiltonian& h, size_t nevex, int steps, std::uint64_t seed,
                               FlopCounter* fc) {
    const size_t n = h.dim();
    if (steps < 2 || steps % 2 != 0) throw ValidationError("Lanczos steps must be even and at least 2");
    if (nevex == 0 || nevex > n / 2) throw ValidationError("nevex must lie in [1, n/2]");
    const int target = static_cast<int>(std::min<size_t>(static_cast<size_t>(steps), n));
    const int min_steps = std::min(4, target);

    for (int attempt = 0; attempt <= kMaxRestarts; ++attempt) {
        const CounterRng rng(seed, static_cast<std::uint64_t>(RngStream::lanczos_start) + 16u * attempt);
        Recurrence rec = run(h, rng.complex_gaussian_matrix(n, 1), target, fc);
        int used = static_cast<int>(rec.alpha.size());
        if (used < min_steps) continue;
        used -= used % 2;

        rec.alpha.resize(used);
        rec.beta.resize(used - 1);
        const auto eig = linalg::tridiagonal_eig(rec.alpha, rec.beta);

        SpectralBounds b;
        b.steps = used;
        b.restarts = attempt;
        b.imag_defect = rec.imag_defect;
        double rho = 0.0;
        for (size_t i = 0; i < eig.values.size(); ++i) {
            b.ritz_nodes.push_back({eig.values[i], eig.first_components[i] * eig.first_components[i]});
            rho = std::max(rho, std::abs(eig.values[i]));
        }
        // The spectrum is symmetric, so both ends of the Ritz set estimate rho(H).
        b.mu_1 = -kBoundInflation * rho;
        b.mu_n = -b.mu_1;
        b.mu_nevex = std::clamp(density_cutoff(b.ritz_nodes, nevex, n), b.mu_1, 0.0);
        return b;
    }
    std::ostringstream os;
    os << "Lanczos broke down before " << min_steps << " steps after " << kMaxRestarts << " restarts";
    throw NumericalError(os.str());
}

double density_cutoff(const std::vector<RitzNode>& nodes, size_t nevex, size_t n) {
    if (nodes.empty()) throw ValidationError("density_cutoff: no Ritz nodes");
    // The SH-weighted start vector puts weight proportional to |lambda| on each eigenvalue;
    // dividing by |theta| undoes that before counting.
    struct Folded {
        double t;
        double w;
    };
    std::vector<Folded> f;
    double floor = 0.0;
    for (const auto& nd : nodes) floor = std::max(floor, std::abs(nd.theta));
    floor *= 1e-3;
    double total = 0.0;
    for (const auto& nd : nodes) {
        const double a = std::max(std::abs(nd.theta), floor);
        f.push_back({-std::abs(nd.theta), nd.weight / a});
        total += nd.weight / a;
    }
    std::stable_sort(f.begin(), f.end(), [](const Folded& x, const Folded& y) { return x.t < y.t; });
    const double target = 2.0 * static_cast<double>(nevex) / static_cast<double>(n);
    double cum = 0.0;
    for (size_t i = 0; i < f.size(); ++i) {
        cum += f[i].w / total;
        if (cum >= target) {
            // Mirror pairs +-theta fold onto nearly the same point; step past them.
            for (size_t j = i + 1; j < f.size(); ++j)
                if (f[j].t > f[i].t + kTwinGap * std::abs(f[i].t)) return f[j].t;
            return f.back().t;
        }
    }
    return f.back().t;
}

SpectralBounds update_cutoff(const SpectralBounds& bounds, const std::vector<double>& nonconverged) {
    if (nonconverged.empty()) throw ValidationError("update_cutoff: empty Ritz list");
    SpectralBounds b = bounds;
    const double mx = *std::max_element(nonconverged.begin(), nonconverged.end());
    b.mu_nevex = std::clamp(mx, b.mu_1, 0.0);
    return b;
}

} // namespace pheig
