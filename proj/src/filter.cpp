// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#include "pheig/filter.hpp"

#include <cmath>
#include <sstream>

#include "pheig/error.hpp"

namespace pheig {

FilterConfig FilterConfig::from_bounds(int degree, const SpectralBounds& b) {
    FilterConfig c;
    c.degree = degree;
    c.center = 0.5 * (b.mu_n + b.mu_nevex);
    c.half_width = 0.5 * (b.mu_n - b.mu_nevex);
    c.scale_ref = b.mu_1;
    return c;
}

void FilterConfig::validate() const {
    if (degree < 2 || degree % 2 != 0) throw ValidationError("filter degree must be even and at least 2");
    if (!(half_width > 0.0) || !std::isfinite(half_width)) throw ValidationError("filter half width must be positive");
    if (!(std::abs(scale_ref - center) > half_width)) {
        std::ostringstream os;
        os << "filter scale reference " << scale_ref << " lies inside the damped interval [" << center - half_width
           << ", " << center + half_width << "]";
        throw ValidationError(os.str());
    }
}

bool round_degree_to_even(int& degree) {
    if (degree % 2 == 0) return false;
    ++degree;
    return true;
}

namespace {

// Y_out = a (H - c I) Y + b Y_prev.
Matrix step(const BseHamiltonian& h, const Matrix& y, const Matrix* y_prev, double a, double b, double c,
            bool adjoint_kernel, FlopCounter* fc) {
    Matrix out = adjoint_kernel ? apply_H_via_adjoint(h, y, fc) : apply_H(h, y, fc);
    axpy(-c, y, out.view());
    out *= a;
    if (y_prev) axpy(b, *y_prev, out.view());
    return out;
}

} // namespace

Matrix chebyshev_filter(const BseHamiltonian& h, const Matrix& vhat, const FilterConfig& cfg, FlopCounter* fc) {
    cfg.validate();
    if (vhat.rows() != h.dim()) throw DimensionError("chebyshev_filter: Vhat has the wrong row count");
    const double e = cfg.half_width, c = cfg.center;
    const double sigma1 = e / (cfg.scale_ref - c);
    double sigma = sigma1;

    Matrix y_prev = vhat;
    Matrix y = step(h, vhat, nullptr, sigma1 / e, 0.0, c, !cfg.plain_only, fc);
    for (int j = 2; j <= cfg.degree; ++j) {
        const double sigma_next = 1.0 / (2.0 / sigma1 - sigma);
        const bool odd = (j % 2) == 1;
        Matrix y_next = step(h, y, &y_prev, 2.0 * sigma_next / e, -sigma * sigma_next, c, odd && !cfg.plain_only, fc);
        y_prev = std::move(y);
        y = std::move(y_next);
        sigma = sigma_next;
    }
    return y;
}

double scalar_filter_value(double lambda, const FilterConfig& cfg) {
    cfg.validate();
    const double e = cfg.half_width, c = cfg.center;
    const double sigma1 = e / (cfg.scale_ref - c);
    double sigma = sigma1;
    double y_prev = 1.0;
    double y = sigma1 / e * (lambda - c);
    for (int j = 2; j <= cfg.degree; ++j) {
        const double sigma_next = 1.0 / (2.0 / sigma1 - sigma);
        const double y_next = 2.0 * sigma_next / e * (lambda - c) * y - sigma * sigma_next * y_prev;
        y_prev = y;
        y = y_next;
        sigma = sigma_next;
    }
    return y;
}

} // namespace pheig
