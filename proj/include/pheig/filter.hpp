// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "pheig/hamiltonian.hpp"
#include "pheig/lanczos.hpp"

namespace pheig {

inline constexpr int kDefaultDegree = 20;

struct FilterConfig {
    int degree = kDefaultDegree;
    double center = 0.0;     // (mu_n + mu_nevex) / 2
    double half_width = 0.0; // (mu_n - mu_nevex) / 2
    double scale_ref = 0.0;  // mu_1, where the scaled polynomial equals 1
    bool plain_only = false; // disable the adjoint kernel on odd steps

    static FilterConfig from_bounds(int degree, const SpectralBounds& b);
    // Throws ValidationError for odd or non-positive degree, half_width <= 0, or a
    // scale reference inside the damped interval.
    void validate() const;
};

// Rounds an odd degree up to the next even one; returns true if it changed.
bool round_degree_to_even(int& degree);

// p(H) Vhat through the scaled three-term Chebyshev recurrence. Odd steps use
// apply_H_via_adjoint, even steps apply_H, unless cfg.plain_only.
Matrix chebyshev_filter(const BseHamiltonian& h, const Matrix& vhat, const FilterConfig& cfg,
                        FlopCounter* fc = nullptr);

// The same recurrence on a scalar.
double scalar_filter_value(double lambda, const FilterConfig& cfg);

} // namespace pheig
