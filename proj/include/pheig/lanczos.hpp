// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "pheig/hamiltonian.hpp"

namespace pheig {

struct RitzNode {
    double theta = 0.0;
    double weight = 0.0; // squared first component of the tridiagonal eigenvector
};

struct SpectralBounds {
    double mu_1 = 0.0;
    double mu_nevex = 0.0;
    double mu_n = 0.0;
    int steps = 0;
    std::vector<RitzNode> ritz_nodes; // ascending theta, weights sum to 1
    int restarts = 0;
    double imag_defect = 0.0; // max |Im alpha_j| / max |alpha_j| seen in the recurrence
};

inline constexpr int kDefaultLanczosSteps = 24;
inline constexpr double kBoundInflation = 1.01;

// Lanczos in the SH inner product (H is self-adjoint there), started from a Gaussian
// vector of stream lanczos_start. Steps are clamped to n. Throws NumericalError when
// the recurrence breaks down before min(4, steps) steps on every restart.
SpectralBounds estimate_bounds(const BseHamiltonian& h, size_t nevex, int steps, std::uint64_t seed,
                               FlopCounter* fc = nullptr);

// Cutoff for the nevex-th eigenvalue from the Ritz density. Nodes are folded onto the
// negative axis and reweighted by 1/|theta|. The result is the first node more than 5%
// above the node where the cumulative weight reaches 2 nevex / n.
double density_cutoff(const std::vector<RitzNode>& nodes, size_t nevex, size_t n);

// mu_nevex <- max(nonconverged), clamped to [mu_1, 0]. Throws ValidationError on an empty list.
SpectralBounds update_cutoff(const SpectralBounds& bounds, const std::vector<double>& nonconverged);

} // namespace pheig
