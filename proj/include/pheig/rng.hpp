// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <utility>

#include "pheig/matrix.hpp"

namespace pheig {

// Fixed stream ids so every consumer of a seed draws independent numbers.
enum class RngStream : std::uint64_t {
    generator_c = 1,
    generator_d = 2,
    lanczos_start = 3,
    solver_init = 4,
    test_aux = 5,
};

// splitmix64 output function.
std::uint64_t mix64(std::uint64_t z);

// Counter-based generator: value i of (seed, stream) is a pure function of the triple.
// The layout is documented bit-exactly in docs/FORMATS.md.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream);
    CounterRng(std::uint64_t seed, RngStream stream) : CounterRng(seed, static_cast<std::uint64_t>(stream)) {}

    std::uint64_t bits(std::uint64_t counter) const;
    // Uniform in the open interval (0, 1), 53-bit resolution.
    double uniform(std::uint64_t counter) const;
    // Box-Muller on counters (2p, 2p+1): standard normal pair.
    std::pair<double, double> gaussian_pair(std::uint64_t p) const;
    // Complex normal with E|z|^2 = 1 from pair p.
    cplx complex_gaussian(std::uint64_t p) const;
    // Column-major fill, entry (i, j) uses pair offset + i + j * rows.
    Matrix complex_gaussian_matrix(size_t rows, size_t cols, std::uint64_t offset = 0) const;

    std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
};

} // namespace pheig
