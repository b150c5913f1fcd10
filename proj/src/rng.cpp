// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#include "pheig/rng.hpp"

#include <cmath>
#include <numbers>

namespace pheig {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

} // namespace

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix64(seed ^ mix64(stream + kGolden))) {}

std::uint64_t CounterRng::bits(std::uint64_t counter) const { return mix64(key_ + (counter + 1) * kGolden); }

double CounterRng::uniform(std::uint64_t counter) const {
    return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
}

std::pair<double, double> CounterRng::gaussian_pair(std::uint64_t p) const {
    const double u1 = uniform(2 * p);
    const double u2 = uniform(2 * p + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
}

cplx CounterRng::complex_gaussian(std::uint64_t p) const {
    const auto [g0, g1] = gaussian_pair(p);
    return cplx(g0, g1) * std::numbers::sqrt2 * 0.5;
}

Matrix CounterRng::complex_gaussian_matrix(size_t rows, size_t cols, std::uint64_t offset) const {
    Matrix m(rows, cols);
    for (size_t j = 0; j < cols; ++j)
        for (size_t i = 0; i < rows; ++i) m(i, j) = complex_gaussian(offset + i + j * rows);
    return m;
}

} // namespace pheig
