// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

namespace pheig {

// Modeled real FLOPs: 8 per complex multiply-add.
struct FlopCounter {
    double total = 0.0;
    void add(double f) { total += f; }
};

inline void count_flops(FlopCounter* fc, double f) {
    if (fc) fc->add(f);
}

inline double gemm_flops(std::size_t m, std::size_t n, std::size_t k) {
    return 8.0 * static_cast<double>(m) * static_cast<double>(n) * static_cast<double>(k);
}

} // namespace pheig
