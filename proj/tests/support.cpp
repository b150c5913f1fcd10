// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <sys/wait.h>
#include <unistd.h>

#include "pheig/rng.hpp"

namespace pheig::testing {

BseHamiltonian two_by_two() { return BseHamiltonian(Matrix::from_rows(1, 1, {2.0}), Matrix::from_rows(1, 1, {0.5})); }

BseHamiltonian definite(size_t m, std::uint64_t seed, double coupling) {
    GeneratorSpec g;
    g.m = m;
    g.seed = seed;
    g.coupling_ratio = coupling;
    return generate(g);
}

BseHamiltonian diagonal_tda(size_t m) {
    Matrix a(m, m);
    for (size_t i = 0; i < m; ++i) a(i, i) = static_cast<double>(i + 1);
    return BseHamiltonian(a, Matrix(m, m));
}

Matrix random_matrix(size_t rows, size_t cols, std::uint64_t seed) {
    return CounterRng(seed, 99).complex_gaussian_matrix(rows, cols);
}

CommandResult run_command(const std::string& cmd) {
    CommandResult r;
    FILE* p = popen((cmd + " 2>&1").c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.output.append(buf.data(), got);
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string temp_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("pheig_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

} // namespace pheig::testing
