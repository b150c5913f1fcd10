// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "pheig/hamgen.hpp"
#include "pheig/matrix.hpp"

namespace pheig::testing {

// A = [2], B = [0.5]: lambda = +-sqrt(3.75), SH eigenvalues 2.5 and 1.5.
BseHamiltonian two_by_two();

// Generated definite instance with alpha = 1.
BseHamiltonian definite(size_t m, std::uint64_t seed, double coupling = 0.5);

// B = 0 and A = diag(1, ..., m).
BseHamiltonian diagonal_tda(size_t m);

Matrix random_matrix(size_t rows, size_t cols, std::uint64_t seed);

// Runs a shell command, returning its exit status and captured stdout+stderr.
struct CommandResult {
    int status = -1;
    std::string output;
};
CommandResult run_command(const std::string& cmd);

std::string temp_dir(const std::string& tag);

} // namespace pheig::testing
