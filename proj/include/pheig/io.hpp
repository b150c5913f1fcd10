// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pheig/hamiltonian.hpp"
#include "pheig/solver.hpp"

namespace pheig::io {

namespace fs = std::filesystem;

// Matrix Market "matrix array complex general", one "re im" line per entry in
// column-major order, printed with %.17g.
// A non-empty comment is written as a '%' line after the banner.
std::string format_matrix_market(const Matrix& m, const std::string& comment = {});
Matrix parse_matrix_market(const std::string& text);
void write_matrix_market(const fs::path& path, const Matrix& m, const std::string& comment = {});
Matrix read_matrix_market(const fs::path& path);

// PCHB: "PCHB", uint32 version, uint64 m, then A and B as little-endian complex doubles.
inline constexpr std::uint32_t kPchbVersion = 1;
std::string encode_pchb(const BseHamiltonian& h);
BseHamiltonian decode_pchb(const std::string& bytes);
void write_pchb(const fs::path& path, const BseHamiltonian& h);
BseHamiltonian read_pchb(const fs::path& path);

// PCHV: "PCHV", uint32 version, uint64 rows, uint64 cols, then the values (float64) and
// the column-major matrix (complex doubles), all little-endian.
inline constexpr std::uint32_t kPchvVersion = 1;
std::string encode_vectors(const std::vector<double>& values, const Matrix& v);
void decode_vectors(const std::string& bytes, std::vector<double>& values, Matrix& v);
void write_vectors(const fs::path& path, const std::vector<double>& values, const Matrix& v);
void read_vectors(const fs::path& path, std::vector<double>& values, Matrix& v);

std::string read_file(const fs::path& path);
void write_file(const fs::path& path, const std::string& bytes);

// FNV-1a, 64 bit.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);
// Digest over the PCHB encoding, so it does not depend on the input file format.
std::uint64_t hamiltonian_digest(const BseHamiltonian& h);

// %.17g formatting; NaN and infinities print as nan, inf, -inf.
std::string fmt17(double x);

// Eigenvalue CSV: '#'-prefixed "key: value" metadata, then "index,lambda,residual".
struct EigenvalueCsv {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<double> lambdas;
    std::vector<double> residuals;
};
std::string format_eigenvalue_csv(const EigenvalueCsv& csv);
EigenvalueCsv parse_eigenvalue_csv(const std::string& text);

// Trace CSV with columns iter,locked,k,max_res,min_res_unlocked,mu_nevex,variant,lambda_min_M,flops.
std::string format_trace_csv(const std::vector<IterationRecord>& trace,
                             const std::vector<std::pair<std::string, std::string>>& meta);

} // namespace pheig::io
