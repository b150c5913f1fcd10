// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>

#include "pheig/matrix.hpp"

namespace pheig {

enum class Definiteness { unknown, definite, indefinite };

const char* to_string(Definiteness d);

// H = [[A, B], [-conj(B), -conj(A)]] with A hermitian and B symmetric, stored as A and B.
class BseHamiltonian {
public:
    // Symmetry defects up to 1e-12 * max|entry| are symmetrized away with a warning;
    // larger defects throw ValidationError.
    BseHamiltonian(Matrix a, Matrix b);

    BseHamiltonian(const BseHamiltonian& o);
    BseHamiltonian& operator=(const BseHamiltonian& o);

    size_t half_dim() const { return a_.rows(); }
    size_t dim() const { return 2 * a_.rows(); }
    const Matrix& A() const { return a_; }
    const Matrix& B() const { return b_; }

    // Dense H and SH, built on request only.
    Matrix materialize() const;
    Matrix materialize_SH() const;

    // Cached result of is_definite; unknown until first queried.
    Definiteness definiteness() const { return flag_.load(std::memory_order_acquire); }
    void cache_definiteness(Definiteness d) const { flag_.store(d, std::memory_order_release); }

    // max(max|A|, max|B|), used as the elementwise scale in kernel comparisons.
    double entry_scale() const;

private:
    Matrix a_;
    Matrix b_;
    mutable std::atomic<Definiteness> flag_{Definiteness::unknown};
};

// S = diag(I, -I): negates the lower half of the rows.
Matrix apply_S(const Matrix& x);
void apply_S_inplace(MatrixView x);
// K = [[0, I], [I, 0]]: swaps the halves.
Matrix apply_K(const Matrix& x);
// J = [[0, I], [-I, 0]].
Matrix apply_J(const Matrix& x);

// H X from the stored blocks, using only non-transposed products.
Matrix apply_H(const BseHamiltonian& h, const Matrix& x, FlopCounter* fc = nullptr);

// S (H^* (S X)), using only transposed products of the stored blocks.
Matrix apply_H_via_adjoint(const BseHamiltonian& h, const Matrix& x, FlopCounter* fc = nullptr);

struct StructureReport {
    bool ok = false;
    double defect = 0.0;    // max |S H - H^* S|
    double threshold = 0.0; // 1e-12 * max|H|
};

// Checks S H = H^* S on a dense matrix of even dimension.
StructureReport validate_pseudo_hermitian(const Matrix& h_dense);

// Cholesky test on SH; caches the answer on h.
Definiteness is_definite(const BseHamiltonian& h);

} // namespace pheig
