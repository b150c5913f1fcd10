// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "pheig/flops.hpp"

namespace pheig {

using cplx = std::complex<double>;
using std::size_t;

// Non-owning column-major views. Element (i, j) lives at ptr[i + j * ld].
struct ConstMatrixView {
    const cplx* ptr = nullptr;
    size_t rows = 0;
    size_t cols = 0;
    size_t ld = 1;

    const cplx& operator()(size_t i, size_t j) const { return ptr[i + j * ld]; }
    ConstMatrixView block(size_t r0, size_t c0, size_t nr, size_t nc) const;
};

struct MatrixView {
    cplx* ptr = nullptr;
    size_t rows = 0;
    size_t cols = 0;
    size_t ld = 1;

    cplx& operator()(size_t i, size_t j) const { return ptr[i + j * ld]; }
    MatrixView block(size_t r0, size_t c0, size_t nr, size_t nc) const;
    operator ConstMatrixView() const { return {ptr, rows, cols, ld}; }
};

// Owning dense complex matrix, column-major, leading dimension = rows.
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols);
    explicit Matrix(ConstMatrixView v);

    // Validates the entry count and rejects NaN/Inf.
    static Matrix from_column_major(size_t rows, size_t cols, std::vector<cplx> data);
    static Matrix identity(size_t n);
    static Matrix from_rows(size_t rows, size_t cols, std::initializer_list<cplx> row_major);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }
    const std::vector<cplx>& storage() const { return data_; }

    cplx& operator()(size_t i, size_t j) { return data_[i + j * rows_]; }
    const cplx& operator()(size_t i, size_t j) const { return data_[i + j * rows_]; }

    std::span<cplx> col(size_t j) { return {data_.data() + j * rows_, rows_}; }
    std::span<const cplx> col(size_t j) const { return {data_.data() + j * rows_, rows_}; }

    MatrixView view() { return {data_.data(), rows_, cols_, rows_ ? rows_ : 1}; }
    ConstMatrixView view() const { return {data_.data(), rows_, cols_, rows_ ? rows_ : 1}; }
    MatrixView block_view(size_t r0, size_t c0, size_t nr, size_t nc) { return view().block(r0, c0, nr, nc); }
    ConstMatrixView block_view(size_t r0, size_t c0, size_t nr, size_t nc) const {
        return view().block(r0, c0, nr, nc);
    }
    operator ConstMatrixView() const { return view(); }

    Matrix block(size_t r0, size_t c0, size_t nr, size_t nc) const;
    Matrix cols_range(size_t c0, size_t nc) const { return block(0, c0, rows_, nc); }
    void set_block(size_t r0, size_t c0, ConstMatrixView src);

    Matrix adjoint() const;
    Matrix transpose() const;
    Matrix conj() const;

    double max_abs() const;
    double frobenius() const;
    bool all_finite() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(cplx s);

private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<cplx> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(cplx s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

enum class Op { none, trans, conj_trans };

// C = alpha * op(A) * op(B) + beta * C through zgemm.
void gemm(Op opa, Op opb, cplx alpha, ConstMatrixView a, ConstMatrixView b, cplx beta, MatrixView c,
          FlopCounter* fc = nullptr);

// Returns op(A) * op(B).
Matrix matmul(ConstMatrixView a, ConstMatrixView b, Op opa = Op::none, Op opb = Op::none,
              FlopCounter* fc = nullptr);

// A^* B.
inline Matrix inner(ConstMatrixView a, ConstMatrixView b, FlopCounter* fc = nullptr) {
    return matmul(a, b, Op::conj_trans, Op::none, fc);
}

// Y += alpha * X, elementwise over views of equal shape.
void axpy(cplx alpha, ConstMatrixView x, MatrixView y);

double norm2(std::span<const cplx> x);
cplx dot(std::span<const cplx> x, std::span<const cplx> y); // x^* y
void scale(std::span<cplx> x, cplx s);

// Largest |a_ij - b_ij|.
double max_abs_diff(ConstMatrixView a, ConstMatrixView b);

// Largest |(A^* A - I)_ij|.
double orthonormality_defect(ConstMatrixView q);

// Stable argsort of real keys (ties keep original index order).
std::vector<size_t> stable_argsort(const std::vector<double>& keys);

// Columns of m reordered as m[:, perm[j]].
Matrix permute_columns(const Matrix& m, const std::vector<size_t>& perm);

// Normalizes each column to unit 2-norm (zero columns are left untouched).
void normalize_columns(Matrix& m);

// Multiplies each column by a unit phase so its first entry with magnitude above
// rel_tol * max|column| is real and positive.
void fix_column_phases(Matrix& m, double rel_tol = 1e-8);

} // namespace pheig
