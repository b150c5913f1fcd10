// Copyright the pheig authors.
// SPDX-License-Identifier: Apache-2.0

#include "pheig/matrix.hpp"

#include <algorithm>
#include <cblas.h>
#include <cmath>
#include <numeric>
#include <string>

#include "pheig/error.hpp"

namespace pheig {

namespace {

CBLAS_TRANSPOSE to_cblas(Op op) {
    switch (op) {
    case Op::trans: return CblasTrans;
    case Op::conj_trans: return CblasConjTrans;
    default: return CblasNoTrans;
    }
}

std::string shape(size_t r, size_t c) { return std::to_string(r) + "x" + std::to_string(c); }

} // namespace

ConstMatrixView ConstMatrixView::block(size_t r0, size_t c0, size_t nr, size_t nc) const {
    if (r0 + nr > rows || c0 + nc > cols) throw DimensionError("block out of range");
    return {ptr + r0 + c0 * ld, nr, nc, ld};
}

MatrixView MatrixView::block(size_t r0, size_t c0, size_t nr, size_t nc) const {
    if (r0 + nr > rows || c0 + nc > cols) throw DimensionError("block out of range");
    return {ptr + r0 + c0 * ld, nr, nc, ld};
}

Matrix::Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}

Matrix::Matrix(ConstMatrixView v) : Matrix(v.rows, v.cols) {
    for (size_t j = 0; j < cols_; ++j)
        std::copy_n(v.ptr + j * v.ld, rows_, data_.data() + j * rows_);
}

Matrix Matrix::from_column_major(size_t rows, size_t cols, std::vector<cplx> data) {
    if (data.size() != rows * cols)
        throw DimensionError("entry count " + std::to_string(data.size()) + " does not match " + shape(rows, cols));
    for (const auto& z : data)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ValidationError("non-finite matrix entry");
    Matrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.data_ = std::move(data);
    return m;
}

Matrix Matrix::identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::from_rows(size_t rows, size_t cols, std::initializer_list<cplx> row_major) {
    if (row_major.size() != rows * cols) throw DimensionError("from_rows: wrong entry count");
    Matrix m(rows, cols);
    auto it = row_major.begin();
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) m(i, j) = *it++;
    return m;
}

Matrix Matrix::block(size_t r0, size_t c0, size_t nr, size_t nc) const { return Matrix(block_view(r0, c0, nr, nc)); }

void Matrix::set_block(size_t r0, size_t c0, ConstMatrixView src) {
    if (r0 + src.rows > rows_ || c0 + src.cols > cols_) throw DimensionError("set_block out of range");
    for (size_t j = 0; j < src.cols; ++j)
        std::copy_n(src.ptr + j * src.ld, src.rows, data_.data() + r0 + (c0 + j) * rows_);
}

Matrix Matrix::adjoint() const {
    Matrix t(cols_, rows_);
    for (size_t j = 0; j < cols_; ++j)
        for (size_t i = 0; i < rows_; ++i) t(j, i) = std::conj((*this)(i, j));
    return t;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (size_t j = 0; j < cols_; ++j)
        for (size_t i = 0; i < rows_; ++i) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::conj() const {
    Matrix c(*this);
    for (auto& z : c.data_) z = std::conj(z);
    return c;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double Matrix::frobenius() const { return norm2(data_); }

bool Matrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionError("operator+=: shape mismatch");
    for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionError("operator-=: shape mismatch");
    for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(cplx s, Matrix a) { return a *= s; }
Matrix operator*(const Matrix& a, const Matrix& b) { return matmul(a, b); }

void gemm(Op opa, Op opb, cplx alpha, ConstMatrixView a, ConstMatrixView b, cplx beta, MatrixView c,
          FlopCounter* fc) {
    const size_t m = opa == Op::none ? a.rows : a.cols;
    const size_t k = opa == Op::none ? a.cols : a.rows;
    const size_t kb = opb == Op::none ? b.rows : b.cols;
    const size_t n = opb == Op::none ? b.cols : b.rows;
    if (k != kb || c.rows != m || c.cols != n)
        throw DimensionError("gemm: op(A) " + shape(m, k) + ", op(B) " + shape(kb, n) + ", C " + shape(c.rows, c.cols));
    if (m == 0 || n == 0) return;
    if (k == 0) {
        for (size_t j = 0; j < n; ++j)
            for (size_t i = 0; i < m; ++i) c(i, j) = beta == cplx(0.0) ? cplx(0.0) : beta * c(i, j);
        return;
    }
    cblas_zgemm(CblasColMajor, to_cblas(opa), to_cblas(opb), static_cast<int>(m), static_cast<int>(n),
                static_cast<int>(k), &alpha, a.ptr, static_cast<int>(a.ld), b.ptr, static_cast<int>(b.ld), &beta,
                c.ptr, static_cast<int>(c.ld));
    count_flops(fc, gemm_flops(m, n, k));
}

Matrix matmul(ConstMatrixView a, ConstMatrixView b, Op opa, Op opb, FlopCounter* fc) {
    const size_t m = opa == Op::none ? a.rows : a.cols;
    const size_t n = opb == Op::none ? b.cols : b.rows;
    Matrix c(m, n);
    gemm(opa, opb, 1.0, a, b, 0.0, c.view(), fc);
    return c;
}

void axpy(cplx alpha, ConstMatrixView x, MatrixView y) {
    if (x.rows != y.rows || x.cols != y.cols) throw DimensionError("axpy: shape mismatch");
    for (size_t j = 0; j < x.cols; ++j)
        for (size_t i = 0; i < x.rows; ++i) y(i, j) += alpha * x(i, j);
}

double norm2(std::span<const cplx> x) {
    // Scaled accumulation avoids overflow for large entries.
    double scale_ = 0.0, ssq = 1.0;
    for (const auto& z : x) {
        for (double t : {z.real(), z.imag()}) {
            const double a = std::abs(t);
            if (a == 0.0) continue;
            if (scale_ < a) {
                ssq = 1.0 + ssq * (scale_ / a) * (scale_ / a);
                scale_ = a;
            } else {
                ssq += (a / scale_) * (a / scale_);
            }
        }
    }
    return scale_ * std::sqrt(ssq);
}

cplx dot(std::span<const cplx> x, std::span<const cplx> y) {
    if (x.size() != y.size()) throw DimensionError("dot: length mismatch");
    cplx s(0.0);
    for (size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

void scale(std::span<cplx> x, cplx s) {
    for (auto& z : x) z *= s;
}

double max_abs_diff(ConstMatrixView a, ConstMatrixView b) {
    if (a.rows != b.rows || a.cols != b.cols) throw DimensionError("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (size_t j = 0; j < a.cols; ++j)
        for (size_t i = 0; i < a.rows; ++i) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

double orthonormality_defect(ConstMatrixView q) {
    Matrix g = inner(q, q);
    for (size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
    return g.max_abs();
}

std::vector<size_t> stable_argsort(const std::vector<double>& keys) {
    std::vector<size_t> idx(keys.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return keys[a] < keys[b]; });
    return idx;
}

Matrix permute_columns(const Matrix& m, const std::vector<size_t>& perm) {
    Matrix out(m.rows(), perm.size());
    for (size_t j = 0; j < perm.size(); ++j) {
        auto src = m.col(perm[j]);
        std::copy(src.begin(), src.end(), out.col(j).begin());
    }
    return out;
}

void normalize_columns(Matrix& m) {
    for (size_t j = 0; j < m.cols(); ++j) {
        const double nrm = norm2(m.col(j));
        if (nrm > 0.0) scale(m.col(j), 1.0 / nrm);
    }
}

void fix_column_phases(Matrix& m, double rel_tol) {
    for (size_t j = 0; j < m.cols(); ++j) {
        auto c = m.col(j);
        double cmax = 0.0;
        for (const auto& z : c) cmax = std::max(cmax, std::abs(z));
        if (cmax == 0.0) continue;
        for (auto& z : c) {
            const double a = std::abs(z);
            if (a > rel_tol * cmax) {
                scale(c, std::conj(z) / a);
                z = a;
                break;
            }
        }
    }
}

} // namespace pheig
