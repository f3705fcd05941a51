#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ttk/kernels.hpp"

namespace ttk {

/// Non-owning read-only view of a column-major matrix with leading dimension `ld`.
struct MatrixView {
    const double* data = nullptr;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t ld = 0;

    double operator()(std::size_t i, std::size_t j) const { return data[i + j * ld]; }
    const double* col(std::size_t j) const { return data + j * ld; }
};

/// Dense column-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return values_[i + j * rows_]; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i + j * rows_]; }

    std::span<double> col(std::size_t j) { return {values_.data() + j * rows_, rows_}; }
    std::span<const double> col(std::size_t j) const { return {values_.data() + j * rows_, rows_}; }

    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }
    const std::vector<double>& values() const { return values_; }
    std::vector<double> release() && { return std::move(values_); }

    MatrixView view() const { return {values_.data(), rows_, cols_, rows_}; }
    operator MatrixView() const { return view(); }

    Matrix transposed() const;
    Matrix left_cols(std::size_t k) const;
    /// Horizontal concatenation [*this, other]; row counts must agree.
    Matrix append_cols(const Matrix& other) const;

    double frobenius_norm() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

enum class Op { none, trans };

/// C = beta*C + alpha*op(A)*op(B) using the given kernel table. C must already
/// have the result shape.
void gemm(const kernels::KernelTable& kt, Op op_a, Op op_b, double alpha, MatrixView a, MatrixView b,
          double beta, Matrix& c);

/// C = beta*C + alpha*op(A)*op(B) with the active kernels.
void gemm(Op op_a, Op op_b, double alpha, MatrixView a, MatrixView b, double beta, Matrix& c);

/// Returns op(A)*op(B).
Matrix multiply(MatrixView a, MatrixView b, Op op_a = Op::none, Op op_b = Op::none);

/// max_ij |(QᵀQ - I)_ij|
double orthogonality_defect(MatrixView q);

}  // namespace ttk
