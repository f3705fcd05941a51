#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "ttk/matrix.hpp"

namespace ttk {

using Dims = std::vector<std::size_t>;

std::size_t dims_product(std::span<const std::size_t> dims);

/// Order-N dense tensor, column-major (first index fastest). Order 0 denotes a
/// scalar and only arises as a contraction result.
///
/// Mode indices in this API are zero-based.
class DenseTensor {
public:
    DenseTensor() : values_(1, 0.0) {}
    DenseTensor(Dims dims, std::vector<double> values);

    static DenseTensor zeros(Dims dims);
    static DenseTensor from_matrix(const Matrix& m);
    static DenseTensor from_matrix(Matrix&& m);

    const Dims& dims() const { return dims_; }
    std::size_t order() const { return dims_.size(); }
    std::size_t size() const { return values_.size(); }
    std::size_t dim(std::size_t mode) const { return dims_.at(mode); }

    std::span<const double> values() const { return values_; }
    const double* data() const { return values_.data(); }
    std::vector<double> release() && { return std::move(values_); }

    /// Linear offset of a zero-based multi-index.
    std::size_t offset(std::span<const std::size_t> index) const;
    double at(std::span<const std::size_t> index) const { return values_[offset(index)]; }
    double at(std::initializer_list<std::size_t> index) const {
        return at(std::span<const std::size_t>(index.begin(), index.size()));
    }

    /// The buffer seen as a rows x (size/rows) column-major matrix.
    MatrixView as_matrix(std::size_t rows) const;

    friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

private:
    Dims dims_;
    std::vector<double> values_;
};

DenseTensor reshape(const DenseTensor& t, Dims new_dims);
DenseTensor reshape(DenseTensor&& t, Dims new_dims);

/// Unfolding with the first `split` modes as rows, 1 <= split <= N-1.
Matrix matricize(const DenseTensor& t, std::size_t split);

/// t x_mode B, B of shape J x I_mode.
DenseTensor mode_n_product(const DenseTensor& t, MatrixView b, std::size_t mode);

/// Contraction of a's mode `mode_a` with b's mode `mode_b`. Result modes are
/// a's remaining modes followed by b's remaining modes.
DenseTensor contract(const DenseTensor& a, std::size_t mode_a, const DenseTensor& b, std::size_t mode_b);

double frobenius_norm(const DenseTensor& t);

}  // namespace ttk
