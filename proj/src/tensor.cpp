#include "ttk/tensor.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ttk {

namespace {

std::string dims_string(std::span<const std::size_t> dims) {
    std::string s = "[";
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(dims[i]);
    }
    return s + "]";
}

}  // namespace

std::size_t dims_product(std::span<const std::size_t> dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>{});
}

DenseTensor::DenseTensor(Dims dims, std::vector<double> values) : dims_(std::move(dims)), values_(std::move(values)) {
    for (std::size_t d : dims_) {
        if (d == 0) throw std::invalid_argument("tensor: zero-length mode in " + dims_string(dims_));
    }
    if (values_.size() != dims_product(dims_)) {
        throw std::invalid_argument("tensor: " + std::to_string(values_.size()) + " values for dims " +
                                    dims_string(dims_));
    }
}

DenseTensor DenseTensor::zeros(Dims dims) {
    const std::size_t n = dims_product(dims);
    return DenseTensor(std::move(dims), std::vector<double>(n, 0.0));
}

DenseTensor DenseTensor::from_matrix(const Matrix& m) { return DenseTensor({m.rows(), m.cols()}, m.values()); }

DenseTensor DenseTensor::from_matrix(Matrix&& m) {
    Dims d{m.rows(), m.cols()};
    return DenseTensor(std::move(d), std::move(m).release());
}

std::size_t DenseTensor::offset(std::span<const std::size_t> index) const {
    if (index.size() != dims_.size()) throw std::invalid_argument("tensor: index order mismatch");
    std::size_t off = 0;
    std::size_t stride = 1;
    for (std::size_t n = 0; n < dims_.size(); ++n) {
        if (index[n] >= dims_[n]) throw std::out_of_range("tensor: index out of range");
        off += index[n] * stride;
        stride *= dims_[n];
    }
    return off;
}

MatrixView DenseTensor::as_matrix(std::size_t rows) const {
    if (rows == 0 || values_.size() % rows != 0) {
        throw std::invalid_argument("tensor: cannot view " + std::to_string(values_.size()) + " values with " +
                                    std::to_string(rows) + " rows");
    }
    return {values_.data(), rows, values_.size() / rows, rows};
}

DenseTensor reshape(const DenseTensor& t, Dims new_dims) {
    if (dims_product(new_dims) != t.size()) {
        throw std::invalid_argument("reshape: " + dims_string(t.dims()) + " -> " + dims_string(new_dims));
    }
    return DenseTensor(std::move(new_dims), std::vector<double>(t.values().begin(), t.values().end()));
}

DenseTensor reshape(DenseTensor&& t, Dims new_dims) {
    if (dims_product(new_dims) != t.size()) {
        throw std::invalid_argument("reshape: " + dims_string(t.dims()) + " -> " + dims_string(new_dims));
    }
    return DenseTensor(std::move(new_dims), std::move(t).release());
}

Matrix matricize(const DenseTensor& t, std::size_t split) {
    if (split < 1 || split >= t.order()) {
        throw std::invalid_argument("matricize: split " + std::to_string(split) + " outside 1.." +
                                    std::to_string(t.order() > 0 ? t.order() - 1 : 0));
    }
    const std::size_t rows = dims_product(std::span(t.dims()).first(split));
    return Matrix(rows, t.size() / rows, std::vector<double>(t.values().begin(), t.values().end()));
}

DenseTensor mode_n_product(const DenseTensor& t, MatrixView b, std::size_t mode) {
    if (mode >= t.order()) throw std::invalid_argument("mode_n_product: mode out of range");
    const std::size_t in = t.dim(mode);
    if (b.cols != in) {
        throw std::invalid_argument("mode_n_product: matrix has " + std::to_string(b.cols) + " columns, mode " +
                                    std::to_string(mode) + " has size " + std::to_string(in));
    }
    const std::size_t left = dims_product(std::span(t.dims()).first(mode));
    const std::size_t right = dims_product(std::span(t.dims()).subspan(mode + 1));
    const std::size_t out = b.rows;

    Dims dims = t.dims();
    dims[mode] = out;

    if (left == 1) {
        Matrix r = multiply(b, t.as_matrix(in));
        return DenseTensor(std::move(dims), std::move(r).release());
    }
    // Each right-index slab is a left x in matrix; multiply it by Bᵀ.
    std::vector<double> values(left * out * right);
    Matrix slab_out(left, out);
    for (std::size_t r = 0; r < right; ++r) {
        const MatrixView slab{t.data() + r * left * in, left, in, left};
        gemm(Op::none, Op::trans, 1.0, slab, b, 0.0, slab_out);
        std::copy(slab_out.data(), slab_out.data() + slab_out.size(), values.begin() + r * left * out);
    }
    return DenseTensor(std::move(dims), std::move(values));
}

DenseTensor contract(const DenseTensor& a, std::size_t mode_a, const DenseTensor& b, std::size_t mode_b) {
    if (mode_a >= a.order() || mode_b >= b.order()) throw std::invalid_argument("contract: mode out of range");
    const std::size_t common = a.dim(mode_a);
    if (b.dim(mode_b) != common) {
        throw std::invalid_argument("contract: common mode sizes differ (" + std::to_string(common) + " vs " +
                                    std::to_string(b.dim(mode_b)) + ")");
    }

    // a -> (rest_a x common), rest_a = left_a * right_a in column-major order.
    const std::size_t la = dims_product(std::span(a.dims()).first(mode_a));
    const std::size_t ra = dims_product(std::span(a.dims()).subspan(mode_a + 1));
    Matrix am(la * ra, common);
    for (std::size_t r = 0; r < ra; ++r)
        for (std::size_t c = 0; c < common; ++c)
            for (std::size_t l = 0; l < la; ++l) am(l + r * la, c) = a.data()[l + c * la + r * la * common];

    // b -> (common x rest_b).
    const std::size_t lb = dims_product(std::span(b.dims()).first(mode_b));
    const std::size_t rb = dims_product(std::span(b.dims()).subspan(mode_b + 1));
    Matrix bm(common, lb * rb);
    for (std::size_t r = 0; r < rb; ++r)
        for (std::size_t c = 0; c < common; ++c)
            for (std::size_t l = 0; l < lb; ++l) bm(c, l + r * lb) = b.data()[l + c * lb + r * lb * common];

    Dims dims;
    for (std::size_t n = 0; n < a.order(); ++n)
        if (n != mode_a) dims.push_back(a.dim(n));
    for (std::size_t n = 0; n < b.order(); ++n)
        if (n != mode_b) dims.push_back(b.dim(n));

    Matrix c = multiply(am, bm);
    return DenseTensor(std::move(dims), std::move(c).release());
}

double frobenius_norm(const DenseTensor& t) {
    return std::sqrt(kernels::active().sum_sq(t.size(), t.data()));
}

}  // namespace ttk
