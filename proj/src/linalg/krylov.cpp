#include <algorithm>
#include <stdexcept>
#include <string>

#include "ttk/linalg.hpp"

namespace ttk {
namespace {

// Aᵀ(A·x) without forming AᵀA.
Matrix gram_apply(MatrixView a, MatrixView x) {
    const Matrix ax = multiply(a, x);
    return multiply(a, ax, Op::trans, Op::none);
}

}  // namespace

Matrix block_krylov_basis(MatrixView a, MatrixView omega, std::size_t q, const KrylovOptions& opts) {
    if (omega.rows != a.cols) {
        throw std::invalid_argument("block_krylov_basis: Omega has " + std::to_string(omega.rows) +
                                    " rows, A has " + std::to_string(a.cols) + " columns");
    }
    if (q == 0) throw std::invalid_argument("block_krylov_basis: q must be >= 1");
    if (omega.cols == 0) throw std::invalid_argument("block_krylov_basis: empty Omega");

    const std::size_t blocks = q + (opts.include_zeroth_block ? 1 : 0);
    std::size_t cap = std::min({a.cols, a.rows, blocks * omega.cols});
    if (opts.max_cols > 0) cap = std::min(cap, opts.max_cols);

    if (opts.naive) {
        Matrix stacked(a.cols, 0);
        Matrix power(omega.rows, omega.cols);
        for (std::size_t j = 0; j < omega.cols; ++j) std::copy(omega.col(j), omega.col(j) + omega.rows, power.col(j).data());
        if (opts.include_zeroth_block) stacked = power;
        for (std::size_t t = 0; t < q; ++t) {
            power = gram_apply(a, power);
            stacked = stacked.append_cols(power);
        }
        return orthonormal_extension(Matrix(), stacked, opts.drop_tol, cap);
    }

    Matrix basis(a.cols, 0);
    Matrix block;
    if (opts.include_zeroth_block) {
        basis = orthonormal_extension(Matrix(), omega, opts.drop_tol, cap);
        block = basis;
    }
    for (std::size_t t = 0; t < q && basis.cols() < cap; ++t) {
        const Matrix next = block.empty() ? gram_apply(a, omega) : gram_apply(a, block);
        Matrix fresh = orthonormal_extension(basis, next, opts.drop_tol, cap - basis.cols());
        if (fresh.cols() == 0) break;
        basis = basis.append_cols(fresh);
        block = std::move(fresh);
    }
    return basis;
}

}  // namespace ttk
