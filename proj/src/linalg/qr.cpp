#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ttk/linalg.hpp"

namespace ttk {
namespace {

struct Householder {
    Matrix work;              // reflectors below the diagonal, R on and above
    std::vector<double> tau;  // one per reflector
};

// LAPACK dgeqr2-style unblocked factorization. Reflector j is
// H_j = I - tau_j v vᵀ with v = [1; work(j+1:m, j)].
Householder factor(MatrixView a) {
    const auto& kt = kernels::active();
    const std::size_t m = a.rows;
    const std::size_t n = a.cols;
    const std::size_t k = std::min(m, n);

    Householder h{Matrix(m, n), std::vector<double>(k, 0.0)};
    for (std::size_t j = 0; j < n; ++j) std::copy(a.col(j), a.col(j) + m, h.work.col(j).data());

    for (std::size_t j = 0; j < k; ++j) {
        double* x = h.work.col(j).data() + j;
        const std::size_t len = m - j;
        if (len < 2) continue;

        // Squares of entries far from 1 under- or overflow, and a wrong norm
        // makes the reflector non-orthogonal, so such columns are rescaled
        // first. The reflector only depends on the direction of x.
        double amax = 0.0;
        for (std::size_t i = 0; i < len; ++i) amax = std::max(amax, std::abs(x[i]));
        if (amax < std::numeric_limits<double>::min()) continue;  // H_j = I
        const double scale = (amax < 1e-100 || amax > 1e100) ? amax : 1.0;
        if (scale != 1.0) kt.scal(len, 1.0 / scale, x);

        const double alpha = x[0];
        const double xnorm = std::sqrt(kt.sum_sq(len - 1, x + 1));
        if (xnorm == 0.0) {
            x[0] = alpha * scale;
            continue;  // H_j = I
        }

        const double beta = -std::copysign(std::hypot(alpha, xnorm), alpha);
        const double tau = (beta - alpha) / beta;
        kt.scal(len - 1, 1.0 / (alpha - beta), x + 1);
        x[0] = beta * scale;
        h.tau[j] = tau;

        for (std::size_t c = j + 1; c < n; ++c) {
            double* y = h.work.col(c).data() + j;
            const double w = tau * (y[0] + kt.dot(len - 1, x + 1, y + 1));
            y[0] -= w;
            kt.axpy(len - 1, -w, x + 1, y + 1);
        }
    }
    return h;
}

Matrix extract_r(const Householder& h) {
    const std::size_t k = h.tau.size();
    const std::size_t n = h.work.cols();
    Matrix r(k, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i <= std::min(j, k - 1); ++i) r(i, j) = h.work(i, j);
    return r;
}

Matrix form_q(const Householder& h) {
    const auto& kt = kernels::active();
    const std::size_t m = h.work.rows();
    const std::size_t k = h.tau.size();
    Matrix q(m, k);
    for (std::size_t i = 0; i < k; ++i) q(i, i) = 1.0;

    // Backward accumulation: only columns j..k-1 are touched by H_j.
    for (std::size_t jj = k; jj-- > 0;) {
        const double tau = h.tau[jj];
        if (tau == 0.0) continue;
        const double* v = h.work.col(jj).data() + jj;
        const std::size_t len = m - jj;
        for (std::size_t c = jj; c < k; ++c) {
            double* y = q.col(c).data() + jj;
            const double w = tau * (y[0] + kt.dot(len - 1, v + 1, y + 1));
            y[0] -= w;
            kt.axpy(len - 1, -w, v + 1, y + 1);
        }
    }
    return q;
}

}  // namespace

QrResult economy_qr(MatrixView a) {
    if (a.rows == 0 || a.cols == 0) throw std::invalid_argument("economy_qr: empty matrix");
    Householder h = factor(a);
    return {form_q(h), extract_r(h)};
}

Matrix qr_r_factor(MatrixView a) {
    if (a.rows == 0 || a.cols == 0) throw std::invalid_argument("qr_r_factor: empty matrix");
    return extract_r(factor(a));
}

Matrix orthonormal_extension(const Matrix& basis, MatrixView w, double drop_tol, std::size_t max_new) {
    const auto& kt = kernels::active();
    const std::size_t m = w.rows;
    if (!basis.empty() && basis.rows() != m) {
        throw std::invalid_argument("orthonormal_extension: basis and block row counts differ");
    }

    double ref = 0.0;
    for (std::size_t j = 0; j < w.cols; ++j) ref = std::max(ref, std::sqrt(kt.sum_sq(m, w.col(j))));
    if (ref == 0.0 || max_new == 0) return Matrix(m, 0);

    Matrix block(m, w.cols);
    for (std::size_t j = 0; j < w.cols; ++j) std::copy(w.col(j), w.col(j) + m, block.col(j).data());

    if (!basis.empty() && basis.cols() > 0) {
        for (int pass = 0; pass < 2; ++pass) {
            const Matrix coeff = multiply(basis, block, Op::trans, Op::none);
            gemm(Op::none, Op::none, -1.0, basis, coeff, 1.0, block);
        }
    }

    std::vector<double> accepted;
    accepted.reserve(m * std::min(max_new, w.cols));
    std::size_t count = 0;
    for (std::size_t j = 0; j < block.cols() && count < max_new; ++j) {
        double* v = block.col(j).data();
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t c = 0; c < count; ++c) {
                const double* u = accepted.data() + c * m;
                kt.axpy(m, -kt.dot(m, u, v), u, v);
            }
        }
        const double nrm = std::sqrt(kt.sum_sq(m, v));
        if (!(nrm > drop_tol * ref)) continue;
        kt.scal(m, 1.0 / nrm, v);
        accepted.insert(accepted.end(), v, v + m);
        ++count;
    }
    return Matrix(m, count, std::move(accepted));
}

}  // namespace ttk
