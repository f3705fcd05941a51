#include "ttk/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ttk {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows * cols) {
        throw std::invalid_argument("matrix: " + std::to_string(values_.size()) + " values for shape " +
                                    std::to_string(rows) + "x" + std::to_string(cols));
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    // Blocked to keep both sides cache resident on large unfoldings.
    constexpr std::size_t blk = 32;
    for (std::size_t jb = 0; jb < cols_; jb += blk) {
        const std::size_t je = std::min(cols_, jb + blk);
        for (std::size_t ib = 0; ib < rows_; ib += blk) {
            const std::size_t ie = std::min(rows_, ib + blk);
            for (std::size_t j = jb; j < je; ++j)
                for (std::size_t i = ib; i < ie; ++i) t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

Matrix Matrix::left_cols(std::size_t k) const {
    if (k > cols_) throw std::invalid_argument("left_cols: k exceeds column count");
    return Matrix(rows_, k, std::vector<double>(values_.begin(), values_.begin() + rows_ * k));
}

Matrix Matrix::append_cols(const Matrix& other) const {
    if (other.rows_ != rows_ && !other.empty() && !empty()) {
        throw std::invalid_argument("append_cols: row count mismatch");
    }
    if (empty()) return other;
    std::vector<double> v = values_;
    v.insert(v.end(), other.values_.begin(), other.values_.end());
    return Matrix(rows_, cols_ + other.cols_, std::move(v));
}

double Matrix::frobenius_norm() const {
    return std::sqrt(kernels::active().sum_sq(values_.size(), values_.data()));
}

namespace {

constexpr std::size_t kc_block = 256;
constexpr std::size_t mc_block = 128;
constexpr std::size_t nc_block = 1536;

static_assert(mc_block % kernels::gemm_mr == 0);
static_assert(nc_block % kernels::gemm_nr == 0);

void pack_a(Op op, MatrixView a, std::size_t i0, std::size_t mc, std::size_t p0, std::size_t kc, double* out) {
    constexpr std::size_t mr = kernels::gemm_mr;
    for (std::size_t ir = 0; ir < mc; ir += mr) {
        const std::size_t m_eff = std::min(mr, mc - ir);
        for (std::size_t p = 0; p < kc; ++p) {
            for (std::size_t i = 0; i < mr; ++i) {
                double v = 0.0;
                if (i < m_eff) {
                    const std::size_t row = i0 + ir + i;
                    const std::size_t col = p0 + p;
                    v = op == Op::none ? a(row, col) : a(col, row);
                }
                *out++ = v;
            }
        }
    }
}

void pack_b(Op op, MatrixView b, std::size_t p0, std::size_t kc, std::size_t j0, std::size_t nc, double* out) {
    constexpr std::size_t nr = kernels::gemm_nr;
    for (std::size_t jr = 0; jr < nc; jr += nr) {
        const std::size_t n_eff = std::min(nr, nc - jr);
        for (std::size_t p = 0; p < kc; ++p) {
            for (std::size_t j = 0; j < nr; ++j) {
                double v = 0.0;
                if (j < n_eff) {
                    const std::size_t row = p0 + p;
                    const std::size_t col = j0 + jr + j;
                    v = op == Op::none ? b(row, col) : b(col, row);
                }
                *out++ = v;
            }
        }
    }
}

}  // namespace

void gemm(const kernels::KernelTable& kt, Op op_a, Op op_b, double alpha, MatrixView a, MatrixView b,
          double beta, Matrix& c) {
    const std::size_t m = op_a == Op::none ? a.rows : a.cols;
    const std::size_t k = op_a == Op::none ? a.cols : a.rows;
    const std::size_t kb = op_b == Op::none ? b.rows : b.cols;
    const std::size_t n = op_b == Op::none ? b.cols : b.rows;
    if (k != kb || c.rows() != m || c.cols() != n) {
        throw std::invalid_argument("gemm: inner dimensions " + std::to_string(k) + " vs " + std::to_string(kb) +
                                    ", result " + std::to_string(c.rows()) + "x" + std::to_string(c.cols()) +
                                    " expected " + std::to_string(m) + "x" + std::to_string(n));
    }

    if (beta == 0.0) {
        std::fill(c.data(), c.data() + c.size(), 0.0);
    } else if (beta != 1.0) {
        kt.scal(c.size(), beta, c.data());
    }
    if (m == 0 || n == 0 || k == 0 || alpha == 0.0) return;

    constexpr std::size_t mr = kernels::gemm_mr;
    constexpr std::size_t nr = kernels::gemm_nr;
    // Packing buffers persist per thread; pack_a/pack_b overwrite every slot they use.
    thread_local std::vector<double> a_pack;
    thread_local std::vector<double> b_pack;
    const std::size_t kc_max = std::min(kc_block, k);
    const std::size_t a_need = (std::min(mc_block, m) + mr - 1) / mr * mr * kc_max;
    const std::size_t b_need = (std::min(nc_block, n) + nr - 1) / nr * nr * kc_max;
    if (a_pack.size() < a_need) a_pack.resize(a_need);
    if (b_pack.size() < b_need) b_pack.resize(b_need);
    double ct[mr * nr];

    for (std::size_t jc = 0; jc < n; jc += nc_block) {
        const std::size_t nc = std::min(nc_block, n - jc);
        for (std::size_t pc = 0; pc < k; pc += kc_block) {
            const std::size_t kc = std::min(kc_block, k - pc);
            pack_b(op_b, b, pc, kc, jc, nc, b_pack.data());
            for (std::size_t ic = 0; ic < m; ic += mc_block) {
                const std::size_t mc = std::min(mc_block, m - ic);
                pack_a(op_a, a, ic, mc, pc, kc, a_pack.data());
                for (std::size_t jr = 0; jr < nc; jr += nr) {
                    const std::size_t n_eff = std::min(nr, nc - jr);
                    const double* bp = b_pack.data() + (jr / nr) * nr * kc;
                    for (std::size_t ir = 0; ir < mc; ir += mr) {
                        const std::size_t m_eff = std::min(mr, mc - ir);
                        const double* ap = a_pack.data() + (ir / mr) * mr * kc;
                        kt.gemm_micro(kc, ap, bp, ct);
                        for (std::size_t j = 0; j < n_eff; ++j) {
                            double* cc = c.data() + (ic + ir) + (jc + jr + j) * m;
                            const double* tc = ct + j * mr;
                            for (std::size_t i = 0; i < m_eff; ++i) cc[i] += alpha * tc[i];
                        }
                    }
                }
            }
        }
    }
}

void gemm(Op op_a, Op op_b, double alpha, MatrixView a, MatrixView b, double beta, Matrix& c) {
    gemm(kernels::active(), op_a, op_b, alpha, a, b, beta, c);
}

Matrix multiply(MatrixView a, MatrixView b, Op op_a, Op op_b) {
    const std::size_t m = op_a == Op::none ? a.rows : a.cols;
    const std::size_t n = op_b == Op::none ? b.cols : b.rows;
    Matrix c(m, n);
    gemm(op_a, op_b, 1.0, a, b, 0.0, c);
    return c;
}

double orthogonality_defect(MatrixView q) {
    const Matrix g = multiply(q, q, Op::trans, Op::none);
    double worst = 0.0;
    for (std::size_t j = 0; j < g.cols(); ++j)
        for (std::size_t i = 0; i < g.rows(); ++i)
            worst = std::max(worst, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
    return worst;
}

}  // namespace ttk
