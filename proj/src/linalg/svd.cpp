#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ttk/linalg.hpp"

namespace ttk {
namespace {

constexpr double jacobi_tol = 1e-15;
constexpr int max_sweeps = 80;

// One-sided Jacobi on the columns of w (k x k). On return w = M·J has
// mutually orthogonal columns and j accumulates the rotations.
void one_sided_jacobi(Matrix& w, Matrix& j) {
    const auto& kt = kernels::active();
    const std::size_t k = w.cols();
    const std::size_t rows = w.rows();
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < k; ++p) {
            for (std::size_t q = p + 1; q < k; ++q) {
                double* wp = w.col(p).data();
                double* wq = w.col(q).data();
                const double alpha = kt.sum_sq(rows, wp);
                const double beta = kt.sum_sq(rows, wq);
                const double gamma = kt.dot(rows, wp, wq);
                if (alpha == 0.0 || beta == 0.0) continue;
                if (std::abs(gamma) <= jacobi_tol * std::sqrt(alpha) * std::sqrt(beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = c * t;
                kt.rot(rows, wp, wq, c, s);
                kt.rot(j.rows(), j.col(p).data(), j.col(q).data(), c, s);
            }
        }
        if (!rotated) return;
    }
    throw NumericalError("svd: Jacobi iteration did not converge in " + std::to_string(max_sweeps) + " sweeps");
}

// Normalizes the columns of w by s, completing an orthonormal set where the
// singular value is zero.
Matrix normalized_columns(const Matrix& w, std::span<const double> s) {
    const auto& kt = kernels::active();
    const std::size_t m = w.rows();
    const std::size_t k = w.cols();
    Matrix out(m, k);
    std::vector<bool> missing(k, false);
    const double smax = s.empty() ? 0.0 : s[0];
    for (std::size_t c = 0; c < k; ++c) {
        if (s[c] == 0.0 || s[c] <= smax * 1e-300) {
            missing[c] = true;
            continue;
        }
        auto dst = out.col(c);
        std::copy(w.col(c).begin(), w.col(c).end(), dst.begin());
        kt.scal(m, 1.0 / s[c], dst.data());
    }
    std::size_t probe = 0;
    for (std::size_t c = 0; c < k; ++c) {
        if (!missing[c]) continue;
        double* v = out.col(c).data();
        for (; probe < m; ++probe) {
            std::fill(v, v + m, 0.0);
            v[probe] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t o = 0; o < k; ++o) {
                    if (o == c || (missing[o] && o > c)) continue;
                    const double* u = out.col(o).data();
                    kt.axpy(m, -kt.dot(m, u, v), u, v);
                }
            }
            const double nrm = std::sqrt(kt.sum_sq(m, v));
            if (nrm > 0.5) {
                kt.scal(m, 1.0 / nrm, v);
                ++probe;
                break;
            }
        }
        missing[c] = false;
    }
    return out;
}

Matrix permute_columns(const Matrix& a, std::span<const std::size_t> order) {
    Matrix out(a.rows(), order.size());
    for (std::size_t c = 0; c < order.size(); ++c) {
        std::copy(a.col(order[c]).begin(), a.col(order[c]).end(), out.col(c).begin());
    }
    return out;
}

}  // namespace

SvdResult svd(MatrixView a, SvdVectors vectors) {
    const std::size_t m = a.rows;
    const std::size_t n = a.cols;
    if (m == 0 || n == 0) throw std::invalid_argument("svd: empty matrix");
    const std::size_t k = std::min(m, n);
    const bool tall = m >= n;
    const bool want_u = vectors != SvdVectors::none;
    const bool want_v = vectors == SvdVectors::both;

    // tall: A = Q R and the rotations act on Rᵀ, so A = (Q J) S Ŵᵀ.
    // wide: Aᵀ = Q R and the rotations act on R, so A = J S (Q Ŵ)ᵀ.
    // Either way the left factor is a product of exact rotations.
    Matrix q;
    Matrix r;
    const bool need_q = tall ? want_u : want_v;
    if (tall) {
        if (need_q) {
            auto qr = economy_qr(a);
            q = std::move(qr.q);
            r = std::move(qr.r);
        } else {
            r = qr_r_factor(a);
        }
    } else {
        Matrix at(n, m);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < m; ++i) at(j, i) = a(i, j);
        if (need_q) {
            auto qr = economy_qr(at);
            q = std::move(qr.q);
            r = std::move(qr.r);
        } else {
            r = qr_r_factor(at);
        }
    }

    Matrix w = tall ? r.transposed() : std::move(r);
    Matrix rot = Matrix::identity(k);
    one_sided_jacobi(w, rot);

    const auto& kt = kernels::active();
    std::vector<double> norms(k);
    for (std::size_t c = 0; c < k; ++c) norms[c] = std::sqrt(kt.sum_sq(k, w.col(c).data()));
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

    SvdResult res;
    res.s.resize(k);
    for (std::size_t c = 0; c < k; ++c) res.s[c] = norms[order[c]];

    const Matrix rot_sorted = permute_columns(rot, order);
    Matrix w_dir;
    if ((tall && want_v) || (!tall && want_u)) w_dir = normalized_columns(permute_columns(w, order), res.s);

    if (tall) {
        if (want_u) res.u = multiply(q, rot_sorted);
        if (want_v) res.v = std::move(w_dir);
    } else {
        if (want_u) res.u = rot_sorted;
        if (want_v) res.v = multiply(q, w_dir);
    }

    if (want_u) {
        for (std::size_t c = 0; c < k; ++c) {
            auto col = res.u.col(c);
            const auto it = std::max_element(col.begin(), col.end(),
                                              [](double x, double y) { return std::abs(x) < std::abs(y); });
            if (*it < 0.0) {
                kt.scal(col.size(), -1.0, col.data());
                if (want_v) kt.scal(res.v.rows(), -1.0, res.v.col(c).data());
            }
        }
    }
    return res;
}

std::size_t delta_rank(std::span<const double> s, double delta) {
    if (!(delta >= 0.0)) throw std::invalid_argument("delta_rank: delta must be nonnegative");
    const std::size_t k = s.size();
    if (k == 0) return 0;
    // tail[j] = sum_{i >= j} s_i^2 (0-based), accumulated from the small end.
    std::vector<double> tail(k + 1, 0.0);
    for (std::size_t i = k; i-- > 0;) tail[i] = tail[i + 1] + s[i] * s[i];
    for (std::size_t r = 1; r <= k; ++r) {
        if (std::sqrt(tail[r]) <= delta) return r;
    }
    return k;
}

SvdResult truncated_svd(MatrixView a, SvdTruncation trunc, SvdVectors vectors) {
    const std::size_t k = std::min(a.rows, a.cols);
    if (const auto* rt = std::get_if<RankTruncation>(&trunc)) {
        if (rt->rank == 0 || rt->rank > k) {
            throw std::invalid_argument("truncated_svd: rank " + std::to_string(rt->rank) + " outside 1.." +
                                        std::to_string(k));
        }
    } else if (!(std::get<DeltaTruncation>(trunc).delta >= 0.0)) {
        throw std::invalid_argument("truncated_svd: delta must be nonnegative");
    }

    SvdResult full = svd(a, vectors);
    const std::size_t r = std::holds_alternative<RankTruncation>(trunc)
                              ? std::get<RankTruncation>(trunc).rank
                              : delta_rank(full.s, std::get<DeltaTruncation>(trunc).delta);
    full.s.resize(r);
    if (!full.u.empty()) full.u = full.u.left_cols(r);
    if (!full.v.empty()) full.v = full.v.left_cols(r);
    return full;
}

double tail_energy(std::span<const double> s, std::size_t j) {
    if (j == 0) throw std::invalid_argument("tail_energy: index is 1-based");
    double acc = 0.0;
    for (std::size_t i = s.size(); i-- > j - 1;) acc += s[i] * s[i];
    return std::sqrt(acc);
}

double tail_energy(MatrixView a, std::size_t j) {
    if (j == 0) throw std::invalid_argument("tail_energy: index is 1-based");
    return tail_energy(svd(a, SvdVectors::none).s, j);
}

}  // namespace ttk
