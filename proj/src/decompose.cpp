#include "ttk/decompose.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "ttk/kernels.hpp"

namespace ttk {

std::string_view method_name(Method m) {
    switch (m) {
        case Method::svd:
            return "svd";
        case Method::rsvd:
            return "rsvd";
        case Method::rsi:
            return "rsi";
        case Method::rbki:
            return "rbki";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
    for (Method m : {Method::svd, Method::rsvd, Method::rsi, Method::rbki}) {
        if (method_name(m) == name) return m;
    }
    return std::nullopt;
}

double SweepTrace::residual_sum_sq() const {
    double acc = 0.0;
    for (const auto& s : steps) acc += s.residual * s.residual;
    return acc;
}

double SweepTrace::tail_bound() const {
    double acc = 0.0;
    for (const auto& s : steps)
        if (s.tail) acc += *s.tail * *s.tail;
    return std::sqrt(acc);
}

namespace {

struct StepBasis {
    Matrix q;  // rows x r_n, orthonormal columns
    std::optional<double> tail;
    std::size_t sketch_cols = 0;
    bool clamped = false;
};

struct StepInput {
    MatrixView a;
    std::size_t index;  // zero-based unfolding index
};

using RangeFinder = std::function<StepBasis(const StepInput&)>;

// Left-to-right sweep shared by all four algorithms: unfold, find a basis Q for
// the step, store Q as the core, continue with QᵀA.
Decomposition sweep(const DenseTensor& t, const RangeFinder& finder) {
    const auto& kt = kernels::active();
    const std::size_t order = t.order();
    Decomposition out;
    if (order == 0) throw std::invalid_argument("decompose: order-0 tensor");
    for (double v : t.values()) {
        if (!std::isfinite(v)) throw NumericalError("decompose: input tensor has non-finite entries");
    }

    std::vector<DenseTensor> cores;
    std::vector<double> carry(t.values().begin(), t.values().end());
    std::size_t r_prev = 1;

    for (std::size_t n = 0; n + 1 < order; ++n) {
        const std::size_t rows = r_prev * t.dim(n);
        const std::size_t cols = carry.size() / rows;
        const MatrixView a{carry.data(), rows, cols, rows};

        const auto start = std::chrono::steady_clock::now();
        StepBasis basis = finder({a, n});
        const std::size_t rank = basis.q.cols();
        for (double v : basis.q.values()) {
            if (!std::isfinite(v)) throw NumericalError("decompose: step " + std::to_string(n + 1) + " basis is not finite");
        }
        Matrix next = multiply(basis.q, a, Op::trans, Op::none);
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        const double total_sq = kt.sum_sq(carry.size(), carry.data());
        const double kept_sq = kt.sum_sq(next.size(), next.data());

        SweepStep step;
        step.step = n + 1;
        step.rank = rank;
        step.rows = rows;
        step.cols = cols;
        step.sketch_cols = basis.sketch_cols;
        step.clamped = basis.clamped;
        step.tail = basis.tail;
        step.residual = std::sqrt(std::max(0.0, total_sq - kept_sq));
        step.seconds = seconds;
        out.trace.steps.push_back(step);
        if (basis.clamped) {
            out.trace.diagnostics.push_back("step " + std::to_string(n + 1) + ": sketch width clamped to " +
                                            std::to_string(basis.sketch_cols) + " columns");
        }

        cores.emplace_back(Dims{r_prev, t.dim(n), rank}, std::move(basis.q).release());
        carry = std::move(next).release();
        r_prev = rank;
    }
    cores.emplace_back(Dims{r_prev, t.dim(order - 1), 1}, std::move(carry));
    out.tt = TTTensor(std::move(cores));
    return out;
}

void check_ranks(const DenseTensor& t, std::span<const std::size_t> ranks) {
    const std::size_t order = t.order();
    if (order == 0) throw std::invalid_argument("decompose: order-0 tensor");
    if (ranks.size() + 1 != order) {
        throw std::invalid_argument("decompose: " + std::to_string(ranks.size()) + " ranks given for an order-" +
                                    std::to_string(order) + " tensor (need " + std::to_string(order - 1) + ")");
    }
    std::size_t r_prev = 1;
    std::size_t right = t.size();
    for (std::size_t n = 0; n < ranks.size(); ++n) {
        right /= t.dim(n);
        const std::size_t limit = std::min(r_prev * t.dim(n), right);
        if (ranks[n] < 1 || ranks[n] > limit) {
            throw std::invalid_argument("decompose: rank r_" + std::to_string(n + 1) + " = " +
                                        std::to_string(ranks[n]) + " infeasible (must be in 1.." +
                                        std::to_string(limit) + ")");
        }
        r_prev = ranks[n];
    }
}

// Orthonormal rows x rank basis taken from the sketch y.
Matrix select_basis(const Matrix& y, std::size_t rank, bool svd_truncate) {
    const std::size_t rows = y.rows();
    if (svd_truncate && y.cols() > 0) {
        Matrix u = svd(y, SvdVectors::left).u;
        if (u.cols() >= rank) return u.left_cols(rank);
        // Rank-deficient sketch: complete the basis.
        return economy_qr(u.append_cols(Matrix(rows, rank - u.cols()))).q.left_cols(rank);
    }
    if (y.cols() >= rank) return economy_qr(y).q.left_cols(rank);
    return economy_qr(y.append_cols(Matrix(rows, rank - y.cols()))).q.left_cols(rank);
}

struct SketchWidth {
    std::size_t cols;
    bool clamped;
};

SketchWidth sketch_width(const SketchConfig& cfg, std::size_t rank, std::size_t available) {
    const std::size_t wanted = rank + cfg.oversampling;
    return {std::min(wanted, available), wanted > available};
}

void check_config(const DenseTensor& t, const SketchConfig& cfg) {
    check_ranks(t, cfg.ranks);
    if (cfg.power < 1) throw std::invalid_argument("decompose: power/Krylov depth q must be >= 1");
}

}  // namespace

Decomposition tt_svd(const DenseTensor& t, const TruncationSpec& trunc) {
    if (const auto* eps = std::get_if<EpsilonTruncation>(&trunc)) {
        if (!(eps->epsilon >= 0.0)) throw std::invalid_argument("tt_svd: epsilon must be >= 0");
        if (t.order() < 2) throw std::invalid_argument("tt_svd: epsilon mode needs an order >= 2 tensor");
        const double delta = eps->epsilon * frobenius_norm(t) / std::sqrt(static_cast<double>(t.order() - 1));
        return sweep(t, [delta](const StepInput& in) {
            SvdResult f = svd(in.a, SvdVectors::left);
            const std::size_t r = delta_rank(f.s, delta);
            return StepBasis{f.u.left_cols(r), tail_energy(f.s, r + 1), 0, false};
        });
    }
    const auto& ranks = std::get<FixedRanks>(trunc).ranks;
    check_ranks(t, ranks);
    return sweep(t, [&ranks](const StepInput& in) {
        SvdResult f = svd(in.a, SvdVectors::left);
        const std::size_t r = ranks[in.index];
        return StepBasis{f.u.left_cols(r), tail_energy(f.s, r + 1), 0, false};
    });
}

Decomposition tt_rsvd(const DenseTensor& t, const SketchConfig& cfg) {
    check_config(t, cfg);
    return sweep(t, [&cfg](const StepInput& in) {
        const std::size_t r = cfg.ranks[in.index];
        const auto width = sketch_width(cfg, r, in.a.cols);
        const Matrix omega = gaussian_matrix(in.a.cols, width.cols, derive_seed(cfg.seed, in.index));
        const Matrix y = multiply(in.a, omega);
        return StepBasis{select_basis(y, r, cfg.svd_truncate), std::nullopt, width.cols, width.clamped};
    });
}

Decomposition tt_rsi(const DenseTensor& t, const SketchConfig& cfg) {
    check_config(t, cfg);
    return sweep(t, [&cfg](const StepInput& in) {
        const std::size_t r = cfg.ranks[in.index];
        const auto width = sketch_width(cfg, r, in.a.cols);
        const Matrix omega = gaussian_matrix(in.a.cols, width.cols, derive_seed(cfg.seed, in.index));
        Matrix y = multiply(in.a, omega);
        Matrix q = economy_qr(y).q;
        for (std::size_t j = 0; j < cfg.power; ++j) {
            const Matrix y_hat = multiply(in.a, q, Op::trans, Op::none);
            const Matrix q_hat = economy_qr(y_hat).q;
            y = multiply(in.a, q_hat);
            q = economy_qr(y).q;
        }
        Matrix basis = cfg.svd_truncate ? select_basis(y, r, true) : q.left_cols(r);
        return StepBasis{std::move(basis), std::nullopt, width.cols, width.clamped};
    });
}

Decomposition tt_rbki(const DenseTensor& t, const SketchConfig& cfg) {
    check_config(t, cfg);
    return sweep(t, [&cfg](const StepInput& in) {
        const std::size_t r = cfg.ranks[in.index];
        auto width = sketch_width(cfg, r, in.a.cols);
        const Matrix omega = gaussian_matrix(in.a.cols, width.cols, derive_seed(cfg.seed, in.index));

        KrylovOptions opts;
        opts.naive = cfg.naive_krylov;
        opts.include_zeroth_block = cfg.include_zeroth_block;
        const Matrix u = block_krylov_basis(in.a, omega, cfg.power, opts);
        const std::size_t blocks = cfg.power + (cfg.include_zeroth_block ? 1 : 0);
        if (blocks * width.cols > std::min(in.a.rows, in.a.cols)) width.clamped = true;

        const Matrix y = multiply(in.a, u);
        return StepBasis{select_basis(y, r, cfg.svd_truncate), std::nullopt, u.cols(), width.clamped};
    });
}

Decomposition decompose(Method method, const DenseTensor& t, const SketchConfig& cfg) {
    switch (method) {
        case Method::svd:
            return tt_svd(t, FixedRanks{cfg.ranks});
        case Method::rsvd:
            return tt_rsvd(t, cfg);
        case Method::rsi:
            return tt_rsi(t, cfg);
        case Method::rbki:
            return tt_rbki(t, cfg);
    }
    throw std::invalid_argument("decompose: unknown method");
}

void attach_relative_error(Decomposition& result, const DenseTensor& reference) {
    const DenseTensor approx = tt_reconstruct(result.tt);
    if (approx.dims() != reference.dims()) throw std::invalid_argument("attach_relative_error: dims differ");
    double diff = 0.0;
    for (std::size_t i = 0; i < approx.size(); ++i) {
        const double d = reference.data()[i] - approx.data()[i];
        diff += d * d;
    }
    result.trace.relative_error = std::sqrt(diff) / frobenius_norm(reference);
}

}  // namespace ttk
