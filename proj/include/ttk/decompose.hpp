#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ttk/linalg.hpp"
#include "ttk/tensor.hpp"
#include "ttk/tt.hpp"

namespace ttk {

enum class Method { svd, rsvd, rsi, rbki };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

/// Parameters of the randomized sweeps.
struct SketchConfig {
    std::vector<std::size_t> ranks;  // r_1..r_{N-1}
    std::size_t oversampling = 0;    // p
    std::size_t power = 1;           // q
    RngSeed seed{};
    bool naive_krylov = false;
    bool include_zeroth_block = false;
    /// Keep the top-r left singular vectors of the sketch instead of the
    /// first r columns of its QR factor.
    bool svd_truncate = false;
};

/// ε mode: per-step threshold δ = ε·‖A‖_F / sqrt(N-1).
struct EpsilonTruncation {
    double epsilon;
};
struct FixedRanks {
    std::vector<std::size_t> ranks;
};
using TruncationSpec = std::variant<EpsilonTruncation, FixedRanks>;

struct SweepStep {
    std::size_t step = 0;  // 1-based unfolding index
    std::size_t rank = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t sketch_cols = 0;  // 0 for the deterministic sweep
    bool clamped = false;
    /// Tail energy of the unfolding beyond the chosen rank (deterministic sweep only).
    std::optional<double> tail;
    /// ‖(I - QQᵀ)A‖_F for the step's unfolding A.
    double residual = 0.0;
    double seconds = 0.0;
};

struct SweepTrace {
    std::vector<SweepStep> steps;
    std::vector<std::string> diagnostics;
    std::optional<double> relative_error;

    /// Σ residual²; equals ‖A - reconstruction‖² in exact arithmetic.
    double residual_sum_sq() const;
    /// sqrt(Σ tail²) over steps that carry a tail.
    double tail_bound() const;
};

struct Decomposition {
    TTTensor tt;
    SweepTrace trace;
};

Decomposition tt_svd(const DenseTensor& t, const TruncationSpec& trunc);
Decomposition tt_rsvd(const DenseTensor& t, const SketchConfig& cfg);
Decomposition tt_rsi(const DenseTensor& t, const SketchConfig& cfg);
Decomposition tt_rbki(const DenseTensor& t, const SketchConfig& cfg);

/// Fixed-rank dispatch; the deterministic method ignores everything but cfg.ranks.
Decomposition decompose(Method method, const DenseTensor& t, const SketchConfig& cfg);

/// Fills trace.relative_error from a reconstruction of result.tt.
void attach_relative_error(Decomposition& result, const DenseTensor& reference);

// ---------------------------------------------------------------------------
// Error-bound factors
// ---------------------------------------------------------------------------

/// 1 + t·sqrt(12r/p) + u·t·e·sqrt(r+p)/(p+1); needs p >= 1.
double eta_rsvd(double r, double p, double t = 1.0, double u = 1.0);

/// (1 + sqrt(r/(p-1)) + e·sqrt(r+p)/p)^(1/(2q+1)); needs p >= 2.
double eta_rbki(double r, double p, double q);

/// Power-iteration bound on ‖(I - P_Z)A‖ from A's singular values (1-based δ_j
/// in the formula); needs p >= 2.
double power_iteration_bound(std::size_t r, std::size_t p, std::size_t q, std::span<const double> spectrum);

struct BoundFactors {
    double eta_sketch = 0.0;
    double eta_krylov = 0.0;
    std::optional<double> bound_power;
    double prefactor = 0.0;  // sqrt(N-1)
};

BoundFactors bound_factors(std::size_t r, std::size_t p, std::size_t q, std::size_t order, double t = 1.0,
                           double u = 1.0, std::optional<std::span<const double>> spectrum = std::nullopt);

}  // namespace ttk
