#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "ttk/matrix.hpp"

namespace ttk {

/// Non-finite data or an iteration that did not converge.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// QR
// ---------------------------------------------------------------------------

struct QrResult {
    Matrix q;  // m x min(m,n), orthonormal columns
    Matrix r;  // min(m,n) x n, upper triangular
};

/// Householder economy QR. Rank-deficient input still yields orthonormal Q.
QrResult economy_qr(MatrixView a);

/// R factor of the Householder QR without forming Q.
Matrix qr_r_factor(MatrixView a);

/// Orthonormal basis for the part of span(w) not already in span(basis).
///
/// The block is projected against `basis` twice (classical Gram-Schmidt with
/// reorthogonalization), then orthonormalized column by column. Columns whose
/// remaining norm is at most `drop_tol` times the largest input column norm
/// are dropped. At most `max_new` columns are returned. `basis` may be empty
/// and must have orthonormal columns otherwise.
Matrix orthonormal_extension(const Matrix& basis, MatrixView w, double drop_tol, std::size_t max_new);

// ---------------------------------------------------------------------------
// SVD
// ---------------------------------------------------------------------------

enum class SvdVectors { both, left, none };

struct SvdResult {
    Matrix u;               // m x k
    std::vector<double> s;  // k values, nonincreasing
    Matrix v;               // n x k (empty unless requested)

    std::size_t rank() const { return s.size(); }
};

/// Thin SVD, k = min(m, n). Householder QR reduces the problem to a k x k
/// triangle which is diagonalized by one-sided Jacobi rotations. Each left
/// singular vector is signed so that its largest-magnitude entry is
/// nonnegative.
SvdResult svd(MatrixView a, SvdVectors vectors = SvdVectors::both);

struct DeltaTruncation {
    double delta;
};
struct RankTruncation {
    std::size_t rank;
};
using SvdTruncation = std::variant<DeltaTruncation, RankTruncation>;

/// Rank selected by the delta rule: smallest r >= 1 whose tail beyond r is <= delta.
std::size_t delta_rank(std::span<const double> s, double delta);

SvdResult truncated_svd(MatrixView a, SvdTruncation trunc, SvdVectors vectors = SvdVectors::both);

/// sqrt(sum_{i >= j} s_i^2) for 1-based j; zero when j exceeds the count.
double tail_energy(std::span<const double> s, std::size_t j);
double tail_energy(MatrixView a, std::size_t j);

// ---------------------------------------------------------------------------
// Random sketches
// ---------------------------------------------------------------------------

struct RngSeed {
    std::uint64_t value = 0;
    friend bool operator==(RngSeed, RngSeed) = default;
};

/// Standard normal stream: std::mt19937_64 seeded with the raw seed. Each
/// pair comes from the Marsaglia polar method: two 53-bit uniforms mapped to
/// (-1, 1), rejected unless 0 < s < 1, then the x sample is emitted before
/// the y sample.
class GaussianStream {
public:
    explicit GaussianStream(RngSeed seed) : engine_(seed.value) {}

    double next();
    void fill(std::span<double> out);

private:
    double symmetric_uniform();

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// rows x cols matrix of i.i.d. N(0,1) entries, filled column-major from a
/// GaussianStream.
Matrix gaussian_matrix(std::size_t rows, std::size_t cols, RngSeed seed);

/// Deterministic per-use seed derivation (splitmix64 of seed ^ salt).
RngSeed derive_seed(RngSeed seed, std::uint64_t salt);

// ---------------------------------------------------------------------------
// Block Krylov
// ---------------------------------------------------------------------------

struct KrylovOptions {
    /// Stack the raw powers and orthonormalize once at the end.
    bool naive = false;
    /// Prepend the Omega block itself to the Krylov space.
    bool include_zeroth_block = false;
    /// Extra cap on the basis width; 0 means none.
    std::size_t max_cols = 0;
    double drop_tol = 1e-12;
};

/// Orthonormal basis of span[AᵀAΩ, (AᵀA)²Ω, ..., (AᵀA)^q Ω]. AᵀA is never
/// formed; each block is Aᵀ(A·previous). By default every new block is
/// orthonormalized against the basis built so far before the next power is
/// taken. Width is capped at min(A.cols, A.rows, blocks * Ω.cols).
Matrix block_krylov_basis(MatrixView a, MatrixView omega, std::size_t q, const KrylovOptions& opts = {});

}  // namespace ttk
