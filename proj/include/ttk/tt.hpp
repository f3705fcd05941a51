#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "ttk/tensor.hpp"

namespace ttk {

/// Tensor train: N order-3 cores, core n of dims (r_{n-1}, I_n, r_n) with
/// r_0 = r_N = 1. Construction only checks that every core is order 3; the
/// rank chain is checked by validate() and by every consumer.
class TTTensor {
public:
    TTTensor() = default;
    explicit TTTensor(std::vector<DenseTensor> cores);

    const std::vector<DenseTensor>& cores() const { return cores_; }
    const DenseTensor& core(std::size_t n) const { return cores_.at(n); }
    std::size_t order() const { return cores_.size(); }

    /// r_0..r_N taken from the cores' leading dims plus the last trailing dim.
    std::vector<std::size_t> ranks() const;
    Dims mode_sizes() const;
    /// sum_n r_{n-1} I_n r_n
    std::size_t parameter_count() const;

    friend bool operator==(const TTTensor&, const TTTensor&) = default;

private:
    std::vector<DenseTensor> cores_;
};

/// Throws std::invalid_argument naming the first offending core.
void check_rank_chain(const TTTensor& tt);

struct TTValidation {
    bool rank_chain_ok = true;
    bool boundary_ranks_ok = true;
    std::vector<std::string> issues;
    /// max |QᵀQ - I| of each core's (r_{n-1} I_n) x r_n unfolding, cores 0..N-2.
    std::vector<double> orthogonality;

    double max_orthogonality() const;
    bool ok(double orth_tol = 1e-10) const {
        return rank_chain_ok && boundary_ranks_ok && max_orthogonality() <= orth_tol;
    }
};

TTValidation validate(const TTTensor& tt);

DenseTensor tt_reconstruct(const TTTensor& tt);

/// ".ttc" container: "TTC1", u32 N, (N+1) u64 ranks, N u64 mode sizes, then the
/// cores in order as column-major little-endian doubles.
void tt_save(const TTTensor& tt, const std::filesystem::path& path);
TTTensor tt_load(const std::filesystem::path& path);

std::vector<std::uint8_t> tt_encode(const TTTensor& tt);
TTTensor tt_decode(std::span<const std::uint8_t> bytes);

}  // namespace ttk
