#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ttk/linalg.hpp"
#include "ttk/tensor.hpp"

namespace ttk {

struct SpectrumParams {
    std::size_t n = 0;        // tensor is n x n x n
    std::size_t plateau = 1;  // T
    double decay = 1.0;       // D
};

/// Frontal slice j (1-based, third mode) is diag(1 x min(T,j), 10^-D, 10^-2D, ...)
/// with exactly n diagonal entries; everything off the diagonal is zero.
DenseTensor spectrum_decay_tensor(const SpectrumParams& p);

struct PowerFnParams {
    Dims dims;
    double h = 1.0;
};

/// Entry (i_1..i_N), 1-based, is (i_1^h + ... + i_N^h)^(-1/h). The sum runs
/// over modes in order and each term is std::pow(i, h).
DenseTensor power_function_tensor(const PowerFnParams& p);

/// Adds i.i.d. Gaussian noise at the requested SNR measured against the
/// tensor's mean power ‖t‖²/size. The noise stream is GaussianStream(seed).
DenseTensor add_awgn(const DenseTensor& t, double snr_db, RngSeed seed);

/// ".dten" container: "DTEN", u8 version (1), u32 N, N u64 dims, then the
/// values as column-major little-endian doubles.
void tensor_save(const DenseTensor& t, const std::filesystem::path& path);
DenseTensor tensor_load(const std::filesystem::path& path);

std::vector<std::uint8_t> tensor_encode(const DenseTensor& t);
DenseTensor tensor_decode(std::span<const std::uint8_t> bytes);

}  // namespace ttk
