#include "ttk/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ttk/io.hpp"

namespace ttk {

DenseTensor spectrum_decay_tensor(const SpectrumParams& p) {
    if (p.n < 1) throw std::invalid_argument("spectrum_decay_tensor: n must be >= 1");
    if (p.plateau < 1) throw std::invalid_argument("spectrum_decay_tensor: T must be >= 1");
    if (!(p.decay > 0.0)) throw std::invalid_argument("spectrum_decay_tensor: D must be > 0");
    const std::size_t n = p.n;
    std::vector<double> v(n * n * n, 0.0);
    for (std::size_t j = 1; j <= n; ++j) {
        const std::size_t ones = std::min(p.plateau, j);
        for (std::size_t k = 1; k <= n; ++k) {
            double d = 1.0;
            if (k > ones) d = std::pow(10.0, -static_cast<double>(k - ones) * p.decay);
            v[(k - 1) + (k - 1) * n + (j - 1) * n * n] = d;
        }
    }
    return DenseTensor({n, n, n}, std::move(v));
}

DenseTensor power_function_tensor(const PowerFnParams& p) {
    if (p.dims.empty()) throw std::invalid_argument("power_function_tensor: need at least one mode");
    if (!(p.h > 0.0)) throw std::invalid_argument("power_function_tensor: h must be > 0");
    for (std::size_t d : p.dims)
        if (d == 0) throw std::invalid_argument("power_function_tensor: zero-length mode");

    const std::size_t order = p.dims.size();
    const std::size_t total = dims_product(p.dims);
    std::vector<double> values(total);
    std::vector<std::size_t> idx(order, 1);
    for (std::size_t lin = 0; lin < total; ++lin) {
        double s = 0.0;
        for (std::size_t n = 0; n < order; ++n) s += std::pow(static_cast<double>(idx[n]), p.h);
        values[lin] = std::pow(s, -1.0 / p.h);
        for (std::size_t n = 0; n < order; ++n) {
            if (++idx[n] <= p.dims[n]) break;
            idx[n] = 1;
        }
    }
    return DenseTensor(p.dims, std::move(values));
}

DenseTensor add_awgn(const DenseTensor& t, double snr_db, RngSeed seed) {
    const double norm = frobenius_norm(t);
    if (norm == 0.0) throw std::invalid_argument("add_awgn: signal power of an all-zero tensor is undefined");
    if (!std::isfinite(snr_db)) throw std::invalid_argument("add_awgn: snr must be finite");
    const double power = norm * norm / static_cast<double>(t.size());
    const double sigma = std::sqrt(power / std::pow(10.0, snr_db / 10.0));

    std::vector<double> out(t.values().begin(), t.values().end());
    GaussianStream noise(seed);
    for (double& x : out) x += sigma * noise.next();
    return DenseTensor(t.dims(), std::move(out));
}

std::vector<std::uint8_t> tensor_encode(const DenseTensor& t) {
    ByteWriter w;
    w.magic("DTEN");
    w.u8(1);
    w.u32(static_cast<std::uint32_t>(t.order()));
    for (std::size_t d : t.dims()) w.u64(d);
    w.f64s(t.values());
    return w.bytes();
}

DenseTensor tensor_decode(std::span<const std::uint8_t> bytes) {
    ByteReader rd(bytes);
    rd.expect_magic("DTEN");
    const std::size_t version_at = rd.offset();
    const std::uint8_t version = rd.u8();
    if (version != 1) throw ParseError("unsupported dten version " + std::to_string(version), version_at);
    const std::uint32_t order = rd.u32();
    Dims dims(order);
    std::size_t total = 1;
    for (auto& d : dims) {
        const std::size_t at = rd.offset();
        d = rd.u64();
        if (d == 0) throw ParseError("zero mode size", at);
        if (__builtin_mul_overflow(total, d, &total)) throw ParseError("dimension product overflows", at);
    }
    std::vector<double> values = rd.f64s(total);
    rd.expect_end();
    return DenseTensor(std::move(dims), std::move(values));
}

void tensor_save(const DenseTensor& t, const std::filesystem::path& path) { write_file(path, tensor_encode(t)); }

DenseTensor tensor_load(const std::filesystem::path& path) { return tensor_decode(read_file(path)); }

}  // namespace ttk
