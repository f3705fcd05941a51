#include <cmath>

#include "ttk/linalg.hpp"

namespace ttk {

double GaussianStream::symmetric_uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-52 - 1.0;
}

double GaussianStream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double x = 0.0;
    double y = 0.0;
    double s = 0.0;
    do {
        x = symmetric_uniform();
        y = symmetric_uniform();
        s = x * x + y * y;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = y * scale;
    has_spare_ = true;
    return x * scale;
}

void GaussianStream::fill(std::span<double> out) {
    for (double& x : out) x = next();
}

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, RngSeed seed) {
    Matrix m(rows, cols);
    GaussianStream stream(seed);
    stream.fill(std::span<double>(m.data(), m.size()));
    return m;
}

RngSeed derive_seed(RngSeed seed, std::uint64_t salt) {
    std::uint64_t z = seed.value ^ (salt * 0x9e3779b97f4a7c15ULL);
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return {z ^ (z >> 31)};
}

}  // namespace ttk
