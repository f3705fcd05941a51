#include "ttk/tt.hpp"

#include <algorithm>
#include <stdexcept>

#include "ttk/io.hpp"

namespace ttk {

TTTensor::TTTensor(std::vector<DenseTensor> cores) : cores_(std::move(cores)) {
    for (std::size_t n = 0; n < cores_.size(); ++n) {
        if (cores_[n].order() != 3) {
            throw std::invalid_argument("tt: core " + std::to_string(n) + " has order " +
                                        std::to_string(cores_[n].order()) + ", expected 3");
        }
    }
}

std::vector<std::size_t> TTTensor::ranks() const {
    std::vector<std::size_t> r;
    if (cores_.empty()) return r;
    for (const auto& c : cores_) r.push_back(c.dim(0));
    r.push_back(cores_.back().dim(2));
    return r;
}

Dims TTTensor::mode_sizes() const {
    Dims d;
    for (const auto& c : cores_) d.push_back(c.dim(1));
    return d;
}

std::size_t TTTensor::parameter_count() const {
    std::size_t total = 0;
    for (const auto& c : cores_) total += c.size();
    return total;
}

void check_rank_chain(const TTTensor& tt) {
    if (tt.order() == 0) throw std::invalid_argument("tt: no cores");
    for (std::size_t n = 0; n + 1 < tt.order(); ++n) {
        if (tt.core(n).dim(2) != tt.core(n + 1).dim(0)) {
            throw std::invalid_argument("tt: core " + std::to_string(n + 1) + " leading rank " +
                                        std::to_string(tt.core(n + 1).dim(0)) + " does not match core " +
                                        std::to_string(n) + " trailing rank " + std::to_string(tt.core(n).dim(2)));
        }
    }
    if (tt.core(0).dim(0) != 1) {
        throw std::invalid_argument("tt: core 0 has boundary rank r_0 = " + std::to_string(tt.core(0).dim(0)));
    }
    if (tt.cores().back().dim(2) != 1) {
        throw std::invalid_argument("tt: core " + std::to_string(tt.order() - 1) + " has boundary rank r_N = " +
                                    std::to_string(tt.cores().back().dim(2)));
    }
}

double TTValidation::max_orthogonality() const {
    double worst = 0.0;
    for (double v : orthogonality) worst = std::max(worst, v);
    return worst;
}

TTValidation validate(const TTTensor& tt) {
    TTValidation report;
    if (tt.order() == 0) {
        report.rank_chain_ok = false;
        report.issues.push_back("no cores");
        return report;
    }
    for (std::size_t n = 0; n + 1 < tt.order(); ++n) {
        if (tt.core(n).dim(2) != tt.core(n + 1).dim(0)) {
            report.rank_chain_ok = false;
            report.issues.push_back("rank mismatch between core " + std::to_string(n) + " and core " +
                                    std::to_string(n + 1));
        }
    }
    if (tt.core(0).dim(0) != 1) {
        report.boundary_ranks_ok = false;
        report.issues.push_back("r_0 = " + std::to_string(tt.core(0).dim(0)) + ", expected 1");
    }
    if (tt.cores().back().dim(2) != 1) {
        report.boundary_ranks_ok = false;
        report.issues.push_back("r_N = " + std::to_string(tt.cores().back().dim(2)) + ", expected 1");
    }
    for (std::size_t n = 0; n + 1 < tt.order(); ++n) {
        const auto& c = tt.core(n);
        report.orthogonality.push_back(orthogonality_defect(c.as_matrix(c.dim(0) * c.dim(1))));
    }
    return report;
}

DenseTensor tt_reconstruct(const TTTensor& tt) {
    check_rank_chain(tt);
    const auto& first = tt.core(0);
    // left holds the partial contraction as (I_1...I_n) x r_n.
    Matrix left(first.dim(1), first.dim(2), std::vector<double>(first.values().begin(), first.values().end()));
    for (std::size_t n = 1; n < tt.order(); ++n) {
        const auto& c = tt.core(n);
        const MatrixView cm = c.as_matrix(c.dim(0));
        Matrix prod = multiply(left, cm);
        const std::size_t rows = prod.rows() * c.dim(1);
        left = Matrix(rows, c.dim(2), std::move(prod).release());
    }
    return DenseTensor(tt.mode_sizes(), std::move(left).release());
}

std::vector<std::uint8_t> tt_encode(const TTTensor& tt) {
    check_rank_chain(tt);
    ByteWriter w;
    w.magic("TTC1");
    w.u32(static_cast<std::uint32_t>(tt.order()));
    for (std::size_t r : tt.ranks()) w.u64(r);
    for (std::size_t i : tt.mode_sizes()) w.u64(i);
    for (const auto& c : tt.cores()) w.f64s(c.values());
    return w.bytes();
}

TTTensor tt_decode(std::span<const std::uint8_t> bytes) {
    ByteReader rd(bytes);
    rd.expect_magic("TTC1");
    const std::size_t order_offset = rd.offset();
    const std::uint32_t n = rd.u32();
    if (n == 0) throw ParseError("TT with zero cores", order_offset);

    std::vector<std::uint64_t> ranks(n + 1);
    for (auto& r : ranks) {
        const std::size_t at = rd.offset();
        r = rd.u64();
        if (r == 0) throw ParseError("zero TT rank", at);
    }
    std::vector<std::uint64_t> modes(n);
    for (auto& m : modes) {
        const std::size_t at = rd.offset();
        m = rd.u64();
        if (m == 0) throw ParseError("zero mode size", at);
    }
    if (ranks.front() != 1) {
        throw std::invalid_argument("ttc: core 0 has boundary rank r_0 = " + std::to_string(ranks.front()));
    }
    if (ranks.back() != 1) {
        throw std::invalid_argument("ttc: core " + std::to_string(n - 1) + " has boundary rank r_N = " +
                                    std::to_string(ranks.back()));
    }

    std::vector<DenseTensor> cores;
    cores.reserve(n);
    for (std::uint32_t k = 0; k < n; ++k) {
        Dims d{ranks[k], modes[k], ranks[k + 1]};
        std::size_t count = 0;
        if (__builtin_mul_overflow(d[0], d[1], &count) || __builtin_mul_overflow(count, d[2], &count)) {
            throw ParseError("core " + std::to_string(k) + " size overflows", rd.offset());
        }
        cores.emplace_back(std::move(d), rd.f64s(count));
    }
    rd.expect_end();
    return TTTensor(std::move(cores));
}

void tt_save(const TTTensor& tt, const std::filesystem::path& path) { write_file(path, tt_encode(tt)); }

TTTensor tt_load(const std::filesystem::path& path) { return tt_decode(read_file(path)); }

}  // namespace ttk
