#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "ttk/linalg.hpp"
#include "ttk/tensor.hpp"
#include "ttk/tt.hpp"

namespace ttk::test {

inline DenseTensor random_tensor(const Dims& dims, std::uint64_t seed) {
    std::vector<double> v(dims_product(dims));
    GaussianStream(RngSeed{seed}).fill(v);
    return DenseTensor(dims, std::move(v));
}

/// TT with Gaussian cores; ranks r_1..r_{N-1}.
inline TTTensor random_tt(const Dims& dims, const std::vector<std::size_t>& ranks, std::uint64_t seed) {
    std::vector<DenseTensor> cores;
    std::size_t r_prev = 1;
    for (std::size_t n = 0; n < dims.size(); ++n) {
        const std::size_t r_next = n + 1 < dims.size() ? ranks[n] : 1;
        cores.push_back(random_tensor({r_prev, dims[n], r_next}, seed * 1000 + n));
        r_prev = r_next;
    }
    return TTTensor(std::move(cores));
}

inline Eigen::MatrixXd to_eigen(MatrixView m) {
    Eigen::MatrixXd e(m.rows, m.cols);
    for (std::size_t j = 0; j < m.cols; ++j)
        for (std::size_t i = 0; i < m.rows; ++i) e(i, j) = m(i, j);
    return e;
}

inline Matrix from_eigen(const Eigen::MatrixXd& e) {
    Matrix m(e.rows(), e.cols());
    for (Eigen::Index j = 0; j < e.cols(); ++j)
        for (Eigen::Index i = 0; i < e.rows(); ++i) m(i, j) = e(i, j);
    return m;
}

inline std::vector<double> oracle_singular_values(MatrixView a) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
    const auto& s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

/// ‖P_a - P_b‖_F for the orthogonal projectors onto span(a) and span(b).
inline double projector_distance(MatrixView a, MatrixView b) {
    const Eigen::MatrixXd qa = to_eigen(a);
    const Eigen::MatrixXd qb = to_eigen(b);
    return (qa * qa.transpose() - qb * qb.transpose()).norm();
}

inline Matrix orth(MatrixView a) { return economy_qr(a).q; }

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

inline double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace ttk::test
