#include <cmath>
#include <numeric>
#include <stdexcept>

#include "doctest.h"
#include "support.hpp"
#include "ttk/linalg.hpp"

using namespace ttk;
using test::to_eigen;

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

bool upper_triangular(const Matrix& r) {
    for (std::size_t j = 0; j < r.cols(); ++j)
        for (std::size_t i = j + 1; i < r.rows(); ++i)
            if (r(i, j) != 0.0) return false;
    return true;
}

}  // namespace

TEST_CASE("economy QR of the 3-4-5 column") {
    const auto f = economy_qr(Matrix(2, 1, {3.0, 4.0}));
    CHECK(std::abs(f.q(0, 0)) == doctest::Approx(0.6));
    CHECK(std::abs(f.q(1, 0)) == doctest::Approx(0.8));
    CHECK(std::abs(f.r(0, 0)) == doctest::Approx(5.0));
    CHECK(f.q(0, 0) * f.r(0, 0) == doctest::Approx(3.0));
}

TEST_CASE("economy QR of the identity is the identity up to signs") {
    const auto f = economy_qr(Matrix::identity(4));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(std::abs(f.q(i, j)) == doctest::Approx(i == j ? 1.0 : 0.0));
            CHECK(std::abs(f.r(i, j)) == doctest::Approx(i == j ? 1.0 : 0.0));
        }
}

TEST_CASE("economy QR reconstructs tall, square and wide inputs") {
    for (auto [m, n] : {std::pair<std::size_t, std::size_t>{50, 10}, {12, 12}, {7, 19}, {1, 5}, {5, 1}}) {
        CAPTURE(m);
        CAPTURE(n);
        const Matrix a = gaussian_matrix(m, n, RngSeed{m * 100 + n});
        const auto f = economy_qr(a);
        const std::size_t k = std::min(m, n);
        REQUIRE(f.q.rows() == m);
        REQUIRE(f.q.cols() == k);
        REQUIRE(f.r.rows() == k);
        REQUIRE(f.r.cols() == n);
        CHECK(upper_triangular(f.r));
        CHECK(orthogonality_defect(f.q) <= 1e-12);
        const Matrix qr = multiply(f.q, f.r);
        CHECK((to_eigen(qr) - to_eigen(a)).norm() <= 1e-10 * std::max(1.0, a.frobenius_norm()));
    }
}

TEST_CASE("economy QR of a rank-deficient matrix still has orthonormal Q containing range(A)") {
    Matrix a = gaussian_matrix(20, 6, RngSeed{9});
    for (std::size_t i = 0; i < 20; ++i) {
        a(i, 3) = a(i, 0) + a(i, 1);
        a(i, 5) = 0.0;
    }
    const auto f = economy_qr(a);
    CHECK(orthogonality_defect(f.q) <= 1e-12);
    const Eigen::MatrixXd q = to_eigen(f.q);
    CHECK((q * (q.transpose() * to_eigen(a)) - to_eigen(a)).norm() <= 1e-10);
    CHECK_THROWS_AS(economy_qr(Matrix()), std::invalid_argument);
}

TEST_CASE("economy QR stays orthonormal for columns of extreme magnitude") {
    Matrix a = gaussian_matrix(50, 8, RngSeed{12});
    const double scales[] = {1.0, 1e-158, 1e-60, 1e-170, 1e-200, 1e160, 1e-300, 1e-155};
    for (std::size_t j = 0; j < 8; ++j)
        for (std::size_t i = 0; i < 50; ++i) a(i, j) *= scales[j];
    const auto f = economy_qr(a);
    CHECK(orthogonality_defect(f.q) <= 1e-13);
    const Matrix qr = multiply(f.q, f.r);
    for (std::size_t j = 0; j < 8; ++j) {
        bool close = true;
        for (std::size_t i = 0; i < 50; ++i) close = close && std::abs(qr(i, j) - a(i, j)) <= 1e-13 * scales[j] * 10.0;
        CHECK_MESSAGE(close, "column " << j);
    }
}

TEST_CASE("qr_r_factor matches the R of the full factorization") {
    const Matrix a = gaussian_matrix(40, 9, RngSeed{11});
    CHECK(qr_r_factor(a) == economy_qr(a).r);
}

TEST_CASE("orthonormal extension projects out the basis and drops dependent columns") {
    const Matrix basis = test::orth(gaussian_matrix(30, 4, RngSeed{1}));
    Matrix w = gaussian_matrix(30, 5, RngSeed{2});
    // Column 2 lies in span(basis), column 4 duplicates column 0.
    const Matrix in_span = multiply(basis, gaussian_matrix(4, 1, RngSeed{3}));
    for (std::size_t i = 0; i < 30; ++i) {
        w(i, 2) = in_span(i, 0);
        w(i, 4) = w(i, 0);
    }
    const Matrix ext = orthonormal_extension(basis, w, 1e-12, 10);
    CHECK(ext.cols() == 3);
    CHECK(orthogonality_defect(basis.append_cols(ext)) <= 1e-12);
    CHECK(orthonormal_extension(basis, w, 1e-12, 2).cols() == 2);
    CHECK(orthonormal_extension(Matrix(), Matrix(30, 3), 1e-12, 3).cols() == 0);
}

TEST_CASE("SVD of diag(3,2,1)") {
    Matrix a(3, 3);
    a(0, 0) = 3.0;
    a(1, 1) = 2.0;
    a(2, 2) = 1.0;
    const auto f = svd(a);
    REQUIRE(f.rank() == 3);
    CHECK(f.s[0] == doctest::Approx(3.0));
    CHECK(f.s[1] == doctest::Approx(2.0));
    CHECK(f.s[2] == doctest::Approx(1.0));
}

TEST_CASE("SVD of a rank-1 outer product") {
    const Matrix u = test::orth(gaussian_matrix(8, 1, RngSeed{1}));
    const Matrix v = test::orth(gaussian_matrix(6, 1, RngSeed{2}));
    const auto f = svd(multiply(u, v, Op::none, Op::trans));
    CHECK(f.s[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 1; i < f.rank(); ++i) CHECK(f.s[i] <= 1e-12);
}

TEST_CASE("SVD matches an independent oracle and reconstructs") {
    for (auto [m, n] : {std::pair<std::size_t, std::size_t>{20, 30}, {30, 20}, {17, 17}, {1, 9}, {9, 1}, {200, 12}}) {
        CAPTURE(m);
        CAPTURE(n);
        const Matrix a = gaussian_matrix(m, n, RngSeed{m + 7 * n});
        const auto f = svd(a);
        const auto oracle = test::oracle_singular_values(a);
        REQUIRE(f.rank() == std::min(m, n));
        for (std::size_t i = 0; i < f.rank(); ++i) {
            CHECK(f.s[i] == doctest::Approx(oracle[i]).epsilon(1e-8));
            if (i) CHECK(f.s[i] <= f.s[i - 1]);
        }
        CHECK(orthogonality_defect(f.u) <= 1e-10);
        CHECK(orthogonality_defect(f.v) <= 1e-10);
        Eigen::MatrixXd us = to_eigen(f.u);
        for (std::size_t j = 0; j < f.rank(); ++j) us.col(j) *= f.s[j];
        CHECK((us * to_eigen(f.v).transpose() - to_eigen(a)).norm() <= 1e-9 * a.frobenius_norm());

        // Sign convention: largest-magnitude entry of each left vector is nonnegative.
        for (std::size_t j = 0; j < f.rank(); ++j) {
            const auto col = f.u.col(j);
            const auto it = std::max_element(col.begin(), col.end(),
                                             [](double x, double y) { return std::abs(x) < std::abs(y); });
            CHECK(*it >= 0.0);
        }
    }
}

TEST_CASE("SVD singular values match the Gram-matrix eigenvalues") {
    const Matrix a = gaussian_matrix(20, 30, RngSeed{77});
    const Eigen::MatrixXd g = to_eigen(a) * to_eigen(a).transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
    const auto f = svd(a, SvdVectors::none);
    for (std::size_t i = 0; i < 20; ++i) {
        CHECK(f.s[i] == doctest::Approx(std::sqrt(eig.eigenvalues()(19 - i))).epsilon(1e-8));
    }
    CHECK(f.v.empty());
    CHECK(svd(a, SvdVectors::left).v.empty());
}

TEST_CASE("SVD of a zero matrix completes orthonormal factors") {
    const auto f = svd(Matrix(5, 3));
    for (double s : f.s) CHECK(s == 0.0);
    CHECK(orthogonality_defect(f.u) <= 1e-12);
    CHECK(orthogonality_defect(f.v) <= 1e-12);
}

TEST_CASE("SVD of a matrix with repeated singular values") {
    const Matrix q = test::orth(gaussian_matrix(10, 4, RngSeed{4}));
    const auto f = svd(q);
    for (double s : f.s) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(orthogonality_defect(f.v) <= 1e-10);
}

TEST_CASE("delta rank selection") {
    const std::vector<double> s{3.0, 2.0, 1.0};
    CHECK(delta_rank(s, 1.5) == 2);
    CHECK(delta_rank(s, 1.0) == 2);
    CHECK(delta_rank(s, 0.5) == 3);
    CHECK(delta_rank(s, 0.0) == 3);
    CHECK(delta_rank(s, std::sqrt(5.0)) == 1);
    CHECK(delta_rank(s, 100.0) == 1);
    CHECK_THROWS_AS(delta_rank(s, -1.0), std::invalid_argument);
}

TEST_CASE("truncated SVD residual equals the tail energy") {
    const Matrix a = gaussian_matrix(30, 20, RngSeed{5});
    const auto f = truncated_svd(a, RankTruncation{5});
    REQUIRE(f.rank() == 5);
    Eigen::MatrixXd us = to_eigen(f.u);
    for (std::size_t j = 0; j < 5; ++j) us.col(j) *= f.s[j];
    const double residual = (to_eigen(a) - us * to_eigen(f.v).transpose()).norm();
    const auto oracle = test::oracle_singular_values(a);
    double tail = 0.0;
    for (std::size_t i = 5; i < oracle.size(); ++i) tail += oracle[i] * oracle[i];
    CHECK(residual == doctest::Approx(std::sqrt(tail)).epsilon(1e-9));
    CHECK(residual == doctest::Approx(tail_energy(a, 6)).epsilon(1e-9));

    CHECK_THROWS_AS(truncated_svd(a, RankTruncation{0}), std::invalid_argument);
    CHECK_THROWS_AS(truncated_svd(a, RankTruncation{21}), std::invalid_argument);
    CHECK_THROWS_AS(truncated_svd(a, DeltaTruncation{-0.1}), std::invalid_argument);
}

TEST_CASE("delta-truncated SVD satisfies the tail rule") {
    const Matrix a = gaussian_matrix(25, 15, RngSeed{6});
    for (double delta : {0.0, 0.5, 2.0, 5.0, 1e6}) {
        CAPTURE(delta);
        const auto f = truncated_svd(a, DeltaTruncation{delta});
        const std::size_t r = f.rank();
        CHECK(tail_energy(a, r + 1) <= delta);
        if (r > 1) CHECK(tail_energy(a, r) > delta);
    }
    CHECK(truncated_svd(a, DeltaTruncation{a.frobenius_norm()}).rank() == 1);
}

TEST_CASE("tail energy") {
    Matrix d(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 2.0;
    d(2, 2) = 1.0;
    CHECK(tail_energy(d, 2) == doctest::Approx(std::sqrt(5.0)));
    CHECK(tail_energy(d, 4) == 0.0);
    CHECK_THROWS_AS(tail_energy(d, 0), std::invalid_argument);

    const Matrix a = gaussian_matrix(15, 10, RngSeed{8});
    CHECK(tail_energy(a, 1) == doctest::Approx(a.frobenius_norm()).epsilon(1e-10));

    // Eckart-Young: the best rank-3 approximation error.
    Eigen::JacobiSVD<Eigen::MatrixXd> oracle(to_eigen(a), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::MatrixXd best = oracle.matrixU().leftCols(3) * oracle.singularValues().head(3).asDiagonal() *
                                 oracle.matrixV().leftCols(3).transpose();
    CHECK(tail_energy(a, 4) == doctest::Approx((to_eigen(a) - best).norm()).epsilon(1e-9));
}

TEST_CASE("Gaussian sketches are deterministic per seed") {
    const Matrix a = gaussian_matrix(7, 5, RngSeed{42});
    CHECK(a.rows() == 7);
    CHECK(a.cols() == 5);
    CHECK(a == gaussian_matrix(7, 5, RngSeed{42}));
    const Matrix b = gaussian_matrix(7, 5, RngSeed{43});
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) differs |= a.values()[i] != b.values()[i];
    CHECK(differs);
    // Column-major fill from one stream: a narrower sketch is a prefix.
    const Matrix narrow = gaussian_matrix(7, 3, RngSeed{42});
    CHECK(narrow == a.left_cols(3));
}

TEST_CASE("Gaussian sketch moments") {
    const Matrix g = gaussian_matrix(1000, 1000, RngSeed{2024});
    const double n = static_cast<double>(g.size());
    const double mean = std::accumulate(g.values().begin(), g.values().end(), 0.0) / n;
    double var = 0.0;
    for (double x : g.values()) var += (x - mean) * (x - mean);
    var /= n - 1.0;
    CHECK(std::abs(mean) <= 0.01);
    CHECK(var >= 0.99);
    CHECK(var <= 1.01);
}

TEST_CASE("derived seeds differ per salt and are reproducible") {
    const RngSeed s{5};
    CHECK(derive_seed(s, 0) == derive_seed(s, 0));
    CHECK(!(derive_seed(s, 0) == derive_seed(s, 1)));
    CHECK(!(derive_seed(s, 0) == derive_seed(RngSeed{6}, 0)));
}

TEST_CASE("block Krylov basis with q = 1 spans A^T A Omega") {
    const Matrix a = gaussian_matrix(20, 15, RngSeed{1});
    const Matrix omega = gaussian_matrix(15, 4, RngSeed{2});
    const Matrix u = block_krylov_basis(a, omega, 1);
    const Matrix ata_omega = multiply(a, multiply(a, omega), Op::trans, Op::none);
    CHECK(u.cols() == 4);
    CHECK(test::projector_distance(u, test::orth(ata_omega)) <= 1e-8);
}

TEST_CASE("block Krylov basis collapses onto v for a rank-1 matrix") {
    const Matrix uvec = test::orth(gaussian_matrix(12, 1, RngSeed{3}));
    const Matrix v = test::orth(gaussian_matrix(9, 1, RngSeed{4}));
    Matrix a = multiply(uvec, v, Op::none, Op::trans);
    for (double& x : std::span(a.data(), a.size())) x *= 2.5;
    const Matrix basis = block_krylov_basis(a, gaussian_matrix(9, 3, RngSeed{5}), 3);
    CHECK(basis.cols() == 1);
    const Eigen::MatrixXd b = to_eigen(basis);
    CHECK((b * (b.transpose() * to_eigen(v)) - to_eigen(v)).norm() <= 1e-8);
}

TEST_CASE("block Krylov basis is orthonormal, capped, and matches the stacked powers") {
    const Matrix a = gaussian_matrix(40, 30, RngSeed{6});
    const Matrix omega = gaussian_matrix(30, 5, RngSeed{7});
    for (std::size_t q : {1u, 2u, 3u}) {
        CAPTURE(q);
        const Matrix u = block_krylov_basis(a, omega, q);
        CHECK(u.cols() == 5 * q);
        CHECK(max_abs(to_eigen(u).transpose() * to_eigen(u) - Eigen::MatrixXd::Identity(u.cols(), u.cols())) <=
              1e-10);

        KrylovOptions naive;
        naive.naive = true;
        const Matrix un = block_krylov_basis(a, omega, q, naive);
        CHECK(test::projector_distance(u, un) <= 1e-6);

        // Direct oracle: span of [AᵀAΩ, (AᵀA)²Ω, ...].
        const Eigen::MatrixXd ata = to_eigen(a).transpose() * to_eigen(a);
        Eigen::MatrixXd k(30, 5 * q), p = to_eigen(omega);
        for (std::size_t t = 0; t < q; ++t) {
            p = ata * p;
            k.middleCols(5 * t, 5) = p;
        }
        CHECK(test::projector_distance(u, test::orth(test::from_eigen(k))) <= 1e-6);
    }

    // Width cap: 4 blocks of 5 would exceed the 15 columns of a 40 x 15 matrix.
    const Matrix narrow = gaussian_matrix(40, 15, RngSeed{8});
    CHECK(block_krylov_basis(narrow, gaussian_matrix(15, 5, RngSeed{9}), 4).cols() == 15);
    KrylovOptions capped;
    capped.max_cols = 7;
    CHECK(block_krylov_basis(a, omega, 3, capped).cols() == 7);
}

TEST_CASE("block Krylov basis with the zeroth block includes Omega") {
    const Matrix a = gaussian_matrix(25, 20, RngSeed{10});
    const Matrix omega = gaussian_matrix(20, 3, RngSeed{11});
    KrylovOptions opts;
    opts.include_zeroth_block = true;
    const Matrix u = block_krylov_basis(a, omega, 2, opts);
    CHECK(u.cols() == 9);
    const Eigen::MatrixXd b = to_eigen(u);
    CHECK((b * (b.transpose() * to_eigen(omega)) - to_eigen(omega)).norm() <= 1e-8 * to_eigen(omega).norm());
}

TEST_CASE("q = 1 Krylov range equals the power-augmented sketch range") {
    // Y = A·U spans A AᵀA Ω = (AAᵀ) A Ω, the one-step power sketch.
    const Matrix a = gaussian_matrix(30, 50, RngSeed{12});
    const Matrix omega = gaussian_matrix(50, 6, RngSeed{13});
    KrylovOptions naive;
    naive.naive = true;
    const Matrix y = multiply(a, block_krylov_basis(a, omega, 1, naive));
    const Eigen::MatrixXd ea = to_eigen(a);
    const Eigen::MatrixXd power = ea * ea.transpose() * ea * to_eigen(omega);
    CHECK(test::projector_distance(test::orth(y), test::orth(test::from_eigen(power))) <= 1e-6);
}

TEST_CASE("block Krylov basis validates its inputs") {
    const Matrix a = gaussian_matrix(5, 4, RngSeed{1});
    CHECK_THROWS_AS(block_krylov_basis(a, Matrix(5, 2), 1), std::invalid_argument);
    CHECK_THROWS_AS(block_krylov_basis(a, Matrix(4, 2), 0), std::invalid_argument);
}
