#include <cmath>
#include <cstdlib>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "ttk/kernels.hpp"
#include "ttk/matrix.hpp"

using namespace ttk;
namespace kn = ttk::kernels;

namespace {

std::vector<double> gaussian_vector(std::size_t n, std::uint64_t seed) {
    std::vector<double> v(n);
    GaussianStream(RngSeed{seed}).fill(v);
    return v;
}

std::vector<const kn::KernelTable*> tables() {
    std::vector<const kn::KernelTable*> out{&kn::scalar_table()};
    if (kn::avx2_table() && kn::cpu_supports(kn::Isa::avx2)) out.push_back(kn::avx2_table());
    return out;
}

// Reference product with long-double accumulation.
Matrix naive_product(Op op_a, Op op_b, double alpha, MatrixView a, MatrixView b, double beta, const Matrix& c0) {
    const std::size_t m = op_a == Op::none ? a.rows : a.cols;
    const std::size_t k = op_a == Op::none ? a.cols : a.rows;
    const std::size_t n = op_b == Op::none ? b.cols : b.rows;
    Matrix c(m, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            long double acc = 0.0L;
            for (std::size_t p = 0; p < k; ++p) {
                const double x = op_a == Op::none ? a(i, p) : a(p, i);
                const double y = op_b == Op::none ? b(p, j) : b(j, p);
                acc += static_cast<long double>(x) * y;
            }
            c(i, j) = static_cast<double>(alpha * acc + beta * c0(i, j));
        }
    }
    return c;
}

}  // namespace

TEST_CASE("vector kernels agree with plain loops on every table") {
    for (const auto* kt : tables()) {
        CAPTURE(kn::isa_name(kt->isa));
        for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 15u, 16u, 17u, 33u, 100u, 1001u}) {
            CAPTURE(n);
            const auto x = gaussian_vector(n, 10 + n);
            const auto y = gaussian_vector(n, 20 + n);

            long double dot = 0.0L, ss = 0.0L;
            for (std::size_t i = 0; i < n; ++i) {
                dot += static_cast<long double>(x[i]) * y[i];
                ss += static_cast<long double>(x[i]) * x[i];
            }
            CHECK(kt->dot(n, x.data(), y.data()) == doctest::Approx(static_cast<double>(dot)).epsilon(1e-13));
            CHECK(kt->sum_sq(n, x.data()) == doctest::Approx(static_cast<double>(ss)).epsilon(1e-13));

            auto z = y;
            kt->axpy(n, -0.75, x.data(), z.data());
            for (std::size_t i = 0; i < n; ++i) CHECK(z[i] == doctest::Approx(y[i] - 0.75 * x[i]).epsilon(1e-15));

            z = x;
            kt->scal(n, 3.5, z.data());
            for (std::size_t i = 0; i < n; ++i) CHECK(z[i] == 3.5 * x[i]);

            auto u = x;
            auto v = y;
            const double c = std::cos(0.3), s = std::sin(0.3);
            kt->rot(n, u.data(), v.data(), c, s);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(u[i] == doctest::Approx(c * x[i] - s * y[i]).epsilon(1e-14));
                CHECK(v[i] == doctest::Approx(s * x[i] + c * y[i]).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("micro-kernel computes the packed panel product") {
    constexpr std::size_t mr = kn::gemm_mr, nr = kn::gemm_nr;
    for (const auto* kt : tables()) {
        CAPTURE(kn::isa_name(kt->isa));
        for (std::size_t kc : {1u, 2u, 5u, 64u, 257u}) {
            const auto a = gaussian_vector(mr * kc, 1);
            const auto b = gaussian_vector(nr * kc, 2);
            double ct[mr * nr];
            kt->gemm_micro(kc, a.data(), b.data(), ct);
            for (std::size_t j = 0; j < nr; ++j) {
                for (std::size_t i = 0; i < mr; ++i) {
                    long double acc = 0.0L;
                    for (std::size_t p = 0; p < kc; ++p) acc += static_cast<long double>(a[p * mr + i]) * b[p * nr + j];
                    CHECK(ct[i + j * mr] == doctest::Approx(static_cast<double>(acc)).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("scalar and AVX2 tables produce equivalent results") {
    const auto* avx = kn::avx2_table();
    if (!avx || !kn::cpu_supports(kn::Isa::avx2)) {
        MESSAGE("AVX2 not available; equivalence check skipped");
        return;
    }
    const auto& sc = kn::scalar_table();
    const auto x = gaussian_vector(1237, 5);
    const auto y = gaussian_vector(1237, 6);
    CHECK(avx->dot(x.size(), x.data(), y.data()) == doctest::Approx(sc.dot(x.size(), x.data(), y.data())).epsilon(1e-12));
    CHECK(avx->sum_sq(x.size(), x.data()) == doctest::Approx(sc.sum_sq(x.size(), x.data())).epsilon(1e-13));

    const Matrix a = gaussian_matrix(131, 77, RngSeed{7});
    const Matrix b = gaussian_matrix(77, 45, RngSeed{8});
    Matrix c1(131, 45), c2(131, 45);
    gemm(sc, Op::none, Op::none, 1.0, a, b, 0.0, c1);
    gemm(*avx, Op::none, Op::none, 1.0, a, b, 0.0, c2);
    CHECK(test::max_abs_diff(c1.values(), c2.values()) <= 1e-12);
}

TEST_CASE("gemm matches the reference product for all transpose combinations") {
    struct Shape {
        std::size_t m, n, k;
    };
    // Includes shapes that are not multiples of the register tile and a K
    // larger than one cache block.
    const Shape shapes[] = {{1, 1, 1}, {3, 2, 5}, {8, 6, 4}, {9, 7, 13}, {17, 1, 300}, {1, 23, 9}, {130, 50, 260}};
    for (const auto* kt : tables()) {
        CAPTURE(kn::isa_name(kt->isa));
        for (const auto& sh : shapes) {
            for (Op op_a : {Op::none, Op::trans}) {
                for (Op op_b : {Op::none, Op::trans}) {
                    CAPTURE(sh.m);
                    CAPTURE(sh.n);
                    CAPTURE(sh.k);
                    const Matrix a = op_a == Op::none ? gaussian_matrix(sh.m, sh.k, RngSeed{1})
                                                      : gaussian_matrix(sh.k, sh.m, RngSeed{1});
                    const Matrix b = op_b == Op::none ? gaussian_matrix(sh.k, sh.n, RngSeed{2})
                                                      : gaussian_matrix(sh.n, sh.k, RngSeed{2});
                    const Matrix c0 = gaussian_matrix(sh.m, sh.n, RngSeed{3});
                    Matrix c = c0;
                    gemm(*kt, op_a, op_b, 0.5, a, b, -2.0, c);
                    const Matrix ref = naive_product(op_a, op_b, 0.5, a, b, -2.0, c0);
                    CHECK(test::max_abs_diff(c.values(), ref.values()) <= 1e-12 * (1.0 + static_cast<double>(sh.k)));
                }
            }
        }
    }
}

TEST_CASE("gemm validates shapes") {
    Matrix c(2, 2);
    CHECK_THROWS_AS(gemm(Op::none, Op::none, 1.0, Matrix(2, 3), Matrix(2, 2), 0.0, c), std::invalid_argument);
}

TEST_CASE("gemm with beta zero ignores NaN in C") {
    Matrix c(2, 2, {NAN, NAN, NAN, NAN});
    gemm(Op::none, Op::none, 1.0, Matrix::identity(2), Matrix::identity(2), 0.0, c);
    CHECK(c == Matrix::identity(2));
}

TEST_CASE("active table honours the ISA override") {
    const char* forced = std::getenv("TTK_ISA");
    if (forced && std::string(forced) == "scalar") {
        CHECK(kn::active().isa == kn::Isa::scalar);
    } else if (kn::avx2_table() && kn::cpu_supports(kn::Isa::avx2)) {
        CHECK(kn::active().isa == kn::Isa::avx2);
    } else {
        CHECK(kn::active().isa == kn::Isa::scalar);
    }
}
