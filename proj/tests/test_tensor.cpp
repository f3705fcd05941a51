#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "ttk/tensor.hpp"

using namespace ttk;

TEST_CASE("column-major offsets and element access") {
    const DenseTensor t({2, 3, 4}, [] {
        std::vector<double> v(24);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
        return v;
    }());
    CHECK(t.at({0, 0, 0}) == 0.0);
    CHECK(t.at({1, 0, 0}) == 1.0);
    CHECK(t.at({0, 1, 0}) == 2.0);
    CHECK(t.at({0, 0, 1}) == 6.0);
    CHECK(t.at({1, 2, 3}) == 23.0);
    CHECK(t.order() == 3);
    CHECK(t.size() == 24);
}

TEST_CASE("construction rejects a size mismatch and zero-length modes") {
    CHECK_THROWS_AS(DenseTensor({2, 2}, std::vector<double>(3)), std::invalid_argument);
    CHECK_THROWS_AS(DenseTensor({2, 0}, {}), std::invalid_argument);
}

TEST_CASE("default tensor is an order-0 scalar") {
    const DenseTensor s;
    CHECK(s.order() == 0);
    CHECK(s.size() == 1);
}

TEST_CASE("reshape keeps the buffer and checks the element count") {
    const DenseTensor t = test::random_tensor({2, 3, 4}, 1);
    const DenseTensor r = reshape(t, {6, 4});
    CHECK(r.dims() == Dims{6, 4});
    CHECK(std::equal(t.values().begin(), t.values().end(), r.values().begin()));
    CHECK_THROWS_AS(reshape(t, {5, 5}), std::invalid_argument);
}

TEST_CASE("matricize puts the leading modes on the rows") {
    const DenseTensor t = test::random_tensor({2, 3, 4}, 2);
    const Matrix m1 = matricize(t, 1);
    CHECK(m1.rows() == 2);
    CHECK(m1.cols() == 12);
    const Matrix m2 = matricize(t, 2);
    CHECK(m2.rows() == 6);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 4; ++k) {
                CHECK(m1(i, j + 3 * k) == t.at({i, j, k}));
                CHECK(m2(i + 2 * j, k) == t.at({i, j, k}));
            }
    CHECK_THROWS_AS(matricize(t, 0), std::invalid_argument);
    CHECK_THROWS_AS(matricize(t, 3), std::invalid_argument);
}

TEST_CASE("mode-n product matches the defining sum") {
    const DenseTensor t = test::random_tensor({3, 4, 5}, 3);
    for (std::size_t mode = 0; mode < 3; ++mode) {
        CAPTURE(mode);
        const Matrix b = gaussian_matrix(2, t.dim(mode), RngSeed{mode + 10});
        const DenseTensor out = mode_n_product(t, b, mode);
        Dims expect = t.dims();
        expect[mode] = 2;
        REQUIRE(out.dims() == expect);
        for (std::size_t i = 0; i < expect[0]; ++i)
            for (std::size_t j = 0; j < expect[1]; ++j)
                for (std::size_t k = 0; k < expect[2]; ++k) {
                    double acc = 0.0;
                    for (std::size_t s = 0; s < t.dim(mode); ++s) {
                        std::size_t idx[3] = {i, j, k};
                        const std::size_t row = idx[mode];
                        idx[mode] = s;
                        acc += b(row, s) * t.at(std::span<const std::size_t>(idx, 3));
                    }
                    CHECK(out.at({i, j, k}) == doctest::Approx(acc).epsilon(1e-12));
                }
    }
    CHECK_THROWS_AS(mode_n_product(t, Matrix(2, 7), 1), std::invalid_argument);
    CHECK_THROWS_AS(mode_n_product(t, Matrix(2, 3), 3), std::invalid_argument);
}

TEST_CASE("contract sums over the paired modes") {
    const DenseTensor a = test::random_tensor({2, 3, 4}, 4);
    const DenseTensor b = test::random_tensor({4, 5}, 5);
    const DenseTensor c = contract(a, 2, b, 0);
    REQUIRE(c.dims() == Dims{2, 3, 5});
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t l = 0; l < 5; ++l) {
                double acc = 0.0;
                for (std::size_t k = 0; k < 4; ++k) acc += a.at({i, j, k}) * b.at({k, l});
                CHECK(c.at({i, j, l}) == doctest::Approx(acc).epsilon(1e-12));
            }

    const DenseTensor d = contract(a, 1, test::random_tensor({5, 3}, 6), 1);
    CHECK(d.dims() == Dims{2, 4, 5});
    CHECK_THROWS_AS(contract(a, 0, b, 0), std::invalid_argument);
}

TEST_CASE("full contraction of two vectors gives an order-0 scalar") {
    const DenseTensor u({3}, {1.0, 2.0, 3.0});
    const DenseTensor v({3}, {4.0, 5.0, 6.0});
    const DenseTensor s = contract(u, 0, v, 0);
    CHECK(s.order() == 0);
    CHECK(s.values()[0] == 32.0);
}

TEST_CASE("Frobenius norm") {
    CHECK(frobenius_norm(DenseTensor({2, 2}, {3.0, 0.0, 0.0, 4.0})) == doctest::Approx(5.0));
}
