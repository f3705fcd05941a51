#include "ttk/kernels.hpp"

#include <cmath>

namespace ttk::kernels {
namespace {

double dot_ref(std::size_t n, const double* x, const double* y) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

double sum_sq_ref(std::size_t n, const double* x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
}

void axpy_ref(std::size_t n, double a, const double* x, double* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal_ref(std::size_t n, double a, double* x) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void rot_ref(std::size_t n, double* x, double* y, double c, double s) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

void gemm_micro_ref(std::size_t kc, const double* a, const double* b, double* ct) {
    double acc[gemm_mr * gemm_nr] = {};
    for (std::size_t k = 0; k < kc; ++k) {
        for (std::size_t j = 0; j < gemm_nr; ++j) {
            const double bj = b[j];
            for (std::size_t i = 0; i < gemm_mr; ++i) acc[j * gemm_mr + i] += a[i] * bj;
        }
        a += gemm_mr;
        b += gemm_nr;
    }
    for (std::size_t i = 0; i < gemm_mr * gemm_nr; ++i) ct[i] = acc[i];
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{Isa::scalar, dot_ref,  sum_sq_ref,    axpy_ref,
                                   scal_ref,    rot_ref,  gemm_micro_ref};
    return table;
}

}  // namespace ttk::kernels
