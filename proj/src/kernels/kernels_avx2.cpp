// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include "ttk/kernels.hpp"

#include <immintrin.h>

namespace ttk::kernels {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot_avx2(std::size_t n, const double* x, const double* y) {
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    __m256d a2 = _mm256_setzero_pd();
    __m256d a3 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
        a1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), a1);
        a2 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 8), _mm256_loadu_pd(y + i + 8), a2);
        a3 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 12), _mm256_loadu_pd(y + i + 12), a3);
    }
    for (; i + 4 <= n; i += 4) {
        a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
    }
    double s = hsum(_mm256_add_pd(_mm256_add_pd(a0, a1), _mm256_add_pd(a2, a3)));
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

double sum_sq_avx2(std::size_t n, const double* x) { return dot_avx2(n, x, x); }

void axpy_avx2(std::size_t n, double a, const double* x, double* y) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
        _mm256_storeu_pd(y + i + 4,
                         _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4)));
    }
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scal_avx2(std::size_t n, double a, double* x) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= a;
}

void rot_avx2(std::size_t n, double* x, double* y, double c, double s) {
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xi = _mm256_loadu_pd(x + i);
        const __m256d yi = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(x + i, _mm256_fmsub_pd(vc, xi, _mm256_mul_pd(vs, yi)));
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vs, xi, _mm256_mul_pd(vc, yi)));
    }
    for (; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

static_assert(gemm_mr == 8 && gemm_nr == 6, "AVX2 micro-kernel is written for an 8x6 tile");

void gemm_micro_avx2(std::size_t kc, const double* a, const double* b, double* ct) {
    __m256d c00 = _mm256_setzero_pd(), c10 = _mm256_setzero_pd();
    __m256d c01 = _mm256_setzero_pd(), c11 = _mm256_setzero_pd();
    __m256d c02 = _mm256_setzero_pd(), c12 = _mm256_setzero_pd();
    __m256d c03 = _mm256_setzero_pd(), c13 = _mm256_setzero_pd();
    __m256d c04 = _mm256_setzero_pd(), c14 = _mm256_setzero_pd();
    __m256d c05 = _mm256_setzero_pd(), c15 = _mm256_setzero_pd();

    for (std::size_t k = 0; k < kc; ++k) {
        const __m256d a0 = _mm256_loadu_pd(a);
        const __m256d a1 = _mm256_loadu_pd(a + 4);
        __m256d bj;

        bj = _mm256_broadcast_sd(b + 0);
        c00 = _mm256_fmadd_pd(a0, bj, c00);
        c10 = _mm256_fmadd_pd(a1, bj, c10);
        bj = _mm256_broadcast_sd(b + 1);
        c01 = _mm256_fmadd_pd(a0, bj, c01);
        c11 = _mm256_fmadd_pd(a1, bj, c11);
        bj = _mm256_broadcast_sd(b + 2);
        c02 = _mm256_fmadd_pd(a0, bj, c02);
        c12 = _mm256_fmadd_pd(a1, bj, c12);
        bj = _mm256_broadcast_sd(b + 3);
        c03 = _mm256_fmadd_pd(a0, bj, c03);
        c13 = _mm256_fmadd_pd(a1, bj, c13);
        bj = _mm256_broadcast_sd(b + 4);
        c04 = _mm256_fmadd_pd(a0, bj, c04);
        c14 = _mm256_fmadd_pd(a1, bj, c14);
        bj = _mm256_broadcast_sd(b + 5);
        c05 = _mm256_fmadd_pd(a0, bj, c05);
        c15 = _mm256_fmadd_pd(a1, bj, c15);

        a += gemm_mr;
        b += gemm_nr;
    }

    _mm256_storeu_pd(ct + 0, c00);
    _mm256_storeu_pd(ct + 4, c10);
    _mm256_storeu_pd(ct + 8, c01);
    _mm256_storeu_pd(ct + 12, c11);
    _mm256_storeu_pd(ct + 16, c02);
    _mm256_storeu_pd(ct + 20, c12);
    _mm256_storeu_pd(ct + 24, c03);
    _mm256_storeu_pd(ct + 28, c13);
    _mm256_storeu_pd(ct + 32, c04);
    _mm256_storeu_pd(ct + 36, c14);
    _mm256_storeu_pd(ct + 40, c05);
    _mm256_storeu_pd(ct + 44, c15);
}

}  // namespace

const KernelTable* avx2_table() {
    static const KernelTable table{Isa::avx2, dot_avx2, sum_sq_avx2,    axpy_avx2,
                                   scal_avx2, rot_avx2, gemm_micro_avx2};
    return &table;
}

}  // namespace ttk::kernels
