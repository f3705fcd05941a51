#pragma once

#include <cstddef>
#include <string_view>

/// Low-level double precision kernels with a scalar reference implementation
/// and an AVX2/FMA implementation. The active table is chosen once at startup
/// from CPUID; setting TTK_ISA=scalar in the environment forces the reference
/// path.
namespace ttk::kernels {

enum class Isa { scalar, avx2 };

/// Register tile of the GEMM micro-kernel (rows x cols of C).
inline constexpr std::size_t gemm_mr = 8;
inline constexpr std::size_t gemm_nr = 6;

struct KernelTable {
    Isa isa;

    double (*dot)(std::size_t n, const double* x, const double* y);
    double (*sum_sq)(std::size_t n, const double* x);
    // y += a * x
    void (*axpy)(std::size_t n, double a, const double* x, double* y);
    void (*scal)(std::size_t n, double a, double* x);
    // (x, y) <- (c*x - s*y, s*x + c*y)
    void (*rot)(std::size_t n, double* x, double* y, double c, double s);

    // ct (gemm_mr x gemm_nr, column-major, overwritten) = A_panel * B_panel.
    // a_panel holds kc slivers of gemm_mr values, b_panel kc slivers of gemm_nr.
    void (*gemm_micro)(std::size_t kc, const double* a_panel, const double* b_panel, double* ct);
};

const KernelTable& scalar_table();
/// Null when the binary was built without AVX2 support.
const KernelTable* avx2_table();

bool cpu_supports(Isa isa);

/// Table used by every higher-level routine in the library.
const KernelTable& active();

std::string_view isa_name(Isa isa);

}  // namespace ttk::kernels
