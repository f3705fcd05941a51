#include "ttk/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace ttk::kernels {

#ifndef TTK_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif

bool cpu_supports(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(TTK_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
            __builtin_cpu_init();
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
    }
    return false;
}

namespace {

const KernelTable& select() {
    if (const char* forced = std::getenv("TTK_ISA")) {
        if (std::string_view(forced) == "scalar") return scalar_table();
    }
    if (cpu_supports(Isa::avx2) && avx2_table() != nullptr) return *avx2_table();
    return scalar_table();
}

}  // namespace

const KernelTable& active() {
    static const KernelTable& table = select();
    return table;
}

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return "scalar";
        case Isa::avx2:
            return "avx2";
    }
    return "unknown";
}

}  // namespace ttk::kernels
