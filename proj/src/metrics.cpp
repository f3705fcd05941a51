#include "ttk/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ttk {

namespace {

double diff_sq(const DenseTensor& a, const DenseTensor& b, const char* who) {
    if (a.dims() != b.dims()) throw std::invalid_argument(std::string(who) + ": tensor dims differ");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.data()[i] - b.data()[i];
        acc += d * d;
    }
    return acc;
}

}  // namespace

double relative_error(const DenseTensor& a, const DenseTensor& ahat) {
    const double err = diff_sq(a, ahat, "relative_error");
    const double ref = frobenius_norm(a);
    if (ref == 0.0) throw std::invalid_argument("relative_error: reference tensor has zero norm");
    return std::sqrt(err) / ref;
}

double psnr(const DenseTensor& a, const DenseTensor& ahat) {
    const double err = diff_sq(a, ahat, "psnr");
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    double peak = 0.0;
    for (double v : ahat.values()) peak = std::max(peak, std::abs(v));
    return 10.0 * std::log10(static_cast<double>(a.size()) * peak * peak / err);
}

}  // namespace ttk
