#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ttk/decompose.hpp"

namespace ttk {

namespace {

void require_p(double p, double min_p, const char* formula) {
    if (!(p >= min_p)) {
        throw std::invalid_argument(std::string(formula) + ": oversampling p = " + std::to_string(p) +
                                    " is below the minimum " + std::to_string(min_p));
    }
}

}  // namespace

double eta_rsvd(double r, double p, double t, double u) {
    require_p(p, 1.0, "eta_rsvd");
    constexpr double e = std::numbers::e;
    return 1.0 + t * std::sqrt(12.0 * r / p) + u * t * e * std::sqrt(r + p) / (p + 1.0);
}

double eta_rbki(double r, double p, double q) {
    require_p(p, 2.0, "eta_rbki");
    constexpr double e = std::numbers::e;
    const double base = 1.0 + std::sqrt(r / (p - 1.0)) + e * std::sqrt(r + p) / p;
    return std::pow(base, 1.0 / (2.0 * q + 1.0));
}

double power_iteration_bound(std::size_t r, std::size_t p, std::size_t q, std::span<const double> spectrum) {
    require_p(static_cast<double>(p), 2.0, "power_iteration_bound");
    constexpr double e = std::numbers::e;
    const double expo = 2.0 * static_cast<double>(q) + 1.0;
    const double rd = static_cast<double>(r);
    const double pd = static_cast<double>(p);

    // spectrum[j] is the (j+1)-th singular value.
    const double next = r < spectrum.size() ? spectrum[r] : 0.0;
    double tail = 0.0;
    for (std::size_t j = spectrum.size(); j-- > r;) tail += std::pow(spectrum[j], 2.0 * expo);

    const double inner = (1.0 + std::sqrt(rd / (pd - 1.0))) * std::pow(next, expo) +
                         (e * std::sqrt(rd + pd) / pd) * std::sqrt(tail);
    return std::pow(inner, 1.0 / expo);
}

BoundFactors bound_factors(std::size_t r, std::size_t p, std::size_t q, std::size_t order, double t, double u,
                           std::optional<std::span<const double>> spectrum) {
    if (order < 2) throw std::invalid_argument("bound_factors: tensor order must be >= 2");
    if (!(t >= 1.0) || !(u >= 1.0)) throw std::invalid_argument("bound_factors: t and u must be >= 1");
    BoundFactors f;
    f.eta_sketch = eta_rsvd(static_cast<double>(r), static_cast<double>(p), t, u);
    f.eta_krylov = eta_rbki(static_cast<double>(r), static_cast<double>(p), static_cast<double>(q));
    if (spectrum) f.bound_power = power_iteration_bound(r, p, q, *spectrum);
    f.prefactor = std::sqrt(static_cast<double>(order - 1));
    return f;
}

}  // namespace ttk
