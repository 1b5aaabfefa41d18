#pragma once

#include <cmath>
#include <numeric>
#include <optional>
#include <string>

namespace littlewood {

/// Exact power-of-two form 2^(num/den), den >= 1, gcd(|num|, den) = 1.
struct DyadicPower {
    long long num = 0;
    int den = 1;

    double value() const { return std::exp2(static_cast<double>(num) / den); }
    bool operator==(const DyadicPower&) const = default;
};

/// Detects value = 2^(k/den) for denominators up to max_den, within 1e-12
/// relative. Smallest denominator wins; the result is in lowest terms.
inline std::optional<DyadicPower> detect_dyadic(double value, int max_den = 16) {
    if (!(value > 0.0) || !std::isfinite(value)) return std::nullopt;
    const double lg = std::log2(value);
    for (int den = 1; den <= max_den; ++den) {
        const double scaled = lg * den;
        if (std::abs(scaled) > 1e6) return std::nullopt;
        const long long k = std::llround(scaled);
        const double candidate = std::exp2(static_cast<double>(k) / den);
        if (std::abs(value - candidate) <= 1e-12 * std::max(value, candidate)) {
            if (k == 0) return DyadicPower{0, 1};
            const long long g = std::gcd(std::llabs(k), static_cast<long long>(den));
            return DyadicPower{k / g, static_cast<int>(den / g)};
        }
    }
    return std::nullopt;
}

inline std::string to_string(const DyadicPower& d) {
    if (d.den == 1) return "2^" + std::to_string(d.num);
    return "2^(" + std::to_string(d.num) + "/" + std::to_string(d.den) + ")";
}

}  // namespace littlewood
