#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "littlewood/errors.hpp"
#include "littlewood/tensor.hpp"

namespace littlewood {

/// Gamma function on the positive axis.
inline double gamma_function(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma_function requires x > 0");
    return std::tgamma(x);
}

/// The unique p in (1,2) with Gamma((p+1)/2) = sqrt(pi)/2: the crossover
/// point between the two closed forms of the optimal lower Khinchine
/// constant. Bisection on a verified sign change; ~1.8474.
inline double solve_p0(double tol = 1e-12) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const double target = std::sqrt(std::numbers::pi) / 2.0;
    const auto f = [&](double p) { return gamma_function((p + 1.0) / 2.0) - target; };

    // Gamma((p+1)/2) decreases from 1 toward its minimum on this range, so f
    // starts positive and is negative past the root (up to p = 2, where it
    // vanishes again).
    double lo = 1.0, hi = 1.95;
    if (!(f(lo) > 0.0) || !(f(hi) < 0.0))
        throw std::logic_error("p0 bracket has no sign change; gamma implementation suspect");
    for (int i = 0; i < 200 && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Optimal constants of the two-sided moment comparison for Rademacher sums,
/// valid on 0 < p <= 2: the lower constant follows the power branch
/// A_p = 2^(1/2 - 1/p) up to p0 and the gamma branch
/// A_p = sqrt(2) * (Gamma((p+1)/2)/sqrt(pi))^(1/p) beyond it; the upper
/// constant is 1 throughout. The gamma-branch prefactor sqrt(2) is the
/// normalization that gives A_2 = 1 and makes the branches meet at p0.
struct KhinchineConstants {
    double p = 0.0;
    double A = 0.0;
    double B = 1.0;
    enum class Branch { power_of_two, gamma } branch = Branch::power_of_two;
};

inline double cached_p0() {
    static const double p0 = solve_p0();
    return p0;
}

inline KhinchineConstants haagerup_constants(double p) {
    if (!(p > 0.0) || !(p <= 2.0))
        throw std::domain_error("haagerup_constants requires p in (0, 2]");
    if (p <= cached_p0())
        return {p, std::exp2(0.5 - 1.0 / p), 1.0, KhinchineConstants::Branch::power_of_two};
    // The gamma branch can round an ulp above 1 at p = 2; the true lower
    // constant never exceeds the upper constant 1.
    const double a = std::min(
        1.0, std::numbers::sqrt2 *
                 std::pow(gamma_function((p + 1.0) / 2.0) / std::sqrt(std::numbers::pi),
                          1.0 / p));
    return {p, a, 1.0, KhinchineConstants::Branch::gamma};
}

/// Moment comparison constant B_p / A_r for exponents in (0, 2]: bounds the
/// p-th Rademacher moment by a multiple of the r-th.
inline double moment_comparison_constant(double p, double r) {
    if (!(p > 0.0) || !(p <= 2.0) || !(r > 0.0) || !(r <= 2.0))
        throw std::domain_error("moment_comparison_constant requires exponents in (0, 2]");
    return haagerup_constants(p).B / haagerup_constants(r).A;
}

/// Exact enumeration cap: 2^20 sign patterns (single N, or total extents in
/// the multiple case).
inline constexpr int kExactMomentCap = 20;

struct MomentOptions {
    bool allow_monte_carlo = false;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
};

struct MomentResult {
    double value = 0.0;
    bool exact = true;
    std::uint64_t terms = 0;     // patterns enumerated, or samples drawn
    double std_error = 0.0;      // Monte Carlo only
};

namespace detail {

struct KahanSum {
    double sum = 0.0, carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

inline double root_p(double x, double p) {
    if (p == 1.0) return x;
    if (p == 2.0) return std::sqrt(x);
    return std::pow(x, 1.0 / p);
}

inline double pow_p(double x, double p) {
    if (p == 1.0) return x;
    if (p == 2.0) return x * x;
    return std::pow(x, p);
}

// Uniform sign from the generator's low bit.
inline double rand_sign(std::mt19937_64& rng) { return (rng() & 1) ? 1.0 : -1.0; }

inline MomentResult monte_carlo_moment(std::uint64_t samples, std::uint64_t seed, double p,
                                       const std::vector<double>& a) {
    if (samples == 0) throw std::invalid_argument("sample count must be positive");
    std::mt19937_64 rng(seed);
    KahanSum mean_acc, square_acc;
    for (std::uint64_t s = 0; s < samples; ++s) {
        double sum = 0.0;
        for (double v : a) sum += rand_sign(rng) * v;
        const double powered = pow_p(std::abs(sum), p);
        mean_acc.add(powered);
        square_acc.add(powered * powered);
    }
    const double n = static_cast<double>(samples);
    const double mean = mean_acc.sum / n;
    const double var = std::max(0.0, (square_acc.sum - n * mean * mean) / (n - 1.0));
    const double se_mean = std::sqrt(var / n);
    MomentResult out;
    out.value = root_p(mean, p);
    out.exact = false;
    out.terms = samples;
    // Delta method through x -> x^(1/p).
    out.std_error = mean > 0.0 ? root_p(mean, p) / (p * mean) * se_mean : se_mean;
    return out;
}

}  // namespace detail

/// p-th moment of the Rademacher sum with coefficients a: the p-th root of
/// the average of |sum_n a_n e_n|^p over all sign patterns e. Exact
/// enumeration up to N = 20; beyond that a seeded Monte Carlo estimate with
/// reported standard error, opt-in via options.
inline MomentResult rademacher_moment(const std::vector<double>& a, double p,
                                      const MomentOptions& options = {}) {
    if (!(p > 0.0)) throw std::domain_error("moment exponent must be positive");
    const int n = static_cast<int>(a.size());

    if (n > kExactMomentCap) {
        if (!options.allow_monte_carlo)
            throw BudgetError("exact moment cap " + std::to_string(kExactMomentCap) +
                              " exceeded (N = " + std::to_string(n) +
                              "); enable Monte Carlo");
        return detail::monte_carlo_moment(options.samples, options.seed, p, a);
    }

    const std::uint64_t patterns = std::uint64_t{1} << n;
    detail::KahanSum acc;
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += (mask >> i & 1) ? -a[i] : a[i];
        acc.add(detail::pow_p(std::abs(sum), p));
    }
    MomentResult out;
    out.value = detail::root_p(acc.sum / static_cast<double>(patterns), p);
    out.exact = true;
    out.terms = patterns;
    return out;
}

/// p-th moment of the fully multiple Rademacher sum
/// sum e_{i_1}(t_1) ... e_{i_m}(t_m) a_{i_1...i_m} with one independent sign
/// vector per axis. Exact enumeration while the total extent stays within
/// the cap; seeded Monte Carlo beyond, opt-in.
inline MomentResult multiple_rademacher_moment(const CoefficientTensor& t, double p,
                                               const MomentOptions& options = {}) {
    if (!(p > 0.0)) throw std::domain_error("moment exponent must be positive");
    const int m = t.arity();
    long long bits_needed = 0;
    for (int d : t.dims()) bits_needed += d;

    if (bits_needed > kExactMomentCap) {
        if (!options.allow_monte_carlo)
            throw BudgetError("exact moment cap " + std::to_string(kExactMomentCap) +
                              " exceeded (total extent " + std::to_string(bits_needed) +
                              "); enable Monte Carlo");
        std::mt19937_64 rng(options.seed);
        detail::KahanSum mean_acc, square_acc;
        std::vector<std::vector<double>> signs(m);
        for (int k = 0; k < m; ++k) signs[k].resize(t.dims()[k]);
        for (std::uint64_t s = 0; s < options.samples; ++s) {
            for (int k = 0; k < m; ++k)
                for (double& v : signs[k]) v = detail::rand_sign(rng);
            double sum = 0.0;
            for (const Entry& e : t.entries()) {
                double term = e.val;
                for (int k = 0; k < m; ++k) term *= signs[k][e.idx[k] - 1];
                sum += term;
            }
            const double powered = detail::pow_p(std::abs(sum), p);
            mean_acc.add(powered);
            square_acc.add(powered * powered);
        }
        const double n = static_cast<double>(options.samples);
        const double mean = mean_acc.sum / n;
        const double var = std::max(0.0, (square_acc.sum - n * mean * mean) / (n - 1.0));
        MomentResult out;
        out.value = detail::root_p(mean, p);
        out.exact = false;
        out.terms = options.samples;
        out.std_error = mean > 0.0 ? detail::root_p(mean, p) / (p * mean) * std::sqrt(var / n)
                                   : std::sqrt(var / n);
        return out;
    }

    // Gray-code sweep over the concatenated sign bits of all axes; one flip
    // per step touches only the entries sharing that (axis, index) pair.
    const int bits = static_cast<int>(bits_needed);
    std::vector<int> pos_axis(bits), pos_index(bits);
    {
        int p_at = 0;
        for (int k = 0; k < m; ++k)
            for (int i = 0; i < t.dims()[k]; ++i, ++p_at) {
                pos_axis[p_at] = k;
                pos_index[p_at] = i;
            }
    }
    const auto& entries = t.entries();
    std::vector<std::vector<std::uint32_t>> slices(bits);
    std::vector<int> base(m, 0);
    for (int k = 1; k < m; ++k) base[k] = base[k - 1] + t.dims()[k - 1];
    for (std::size_t e = 0; e < entries.size(); ++e)
        for (int k = 0; k < m; ++k)
            slices[base[k] + entries[e].idx[k] - 1].push_back(static_cast<std::uint32_t>(e));

    std::vector<double> term(entries.size());
    double total = 0.0;
    for (std::size_t e = 0; e < entries.size(); ++e) {
        term[e] = entries[e].val;
        total += term[e];
    }
    detail::KahanSum acc;
    acc.add(detail::pow_p(std::abs(total), p));
    const std::uint64_t patterns = std::uint64_t{1} << bits;
    for (std::uint64_t step = 1; step < patterns; ++step) {
        const int flip = std::countr_zero(step);
        for (std::uint32_t e : slices[flip]) {
            total -= 2.0 * term[e];
            term[e] = -term[e];
        }
        acc.add(detail::pow_p(std::abs(total), p));
    }
    MomentResult out;
    out.value = detail::root_p(acc.sum / static_cast<double>(patterns), p);
    out.exact = true;
    out.terms = patterns;
    return out;
}

/// Two-sided sandwich check A * l2 <= moment <= l2 (upper constant 1 on this
/// exponent range). `constant` is the lower factor actually used: A_p for a
/// single sum, A_p^m for the multiple version.
struct SandwichReport {
    double p = 0.0;
    double constant = 0.0;
    double l2 = 0.0;
    double moment = 0.0;
    double left_margin = 0.0;
    double right_margin = 0.0;
    bool pass = false;
};

inline SandwichReport verify_khinchine(const std::vector<double>& a, double p) {
    const auto constants = haagerup_constants(p);
    double sq = 0.0;
    for (double v : a) sq += v * v;
    const double l2 = std::sqrt(sq);
    const auto moment = rademacher_moment(a, p);

    SandwichReport report;
    report.p = p;
    report.constant = constants.A;
    report.l2 = l2;
    report.moment = moment.value;
    report.left_margin = moment.value - constants.A * l2;
    report.right_margin = l2 - moment.value;
    const double tol = 1e-12 * std::max(1.0, l2);
    report.pass = report.left_margin >= -tol && report.right_margin >= -tol;
    return report;
}

inline SandwichReport verify_multiple_khinchine(const CoefficientTensor& t, double p) {
    const auto constants = haagerup_constants(p);
    double sq = 0.0;
    for (const Entry& e : t.entries()) sq += e.val * e.val;
    const double frobenius = std::sqrt(sq);
    const double a_m = std::pow(constants.A, t.arity());
    const auto moment = multiple_rademacher_moment(t, p);

    SandwichReport report;
    report.p = p;
    report.constant = a_m;
    report.l2 = frobenius;
    report.moment = moment.value;
    report.left_margin = moment.value - a_m * frobenius;
    report.right_margin = frobenius - moment.value;
    const double tol = 1e-12 * std::max(1.0, frobenius);
    report.pass = report.left_margin >= -tol && report.right_margin >= -tol;
    return report;
}

}  // namespace littlewood
