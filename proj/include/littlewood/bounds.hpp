#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "littlewood/dyadic.hpp"
#include "littlewood/extremal.hpp"
#include "littlewood/nested.hpp"
#include "littlewood/norm.hpp"

namespace littlewood {

namespace detail {

inline void check_alpha_m(double alpha, int m) {
    if (!std::isfinite(alpha) || alpha < 1.0 || alpha > 2.0)
        throw std::domain_error("alpha must lie in [1, 2]");
    if (m < 2) throw std::invalid_argument("arity must be >= 2");
}

}  // namespace detail

/// Inner exponent completing (alpha, beta, ..., beta) to an admissible
/// multiple exponent: beta = 2*alpha*(m-1) / (alpha*m - 2 + alpha).
inline double beta_exponent(double alpha, int m) {
    detail::check_alpha_m(alpha, m);
    return (2.0 * alpha * m - 2.0 * alpha) / (alpha * m - 2.0 + alpha);
}

/// Parametric lower bound 2^((2m - alpha*m - 4 + 3*alpha) / (2*alpha)) on the
/// constant attached to the exponent family (alpha, beta, ..., beta).
inline double lower_bound(double alpha, int m) {
    detail::check_alpha_m(alpha, m);
    return std::exp2((2.0 * m - alpha * m - 4.0 + 3.0 * alpha) / (2.0 * alpha));
}

/// Upper bound (sqrt 2)^(m-1), valid for every admissible multiple exponent.
inline double upper_bound_mixed(int m) {
    if (m < 2) throw std::invalid_argument("arity must be >= 2");
    return std::exp2(0.5 * (m - 1));
}

/// Growth of the optimal constants along the family (alpha, beta_m, ...):
/// exponential in m strictly below alpha = 2, sublinear at alpha = 2.
enum class Growth { exponential, sublinear };

inline Growth growth_classification(double alpha) {
    if (!std::isfinite(alpha) || alpha < 1.0 || alpha > 2.0)
        throw std::domain_error("alpha must lie in [1, 2]");
    return alpha < 2.0 ? Growth::exponential : Growth::sublinear;
}

inline const char* to_string(Growth g) {
    return g == Growth::exponential ? "exponential" : "sublinear";
}

enum class Verdict { pass, gap, fail };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::gap: return "gap";
        case Verdict::fail: return "fail";
    }
    return "?";
}

enum class NormMode { exact, certified };

struct VerifyOptions {
    NormMode mode = NormMode::exact;
    int budget_bits = 26;
    int restarts = 100;
    std::uint64_t seed = 0;
};

/// One verification row: the empirical constant extracted from the extremal
/// form against the analytic bounds.
struct ConstantReport {
    int m = 0;
    std::vector<double> q;
    double empirical_ratio = 0.0;
    std::optional<DyadicPower> exact_form;
    double analytic_lower = 0.0;
    double analytic_upper = 0.0;
    NormMethod norm_method = NormMethod::exact;
    Verdict verdict = Verdict::gap;
};

/// Builds the extremal m-linear form, computes the nested-norm ratio at
/// q = (alpha, beta, ..., beta), and compares against the analytic bounds.
/// pass: the ratio meets the lower bound within 1e-9 relative and the norm
/// was exact or certified. fail: the upper bound is violated (a bug, were it
/// ever to happen). gap: anything else, e.g. an uncertified heuristic norm.
inline ConstantReport verify_parametric_bound(double alpha, int m,
                                              const VerifyOptions& options = {}) {
    detail::check_alpha_m(alpha, m);
    const CoefficientTensor t = construct_extremal(m);
    const NormResult norm =
        options.mode == NormMode::exact
            ? exact_sup_norm(t, options.budget_bits)
            : certified_norm(t, analytic_norm_upper(m), options.restarts, options.seed);

    ExponentTuple q(m, beta_exponent(alpha, m));
    q[0] = alpha;
    const RatioResult r = ratio(t, q, norm);

    ConstantReport report;
    report.m = m;
    report.q = q;
    report.empirical_ratio = r.value;
    report.exact_form = detect_dyadic(r.value);
    report.analytic_lower = lower_bound(alpha, m);
    report.analytic_upper = upper_bound_mixed(m);
    report.norm_method = r.norm_method;

    const bool method_ok =
        r.norm_method == NormMethod::exact || r.norm_method == NormMethod::certified;
    if (r.value > report.analytic_upper * (1.0 + 1e-9))
        report.verdict = Verdict::fail;
    else if (method_ok &&
             std::abs(r.value - report.analytic_lower) <= 1e-9 * report.analytic_lower)
        report.verdict = Verdict::pass;
    else
        report.verdict = Verdict::gap;
    return report;
}

/// The mixed (l1, l2) case: exponent tuple (1, 2, ..., 2), where the lower
/// and upper bounds coincide at (sqrt 2)^(m-1), certifying optimality.
inline ConstantReport verify_mixed_littlewood(int m, const VerifyOptions& options = {}) {
    return verify_parametric_bound(1.0, m, options);
}

}  // namespace littlewood
