// Acceptance suite: end-to-end checks of the verification laboratory, one
// line per criterion. Every tolerance is pinned here; a nonzero exit means
// at least one criterion failed.
//
// Set LITTLEWOOD_DEEP=1 to also run the optional exhaustive 2^30 Gray-code
// enumeration of the 5-linear extremal norm.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "littlewood/littlewood.hpp"
#include "test_support.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Check {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void require(bool ok, const std::string& why) {
        if (!ok) fail(why);
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

// ---------------------------------------------------------------- criterion 1
// Exact reproduction of the mixed (l1,l2) constants at m = 2..4: integer-exact
// norm 2^(m-1), bit-exact numerator 2^(m-1)*sqrt(2^(m-1)), ratio reported as
// the dyadic power 2^((m-1)/2) with the squared comparison done on integer
// exponents. Runtime under 1 s.
Check criterion1() {
    Check c;
    const auto start = Clock::now();
    for (int m = 2; m <= 4; ++m) {
        const auto t = littlewood::construct_extremal(m);
        const auto norm = littlewood::exact_sup_norm(t);
        const double pow2 = std::exp2(m - 1);

        c.require(norm.method == littlewood::NormMethod::exact, "norm method not exact");
        c.require(norm.value == pow2, "m=" + std::to_string(m) + " norm != 2^(m-1)");
        c.require(littlewood::evaluate(t, norm.certificate) == norm.value,
                  "certificate does not attain the norm");
        if (m == 4)
            c.require(norm.stats.evaluations == (std::uint64_t{1} << 14),
                      "m=4 enumeration is not 2^14 patterns");

        const double mixed = littlewood::mixed_l1_l2(t);
        c.require(mixed == pow2 * std::sqrt(pow2),
                  "m=" + std::to_string(m) + " mixed sum not exactly 2^(m-1)*sqrt(2^(m-1))");

        const auto report = littlewood::verify_mixed_littlewood(m);
        c.require(report.empirical_ratio == std::sqrt(pow2),
                  "ratio not exactly sqrt(2^(m-1))");
        c.require(report.verdict == littlewood::Verdict::pass, "verdict not pass");
        c.require(report.analytic_lower == report.analytic_upper,
                  "lower and upper bounds do not coincide");
        c.require(report.exact_form.has_value(), "no dyadic form detected");
        if (report.exact_form) {
            // squared comparison in exact integer arithmetic: ratio^2 = 2^(m-1)
            c.require(2 * report.exact_form->num == (m - 1) * report.exact_form->den,
                      "dyadic exponent is not (m-1)/2");
        }
    }
    const double dt = seconds_since(start);
    c.require(dt < 1.0, "runtime " + fmt(dt) + " s exceeds 1 s");
    if (c.pass) c.detail = "m=2..4 exact, ratios 2^((m-1)/2) bit-exact, " + fmt(dt) + " s";
    return c;
}

// ---------------------------------------------------------------- criterion 2
// Certified constants at m = 5, 6: alternating ascent (100 restarts, seed 0)
// attains the analytic norm 2^(m-1), certifying the ratio. Runtime under
// 30 s. LITTLEWOOD_DEEP=1 additionally runs the exhaustive 2^30 enumeration
// at m = 5, which must return 16.
Check criterion2() {
    Check c;
    const auto start = Clock::now();
    for (int m : {5, 6}) {
        const auto t = littlewood::construct_extremal(m);
        const double pow2 = std::exp2(m - 1);
        const auto norm = littlewood::certified_norm(t, littlewood::analytic_norm_upper(m),
                                                     100, 0);
        c.require(norm.method == littlewood::NormMethod::certified,
                  "m=" + std::to_string(m) + " ascent did not certify");
        c.require(norm.value == pow2, "certified value != 2^(m-1)");
        c.require(littlewood::evaluate(t, norm.certificate) == norm.value,
                  "certificate does not attain the value");

        const double ratio = littlewood::mixed_l1_l2(t) / norm.value;
        c.require(ratio == std::sqrt(pow2), "ratio not exactly sqrt(2^(m-1))");
        const auto dyadic = littlewood::detect_dyadic(ratio);
        c.require(dyadic && 2 * dyadic->num == (m - 1) * dyadic->den,
                  "dyadic exponent is not (m-1)/2");

        littlewood::VerifyOptions options;
        options.mode = littlewood::NormMode::certified;
        c.require(littlewood::verify_mixed_littlewood(m, options).verdict ==
                      littlewood::Verdict::pass,
                  "certified report verdict not pass");
    }
    const double dt = seconds_since(start);
    c.require(dt < 30.0, "runtime " + fmt(dt) + " s exceeds 30 s");

    // Optional exhaustive confirmation, outside the 30 s budget.
    std::string note;
    const char* deep = std::getenv("LITTLEWOOD_DEEP");
    if (deep && std::strcmp(deep, "1") == 0) {
        const auto deep_start = Clock::now();
        const auto exact = littlewood::exact_sup_norm(littlewood::construct_extremal(5), 31);
        c.require(exact.value == 16.0, "deep m=5 enumeration did not return 16");
        note = ", deep m=5 enumeration = " + fmt(exact.value) + " in " +
               fmt(seconds_since(deep_start)) + " s";
    }
    if (c.pass) c.detail = "m=5,6 certified at 100 restarts, seed 0, " + fmt(dt) + " s" + note;
    return c;
}

// ---------------------------------------------------------------- criterion 3
// Parametric family: for m = 2..4 and alpha on the grid, the tensor ratio at
// (alpha, beta_m, ...) equals 2^((2m - alpha m - 4 + 3 alpha)/(2 alpha))
// within 1e-9 relative; the alpha = 1 column is (sqrt 2)^(m-1) and the
// alpha = 2 column is sqrt 2.
Check criterion3() {
    Check c;
    const double grid[] = {1.0, 1.25, 1.5, 1.75, 2.0};
    for (int m = 2; m <= 4; ++m) {
        for (double alpha : grid) {
            const auto report = littlewood::verify_parametric_bound(alpha, m);
            const double expected =
                std::exp2((2.0 * m - alpha * m - 4.0 + 3.0 * alpha) / (2.0 * alpha));
            const std::string tag = "m=" + std::to_string(m) + " alpha=" + fmt(alpha);
            c.require(std::abs(report.empirical_ratio - expected) <= 1e-9 * expected,
                      tag + ": ratio " + fmt(report.empirical_ratio) + " != " +
                          fmt(expected));
            c.require(report.verdict == littlewood::Verdict::pass, tag + ": not pass");
            if (alpha == 1.0)
                c.require(std::abs(report.empirical_ratio - std::exp2(0.5 * (m - 1))) <=
                              1e-9 * report.empirical_ratio,
                          tag + ": alpha=1 column is not (sqrt 2)^(m-1)");
            if (alpha == 2.0)
                c.require(std::abs(report.empirical_ratio - std::sqrt(2.0)) <=
                              1e-9 * report.empirical_ratio,
                          tag + ": alpha=2 column is not sqrt 2");
        }
    }
    if (c.pass) c.detail = "m=2..4 x alpha grid {1,1.25,1.5,1.75,2}, all within 1e-9";
    return c;
}

// ---------------------------------------------------------------- criterion 4
// The crossover p0: bracketed in (1.84, 1.86), residual below 1e-12, branch
// agreement at p0 within 1e-9, A_1 = 2^(-1/2) and A_2 = 1 within 1e-12.
Check criterion4() {
    Check c;
    const double p0 = littlewood::solve_p0(1e-12);
    c.require(p0 > 1.84 && p0 < 1.86, "p0 = " + fmt(p0) + " outside (1.84, 1.86)");
    const double residual = std::abs(littlewood::gamma_function((p0 + 1.0) / 2.0) -
                                     std::sqrt(std::numbers::pi) / 2.0);
    c.require(residual < 1e-12, "residual " + fmt(residual) + " not below 1e-12");

    const double power_branch = std::exp2(0.5 - 1.0 / p0);
    const double gamma_branch =
        std::numbers::sqrt2 * std::pow(littlewood::gamma_function((p0 + 1.0) / 2.0) /
                                           std::sqrt(std::numbers::pi),
                                       1.0 / p0);
    c.require(std::abs(power_branch - gamma_branch) < 1e-9,
              "branches differ at p0 by " + fmt(std::abs(power_branch - gamma_branch)));

    c.require(std::abs(littlewood::haagerup_constants(1.0).A - std::exp2(-0.5)) <= 1e-12,
              "A_1 != 2^(-1/2)");
    c.require(std::abs(littlewood::haagerup_constants(2.0).A - 1.0) <= 1e-12, "A_2 != 1");
    if (c.pass)
        c.detail = "p0 = " + fmt(p0) + ", residual = " + fmt(residual) +
                   ", branches agree, A_1 and A_2 exact";
    return c;
}

// ---------------------------------------------------------------- criterion 5
// Khinchine sandwich on 100 seeded random vectors (N <= 12) at
// p in {0.5, 1, 1.5, p0, 2}. Margins are nonnegative up to the 1e-12 * scale
// rounding allowance: the sandwich is an equality at p = 2 and on vectors
// with a single nonzero entry, where the computed margin is a rounded zero.
// Sharpness cases a = (1,1) at p = 1 and p = 2 hold within 1e-12. The
// multiple sandwich with constants (A_p)^m holds for 100 random 2x2 and
// 2x2x2 tensors at p in {1, 2}.
Check criterion5() {
    Check c;
    std::mt19937_64 rng(0);
    const double ps[] = {0.5, 1.0, 1.5, littlewood::cached_p0(), 2.0};
    double min_margin = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 100 && c.pass; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 12);
        const auto a = lwtest::random_vector(rng, n);
        for (double p : ps) {
            const auto r = littlewood::verify_khinchine(a, p);
            const std::string tag = "trial " + std::to_string(trial) + " p=" + fmt(p);
            c.require(r.pass, tag + ": margin below -1e-12 (left " + fmt(r.left_margin) +
                                  ", right " + fmt(r.right_margin) + ")");
            min_margin = std::min({min_margin, r.left_margin, r.right_margin});
        }
    }
    c.require(min_margin >= -1e-12, "minimum margin " + fmt(min_margin) + " below -1e-12");

    const auto sharp_left = littlewood::verify_khinchine({1, 1}, 1.0);
    c.require(std::abs(sharp_left.left_margin) <= 1e-12,
              "a=(1,1), p=1 left equality violated");
    c.require(sharp_left.moment == 1.0, "a=(1,1), p=1 moment != 1");
    const auto sharp_two = littlewood::verify_khinchine({1, 1}, 2.0);
    c.require(std::abs(sharp_two.left_margin) <= 1e-12 &&
                  std::abs(sharp_two.right_margin) <= 1e-12,
              "a=(1,1), p=2 equalities violated");

    std::mt19937_64 trng(1);
    for (int trial = 0; trial < 100 && c.pass; ++trial) {
        for (int m : {2, 3}) {
            const auto t = lwtest::random_tensor(trng, m, 2, false, 1.0);
            for (double p : {1.0, 2.0}) {
                const auto r = littlewood::verify_multiple_khinchine(t, p);
                c.require(r.pass, "multiple sandwich failed at trial " +
                                      std::to_string(trial) + ", m=" + std::to_string(m) +
                                      ", p=" + fmt(p));
            }
        }
    }
    if (c.pass)
        c.detail = "100 vectors x 5 exponents (min margin " + fmt(min_margin) +
                   "), sharp cases exact, 200 multiple checks";
    return c;
}

// ---------------------------------------------------------------- criterion 6
// Generalized sandwich: 200 seeded random tensors with m in {2,3}, extents
// <= 3, against the exponent tuples of the statement; the nested norm never
// exceeds (sqrt 2)^(m-1) times the exact operator norm plus 1e-9.
Check criterion6() {
    Check c;
    std::mt19937_64 rng(6);
    const std::vector<littlewood::ExponentTuple> q2 = {{1, 2}, {4.0 / 3.0, 4.0 / 3.0}};
    const std::vector<littlewood::ExponentTuple> q3 = {
        {1, 2, 2}, {2, 4.0 / 3.0, 4.0 / 3.0}, {1.5, 1.5, 2}};
    for (int trial = 0; trial < 200 && c.pass; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 2);
        const auto t = lwtest::random_tensor(rng, m, 3, trial % 2 == 0);
        const double norm = littlewood::exact_sup_norm(t).value;
        const double bound = std::exp2(0.5 * (m - 1)) * norm + 1e-9;
        for (const auto& q : (m == 2 ? q2 : q3)) {
            const double nested = littlewood::nested_norm(t, q);
            c.require(nested <= bound, "trial " + std::to_string(trial) + ": nested " +
                                           fmt(nested) + " above bound " + fmt(bound));
        }
    }
    if (c.pass) c.detail = "200 tensors, every listed exponent tuple within the bound";
    return c;
}

// ---------------------------------------------------------------- criterion 7
// Oracle equivalence: on 100 seeded random tensors (m <= 3, extents <= 3) the
// Gray-code norm matches dense vertex enumeration, exactly in integer cases
// and within 1e-12 otherwise; the ascent never exceeds it.
Check criterion7() {
    Check c;
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100 && c.pass; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 3);
        const bool integral = trial % 2 == 0;
        const auto t = lwtest::random_tensor(rng, m, 3, integral);
        const double exact = littlewood::exact_sup_norm(t).value;
        const double oracle = lwtest::oracle_sup_norm(t);
        const double heuristic =
            littlewood::alternating_ascent(t, 10, static_cast<std::uint64_t>(trial)).value;
        const std::string tag = "trial " + std::to_string(trial);
        if (integral) {
            c.require(exact == oracle, tag + ": exact " + fmt(exact) + " != oracle " +
                                           fmt(oracle));
            c.require(heuristic <= exact, tag + ": heuristic above exact");
        } else {
            const double tol = 1e-12 * std::max(1.0, oracle);
            c.require(std::abs(exact - oracle) <= tol, tag + ": |exact - oracle| above 1e-12");
            c.require(heuristic <= exact + tol, tag + ": heuristic above exact");
        }
    }
    if (c.pass) c.detail = "100 tensors against dense vertex enumeration";
    return c;
}

// ---------------------------------------------------------------- criterion 8
// Structural suite for m = 2..10: entry count 4^(m-1), all coefficients +-1,
// extents [2^(m-1), 2^(m-1), 2^(m-2), ..., 2], balanced rows of size 2^(m-1).
// Runtime under 5 s.
Check criterion8() {
    Check c;
    const auto start = Clock::now();
    for (int m = 2; m <= 10 && c.pass; ++m) {
        const auto t = littlewood::construct_extremal(m);
        const std::string tag = "m=" + std::to_string(m);
        c.require(t.nnz() == (std::size_t{1} << (2 * (m - 1))), tag + ": nnz != 4^(m-1)");
        c.require(t.dims() == littlewood::expected_dims(m), tag + ": unexpected dims");

        std::vector<std::size_t> row_counts(static_cast<std::size_t>(t.dims()[0]), 0);
        bool signs_ok = true;
        for (const auto& e : t.entries()) {
            signs_ok = signs_ok && std::abs(e.val) == 1.0;
            ++row_counts[static_cast<std::size_t>(e.idx[0] - 1)];
        }
        c.require(signs_ok, tag + ": coefficient not +-1");
        const std::size_t expected_row = std::size_t{1} << (m - 1);
        for (std::size_t count : row_counts)
            if (count != expected_row) {
                c.fail(tag + ": unbalanced row");
                break;
            }
    }
    const double dt = seconds_since(start);
    c.require(dt < 5.0, "runtime " + fmt(dt) + " s exceeds 5 s");
    if (c.pass) c.detail = "m=2..10 structure verified, " + fmt(dt) + " s";
    return c;
}

}  // namespace

int main() {
    struct Named {
        const char* name;
        Check (*run)();
    };
    const Named criteria[] = {
        {"mixed (l1,l2) constants, exact m=2..4", criterion1},
        {"certified constants, m=5,6", criterion2},
        {"parametric family across the alpha grid", criterion3},
        {"p0 and the optimal constant branches", criterion4},
        {"Khinchine sandwich, single and multiple", criterion5},
        {"generalized sandwich on random tensors", criterion6},
        {"norm engine against the dense oracle", criterion7},
        {"extremal family structure, m=2..10", criterion8},
    };

    int failures = 0;
    int index = 1;
    for (const auto& [name, run] : criteria) {
        const Check result = run();
        std::printf("[%s] criterion %d: %s — %s\n", result.pass ? "PASS" : "FAIL", index,
                    name, result.detail.c_str());
        failures += result.pass ? 0 : 1;
        ++index;
    }
    std::printf("%d/8 criteria passed\n", 8 - failures);
    return failures == 0 ? 0 : 1;
}
