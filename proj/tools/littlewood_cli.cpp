// Command-line front end: construct extremal forms, compute operator and
// nested mixed norms, and run the verification suites, emitting
// machine-readable reports (JSON, or CSV for the verify table).
//
// Exit codes: 0 all requested checks pass; 1 verification gap or failure;
// 2 usage, format or capacity errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "littlewood/littlewood.hpp"

namespace {

using nlohmann::json;

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw CLI::ValidationError("empty element in number list");
        const auto slash = item.find('/');
        try {
            if (slash != std::string::npos) {
                const double num = std::stod(item.substr(0, slash));
                const double den = std::stod(item.substr(slash + 1));
                if (den == 0.0) throw CLI::ValidationError("zero denominator");
                out.push_back(num / den);
            } else {
                out.push_back(std::stod(item));
            }
        } catch (const std::invalid_argument&) {
            throw CLI::ValidationError("cannot parse number '" + item + "'");
        }
    }
    if (out.empty()) throw CLI::ValidationError("number list is empty");
    return out;
}

littlewood::CoefficientTensor load_tensor(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw littlewood::FormatError("cannot open tensor file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return littlewood::deserialize(buf.str());
}

void emit(const json& doc) { std::cout << doc.dump() << "\n"; }

double uniform_pm1(std::mt19937_64& rng) {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

int run_construct(int m, const std::string& out_path) {
    const auto tensor = littlewood::construct_extremal(m);
    const std::string text = littlewood::serialize(tensor);
    if (out_path.empty()) {
        std::cout << text << "\n";
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    out << text << "\n";
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 2;
    }
    return 0;
}

int run_norm(const std::string& in_path, const std::string& method, int restarts,
             std::uint64_t seed, int budget_bits, bool deep, double upper) {
    const auto tensor = load_tensor(in_path);
    if (deep) budget_bits = std::max(budget_bits, 32);

    if (method == "exact") {
        emit(littlewood::to_json(littlewood::exact_sup_norm(tensor, budget_bits)));
        return 0;
    }
    if (method == "alternating") {
        emit(littlewood::to_json(littlewood::alternating_ascent(tensor, restarts, seed)));
        return 0;
    }
    // certified
    const auto result = littlewood::certified_norm(tensor, upper, restarts, seed);
    json doc = littlewood::to_json(result);
    doc["requested_upper"] = upper;
    if (result.method != littlewood::NormMethod::certified)
        doc["gap"] = upper - result.value;
    emit(doc);
    return result.method == littlewood::NormMethod::certified ? 0 : 1;
}

int run_mixed_norm(const std::string& in_path, const std::string& exponents) {
    const auto tensor = load_tensor(in_path);
    const auto q = parse_number_list(exponents);
    const double value = littlewood::nested_norm(tensor, q);
    const auto dyadic = littlewood::detect_dyadic(value);
    emit(json{{"q", q},
              {"value", value},
              {"exact_form", dyadic ? json(littlewood::to_string(*dyadic)) : json(nullptr)},
              {"admissible", littlewood::is_admissible(q)}});
    return 0;
}

int run_verify(int m_max, const std::vector<double>& alphas, const std::string& mode,
               const std::string& format, int budget_bits, int restarts, std::uint64_t seed,
               bool deep) {
    if (m_max < 2) throw CLI::ValidationError("--m-max must be >= 2");
    littlewood::VerifyOptions options;
    options.mode =
        mode == "exact" ? littlewood::NormMode::exact : littlewood::NormMode::certified;
    options.budget_bits = deep ? std::max(budget_bits, 32) : budget_bits;
    options.restarts = restarts;
    options.seed = seed;

    std::vector<littlewood::ConstantReport> reports;
    for (int m = 2; m <= m_max; ++m)
        for (double alpha : alphas)
            reports.push_back(littlewood::verify_parametric_bound(alpha, m, options));

    bool all_pass = true;
    if (format == "csv") {
        std::cout << littlewood::csv_header() << "\n";
        for (const auto& r : reports) {
            std::cout << littlewood::to_csv_row(r) << "\n";
            all_pass = all_pass && r.verdict == littlewood::Verdict::pass;
        }
    } else {
        json rows = json::array();
        for (const auto& r : reports) {
            rows.push_back(littlewood::to_json(r));
            all_pass = all_pass && r.verdict == littlewood::Verdict::pass;
        }
        emit(rows);
    }
    return all_pass ? 0 : 1;
}

int run_khinchine(bool want_p0, double tol, bool sandwich, std::optional<double> p_opt,
                  int n, int trials, std::uint64_t seed, const std::string& moment_a,
                  bool monte_carlo, std::uint64_t samples) {
    if (want_p0) {
        const double p0 = littlewood::solve_p0(tol);
        const double residual = std::abs(littlewood::gamma_function((p0 + 1.0) / 2.0) -
                                         std::sqrt(std::numbers::pi) / 2.0);
        emit(json{{"p0", p0}, {"residual", residual}, {"tol", tol}});
        return 0;
    }

    if (sandwich) {
        if (!p_opt) throw CLI::ValidationError("--sandwich requires --p");
        std::mt19937_64 rng(seed);
        int failures = 0;
        double min_left = std::numeric_limits<double>::infinity();
        double min_right = std::numeric_limits<double>::infinity();
        for (int trial = 0; trial < trials; ++trial) {
            std::vector<double> a(n);
            for (double& v : a) v = uniform_pm1(rng);
            const auto report = littlewood::verify_khinchine(a, *p_opt);
            failures += report.pass ? 0 : 1;
            min_left = std::min(min_left, report.left_margin);
            min_right = std::min(min_right, report.right_margin);
        }
        emit(json{{"p", *p_opt},
                  {"n", n},
                  {"trials", trials},
                  {"seed", seed},
                  {"failures", failures},
                  {"all_pass", failures == 0},
                  {"min_left_margin", min_left},
                  {"min_right_margin", min_right}});
        return failures == 0 ? 0 : 1;
    }

    if (!moment_a.empty()) {
        if (!p_opt) throw CLI::ValidationError("--moment-a requires --p");
        const auto a = parse_number_list(moment_a);
        littlewood::MomentOptions options;
        options.allow_monte_carlo = monte_carlo;
        options.samples = samples;
        options.seed = seed;
        const auto moment = littlewood::rademacher_moment(a, *p_opt, options);
        emit(json{{"p", *p_opt},
                  {"n", a.size()},
                  {"value", moment.value},
                  {"exact", moment.exact},
                  {"terms", moment.terms},
                  {"std_error", moment.std_error}});
        return 0;
    }

    if (p_opt) {
        const auto constants = littlewood::haagerup_constants(*p_opt);
        json doc{{"p", constants.p},
                 {"A", constants.A},
                 {"B", constants.B},
                 {"branch", constants.branch == littlewood::KhinchineConstants::Branch::gamma
                                ? "gamma"
                                : "power-of-two"},
                 {"p0", littlewood::cached_p0()}};
        if (constants.branch == littlewood::KhinchineConstants::Branch::gamma)
            doc["branch_note"] =
                "gamma branch uses prefactor sqrt(2), the normalization with A(2) = 1 "
                "and continuity at p0";
        emit(doc);
        return 0;
    }

    throw CLI::ValidationError("khinchine needs one of --p, --p0, --sandwich, --moment-a");
}

int run_bounds(int m, double alpha) {
    const double beta = littlewood::beta_exponent(alpha, m);
    littlewood::ExponentTuple q(static_cast<std::size_t>(m), beta);
    q[0] = alpha;
    const double lower = littlewood::lower_bound(alpha, m);
    const double upper = littlewood::upper_bound_mixed(m);
    const auto lower_dyadic = littlewood::detect_dyadic(lower);
    const auto upper_dyadic = littlewood::detect_dyadic(upper);
    emit(json{
        {"m", m},
        {"alpha", alpha},
        {"beta", beta},
        {"q", q},
        {"admissible", littlewood::is_admissible(q)},
        {"lower", lower},
        {"lower_exact_form",
         lower_dyadic ? json(littlewood::to_string(*lower_dyadic)) : json(nullptr)},
        {"upper", upper},
        {"upper_exact_form",
         upper_dyadic ? json(littlewood::to_string(*upper_dyadic)) : json(nullptr)},
        {"growth", littlewood::to_string(littlewood::growth_classification(alpha))}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification laboratory for multilinear form norm inequalities"};
    app.require_subcommand(1);

    // construct
    auto* construct = app.add_subcommand("construct", "Write an extremal m-linear form");
    int construct_m = 2;
    std::string construct_out;
    construct->add_option("--m", construct_m, "arity (>= 2)")->required();
    construct->add_option("--out", construct_out, "output path (default: stdout)");

    // norm
    auto* norm = app.add_subcommand("norm", "Operator norm of a tensor file");
    std::string norm_in, norm_method = "exact";
    int norm_restarts = 100, norm_budget = 26;
    std::uint64_t norm_seed = 0;
    bool norm_deep = false;
    double norm_upper = 0.0;
    norm->add_option("--in", norm_in, "tensor file")->required();
    norm->add_option("--method", norm_method, "exact | alternating | certified")
        ->check(CLI::IsMember({"exact", "alternating", "certified"}));
    norm->add_option("--restarts", norm_restarts, "ascent restarts (default 100)");
    norm->add_option("--seed", norm_seed, "PRNG seed (default 0)");
    norm->add_option("--budget-bits", norm_budget, "enumeration budget (default 26)");
    norm->add_flag("--deep", norm_deep, "allow enumerations up to 2^32");
    norm->add_option("--upper", norm_upper, "analytic upper bound (certified method)");

    // mixed-norm
    auto* mixed = app.add_subcommand("mixed-norm", "Nested mixed norm at exponents q");
    std::string mixed_in, mixed_q;
    mixed->add_option("--in", mixed_in, "tensor file")->required();
    mixed->add_option("--q", mixed_q, "comma list of exponents, fractions allowed (e.g. 1,2,2)")
        ->required();

    // verify
    auto* verify = app.add_subcommand("verify", "Verify optimal-constant lower bounds");
    int verify_m_max = 4;
    std::string verify_alphas = "1", verify_mode = "exact", verify_format = "json";
    int verify_budget = 26, verify_restarts = 100;
    std::uint64_t verify_seed = 0;
    bool verify_deep = false;
    verify->add_option("--m-max", verify_m_max, "largest arity (>= 2)")->required();
    verify->add_option("--alphas", verify_alphas, "comma list of alpha values in [1,2]");
    verify->add_option("--mode", verify_mode, "exact | certified")
        ->check(CLI::IsMember({"exact", "certified"}));
    verify->add_option("--format", verify_format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("--budget-bits", verify_budget, "enumeration budget (default 26)");
    verify->add_option("--restarts", verify_restarts, "ascent restarts (default 100)");
    verify->add_option("--seed", verify_seed, "PRNG seed (default 0)");
    verify->add_flag("--deep", verify_deep, "allow enumerations up to 2^32");

    // khinchine
    auto* khinchine = app.add_subcommand("khinchine", "Khinchine constants and moments");
    bool kh_p0 = false, kh_sandwich = false, kh_mc = false;
    double kh_tol = 1e-12;
    std::optional<double> kh_p;
    int kh_n = 10, kh_trials = 100;
    std::uint64_t kh_seed = 0, kh_samples = 1'000'000;
    std::string kh_moment_a;
    khinchine->add_flag("--p0", kh_p0, "solve for the branch crossover p0");
    khinchine->add_option("--tol", kh_tol, "p0 bisection tolerance (default 1e-12)");
    khinchine->add_option("--p", kh_p, "moment exponent in (0, 2]");
    khinchine->add_flag("--sandwich", kh_sandwich, "two-sided check on random vectors");
    khinchine->add_option("--n", kh_n, "vector length for --sandwich (default 10)");
    khinchine->add_option("--trials", kh_trials, "random vectors for --sandwich (default 100)");
    khinchine->add_option("--seed", kh_seed, "PRNG seed (default 0)");
    khinchine->add_option("--moment-a", kh_moment_a, "comma list: report the moment of a");
    khinchine->add_flag("--mc", kh_mc, "allow Monte Carlo beyond the exact cap");
    khinchine->add_option("--samples", kh_samples, "Monte Carlo samples (default 1e6)");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Analytic bounds for (alpha, beta, ..., beta)");
    int bounds_m = 2;
    double bounds_alpha = 1.0;
    bounds->add_option("--m", bounds_m, "arity (>= 2)")->required();
    bounds->add_option("--alpha", bounds_alpha, "alpha in [1, 2]")->required();

    try {
        app.parse(argc, argv);

        if (construct->parsed()) return run_construct(construct_m, construct_out);
        if (norm->parsed()) {
            if (norm_method == "certified" && !norm->count("--upper"))
                throw CLI::ValidationError("--method certified requires --upper");
            return run_norm(norm_in, norm_method, norm_restarts, norm_seed, norm_budget,
                            norm_deep, norm_upper);
        }
        if (mixed->parsed()) return run_mixed_norm(mixed_in, mixed_q);
        if (verify->parsed())
            return run_verify(verify_m_max, parse_number_list(verify_alphas), verify_mode,
                              verify_format, verify_budget, verify_restarts, verify_seed,
                              verify_deep);
        if (khinchine->parsed())
            return run_khinchine(kh_p0, kh_tol, kh_sandwich, kh_p, kh_n, kh_trials, kh_seed,
                                 kh_moment_a, kh_mc, kh_samples);
        if (bounds->parsed()) return run_bounds(bounds_m, bounds_alpha);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const littlewood::InvalidBoundError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const littlewood::BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const littlewood::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
