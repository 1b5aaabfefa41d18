#pragma once

#include <charconv>
#include <string>

#include <json.hpp>

#include "littlewood/bounds.hpp"
#include "littlewood/dyadic.hpp"
#include "littlewood/khinchine.hpp"
#include "littlewood/norm.hpp"

namespace littlewood {

namespace detail {

/// Shortest round-trip decimal form, locale-free.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline nlohmann::json exact_form_json(double value) {
    if (const auto d = detect_dyadic(value)) return to_string(*d);
    return nullptr;
}

}  // namespace detail

inline nlohmann::json to_json(const SignAssignment& s) {
    nlohmann::json axes = nlohmann::json::array();
    for (const auto& axis : s.axes) {
        nlohmann::json v = nlohmann::json::array();
        for (std::int8_t sign : axis) v.push_back(static_cast<int>(sign));
        axes.push_back(std::move(v));
    }
    return axes;
}

inline nlohmann::json to_json(const NormResult& r) {
    return {{"value", r.value},
            {"exact_form", detail::exact_form_json(r.value)},
            {"method", to_string(r.method)},
            {"certificate", to_json(r.certificate)},
            {"stats",
             {{"evaluations", r.stats.evaluations},
              {"restarts", r.stats.restarts},
              {"iterations", r.stats.iterations}}}};
}

inline nlohmann::json to_json(const ConstantReport& r) {
    return {{"m", r.m},
            {"q", r.q},
            {"empirical_ratio", r.empirical_ratio},
            {"exact_form", r.exact_form ? nlohmann::json(to_string(*r.exact_form))
                                        : nlohmann::json(nullptr)},
            {"analytic_lower", r.analytic_lower},
            {"analytic_upper", r.analytic_upper},
            {"norm_method", to_string(r.norm_method)},
            {"verdict", to_string(r.verdict)}};
}

inline nlohmann::json to_json(const SandwichReport& r) {
    return {{"p", r.p},
            {"constant", r.constant},
            {"l2", r.l2},
            {"moment", r.moment},
            {"left_margin", r.left_margin},
            {"right_margin", r.right_margin},
            {"pass", r.pass}};
}

inline std::string csv_header() {
    return "m,alpha,q,ratio,exact_form,lower,upper,method,verdict";
}

/// One verification row; q components joined with '|', '.' decimals, no locale.
inline std::string to_csv_row(const ConstantReport& r) {
    std::string q_joined;
    for (std::size_t i = 0; i < r.q.size(); ++i) {
        if (i) q_joined += '|';
        q_joined += detail::format_double(r.q[i]);
    }
    std::string row;
    row += std::to_string(r.m);
    row += ',';
    row += detail::format_double(r.q.empty() ? 0.0 : r.q.front());
    row += ',';
    row += q_joined;
    row += ',';
    row += detail::format_double(r.empirical_ratio);
    row += ',';
    row += r.exact_form ? to_string(*r.exact_form) : "";
    row += ',';
    row += detail::format_double(r.analytic_lower);
    row += ',';
    row += detail::format_double(r.analytic_upper);
    row += ',';
    row += to_string(r.norm_method);
    row += ',';
    row += to_string(r.verdict);
    return row;
}

}  // namespace littlewood
