#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "littlewood/tensor.hpp"

namespace littlewood {

/// Construction refuses arities past this point: the entry count 4^(m-1)
/// leaves desk scale well before the cap is reached.
inline constexpr int kMaxExtremalArity = 16;

/// Extents of the m-linear extremal form: [2^(m-1), 2^(m-1), 2^(m-2), ..., 2].
inline std::vector<int> expected_dims(int m) {
    if (m < 2) throw std::invalid_argument("extremal forms require arity >= 2");
    std::vector<int> dims(m);
    dims[0] = 1 << (m - 1);
    dims[1] = 1 << (m - 1);
    for (int k = 3; k <= m; ++k) dims[k - 1] = 1 << (m - k + 1);
    return dims;
}

/// Operator norm of the m-linear extremal form, 2^(m-1). Used as the
/// analytic upper bound when certifying heuristic searches.
inline double analytic_norm_upper(int m) {
    if (m < 2) throw std::invalid_argument("extremal forms require arity >= 2");
    return std::exp2(m - 1);
}

/// Recursive family of extremal m-linear forms with coefficients +-1.
///
/// Base case (m = 2):
///     T2(x,y) = x1*y1 + x1*y2 + x2*y1 - x2*y2.
/// Step (m-1 -> m), with S the previous form: the new form is
///     (x_m^1 + x_m^2) * S(x_1, ..., x_{m-1})
///   + (x_m^1 - x_m^2) * S(shifted arguments),
/// where the second copy lives on index-translated coordinates: axes 1 and 2
/// move up by 2^(m-2) and axis k (3 <= k < m) by 2^(m-k). The two copies have
/// disjoint supports, so the result keeps coefficients +-1 and gains a factor
/// of 4 in entry count: nnz = 4^(m-1).
inline CoefficientTensor construct_extremal(int m) {
    if (m < 2) throw std::invalid_argument("extremal forms require arity >= 2");
    if (m > kMaxExtremalArity)
        throw BudgetError("extremal arity cap exceeded: m = " + std::to_string(m) +
                          " > " + std::to_string(kMaxExtremalArity));

    std::vector<Entry> entries = {
        {{1, 1}, 1.0}, {{1, 2}, 1.0}, {{2, 1}, 1.0}, {{2, 2}, -1.0}};

    for (int s = 3; s <= m; ++s) {
        std::vector<Entry> next;
        next.reserve(entries.size() * 4);
        for (const Entry& e : entries) {
            MultiIndex base = e.idx;
            base.push_back(1);
            MultiIndex shifted = e.idx;
            shifted[0] += 1 << (s - 2);
            shifted[1] += 1 << (s - 2);
            for (int k = 3; k < s; ++k) shifted[k - 1] += 1 << (s - k);
            shifted.push_back(1);

            next.push_back({base, e.val});
            base.back() = 2;
            next.push_back({std::move(base), e.val});
            next.push_back({shifted, e.val});
            shifted.back() = 2;
            next.push_back({std::move(shifted), -e.val});
        }
        entries = std::move(next);
    }

    return CoefficientTensor(m, expected_dims(m), std::move(entries));
}

}  // namespace littlewood
