#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "littlewood/norm.hpp"
#include "littlewood/tensor.hpp"

namespace littlewood {

/// Multiple exponent q = (q_1, ..., q_m), every component in [1, inf).
using ExponentTuple = std::vector<double>;

namespace detail {

// Exponents seen on the dyadic verification paths are 1, 2 and 1/2; keeping
// those cases in exact arithmetic lets +-1 tensors produce bit-exact powers
// of sqrt(2).
inline double pow_special(double x, double e) {
    if (e == 1.0) return x;
    if (e == 2.0) return x * x;
    if (e == 0.5) return std::sqrt(x);
    return std::pow(x, e);
}

// Fixed-order pairwise reduction. Balanced rows of equal inner values (the
// extremal family) then sum by exact doublings, so the dyadic identities
// survive in floating point bit for bit.
inline double pairwise_sum(const double* v, std::size_t n) {
    if (n == 0) return 0.0;
    if (n == 1) return v[0];
    if (n == 2) return v[0] + v[1];
    const std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

struct NestedEval {
    const std::vector<Entry>& entries;
    const ExponentTuple& q;
    int arity;

    double run(std::size_t lo, std::size_t hi, int axis) const {
        std::vector<double> terms;
        if (axis == arity) {
            terms.reserve(hi - lo);
            for (std::size_t i = lo; i < hi; ++i)
                terms.push_back(pow_special(std::abs(entries[i].val), q[axis - 1]));
            return pairwise_sum(terms.data(), terms.size());
        }
        const double ratio = q[axis - 1] / q[axis];
        std::size_t i = lo;
        while (i < hi) {
            const int group = entries[i].idx[axis - 1];
            std::size_t j = i;
            while (j < hi && entries[j].idx[axis - 1] == group) ++j;
            terms.push_back(pow_special(run(i, j, axis + 1), ratio));
            i = j;
        }
        return pairwise_sum(terms.data(), terms.size());
    }
};

}  // namespace detail

inline void validate_exponents(const ExponentTuple& q) {
    if (q.empty()) throw std::invalid_argument("exponent tuple must be nonempty");
    for (double v : q)
        if (!std::isfinite(v) || v < 1.0)
            throw std::invalid_argument("exponents must lie in [1, inf)");
}

/// Nested mixed norm over the sparse support: exponent q[m-1] applies to the
/// innermost axis m, q[0] to the outermost axis 1,
///   ( sum_{j1} ( ... ( sum_{jm} |c|^{q_m} )^{q_{m-1}/q_m} ... )^{q_1/q_2} )^{1/q_1}.
/// Inner sums run in ascending index order.
inline double nested_norm(const CoefficientTensor& t, const ExponentTuple& q) {
    validate_exponents(q);
    if (static_cast<int>(q.size()) != t.arity())
        throw std::invalid_argument("exponent count does not match tensor arity");
    const detail::NestedEval eval{t.entries(), q, t.arity()};
    return detail::pow_special(eval.run(0, t.nnz(), 1), 1.0 / q[0]);
}

/// The (l1, l2) mixed sum: l2 over all trailing axes jointly, l1 over the
/// first. Equals nested_norm with exponents (1, 2, ..., 2).
inline double mixed_l1_l2(const CoefficientTensor& t) {
    if (t.arity() < 2) throw std::invalid_argument("mixed_l1_l2 requires arity >= 2");
    ExponentTuple q(t.arity(), 2.0);
    q[0] = 1.0;
    return nested_norm(t, q);
}

/// A multiple exponent is admissible when every component lies in [1,2] and
/// the reciprocals sum to (m+1)/2.
inline bool is_admissible(const ExponentTuple& q) {
    if (q.empty()) return false;
    double recip = 0.0;
    for (double v : q) {
        if (!std::isfinite(v) || v < 1.0 || v > 2.0) return false;
        recip += 1.0 / v;
    }
    return std::abs(recip - (static_cast<double>(q.size()) + 1.0) / 2.0) <= 1e-12;
}

struct RatioResult {
    double value = 0.0;
    NormMethod norm_method = NormMethod::exact;
};

/// Empirical lower bound on the inequality constant: nested mixed norm over
/// operator norm. The norm's method tag is carried along so callers can tell
/// certified ratios from merely heuristic ones.
inline RatioResult ratio(const CoefficientTensor& t, const ExponentTuple& q,
                         const NormResult& norm) {
    if (!(norm.value > 0.0))
        throw std::invalid_argument("ratio undefined for zero operator norm");
    return {nested_norm(t, q) / norm.value, norm.method};
}

}  // namespace littlewood
