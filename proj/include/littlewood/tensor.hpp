#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "littlewood/errors.hpp"

namespace littlewood {

/// 1-based multi-index into an m-way coefficient array.
using MultiIndex = std::vector<int>;

struct Entry {
    MultiIndex idx;
    double val = 0.0;

    bool operator==(const Entry&) const = default;
};

/// True when v is an integer exactly representable in a double (|v| <= 2^53).
inline bool is_integral_value(double v) {
    return std::isfinite(v) && v == std::nearbyint(v) &&
           std::abs(v) <= 9007199254740992.0;
}

/// Sparse m-way array of real coefficients, the matrix of a finitely
/// supported m-linear form on c0. Canonical form: entries sorted
/// lexicographically by multi-index, no zero coefficients, no duplicates.
/// Immutable after construction.
class CoefficientTensor {
public:
    CoefficientTensor(int arity, std::vector<int> dims, std::vector<Entry> entries)
        : arity_(arity), dims_(std::move(dims)), entries_(std::move(entries)) {
        if (arity_ < 1)
            throw std::invalid_argument("tensor arity must be >= 1");
        if (static_cast<int>(dims_.size()) != arity_)
            throw std::invalid_argument("dims size does not match arity");
        for (int d : dims_)
            if (d <= 0)
                throw std::invalid_argument("nonpositive dimension");

        for (const Entry& e : entries_) {
            if (static_cast<int>(e.idx.size()) != arity_)
                throw std::invalid_argument("multi-index length does not match arity");
            for (int k = 0; k < arity_; ++k)
                if (e.idx[k] < 1 || e.idx[k] > dims_[k])
                    throw std::out_of_range("multi-index out of range: axis " +
                                            std::to_string(k + 1));
            if (!std::isfinite(e.val))
                throw std::invalid_argument("non-finite coefficient");
        }

        // Canonicalize: drop zeros, sort, reject duplicates.
        std::erase_if(entries_, [](const Entry& e) { return e.val == 0.0; });
        std::sort(entries_.begin(), entries_.end(),
                  [](const Entry& a, const Entry& b) { return a.idx < b.idx; });
        for (std::size_t i = 1; i < entries_.size(); ++i)
            if (entries_[i].idx == entries_[i - 1].idx)
                throw std::invalid_argument("duplicate multi-index");

        integral_ = true;
        max_abs_ = 0.0;
        for (const Entry& e : entries_) {
            integral_ = integral_ && is_integral_value(e.val);
            max_abs_ = std::max(max_abs_, std::abs(e.val));
        }
    }

    int arity() const noexcept { return arity_; }
    const std::vector<int>& dims() const noexcept { return dims_; }
    const std::vector<Entry>& entries() const noexcept { return entries_; }
    std::size_t nnz() const noexcept { return entries_.size(); }

    /// All coefficients are exactly representable 64-bit integers.
    bool integral_coefficients() const noexcept { return integral_; }
    double max_abs_coefficient() const noexcept { return max_abs_; }

    /// Stored coefficient at idx, or 0 for an absent index.
    double coefficient(const MultiIndex& idx) const {
        if (static_cast<int>(idx.size()) != arity_)
            throw std::invalid_argument("multi-index length does not match arity");
        for (int k = 0; k < arity_; ++k)
            if (idx[k] < 1 || idx[k] > dims_[k])
                throw std::out_of_range("multi-index out of range: axis " +
                                        std::to_string(k + 1));
        auto it = std::lower_bound(entries_.begin(), entries_.end(), idx,
                                   [](const Entry& e, const MultiIndex& i) { return e.idx < i; });
        if (it != entries_.end() && it->idx == idx) return it->val;
        return 0.0;
    }

    /// Sub-tensor of arity m-1 fixing axis (1-based) at index; axis removed.
    CoefficientTensor axis_slice(int axis, int index) const {
        if (arity_ < 2)
            throw std::invalid_argument("axis_slice requires arity >= 2");
        if (axis < 1 || axis > arity_)
            throw std::out_of_range("axis out of range");
        if (index < 1 || index > dims_[axis - 1])
            throw std::out_of_range("index out of range for axis " + std::to_string(axis));

        std::vector<int> sub_dims;
        sub_dims.reserve(arity_ - 1);
        for (int k = 0; k < arity_; ++k)
            if (k != axis - 1) sub_dims.push_back(dims_[k]);

        std::vector<Entry> sub;
        for (const Entry& e : entries_) {
            if (e.idx[axis - 1] != index) continue;
            MultiIndex idx;
            idx.reserve(arity_ - 1);
            for (int k = 0; k < arity_; ++k)
                if (k != axis - 1) idx.push_back(e.idx[k]);
            sub.push_back({std::move(idx), e.val});
        }
        return CoefficientTensor(arity_ - 1, std::move(sub_dims), std::move(sub));
    }

    /// Entrywise scaling by a constant.
    CoefficientTensor scaled(double factor) const {
        std::vector<Entry> scaled_entries = entries_;
        for (Entry& e : scaled_entries) e.val *= factor;
        return CoefficientTensor(arity_, dims_, std::move(scaled_entries));
    }

    bool operator==(const CoefficientTensor&) const = default;

private:
    int arity_;
    std::vector<int> dims_;
    std::vector<Entry> entries_;
    bool integral_ = true;
    double max_abs_ = 0.0;
};

/// One sign vector in {-1,+1}^dims[k] per tensor axis; a vertex of the
/// product of unit cubes and hence a candidate norming point.
struct SignAssignment {
    std::vector<std::vector<std::int8_t>> axes;

    static SignAssignment all_plus(const std::vector<int>& dims) {
        SignAssignment s;
        s.axes.reserve(dims.size());
        for (int d : dims) s.axes.emplace_back(d, std::int8_t{1});
        return s;
    }

    bool operator==(const SignAssignment&) const = default;
};

inline void validate_signs(const CoefficientTensor& t, const SignAssignment& s) {
    if (static_cast<int>(s.axes.size()) != t.arity())
        throw std::invalid_argument("sign assignment arity mismatch");
    for (int k = 0; k < t.arity(); ++k) {
        if (static_cast<int>(s.axes[k].size()) != t.dims()[k])
            throw std::invalid_argument("sign vector length mismatch on axis " +
                                        std::to_string(k + 1));
        for (std::int8_t v : s.axes[k])
            if (v != 1 && v != -1)
                throw std::invalid_argument("sign components must be -1 or +1");
    }
}

namespace detail {

// The integer evaluation path is safe when the worst-case accumulated
// magnitude stays well inside int64.
inline bool fits_int64(double bound) { return bound <= 4.0e18; }

}  // namespace detail

/// Value of the m-linear form at one vector per axis. Exact 64-bit integer
/// arithmetic when every coefficient and input component is integral.
inline double evaluate(const CoefficientTensor& t, const std::vector<std::vector<double>>& x) {
    if (static_cast<int>(x.size()) != t.arity())
        throw std::invalid_argument("argument count does not match arity");
    for (int k = 0; k < t.arity(); ++k)
        if (static_cast<int>(x[k].size()) != t.dims()[k])
            throw std::invalid_argument("argument length mismatch on axis " +
                                        std::to_string(k + 1));

    bool integral = t.integral_coefficients();
    double bound = t.max_abs_coefficient() * static_cast<double>(std::max<std::size_t>(t.nnz(), 1));
    for (int k = 0; k < t.arity() && integral; ++k) {
        double axis_max = 0.0;
        for (double v : x[k]) {
            integral = integral && is_integral_value(v);
            axis_max = std::max(axis_max, std::abs(v));
        }
        bound *= std::max(axis_max, 1.0);
    }

    if (integral && detail::fits_int64(bound)) {
        std::int64_t sum = 0;
        for (const Entry& e : t.entries()) {
            auto term = static_cast<std::int64_t>(e.val);
            for (int k = 0; k < t.arity(); ++k)
                term *= static_cast<std::int64_t>(x[k][e.idx[k] - 1]);
            sum += term;
        }
        return static_cast<double>(sum);
    }

    double sum = 0.0;
    for (const Entry& e : t.entries()) {
        double term = e.val;
        for (int k = 0; k < t.arity(); ++k) term *= x[k][e.idx[k] - 1];
        sum += term;
    }
    return sum;
}

/// Evaluation at a sign vertex.
inline double evaluate(const CoefficientTensor& t, const SignAssignment& s) {
    validate_signs(t, s);

    if (t.integral_coefficients() &&
        detail::fits_int64(t.max_abs_coefficient() * static_cast<double>(t.nnz()))) {
        std::int64_t sum = 0;
        for (const Entry& e : t.entries()) {
            int sign = 1;
            for (int k = 0; k < t.arity(); ++k) sign *= s.axes[k][e.idx[k] - 1];
            sum += sign * static_cast<std::int64_t>(e.val);
        }
        return static_cast<double>(sum);
    }

    double sum = 0.0;
    for (const Entry& e : t.entries()) {
        int sign = 1;
        for (int k = 0; k < t.arity(); ++k) sign *= s.axes[k][e.idx[k] - 1];
        sum += sign * e.val;
    }
    return sum;
}

}  // namespace littlewood
