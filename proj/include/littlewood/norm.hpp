#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "littlewood/errors.hpp"
#include "littlewood/tensor.hpp"

namespace littlewood {

enum class NormMethod { exact, heuristic, certified };

inline const char* to_string(NormMethod m) {
    switch (m) {
        case NormMethod::exact: return "exact";
        case NormMethod::heuristic: return "heuristic";
        case NormMethod::certified: return "certified";
    }
    return "?";
}

struct NormStats {
    std::uint64_t evaluations = 0;
    int restarts = 0;
    int iterations = 0;
};

/// A norm value together with the sign vertex that attains it.
/// For method exact or certified, evaluate(T, certificate) == value
/// (bit-exact on integral tensors).
struct NormResult {
    double value = 0.0;
    SignAssignment certificate;
    NormMethod method = NormMethod::exact;
    NormStats stats;
};

struct LinearResolveResult {
    double value = 0.0;
    std::vector<std::int8_t> resolved_signs;
};

namespace detail {

template <typename Acc>
inline Acc abs_acc(Acc v) {
    return v < Acc(0) ? -v : v;
}

template <typename Acc>
LinearResolveResult linear_resolve_impl(const CoefficientTensor& t,
                                        const SignAssignment& signs, int axis0) {
    const int extent = t.dims()[axis0];
    std::vector<Acc> inner(extent, Acc(0));
    for (const Entry& e : t.entries()) {
        int sign = 1;
        for (int k = 0; k < t.arity(); ++k)
            if (k != axis0) sign *= signs.axes[k][e.idx[k] - 1];
        inner[e.idx[axis0] - 1] += static_cast<Acc>(sign) * static_cast<Acc>(e.val);
    }
    LinearResolveResult out;
    out.resolved_signs.resize(extent);
    Acc total(0);
    for (int j = 0; j < extent; ++j) {
        total += abs_acc(inner[j]);
        out.resolved_signs[j] = inner[j] < Acc(0) ? std::int8_t{-1} : std::int8_t{1};
    }
    out.value = static_cast<double>(total);
    return out;
}

inline bool use_integer_path(const CoefficientTensor& t) {
    return t.integral_coefficients() &&
           fits_int64(4.0 * t.max_abs_coefficient() *
                      static_cast<double>(std::max<std::size_t>(t.nnz(), 1)));
}

}  // namespace detail

/// Fixing signs on every axis but one leaves a linear functional; its sup
/// over the unit ball is the l1 norm of the per-index inner sums. Returns
/// that value plus the optimal signs of the resolved axis (zero sums
/// resolve to +1).
///
/// `signs` must carry a vector per axis, with the resolved axis's vector
/// empty and every other vector matching its extent.
inline LinearResolveResult linear_resolve(const CoefficientTensor& t,
                                          const SignAssignment& signs, int resolved_axis) {
    const int m = t.arity();
    if (resolved_axis < 1 || resolved_axis > m)
        throw std::out_of_range("resolved axis out of range");
    if (static_cast<int>(signs.axes.size()) != m)
        throw std::invalid_argument("sign assignment arity mismatch");
    for (int k = 0; k < m; ++k) {
        if (k == resolved_axis - 1) {
            if (!signs.axes[k].empty())
                throw std::invalid_argument("resolved axis must have no preset signs");
            continue;
        }
        if (static_cast<int>(signs.axes[k].size()) != t.dims()[k])
            throw std::invalid_argument("sign vector length mismatch on axis " +
                                        std::to_string(k + 1));
        for (std::int8_t v : signs.axes[k])
            if (v != 1 && v != -1)
                throw std::invalid_argument("sign components must be -1 or +1");
    }
    if (detail::use_integer_path(t))
        return detail::linear_resolve_impl<std::int64_t>(t, signs, resolved_axis - 1);
    return detail::linear_resolve_impl<double>(t, signs, resolved_axis - 1);
}

namespace detail {

// Bit layout for the Gray-code sweep over all sign choices outside the
// resolved axis. Positions are grouped by axis, widest axes first, so the
// most frequently flipped low bits touch the smallest entry slices.
struct GrayLayout {
    int resolved_axis0 = 0;
    int bits = 0;
    std::vector<int> pos_axis;
    std::vector<int> pos_index;
    std::vector<std::uint32_t> slice_off;
    std::vector<std::uint32_t> slice_entry;
    std::vector<std::uint32_t> row;
    std::vector<std::uint64_t> entry_mask;
};

inline int pick_resolved_axis(const std::vector<int>& dims) {
    int r = 0;
    for (int k = 1; k < static_cast<int>(dims.size()); ++k)
        if (dims[k] > dims[r]) r = k;
    return r;
}

inline GrayLayout build_gray_layout(const CoefficientTensor& t) {
    const auto& dims = t.dims();
    const int m = t.arity();
    GrayLayout layout;
    layout.resolved_axis0 = pick_resolved_axis(dims);

    std::vector<int> order;
    for (int k = 0; k < m; ++k)
        if (k != layout.resolved_axis0) order.push_back(k);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return dims[a] > dims[b]; });

    std::vector<int> base(m, -1);
    for (int k : order) {
        base[k] = layout.bits;
        layout.bits += dims[k];
    }
    layout.pos_axis.resize(layout.bits);
    layout.pos_index.resize(layout.bits);
    for (int k : order)
        for (int i = 0; i < dims[k]; ++i) {
            layout.pos_axis[base[k] + i] = k;
            layout.pos_index[base[k] + i] = i;
        }

    const auto& entries = t.entries();
    layout.row.resize(entries.size());
    layout.entry_mask.resize(entries.size());
    std::vector<std::uint32_t> count(layout.bits, 0);
    for (std::size_t e = 0; e < entries.size(); ++e) {
        layout.row[e] = static_cast<std::uint32_t>(entries[e].idx[layout.resolved_axis0] - 1);
        std::uint64_t mask = 0;
        for (int k = 0; k < m; ++k) {
            if (k == layout.resolved_axis0) continue;
            int p = base[k] + entries[e].idx[k] - 1;
            mask |= std::uint64_t{1} << p;
            ++count[p];
        }
        layout.entry_mask[e] = mask;
    }
    layout.slice_off.assign(layout.bits + 1, 0);
    for (int p = 0; p < layout.bits; ++p) layout.slice_off[p + 1] = layout.slice_off[p] + count[p];
    layout.slice_entry.resize(entries.size() ? layout.slice_off[layout.bits] : 0);
    std::vector<std::uint32_t> fill(layout.slice_off.begin(), layout.slice_off.end() - 1);
    for (std::size_t e = 0; e < entries.size(); ++e) {
        std::uint64_t mask = layout.entry_mask[e];
        while (mask) {
            int p = std::countr_zero(mask);
            mask &= mask - 1;
            layout.slice_entry[fill[p]++] = static_cast<std::uint32_t>(e);
        }
    }
    return layout;
}

template <typename Acc>
struct BlockBest {
    Acc value{};
    std::uint64_t gray_step = 0;
    std::uint64_t mask = 0;
};

template <typename Acc>
inline bool better(const BlockBest<Acc>& a, const BlockBest<Acc>& b) {
    return a.value > b.value || (a.value == b.value && a.gray_step < b.gray_step);
}

// Enumerates Gray-code steps [begin, end); exactly one sign bit flips per
// step, and only the entries in that bit's slice are touched.
template <typename Acc>
BlockBest<Acc> run_gray_block(const CoefficientTensor& t, const GrayLayout& layout,
                              std::uint64_t begin, std::uint64_t end) {
    const auto& entries = t.entries();
    const std::uint64_t mask0 = begin ^ (begin >> 1);

    std::vector<Acc> term(entries.size());
    std::vector<Acc> acc(t.dims()[layout.resolved_axis0], Acc(0));
    for (std::size_t e = 0; e < entries.size(); ++e) {
        const bool neg = std::popcount(mask0 & layout.entry_mask[e]) & 1;
        term[e] = static_cast<Acc>(neg ? -entries[e].val : entries[e].val);
        acc[layout.row[e]] += term[e];
    }
    Acc objective(0);
    for (Acc v : acc) objective += abs_acc(v);

    BlockBest<Acc> best{objective, begin, mask0};
    std::uint64_t mask = mask0;
    for (std::uint64_t step = begin + 1; step < end; ++step) {
        const int p = std::countr_zero(step);
        mask ^= std::uint64_t{1} << p;
        for (std::uint32_t s = layout.slice_off[p]; s < layout.slice_off[p + 1]; ++s) {
            const std::uint32_t e = layout.slice_entry[s];
            const std::uint32_t r = layout.row[e];
            objective -= abs_acc(acc[r]);
            acc[r] -= Acc(2) * term[e];
            objective += abs_acc(acc[r]);
            term[e] = -term[e];
        }
        if (objective > best.value) best = {objective, step, mask};
    }
    return best;
}

template <typename Acc>
BlockBest<Acc> run_gray_search(const CoefficientTensor& t, const GrayLayout& layout,
                               bool allow_parallel) {
    const std::uint64_t total = std::uint64_t{1} << layout.bits;

    unsigned hw = std::thread::hardware_concurrency();
    int workers = 1;
    if (allow_parallel && layout.bits >= 22 && hw > 1)
        workers = static_cast<int>(std::min<unsigned>(hw, 16));

    if (workers == 1) return run_gray_block<Acc>(t, layout, 0, total);

    // Partition on the high bits: within a block only low bits flip, so each
    // block replays a contiguous chunk of the sequential Gray sequence. The
    // (value, first step) merge makes the result identical to a full
    // sequential sweep.
    int prefix_bits = 0;
    while ((1 << prefix_bits) < 4 * workers && prefix_bits < layout.bits - 16) ++prefix_bits;
    const std::uint64_t blocks = std::uint64_t{1} << prefix_bits;
    const std::uint64_t block_len = total >> prefix_bits;
    if (blocks <= 1) return run_gray_block<Acc>(t, layout, 0, total);

    std::vector<BlockBest<Acc>> local(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            BlockBest<Acc> mine;
            bool seeded = false;
            for (std::uint64_t b = static_cast<std::uint64_t>(w); b < blocks;
                 b += static_cast<std::uint64_t>(workers)) {
                auto r = run_gray_block<Acc>(t, layout, b * block_len, (b + 1) * block_len);
                if (!seeded || better(r, mine)) {
                    mine = r;
                    seeded = true;
                }
            }
            local[w] = mine;
        });
    }
    for (auto& th : pool) th.join();

    BlockBest<Acc> best = local[0];
    for (int w = 1; w < workers; ++w)
        if (better(local[w], best)) best = local[w];
    return best;
}

}  // namespace detail

/// Supremum of |T| over the product of unit balls, computed exactly: a
/// multilinear form on a product of cubes peaks at a vertex, every sign
/// choice outside the widest axis is enumerated in Gray-code order, and the
/// last axis is resolved in closed form. Throws BudgetError when the
/// enumeration would exceed 2^budget_bits patterns.
inline NormResult exact_sup_norm(const CoefficientTensor& t, int budget_bits = 26) {
    if (budget_bits < 0 || budget_bits > 48)
        throw std::invalid_argument("budget_bits must lie in [0, 48]");

    if (t.nnz() == 0) {
        NormResult out;
        out.certificate = SignAssignment::all_plus(t.dims());
        out.stats.evaluations = 1;
        return out;
    }

    const int r = detail::pick_resolved_axis(t.dims());
    long long bits = 0;
    for (int k = 0; k < t.arity(); ++k)
        if (k != r) bits += t.dims()[k];
    if (bits > budget_bits)
        throw BudgetError("exact norm needs 2^" + std::to_string(bits) +
                          " sign patterns, over the 2^" + std::to_string(budget_bits) +
                          " budget; raise the budget (--deep) or use alternating_ascent");

    const auto layout = detail::build_gray_layout(t);
    const bool integral = detail::use_integer_path(t);

    std::uint64_t best_mask;
    if (integral) {
        best_mask = detail::run_gray_search<std::int64_t>(t, layout, true).mask;
    } else {
        // Float accumulators drift by an ulp per update, so blocks started
        // from fresh state would not replay the sequential sums bit for bit;
        // the parallel partition is reserved for the integer path.
        best_mask = detail::run_gray_search<double>(t, layout, false).mask;
    }

    SignAssignment cert = SignAssignment::all_plus(t.dims());
    for (int p = 0; p < layout.bits; ++p)
        if (best_mask >> p & 1) cert.axes[layout.pos_axis[p]][layout.pos_index[p]] = -1;
    cert.axes[r].clear();
    const auto resolved = linear_resolve(t, cert, r + 1);
    cert.axes[r] = resolved.resolved_signs;

    NormResult out;
    out.value = resolved.value;
    out.certificate = std::move(cert);
    out.method = NormMethod::exact;
    out.stats.evaluations = std::uint64_t{1} << layout.bits;
    return out;
}

/// Coordinate ascent over sign vertices: sweep the axes, setting each axis
/// to its closed-form optimum given the others. The objective never
/// decreases, so each restart stops at a fixed point; the best vertex over
/// all restarts is returned. Deterministic given (seed, restarts).
///
/// `sweep_trace`, when given, receives the objective after every completed
/// sweep (restarts are concatenated; monotonicity holds within a restart).
inline NormResult alternating_ascent(const CoefficientTensor& t, int restarts,
                                     std::uint64_t seed,
                                     std::vector<double>* sweep_trace = nullptr) {
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");

    const int m = t.arity();
    const auto& dims = t.dims();
    const auto& entries = t.entries();

    NormResult best;
    best.value = -1.0;
    best.method = NormMethod::heuristic;

    std::uint64_t evals = 0;
    int sweeps_total = 0;

    const bool integral = detail::use_integer_path(t);

    auto run = [&](auto acc_tag) {
        using Acc = decltype(acc_tag);
        std::vector<Acc> term(entries.size());
        std::vector<Acc> inner;
        std::vector<char> flipped;

        for (int restart = 0; restart < restarts; ++restart) {
            std::mt19937_64 rng(seed ^
                                (0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(restart) + 1)));
            SignAssignment signs;
            signs.axes.resize(m);
            for (int k = 0; k < m; ++k) {
                signs.axes[k].resize(dims[k]);
                for (int i = 0; i < dims[k]; ++i)
                    signs.axes[k][i] = (rng() & 1) ? std::int8_t{1} : std::int8_t{-1};
            }
            for (std::size_t e = 0; e < entries.size(); ++e) {
                int sign = 1;
                for (int k = 0; k < m; ++k) sign *= signs.axes[k][entries[e].idx[k] - 1];
                term[e] = static_cast<Acc>(sign) * static_cast<Acc>(entries[e].val);
            }

            for (int sweep = 0; sweep < 1000; ++sweep) {
                bool changed = false;
                Acc objective(0);
                for (int a = 0; a < m; ++a) {
                    inner.assign(dims[a], Acc(0));
                    for (std::size_t e = 0; e < entries.size(); ++e)
                        inner[entries[e].idx[a] - 1] +=
                            term[e] * static_cast<Acc>(signs.axes[a][entries[e].idx[a] - 1]);
                    ++evals;

                    objective = Acc(0);
                    flipped.assign(dims[a], 0);
                    bool axis_changed = false;
                    for (int i = 0; i < dims[a]; ++i) {
                        objective += detail::abs_acc(inner[i]);
                        const std::int8_t opt = inner[i] < Acc(0) ? std::int8_t{-1} : std::int8_t{1};
                        if (opt != signs.axes[a][i]) {
                            signs.axes[a][i] = opt;
                            flipped[i] = 1;
                            axis_changed = true;
                        }
                    }
                    if (axis_changed) {
                        for (std::size_t e = 0; e < entries.size(); ++e)
                            if (flipped[entries[e].idx[a] - 1]) term[e] = -term[e];
                        changed = true;
                    }
                }
                ++sweeps_total;
                if (sweep_trace) sweep_trace->push_back(static_cast<double>(objective));
                if (!changed) break;
            }

            const double value = evaluate(t, signs);
            if (value > best.value) {
                best.value = value;
                best.certificate = signs;
            }
        }
    };

    if (integral)
        run(std::int64_t{});
    else
        run(double{});

    if (best.value < 0.0) best.value = 0.0;  // nnz == 0
    if (best.certificate.axes.empty()) best.certificate = SignAssignment::all_plus(dims);
    best.stats = {evals, restarts, sweeps_total};
    return best;
}

/// Pairs the heuristic lower bound with a caller-supplied analytic upper
/// bound. When the ascent attains the bound (exactly on integral tensors,
/// else within 1e-9 relative) the value is certified as the true norm.
/// A heuristic value above the bound means the bound is wrong.
inline NormResult certified_norm(const CoefficientTensor& t, double upper, int restarts = 100,
                                 std::uint64_t seed = 0) {
    if (!std::isfinite(upper) || upper < 0.0)
        throw std::invalid_argument("upper bound must be finite and nonnegative");

    NormResult result = alternating_ascent(t, restarts, seed);

    bool meets, exceeds;
    if (t.integral_coefficients() && is_integral_value(upper)) {
        meets = result.value == upper;
        exceeds = result.value > upper;
    } else {
        meets = std::abs(result.value - upper) <= 1e-9 * std::abs(upper);
        exceeds = result.value > upper + 1e-9 * std::abs(upper);
    }
    if (exceeds)
        throw InvalidBoundError("heuristic lower bound " + std::to_string(result.value) +
                                " exceeds the claimed upper bound " + std::to_string(upper));
    if (meets) result.method = NormMethod::certified;
    return result;
}

}  // namespace littlewood
