#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "littlewood/extremal.hpp"
#include "test_support.hpp"

using littlewood::CoefficientTensor;
using littlewood::construct_extremal;
using littlewood::expected_dims;

namespace {

// Undo the recursion's index translation on the second block.
littlewood::MultiIndex unshift(littlewood::MultiIndex idx, int m) {
    idx[0] -= 1 << (m - 2);
    idx[1] -= 1 << (m - 2);
    for (int k = 3; k < m; ++k) idx[k - 1] -= 1 << (m - k);
    idx.pop_back();
    return idx;
}

}  // namespace

TEST_CASE("expected dims") {
    CHECK(expected_dims(2) == std::vector<int>{2, 2});
    CHECK(expected_dims(3) == std::vector<int>{4, 4, 2});
    CHECK(expected_dims(4) == std::vector<int>{8, 8, 4, 2});
    CHECK_THROWS_AS(expected_dims(1), std::invalid_argument);
}

TEST_CASE("analytic norm upper") {
    CHECK(littlewood::analytic_norm_upper(2) == 2.0);
    CHECK(littlewood::analytic_norm_upper(3) == 4.0);
    CHECK(littlewood::analytic_norm_upper(4) == 8.0);
    CHECK_THROWS_AS(littlewood::analytic_norm_upper(1), std::invalid_argument);
}

TEST_CASE("base case is the displayed bilinear form") {
    const auto t = construct_extremal(2);
    CHECK(t == lwtest::t2_by_hand());
}

TEST_CASE("trilinear form matches the displayed expansion") {
    // (z1+z2)(x1y1+x1y2+x2y1-x2y2) + (z1-z2)(x3y3+x3y4+x4y3-x4y4)
    const auto t = construct_extremal(3);
    REQUIRE(t.nnz() == 16);
    CHECK(t.dims() == expected_dims(3));

    CHECK(t.coefficient({1, 1, 1}) == 1.0);
    CHECK(t.coefficient({1, 1, 2}) == 1.0);
    CHECK(t.coefficient({2, 2, 1}) == -1.0);
    CHECK(t.coefficient({2, 2, 2}) == -1.0);
    CHECK(t.coefficient({3, 3, 1}) == 1.0);
    CHECK(t.coefficient({3, 3, 2}) == -1.0);
    CHECK(t.coefficient({4, 3, 1}) == 1.0);
    CHECK(t.coefficient({4, 4, 1}) == -1.0);
    CHECK(t.coefficient({4, 4, 2}) == 1.0);
    // the two blocks do not overlap
    CHECK(t.coefficient({1, 3, 1}) == 0.0);
    CHECK(t.coefficient({3, 1, 1}) == 0.0);
}

TEST_CASE("quadrilinear form matches the displayed blocks") {
    const auto t = construct_extremal(4);
    REQUIRE(t.nnz() == 64);
    CHECK(t.dims() == expected_dims(4));

    // (w1+w2)(z1+z2) x1y1 block
    CHECK(t.coefficient({1, 1, 1, 1}) == 1.0);
    CHECK(t.coefficient({2, 2, 1, 1}) == -1.0);
    // (w1+w2)(z1-z2) x3y3 block
    CHECK(t.coefficient({3, 3, 2, 1}) == -1.0);
    CHECK(t.coefficient({3, 3, 1, 2}) == 1.0);
    // (w1-w2)(z3+z4) x5y5 block
    CHECK(t.coefficient({5, 5, 3, 1}) == 1.0);
    CHECK(t.coefficient({5, 5, 3, 2}) == -1.0);
    CHECK(t.coefficient({6, 6, 3, 1}) == -1.0);
    // (w1-w2)(z3-z4) x7y7 block
    CHECK(t.coefficient({7, 7, 4, 2}) == 1.0);
    CHECK(t.coefficient({8, 8, 4, 2}) == -1.0);
    CHECK(t.coefficient({8, 8, 4, 1}) == 1.0);
}

TEST_CASE("structural invariants up to m = 8") {
    for (int m = 2; m <= 8; ++m) {
        const auto t = construct_extremal(m);
        INFO("m = " << m);
        CHECK(t.nnz() == static_cast<std::size_t>(1) << (2 * (m - 1)));
        CHECK(t.dims() == expected_dims(m));

        std::map<int, std::size_t> row_counts;
        for (const auto& e : t.entries()) {
            CHECK(std::abs(e.val) == 1.0);
            ++row_counts[e.idx[0]];
        }
        // balanced rows: every first-axis index carries 2^(m-1) entries
        CHECK(row_counts.size() == static_cast<std::size_t>(1) << (m - 1));
        for (const auto& [row, count] : row_counts)
            CHECK(count == static_cast<std::size_t>(1) << (m - 1));
    }
}

TEST_CASE("sub-block recovery reproduces the previous form") {
    for (int m = 3; m <= 5; ++m) {
        const auto t = construct_extremal(m);
        const auto prev = construct_extremal(m - 1);
        const int half = 1 << (m - 2);

        std::vector<littlewood::Entry> low1, low2, high1, high2;
        for (const auto& e : t.entries()) {
            const int last = e.idx[m - 1];
            if (e.idx[0] <= half) {
                auto idx = e.idx;
                idx.pop_back();
                (last == 1 ? low1 : low2).push_back({std::move(idx), e.val});
            } else {
                (last == 1 ? high1 : high2).push_back({unshift(e.idx, m), e.val});
            }
        }
        const auto dims = expected_dims(m - 1);
        CHECK(CoefficientTensor(m - 1, dims, low1) == prev);
        CHECK(CoefficientTensor(m - 1, dims, low2) == prev);
        CHECK(CoefficientTensor(m - 1, dims, high1) == prev);
        CHECK(CoefficientTensor(m - 1, dims, high2) == prev.scaled(-1.0));
    }
}

TEST_CASE("arity errors and cap") {
    CHECK_THROWS_AS(construct_extremal(1), std::invalid_argument);
    CHECK_THROWS_AS(construct_extremal(0), std::invalid_argument);
    CHECK_THROWS_AS(construct_extremal(17), littlewood::BudgetError);
    CHECK_THROWS_AS(construct_extremal(20), littlewood::BudgetError);
}
