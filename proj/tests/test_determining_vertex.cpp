#include <gtest/gtest.h>

#include <numeric>

#include "support.hpp"

using namespace atspfw;
using namespace atspfw::testing;

namespace {

const std::vector<std::int64_t> kExample = {-7, -10, 1, 2,  -7, 4,  -9, 11, -2, -1, -4, -4, -8,
                                            9,  9,   21, 1, -2, -1, -3, -3, -12, 6, 2,  3};

std::vector<std::int64_t> random_weights(std::mt19937_64 &rng, std::size_t max_len, std::int64_t bound) {
    const auto k = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_len)));
    std::vector<std::int64_t> w(k);
    for (auto &x : w) x = uniform(rng, -30, 30);
    // push the total under the bound by lowering one entry
    const std::int64_t total = std::accumulate(w.begin(), w.end(), std::int64_t{0});
    if (total > bound) w[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(k) - 1))] -= total - bound;
    return w;
}

} // namespace

TEST(DeterminingVertex, WorkedSequence) {
    const std::size_t s = find_determining_vertex({kExample, 0});
    EXPECT_EQ(s + 1, 18u);
    EXPECT_EQ(kExample[s], -2);
    std::int64_t sum = 0;
    for (std::size_t m = 0; m < kExample.size(); ++m) {
        sum += kExample[(s + m) % kExample.size()];
        EXPECT_LE(sum, 0) << "partial sum " << m + 1;
    }
    EXPECT_EQ(sum, -4);
}

TEST(DeterminingVertex, WorkedSequenceMatchesExhaustiveScan) {
    std::size_t first = kExample.size();
    for (std::size_t s = 0; s < kExample.size(); ++s)
        if (start_is_valid(kExample, s, 0)) {
            first = s;
            break;
        }
    EXPECT_EQ(find_determining_vertex({kExample, 0}), first);
}

TEST(DeterminingVertex, SingleArc) { EXPECT_EQ(find_determining_vertex({{-3}, 0}), 0u); }

TEST(DeterminingVertex, TotalAboveBoundThrows) {
    EXPECT_THROW(find_determining_vertex({{1, 2}, 2}), NoDeterminingVertex);
    EXPECT_THROW(find_determining_vertex({{}, 0}), NoDeterminingVertex);
}

TEST(DeterminingVertex, NegativeBoundMayHaveNoStart) {
    // total -4 <= -4 but every start has first partial sum -2 > -4
    EXPECT_THROW(find_determining_vertex({{-2, -2}, -4}), NoDeterminingVertex);
}

TEST(DeterminingVertex, StartsTableMatchesBruteForce) {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 2000; ++rep) {
        const std::int64_t bound = uniform(rng, -10, 20);
        std::vector<std::int64_t> w(static_cast<std::size_t>(uniform(rng, 1, 12)));
        for (auto &x : w) x = uniform(rng, -15, 15);
        const auto ok = determining_starts(w, bound);
        for (std::size_t s = 0; s < w.size(); ++s) EXPECT_EQ(ok[s], start_is_valid(w, s, bound));
    }
}

TEST(DeterminingVertex, ShortRandomSequencesAgainstBruteForce) {
    std::mt19937_64 rng(37);
    for (int rep = 0; rep < 3000; ++rep) {
        const std::int64_t bound = uniform(rng, 0, 25);
        const auto w = random_weights(rng, 12, bound);
        const std::size_t s = find_determining_vertex({w, bound});
        EXPECT_TRUE(start_is_valid(w, s, bound));
        for (std::size_t t = 0; t < s; ++t) EXPECT_FALSE(start_is_valid(w, t, bound));
    }
}

TEST(DeterminingVertex, ExistenceOnLongSequences) {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 10000; ++rep) {
        const std::int64_t bound = uniform(rng, 0, 40);
        const auto w = random_weights(rng, 50, bound);
        std::size_t s = 0;
        ASSERT_NO_THROW(s = find_determining_vertex({w, bound}));
        ASSERT_TRUE(start_is_valid(w, s, bound));
    }
}

TEST(DeterminingVertex, ShiftedLastArcForm) {
    // a start valid for (w with w_k - N, 0) from the first position is valid for (w, N)
    std::mt19937_64 rng(43);
    for (int rep = 0; rep < 3000; ++rep) {
        const std::int64_t bound = uniform(rng, 0, 20);
        auto w = random_weights(rng, 12, bound);
        auto shifted = w;
        shifted.back() -= bound;
        if (start_is_valid(shifted, 0, 0)) {
            EXPECT_TRUE(start_is_valid(w, 0, bound));
        }
        // and each returned index passes the direct check on both forms it claims
        const std::size_t s = find_determining_vertex({shifted, 0});
        EXPECT_TRUE(start_is_valid(shifted, s, 0));
    }
}

TEST(NonnegDeterminingVertex, Examples) {
    EXPECT_EQ(find_nonneg_determining_vertex(std::vector<std::int64_t>{5, -3, -1}), 0u);
    EXPECT_EQ(find_nonneg_determining_vertex(std::vector<std::int64_t>{0, 0, 0, 0}), 0u);
    EXPECT_THROW(find_nonneg_determining_vertex(std::vector<std::int64_t>{1, -2}), NoDeterminingVertex);
}

TEST(NonnegDeterminingVertex, NegatedWorkedSequence) {
    std::vector<std::int64_t> neg;
    for (auto x : kExample) neg.push_back(-x);
    const std::size_t s = find_nonneg_determining_vertex(neg);
    EXPECT_TRUE(start_is_valid(kExample, s, 0));
    EXPECT_EQ(s, find_determining_vertex({kExample, 0}));
}

TEST(NonnegDeterminingVertex, DualityWithNegation) {
    std::mt19937_64 rng(47);
    for (int rep = 0; rep < 2000; ++rep) {
        auto w = random_weights(rng, 12, 0);
        std::vector<std::int64_t> neg;
        for (auto x : w) neg.push_back(-x);
        const std::size_t s = find_nonneg_determining_vertex(neg);
        std::int64_t sum = 0;
        for (std::size_t m = 0; m < neg.size(); ++m) {
            sum += neg[(s + m) % neg.size()];
            EXPECT_GE(sum, 0);
        }
        EXPECT_TRUE(start_is_valid(w, s, 0));
    }
}
