#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace atspfw;
using namespace atspfw::testing;

namespace {

bool contains_cycle(const std::vector<Candidate> &cands, const Cycle &c, std::int64_t value) {
    for (const Candidate &k : cands)
        if (k.cycles.size() == 1 && k.cycles[0] == c && k.value == value) return true;
    return false;
}

} // namespace

TEST(TrialCount, CeilingOfNaturalLog) {
    EXPECT_EQ(trial_count(2), 1u);
    EXPECT_EQ(trial_count(8), 3u);
    EXPECT_EQ(trial_count(20), 3u);
    EXPECT_EQ(trial_count(21), 4u);
}

TEST(Diff, Example8AtStart) {
    const CostMatrix m = example8();
    const DiffTable t = compute_diff(m, OrdinalIndex(m), Permutation::canonical_cycle(8));
    EXPECT_EQ(t.diff[4], -30);
    EXPECT_EQ(t.diff[1], 0);
    for (auto d : t.diff) EXPECT_LE(d, 0);
}

TEST(Diff, AllZeroWhenEveryArcIsRowMinimum) {
    // row i is cheapest at column i+1
    SquareMatrix<Cost> c(5, Cost(10));
    for (Vertex i = 0; i < 5; ++i) c(i, (i + 1) % 5) = 1;
    const CostMatrix m(c);
    const DiffTable t = compute_diff(m, OrdinalIndex(m), Permutation::canonical_cycle(5));
    for (auto d : t.diff) EXPECT_EQ(d, 0);
}

TEST(RunTrials, Example8FirstRound) {
    const CostMatrix m = example8();
    const OrdinalIndex idx(m);
    const auto cands = run_trials(m, idx, Permutation::canonical_cycle(8), 4, 1);
    EXPECT_TRUE(contains_cycle(cands, Cycle::one_based({5, 6, 4}), -22));
    for (const Candidate &c : cands) EXPECT_LT(c.value, 0);
}

TEST(RunTrials, Example8SecondRoundTrialTwo) {
    const CostMatrix m = example8();
    const OrdinalIndex idx(m);
    const Permutation d1 = apply_cycle(Permutation::canonical_cycle(8), Cycle::one_based({5, 6, 4}));
    EXPECT_FALSE(contains_cycle(run_trials(m, idx, d1, 3, 1), Cycle::one_based({4, 1, 6, 7}), -29));
    EXPECT_TRUE(contains_cycle(run_trials(m, idx, d1, 3, 2), Cycle::one_based({4, 1, 6, 7}), -29));
}

TEST(RunTrials, Example20FirstStartThreeTrials) {
    const CostMatrix m = example20();
    const OrdinalIndex idx(m);
    const Permutation d = Permutation::canonical_cycle(20);
    const auto cands = run_trials(m, idx, d, 0, 3);
    EXPECT_TRUE(contains_cycle(cands, Cycle::one_based({1, 16}), -150));
    EXPECT_TRUE(contains_cycle(cands, Cycle::one_based({1, 6, 13, 19, 2, 14, 16}), -437));
    EXPECT_TRUE(contains_cycle(cands, Cycle::one_based({1, 4, 16}), -221));
}

TEST(RunTrials, NothingAtAssignmentOptimum) {
    const CostMatrix m = example8();
    const OrdinalIndex idx(m);
    for (Vertex s = 0; s < 8; ++s) EXPECT_TRUE(run_trials(m, idx, example8_optimum(), s, 4).empty());
}

TEST(RunTrials, CandidatesAreSimpleNegativeAndAdmissible) {
    std::mt19937_64 rng(53);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = static_cast<std::size_t>(uniform(rng, 4, 12));
        const CostMatrix m = random_matrix(rng, n);
        const OrdinalIndex idx(m);
        const Permutation sigma = random_derangement(rng, n);
        const ReducedMatrix rm(m, sigma);
        for (Vertex s = 0; s < n; ++s) {
            for (const Candidate &c : run_trials(rm, idx, s, trial_count(n) + 1)) {
                EXPECT_LT(c.value, 0);
                std::set<Vertex> seen;
                Cost total = 0;
                for (const Cycle &cy : c.cycles) {
                    EXPECT_GE(cy.size(), 2u);
                    for (Vertex v : cy.vertices()) EXPECT_TRUE(seen.insert(v).second) << c.to_string();
                    total += cycle_value_in_reduced(rm, cy);
                    EXPECT_EQ(cy.weight_sum(), cycle_value_in_reduced(rm, cy).value());
                }
                EXPECT_EQ(total, Cost(c.value));
                const Permutation after = apply_cycles(sigma, c.cycles);
                EXPECT_TRUE(after.is_derangement());
                EXPECT_EQ(permutation_value(m, after).value(), permutation_value(m, sigma).value() + c.value);
            }
        }
    }
}

TEST(CandidateOrder, ValueThenLengthThenVertices) {
    const Candidate a{{Cycle({0, 1})}, -5, 0};
    const Candidate b{{Cycle({0, 2, 1})}, -5, 0};
    const Candidate c{{Cycle({0, 2})}, -5, 0};
    const Candidate d{{Cycle({3, 4, 5})}, -6, 0};
    EXPECT_TRUE(candidate_better(a, b));
    EXPECT_TRUE(candidate_better(a, c));
    EXPECT_FALSE(candidate_better(c, a));
    EXPECT_TRUE(candidate_better(d, a));
}

TEST(Phase1, Example8Sequence) {
    const CostMatrix m = example8();
    const OrdinalIndex idx(m);
    const Phase1Result r = phase1_improve(m, idx, Permutation::canonical_cycle(8));
    ASSERT_EQ(r.trace.size(), 3u);
    EXPECT_EQ(r.trace[0].cycles, std::vector<Cycle>{Cycle::one_based({5, 6, 4})});
    EXPECT_EQ(r.trace[0].delta, -22);
    EXPECT_EQ(r.trace[1].cycles, std::vector<Cycle>{Cycle::one_based({4, 1, 6, 7})});
    EXPECT_EQ(r.trace[1].delta, -29);
    EXPECT_EQ(r.trace[2].cycles, std::vector<Cycle>{Cycle::one_based({6, 1, 3, 8, 7})});
    EXPECT_EQ(r.trace[2].delta, -7);
    EXPECT_EQ(r.trace[2].value_after, 155);
    EXPECT_EQ(r.sigma, example8_optimum());
}

TEST(Phase1, Example20FirstStep) {
    const CostMatrix m = example20();
    const OrdinalIndex idx(m);
    const Phase1Result r = phase1_improve(m, idx, Permutation::canonical_cycle(20));
    ASSERT_FALSE(r.trace.empty());
    EXPECT_EQ(r.trace[0].cycles, std::vector<Cycle>{Cycle::one_based({1, 6, 13, 19, 2, 14, 16})});
    EXPECT_EQ(r.trace[0].delta, -437);
    EXPECT_EQ(r.trace[0].value_after, 1300 - 437);
}

TEST(Phase1, NoStepFromAssignmentOptimum) {
    std::mt19937_64 rng(59);
    for (int rep = 0; rep < 30; ++rep) {
        const CostMatrix m = random_matrix(rng, 6);
        const Permutation opt = exact_assignment(m).first;
        const Phase1Result r = phase1_improve(m, OrdinalIndex(m), opt);
        EXPECT_TRUE(r.trace.empty());
        EXPECT_EQ(r.sigma, opt);
    }
}

TEST(Phase1, TraceIsStrictlyImprovingAndBagConsistent) {
    std::mt19937_64 rng(61);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = static_cast<std::size_t>(uniform(rng, 4, 14));
        const CostMatrix m = random_matrix(rng, n, -20, 80);
        const Permutation start = random_derangement(rng, n);
        const Phase1Result r = phase1_improve(m, OrdinalIndex(m), start);
        std::int64_t prev = permutation_value(m, start).value();
        for (const AppliedStep &s : r.trace) {
            EXPECT_LT(s.delta, 0);
            EXPECT_EQ(s.value_after, prev + s.delta);
            for (const Cycle &c : s.cycles) EXPECT_TRUE(is_admissible(s.before, c));
            prev = s.value_after;
        }
        EXPECT_EQ(permutation_value(m, r.sigma).value(), prev);
        EXPECT_TRUE(r.sigma.is_derangement());
        for (const Candidate &c : r.bag.entries()) {
            const Permutation &base = r.bag.base(c.base);
            const Permutation p = r.bag.product(c);
            EXPECT_TRUE(p.is_derangement());
            EXPECT_EQ(permutation_value(m, p).value(), permutation_value(m, base).value() + c.value);
        }
    }
}

TEST(Phase1, FinalSweepOnlyHelps) {
    std::mt19937_64 rng(67);
    for (int rep = 0; rep < 40; ++rep) {
        const CostMatrix m = random_matrix(rng, 10);
        const Permutation start = random_derangement(rng, 10);
        const OrdinalIndex idx(m);
        Phase1Options off;
        off.final_sweep = false;
        const auto without = phase1_improve(m, idx, start, off);
        const auto with = phase1_improve(m, idx, start);
        // the runs agree until the first sweep step, after which value can only drop further
        ASSERT_GE(with.trace.size(), without.trace.size());
        for (std::size_t k = 0; k < without.trace.size(); ++k)
            EXPECT_EQ(with.trace[k].value_after, without.trace[k].value_after);
        EXPECT_LE(permutation_value(m, with.sigma), permutation_value(m, without.sigma));
    }
}
