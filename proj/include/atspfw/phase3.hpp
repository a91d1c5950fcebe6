#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "ordinal_index.hpp"
#include "permutation.hpp"
#include "phase1.hpp"
#include "phase2.hpp"
#include "reduced_matrix.hpp"
#include "trace.hpp"

namespace atspfw {

struct PatchStep {
    Vertex a = 0;
    Vertex b = 0;
    std::int64_t delta = 0;
};

struct KarpResult {
    Permutation tour;
    std::int64_t value = 0;
    std::vector<PatchStep> patches; // in application order
};

/// Greedy cycle merging: repeatedly applies the 2-cycle (a b), a < b in
/// different cycles, with the smallest finite
///   d(a, s(b)) + d(b, s(a)) - d(a, s(a)) - d(b, s(b)),
/// ties broken by the smallest (a, b).
inline KarpResult karp_patch(const CostMatrix &m, const Permutation &sigma) {
    const std::size_t n = m.size();
    const Cost start = permutation_value(m, sigma);
    if (start.is_infinite() || !sigma.is_derangement()) throw InfeasibleError("karp_patch needs a finite derangement");

    KarpResult out;
    out.tour = sigma;
    std::vector<std::size_t> label(n);
    for (;;) {
        const auto cycles = cycle_decomposition(out.tour);
        if (cycles.size() <= 1) break;
        for (std::size_t c = 0; c < cycles.size(); ++c)
            for (Vertex a : cycles[c].vertices()) label[a] = c;

        std::optional<PatchStep> best;
        for (Vertex a = 0; a < n; ++a) {
            for (Vertex b = a + 1; b < n; ++b) {
                if (label[a] == label[b]) continue;
                const Permutation &s = out.tour;
                const Cost gain = m(a, s(b)) + m(b, s(a));
                if (gain.is_infinite()) continue;
                const std::int64_t delta = gain.value() - m(a, s(a)).value() - m(b, s(b)).value();
                if (!best || delta < best->delta) best = PatchStep{a, b, delta};
            }
        }
        if (!best) throw InfeasibleError("no finite patch merges the remaining cycles");
        out.tour = apply_cycle(out.tour, Cycle({best->a, best->b}));
        out.patches.push_back(*best);
    }
    out.value = permutation_value(m, out.tour).value();
    return out;
}

struct UpperBound {
    Permutation tour;
    std::int64_t value = 0;
    std::string source; // "patch", "bag" or "initial"
};

/// Cheapest tour among the patched assignment optimum, the starting
/// derangement (if it is a tour) and every bagged candidate applied to its
/// base. Ties keep the earlier source in that order.
inline UpperBound seed_upper_bound(const CostMatrix &m, const KarpResult &patched, const CandidateBag &bag,
                                   const std::optional<Permutation> &initial = std::nullopt) {
    UpperBound best{patched.tour, patched.value, "patch"};
    auto consider = [&](const Permutation &p, const char *source) {
        if (!p.is_n_cycle()) return;
        const Cost v = permutation_value(m, p);
        if (v.is_finite() && v.value() < best.value) best = {p, v.value(), source};
    };
    if (initial) consider(*initial, "initial");
    for (const Candidate &c : bag.entries()) consider(bag.product(c), "bag");
    return best;
}

inline UpperBound seed_upper_bound(const CostMatrix &m, const Permutation &sigma_ap, const CandidateBag &bag,
                                   const std::optional<Permutation> &initial = std::nullopt) {
    return seed_upper_bound(m, karp_patch(m, sigma_ap), bag, initial);
}

struct EnumerationResult {
    std::vector<FoundCycle> cycles; // in discovery order
    bool complete = true;
};

/// Limit on stored paths during bounded enumeration.
inline constexpr std::size_t kEnumerationRecordCap = 1'000'000;

/// Every simple cycle of rm with value below m0 whose partial sums from some
/// start stay at most m0 - 1. All bounded paths are kept, so nothing is lost
/// to per-cell pruning; `complete` is false if the record cap cut it short.
inline EnumerationResult bounded_cycle_enumeration(const ReducedMatrix &rm, const OrdinalIndex &idx,
                                                   std::int64_t m0, const Tracer &tracer = {},
                                                   std::size_t max_records = kEnumerationRecordCap) {
    EnumerationResult out;
    if (m0 <= 0) return out;
    SearchOptions opts;
    opts.keep_all_paths = true;
    opts.max_records = max_records;
    const Permutation &sigma = rm.sigma();
    opts.accept = [&sigma](const Cycle &c) { return is_admissible(sigma, c); };
    SearchOutcome found = fw_nvs_search(rm, idx, m0, opts, tracer);
    out.cycles = std::move(found.cycles);
    out.complete = found.complete();
    return out;
}

/// Subset search limits.
inline constexpr std::size_t kMaxSubsetSize = 3;
inline constexpr std::size_t kMaxSubsetsTested = 10'000;

struct AssemblyResult {
    Permutation tour;
    std::int64_t value = 0;
    std::vector<Cycle> used; // cycles whose product improved the tour, empty if none
    std::size_t subsets_tested = 0;
    bool capped = false; // some eligible subsets were never tested
    bool certificate = false;
};

/// Tests single cycles and sets of up to three pairwise disjoint cycles, in
/// increasing total value, for a product with sigma_ap that is a tour cheaper
/// than `best_value`. The first hit is the best subset, so the search stops
/// there.
inline AssemblyResult assemble_tours(const CostMatrix &m, const Permutation &sigma_ap,
                                     const std::vector<FoundCycle> &cycles, const Permutation &best_tour,
                                     std::int64_t best_value) {
    AssemblyResult out{best_tour, best_value, {}, 0, false, cycles.empty()};
    const Cost base = permutation_value(m, sigma_ap);
    if (base.is_infinite()) throw InfiniteAssignment("assignment permutation has infinite value");
    const std::int64_t bound = best_value - base.value();

    std::vector<std::size_t> order(cycles.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cycles[a].value < cycles[b].value; });

    struct Subset {
        std::int64_t total;
        std::vector<std::size_t> members;
    };
    std::vector<Subset> subsets;
    const std::size_t generation_cap = 64 * kMaxSubsetsTested;
    auto disjoint = [&](std::size_t a, std::size_t b) {
        for (Vertex v : cycles[a].cycle.vertices())
            if (cycles[b].cycle.contains(v)) return false;
        return true;
    };
    auto push = [&](std::int64_t total, std::vector<std::size_t> members) {
        if (total >= bound) return;
        if (subsets.size() >= generation_cap) {
            out.capped = true;
            return;
        }
        subsets.push_back({total, std::move(members)});
    };
    for (std::size_t x = 0; x < order.size(); ++x) {
        const std::size_t a = order[x];
        push(cycles[a].value, {a});
        if (kMaxSubsetSize < 2) continue;
        for (std::size_t y = x + 1; y < order.size(); ++y) {
            const std::size_t b = order[y];
            if (!disjoint(a, b)) continue;
            push(cycles[a].value + cycles[b].value, {a, b});
            if (kMaxSubsetSize < 3) continue;
            for (std::size_t z = y + 1; z < order.size(); ++z) {
                const std::size_t c = order[z];
                if (!disjoint(a, c) || !disjoint(b, c)) continue;
                push(cycles[a].value + cycles[b].value + cycles[c].value, {a, b, c});
            }
        }
    }
    std::stable_sort(subsets.begin(), subsets.end(), [](const Subset &s, const Subset &t) {
        if (s.total != t.total) return s.total < t.total;
        return s.members.size() < t.members.size();
    });

    for (const Subset &s : subsets) {
        if (out.subsets_tested == kMaxSubsetsTested) {
            out.capped = true;
            break;
        }
        ++out.subsets_tested;
        Permutation p = sigma_ap;
        std::vector<Cycle> used;
        bool admissible = true;
        for (std::size_t k : s.members) {
            if (!is_admissible(p, cycles[k].cycle)) {
                admissible = false;
                break;
            }
            p = apply_cycle(p, cycles[k].cycle);
            used.push_back(cycles[k].cycle);
        }
        if (!admissible || !p.is_n_cycle()) continue;
        const Cost v = permutation_value(m, p);
        if (v.is_finite() && v.value() < out.value) {
            out.tour = std::move(p);
            out.value = v.value();
            out.used = std::move(used);
            break;
        }
    }
    return out;
}

struct EnumerationRound {
    std::int64_t bound = 0; // m_j
    std::vector<FoundCycle> cycles;
    bool complete = true;
    std::vector<Cycle> improvement; // cycles that produced a better tour
    std::int64_t value_after = 0;
};

struct TourSearchState {
    Permutation sigma_ap;
    std::int64_t sigma_ap_value = 0;
    KarpResult karp;
    UpperBound upper_bound;
    std::int64_t m0 = 0;
    std::vector<EnumerationRound> rounds;
    Permutation tour;
    std::int64_t value = 0;
    /// The last enumeration ran to exhaustion and found no cycle below the bound.
    bool certificate = false;

    [[nodiscard]] const std::vector<FoundCycle> &found_cycles() const {
        static const std::vector<FoundCycle> none;
        return rounds.empty() ? none : rounds.back().cycles;
    }
};

/// Upper bound, then repeated bounded enumeration and tour assembly with the
/// bound tightened after each improvement.
inline TourSearchState refine_tour(const CostMatrix &m, const OrdinalIndex &idx, const Permutation &sigma_ap,
                                   const CandidateBag &bag, const std::optional<Permutation> &initial = std::nullopt,
                                   const Tracer &tracer = {}) {
    TourSearchState st;
    st.sigma_ap = sigma_ap;
    const Cost base = permutation_value(m, sigma_ap);
    if (base.is_infinite()) throw InfiniteAssignment("assignment permutation has infinite value");
    st.sigma_ap_value = base.value();
    st.karp = karp_patch(m, sigma_ap);
    st.upper_bound = seed_upper_bound(m, st.karp, bag, initial);
    st.m0 = st.upper_bound.value - st.sigma_ap_value;
    st.tour = st.upper_bound.tour;
    st.value = st.upper_bound.value;
    tracer.log(TraceLevel::phase, "phase3: upper bound " + std::to_string(st.value) + " from " +
                                      st.upper_bound.source + ", m0 = " + std::to_string(st.m0));

    const ReducedMatrix rm(m, sigma_ap);
    for (;;) {
        EnumerationRound round;
        round.bound = st.value - st.sigma_ap_value;
        EnumerationResult found = bounded_cycle_enumeration(rm, idx, round.bound, tracer);
        round.cycles = std::move(found.cycles);
        round.complete = found.complete;
        tracer.log(TraceLevel::phase, "phase3: bound " + std::to_string(round.bound) + ", " +
                                          std::to_string(round.cycles.size()) + " cycles");
        if (round.cycles.empty()) {
            st.certificate = round.complete;
            round.value_after = st.value;
            st.rounds.push_back(std::move(round));
            break;
        }
        AssemblyResult assembled = assemble_tours(m, sigma_ap, round.cycles, st.tour, st.value);
        round.improvement = assembled.used;
        round.value_after = assembled.value;
        const bool improved = !assembled.used.empty();
        if (improved) {
            st.tour = assembled.tour;
            st.value = assembled.value;
            tracer.log(TraceLevel::phase, "phase3: tour improved to " + std::to_string(st.value));
        }
        st.rounds.push_back(std::move(round));
        if (!improved) break;
    }
    return st;
}

} // namespace atspfw
