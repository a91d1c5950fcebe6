#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "error.hpp"
#include "oracles.hpp"
#include "ordinal_index.hpp"
#include "permutation.hpp"
#include "phase1.hpp"
#include "phase2.hpp"
#include "phase3.hpp"
#include "trace.hpp"

namespace atspfw {

struct SolveOptions {
    std::uint64_t seed = 0;
    std::optional<Cycle> initial_cycle; // overrides the seeded start
    AssignmentMode mode = AssignmentMode::paper;
    bool oracle_compare = false;
    Phase1Options phase1;
};

struct OracleComparison {
    std::int64_t assignment_opt = 0;
    std::optional<std::int64_t> tsp_opt; // only for n <= 20
    std::int64_t assignment_gap = 0;     // sigma_ap value - assignment_opt
    std::optional<std::int64_t> tsp_gap; // final value - tsp_opt
};

struct PhaseTimings {
    double phase1_ms = 0;
    double phase2_ms = 0;
    double phase3_ms = 0;
};

struct SolveReport {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    AssignmentMode mode = AssignmentMode::paper;
    Permutation initial;
    std::int64_t initial_value = 0;
    std::vector<AppliedStep> phase1;
    std::vector<AppliedStep> phase2;
    std::size_t phase2_misses = 0;
    bool phase2_sweep_cap_hit = false;
    Permutation sigma_ap;
    std::int64_t sigma_ap_value = 0;
    TourSearchState phase3;
    std::optional<OracleComparison> oracle;
    PhaseTimings timings;

    [[nodiscard]] const Permutation &final_tour() const { return phase3.tour; }
    [[nodiscard]] std::int64_t final_value() const { return phase3.value; }
    [[nodiscard]] bool certificate() const { return phase3.certificate; }
};

/// Uniform random n-cycle (Sattolo's shuffle) from a seeded 64-bit Mersenne
/// Twister. Draws are reduced by rejection so the result does not depend on
/// the standard library's distribution classes.
inline Permutation random_n_cycle(std::size_t n, std::mt19937_64 &rng) {
    std::vector<Vertex> image(n);
    for (Vertex a = 0; a < n; ++a) image[a] = a;
    for (std::size_t i = n; i-- > 1;) {
        // j uniform in [0, i)
        const std::uint64_t range = i;
        constexpr std::uint64_t top = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = top - top % range;
        std::uint64_t x = rng();
        while (x >= limit) x = rng();
        std::swap(image[i], image[x % range]);
    }
    return Permutation(std::move(image));
}

/// Starting tour: the explicit cycle if given, else the first finite random
/// n-cycle drawn from the seed.
inline Permutation initial_tour(const CostMatrix &m, const SolveOptions &options) {
    const std::size_t n = m.size();
    if (options.initial_cycle) {
        const Cycle &c = *options.initial_cycle;
        if (c.size() != n) throw DimensionError("initial cycle must list all " + std::to_string(n) + " vertices");
        Permutation p = Permutation::from_cycle(n, c);
        if (!p.is_n_cycle()) throw DimensionError("initial cycle repeats a vertex");
        if (permutation_value(m, p).is_infinite()) throw InfeasibleError("initial cycle uses a forbidden arc");
        return p;
    }
    std::mt19937_64 rng(options.seed);
    constexpr int attempts = 1000;
    for (int k = 0; k < attempts; ++k) {
        Permutation p = random_n_cycle(n, rng);
        if (permutation_value(m, p).is_finite()) return p;
    }
    throw InfeasibleError("no finite random starting tour in " + std::to_string(attempts) +
                          " draws; pass an explicit initial cycle");
}

/// Phase 1, Phase 2 and Phase 3 end to end.
inline SolveReport run_solve(const CostMatrix &m, const SolveOptions &options, const Tracer &tracer = {}) {
    using clock = std::chrono::steady_clock;
    auto ms = [](clock::duration d) { return std::chrono::duration<double, std::milli>(d).count(); };

    SolveReport r;
    r.n = m.size();
    r.seed = options.seed;
    r.mode = options.mode;
    r.initial = initial_tour(m, options);
    r.initial_value = permutation_value(m, r.initial).value();
    const OrdinalIndex idx(m);
    tracer.log(TraceLevel::phase, "start: " + r.initial.to_string() + " value " + std::to_string(r.initial_value));

    auto t0 = clock::now();
    Phase1Result p1 = phase1_improve(m, idx, r.initial, options.phase1, tracer);
    r.phase1 = p1.trace;
    auto t1 = clock::now();
    tracer.log(TraceLevel::phase, "phase1: value " + permutation_value(m, p1.sigma).to_string() + " after " +
                                      std::to_string(r.phase1.size()) + " steps");

    AssignmentResult p2 = solve_assignment(m, idx, p1.sigma, options.mode, tracer);
    r.phase2 = p2.trace;
    r.phase2_misses = p2.search_misses;
    r.phase2_sweep_cap_hit = p2.sweep_cap_hit;
    r.sigma_ap = p2.sigma;
    r.sigma_ap_value = permutation_value(m, r.sigma_ap).value();
    auto t2 = clock::now();
    tracer.log(TraceLevel::phase, "phase2: assignment value " + std::to_string(r.sigma_ap_value));

    r.phase3 = refine_tour(m, idx, r.sigma_ap, p1.bag, r.initial, tracer);
    auto t3 = clock::now();
    tracer.log(TraceLevel::phase, "phase3: tour value " + std::to_string(r.phase3.value) +
                                      (r.phase3.certificate ? ", certified" : ", not certified"));
    r.timings = {ms(t1 - t0), ms(t2 - t1), ms(t3 - t2)};

    if (!r.phase3.tour.is_n_cycle() || permutation_value(m, r.phase3.tour).value() != r.phase3.value)
        throw InvariantViolation("final tour is not a consistent n-cycle");
    if (r.phase3.value > r.phase3.upper_bound.value)
        throw InvariantViolation("final tour is worse than the upper bound");

    if (options.oracle_compare) {
        OracleComparison oc;
        oc.assignment_opt = exact_assignment(m).second;
        oc.assignment_gap = r.sigma_ap_value - oc.assignment_opt;
        if (m.size() <= 20) {
            oc.tsp_opt = held_karp_tsp(m).second;
            oc.tsp_gap = r.phase3.value - *oc.tsp_opt;
        }
        r.oracle = oc;
    }
    return r;
}

} // namespace atspfw
