#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ordinal_index.hpp"
#include "permutation.hpp"
#include "reduced_matrix.hpp"
#include "trace.hpp"

namespace atspfw {

/// A value-decreasing exchange found during local search: one cycle, or a
/// product of two disjoint cycles, in the cycle space of some base derangement.
struct Candidate {
    std::vector<Cycle> cycles;
    std::int64_t value = 0;
    std::size_t base = 0;

    [[nodiscard]] std::size_t total_length() const {
        std::size_t len = 0;
        for (const auto &c : cycles) len += c.size();
        return len;
    }

    [[nodiscard]] std::string to_string() const {
        std::string out;
        for (const auto &c : cycles) out += c.to_string();
        return out;
    }
};

/// Strict preference: more negative value, then fewer vertices, then the
/// lexicographically smaller vertex sequence.
inline bool candidate_better(const Candidate &a, const Candidate &b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.total_length() != b.total_length()) return a.total_length() < b.total_length();
    std::vector<Vertex> fa, fb;
    for (const auto &c : a.cycles) fa.insert(fa.end(), c.vertices().begin(), c.vertices().end());
    for (const auto &c : b.cycles) fb.insert(fb.end(), c.vertices().begin(), c.vertices().end());
    return fa < fb;
}

/// Every negative exchange seen during local search, with the derangement it
/// was measured against.
class CandidateBag {
public:
    std::size_t add_base(const Permutation &p) {
        if (!bases_.empty() && bases_.back() == p) return bases_.size() - 1;
        bases_.push_back(p);
        return bases_.size() - 1;
    }

    void add(Candidate c) { entries_.push_back(std::move(c)); }

    [[nodiscard]] const std::vector<Candidate> &entries() const noexcept { return entries_; }
    [[nodiscard]] const Permutation &base(std::size_t id) const { return bases_.at(id); }
    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }

    /// base∘candidate as a permutation.
    [[nodiscard]] Permutation product(const Candidate &c) const { return apply_cycles(base(c.base), c.cycles); }

private:
    std::vector<Permutation> bases_;
    std::vector<Candidate> entries_;
};

/// diff[a] = cost(a, cheapest column of row a) - cost(a, sigma(a)); never positive.
struct DiffTable {
    std::vector<std::int64_t> diff;
};

inline DiffTable compute_diff(const CostMatrix &m, const OrdinalIndex &idx, const Permutation &sigma) {
    DiffTable t;
    t.diff.resize(m.size(), 0);
    for (Vertex a = 0; a < m.size(); ++a) {
        const Cost current = m(a, sigma(a));
        if (idx.row(a).empty() || current.is_infinite()) continue;
        t.diff[a] = m(a, idx.row(a)[0]).value() - current.value();
    }
    return t;
}

/// Trials per start vertex: ceil(ln n), at least 1.
inline std::size_t trial_count(std::size_t n) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(n)))));
}

/// Greedy path growth from `start`, one trial per ordinal rank of the first arc.
///
/// Trial t takes the t-th cheapest column of the start row as its first arc
/// and then always the cheapest column whose arc is not the current arc of
/// sigma. Growth stops when the running reduced sum is no longer negative or
/// when the next vertex is already on the path. A trial whose first arc is
/// not negative ends the whole run, since later ranks are no cheaper.
///
/// Emitted: every prefix of the path closed back to `start`, the interior
/// cycle cut off by a repeated vertex, and the product of that interior cycle
/// with the best closed prefix disjoint from it. Only strictly negative,
/// admissible candidates are returned.
inline std::vector<Candidate> run_trials(const ReducedMatrix &rm, const OrdinalIndex &idx, Vertex start,
                                         std::size_t k_trials, const Tracer &tracer = {}) {
    std::vector<Candidate> out;
    const Permutation &sigma = rm.sigma();
    const auto start_row = idx.row(start);

    for (std::size_t t = 0; t < k_trials && t < start_row.size(); ++t) {
        const Vertex first_col = start_row[t];
        if (first_col == sigma(start)) break;
        const Vertex first = rm.cycle_column(first_col);
        const std::int64_t first_w = rm(start, first).value();
        if (first_w >= 0) break;

        std::vector<Vertex> path{start, first};
        std::vector<std::int64_t> arcs{first_w};
        std::vector<bool> on_path(rm.size(), false);
        on_path[start] = on_path[first] = true;
        std::int64_t running = first_w;
        std::optional<std::size_t> repeat_at;
        std::int64_t repeat_arc = 0;

        while (running < 0) {
            const Vertex x = path.back();
            std::optional<Vertex> next;
            for (Vertex col : idx.row(x)) {
                if (col == sigma(x)) continue;
                next = rm.cycle_column(col);
                break;
            }
            if (!next) break;
            const std::int64_t w = rm(x, *next).value();
            if (on_path[*next]) {
                repeat_at = static_cast<std::size_t>(std::find(path.begin(), path.end(), *next) - path.begin());
                repeat_arc = w;
                break;
            }
            path.push_back(*next);
            arcs.push_back(w);
            on_path[*next] = true;
            running += w;
        }

        if (tracer.enabled(TraceLevel::path)) {
            std::string line = "  trial " + std::to_string(t + 1) + " from " + std::to_string(start + 1) + ": path [";
            for (std::size_t k = 0; k < path.size(); ++k) line += (k ? " " : "") + std::to_string(path[k] + 1);
            if (repeat_at) line += " | " + std::to_string(path[*repeat_at] + 1);
            tracer.log(TraceLevel::path, line + "]");
        }

        // closures of prefixes path[0..q], q >= 1
        std::vector<std::optional<std::int64_t>> closure(path.size());
        std::int64_t prefix = 0;
        for (std::size_t q = 1; q < path.size(); ++q) {
            prefix += arcs[q - 1];
            const Cost back = rm(path[q], start);
            if (back.is_finite()) closure[q] = prefix + back.value();
        }

        auto make_cycle = [&](std::size_t from, std::size_t to) {
            return annotate(rm, Cycle(std::vector<Vertex>(path.begin() + static_cast<std::ptrdiff_t>(from),
                                                          path.begin() + static_cast<std::ptrdiff_t>(to) + 1)));
        };

        for (std::size_t q = 1; q < path.size(); ++q)
            if (closure[q] && *closure[q] < 0) out.push_back({{make_cycle(0, q)}, *closure[q], 0});

        if (repeat_at && *repeat_at >= 1) {
            const std::size_t p = *repeat_at;
            std::int64_t interior = repeat_arc;
            for (std::size_t k = p; k + 1 < path.size(); ++k) interior += arcs[k];
            if (interior < 0 && path.size() - p >= 2) {
                Cycle inner = make_cycle(p, path.size() - 1);
                out.push_back({{inner}, interior, 0});
                // best negative closed prefix entirely before the repeated vertex
                std::optional<std::size_t> best_q;
                for (std::size_t q = 1; q < p; ++q)
                    if (closure[q] && *closure[q] < 0 && (!best_q || *closure[q] < *closure[*best_q])) best_q = q;
                if (best_q) out.push_back({{make_cycle(0, *best_q), inner}, *closure[*best_q] + interior, 0});
            }
        }
    }
    return out;
}

inline std::vector<Candidate> run_trials(const CostMatrix &m, const OrdinalIndex &idx, const Permutation &sigma,
                                         Vertex start, std::size_t k_trials) {
    return run_trials(ReducedMatrix(m, sigma), idx, start, k_trials);
}

/// One applied improvement.
struct AppliedStep {
    Permutation before;
    std::vector<Cycle> cycles;
    std::int64_t delta = 0;
    std::int64_t value_after = 0;
    std::string origin; // "phase1", "phase1-sweep", "phase2", "bellman-ford"
};

struct Phase1Options {
    /// Extra pass over all rows and the first ceil(ln n)+1 ranks before stopping.
    bool final_sweep = true;
};

struct Phase1Result {
    Permutation sigma;
    CandidateBag bag;
    std::vector<AppliedStep> trace;
};

/// Greedy negative-cycle local search from the derangement sigma0.
inline Phase1Result phase1_improve(const CostMatrix &m, const OrdinalIndex &idx, const Permutation &sigma0,
                                   const Phase1Options &options = {}, const Tracer &tracer = {}) {
    Phase1Result result;
    result.sigma = sigma0;
    const std::size_t n = m.size();
    const std::size_t k = trial_count(n);
    Cost value = permutation_value(m, sigma0);
    if (value.is_infinite()) throw InfiniteAssignment("initial permutation has infinite value");

    auto apply = [&](const Candidate &best, const std::string &origin) {
        AppliedStep step;
        step.before = result.sigma;
        step.cycles = best.cycles;
        step.delta = best.value;
        result.sigma = apply_cycles(result.sigma, best.cycles);
        const Cost after = permutation_value(m, result.sigma);
        if (after.is_infinite() || after.value() != value.value() + best.value || !result.sigma.is_derangement())
            throw InvariantViolation("phase 1 step " + best.to_string() + " did not lower the value as predicted");
        value = after;
        step.value_after = after.value();
        step.origin = origin;
        tracer.log(TraceLevel::cycle, "phase1: apply " + best.to_string() + " delta " + std::to_string(best.value) +
                                          " -> " + std::to_string(after.value()));
        result.trace.push_back(std::move(step));
    };

    for (;;) {
        const ReducedMatrix rm(m, result.sigma);
        const std::size_t base = result.bag.add_base(result.sigma);
        const DiffTable diff = compute_diff(m, idx, result.sigma);

        std::vector<Vertex> starts;
        for (Vertex a = 0; a < n; ++a)
            if (diff.diff[a] < 0) starts.push_back(a);
        std::stable_sort(starts.begin(), starts.end(),
                         [&](Vertex a, Vertex b) { return diff.diff[a] < diff.diff[b]; });
        if (starts.size() > k + 1) starts.resize(k + 1);

        std::optional<Candidate> chosen;
        for (Vertex s : starts) {
            auto found = run_trials(rm, idx, s, k, tracer);
            for (auto &c : found) {
                c.base = base;
                if (!chosen || candidate_better(c, *chosen)) chosen = c;
                result.bag.add(c);
            }
            if (chosen) break;
        }
        if (chosen) {
            apply(*chosen, "phase1");
            continue;
        }
        if (!options.final_sweep) break;

        for (Vertex s = 0; s < n; ++s) {
            auto found = run_trials(rm, idx, s, k + 1, tracer);
            for (auto &c : found) {
                c.base = base;
                if (!chosen || candidate_better(c, *chosen)) chosen = c;
                result.bag.add(c);
            }
        }
        if (!chosen) break;
        apply(*chosen, "phase1-sweep");
    }
    return result;
}

} // namespace atspfw
