#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ordinal_index.hpp"
#include "permutation.hpp"
#include "phase1.hpp"
#include "reduced_matrix.hpp"
#include "trace.hpp"

namespace atspfw {

enum class EntryStatus : std::uint8_t { unset, active, processed };

/// One stored path i -> ... -> end. Paths form a persistent tree: each record
/// points at the record it extends, so reconstruction stays exact even after
/// the parent cell is later overwritten by a better path.
struct PathRecord {
    Vertex origin = 0;
    Vertex end = 0;
    std::int64_t value = 0;
    std::size_t parent = npos; // npos for a single-arc path
    std::size_t sweep = 0;     // sweep that created the record (0 = initial arcs)
    std::size_t length = 1;    // number of arcs

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Key of an ACTIVE entry in the ordered work queue.
struct QueueKey {
    std::int64_t value;
    Vertex row;
    Vertex column;
    std::size_t record;
    friend auto operator<=>(const QueueKey &, const QueueKey &) = default;
};

/// Value table, entry states, path log and ordered queue of the modified
/// Floyd–Warshall search.
///
/// By default a cell (i, j) holds one path, the best seen so far. With
/// keep_all set every admissible extension is kept as its own record, which
/// turns the search into an exhaustive enumeration of bounded simple paths.
class SearchState {
public:
    explicit SearchState(std::size_t n, bool keep_all = false)
        : n_(n), keep_all_(keep_all), status_(n, EntryStatus::unset), record_(n, PathRecord::npos), pending_(n) {}

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] bool keep_all() const noexcept { return keep_all_; }
    [[nodiscard]] EntryStatus status(Vertex i, Vertex j) const { return status_(i, j); }
    /// Best value stored for (i, j), if any.
    [[nodiscard]] std::optional<std::int64_t> value(Vertex i, Vertex j) const {
        const std::size_t id = record_(i, j);
        if (id == PathRecord::npos) return std::nullopt;
        return log_[id].value;
    }
    [[nodiscard]] std::size_t record_id(Vertex i, Vertex j) const { return record_(i, j); }
    [[nodiscard]] const std::vector<PathRecord> &log() const noexcept { return log_; }
    [[nodiscard]] const std::set<QueueKey> &queue() const noexcept { return queue_; }
    [[nodiscard]] std::size_t sweeps() const noexcept { return sweeps_; }

    /// Vertices of the path stored in record `id`, origin first.
    [[nodiscard]] std::vector<Vertex> path(std::size_t id) const {
        std::vector<Vertex> rev;
        for (std::size_t r = id; r != PathRecord::npos; r = log_[r].parent) rev.push_back(log_[r].end);
        rev.push_back(log_[id].origin);
        return {rev.rbegin(), rev.rend()};
    }

    /// Best path currently stored at (i, j); empty when unset.
    [[nodiscard]] std::vector<Vertex> path(Vertex i, Vertex j) const {
        const std::size_t id = record_(i, j);
        return id == PathRecord::npos ? std::vector<Vertex>{} : path(id);
    }

    /// Stores a path ending at `end` and marks it ACTIVE. Without keep_all the
    /// path must beat the value already at (origin, end), which it replaces.
    bool offer(Vertex origin, Vertex end, std::int64_t value, std::size_t parent, std::size_t sweep,
               std::size_t length) {
        const std::size_t old = record_(origin, end);
        if (!keep_all_) {
            if (old != PathRecord::npos && log_[old].value <= value) return false;
            if (status_(origin, end) == EntryStatus::active) {
                queue_.erase({log_[old].value, origin, end, old});
                std::erase(pending_[end], old);
            }
        }
        log_.push_back({origin, end, value, parent, sweep, length});
        const std::size_t id = log_.size() - 1;
        if (old == PathRecord::npos || value < log_[old].value) record_(origin, end) = id;
        status_(origin, end) = EntryStatus::active;
        queue_.insert({value, origin, end, id});
        pending_[end].push_back(id);
        return true;
    }

    /// ACTIVE records ending at column j, by ascending row then creation.
    /// They become PROCESSED.
    std::vector<std::size_t> take_column(Vertex j) {
        std::vector<std::size_t> ids;
        ids.swap(pending_[j]);
        std::stable_sort(ids.begin(), ids.end(),
                         [this](std::size_t a, std::size_t b) { return log_[a].origin < log_[b].origin; });
        for (std::size_t id : ids) {
            const PathRecord &r = log_[id];
            queue_.erase({r.value, r.origin, r.end, id});
            status_(r.origin, r.end) = EntryStatus::processed;
        }
        return ids;
    }

    void finish_sweep() { ++sweeps_; }

private:
    std::size_t n_;
    bool keep_all_;
    SquareMatrix<EntryStatus> status_;
    SquareMatrix<std::size_t> record_;
    std::vector<PathRecord> log_;
    std::set<QueueKey> queue_;
    std::vector<std::vector<std::size_t>> pending_;
    std::size_t sweeps_ = 0;
};

struct FoundCycle {
    Cycle cycle; // starts at the path origin
    std::int64_t value = 0;
    std::size_t iterations_used = 0;
};

struct SearchOptions {
    bool stop_at_first = false;
    /// Cycles rejected by this predicate are ignored and the search goes on.
    std::function<bool(const Cycle &)> accept;
    /// Called after each completed sweep with the live state.
    std::function<void(const SearchState &)> on_sweep;
    /// Hard limit on sweeps; 0 means 2n.
    std::size_t max_sweeps = 0;
    /// Keep every bounded path instead of the best per cell.
    bool keep_all_paths = false;
    /// Stop once the path log holds this many records (0 = unlimited).
    std::size_t max_records = 0;
};

struct SearchOutcome {
    std::vector<FoundCycle> cycles;
    std::size_t sweeps = 0;
    bool sweep_cap_hit = false;
    bool record_cap_hit = false;

    /// True when the search ran to exhaustion.
    [[nodiscard]] bool complete() const noexcept { return !sweep_cap_hit && !record_cap_hit; }
};

/// Modified Floyd–Warshall search for cycles of reduced value below `bound`.
///
/// Seeds every off-diagonal arc with r < bound, then sweeps columns 1..n
/// repeatedly. An ACTIVE entry (i, j) is extended one arc at a time along row
/// j of the ordinal index; an extension is kept only if the new sum is still
/// below `bound` (so every prefix of a stored path is below `bound`) and it
/// improves the value stored at (i, k). Reaching k == i closes a cycle;
/// reaching a vertex already on the path cuts off the interior cycle instead,
/// so stored paths stay simple. Entries created at a later column are
/// processed in the same sweep, earlier ones in the next. The search ends
/// when the queue is empty after a sweep.
///
/// bound = 0 finds negative cycles. bound = m0 > 0 finds cycles of value < m0
/// whose determining-vertex prefix sums are all <= m0 - 1.
inline SearchOutcome fw_nvs_search(const ReducedMatrix &rm, const OrdinalIndex &idx, std::int64_t bound,
                                   const SearchOptions &options = {}, const Tracer &tracer = {}) {
    const std::size_t n = rm.size();
    const Permutation &sigma = rm.sigma();
    SearchState state(n, options.keep_all_paths);
    SearchOutcome out;
    std::set<std::vector<Vertex>> seen;

    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = 0; j < n; ++j)
            if (i != j && rm(i, j) < Cost(bound)) state.offer(i, j, rm(i, j).value(), PathRecord::npos, 0, 1);

    // returns true when the search should stop
    auto record_cycle = [&](std::vector<Vertex> vertices, std::int64_t value, std::size_t sweep) {
        Cycle c(std::move(vertices));
        if (!seen.insert(c.canonical().vertices()).second) return false;
        if (options.accept && !options.accept(c)) return false;
        tracer.log(TraceLevel::cycle, "fw-nvs: cycle " + c.to_string() + " value " + std::to_string(value) +
                                          " in sweep " + std::to_string(sweep));
        out.cycles.push_back({annotate(rm, c), value, sweep});
        return options.stop_at_first;
    };

    const std::size_t cap = options.max_sweeps ? options.max_sweeps : 2 * n;
    std::vector<std::int64_t> prefix_at(n);
    std::vector<bool> on_path(n);

    for (std::size_t sweep = 1; !state.queue().empty(); ++sweep) {
        if (sweep > cap) {
            out.sweep_cap_hit = true;
            tracer.log(TraceLevel::phase, "fw-nvs: sweep cap " + std::to_string(cap) + " reached");
            break;
        }
        for (Vertex j = 0; j < n; ++j) {
            for (std::size_t id : state.take_column(j)) {
                if (options.max_records && state.log().size() >= options.max_records) {
                    out.record_cap_hit = true;
                    out.sweeps = sweep;
                    tracer.log(TraceLevel::phase, "fw-nvs: record cap " + std::to_string(options.max_records) +
                                                      " reached");
                    return out;
                }
                const PathRecord rec = state.log()[id];
                const Vertex i = rec.origin;
                const std::vector<Vertex> path = state.path(id);

                std::fill(on_path.begin(), on_path.end(), false);
                {
                    std::int64_t s = 0;
                    for (std::size_t q = 0; q < path.size(); ++q) {
                        if (q) s += rm(path[q - 1], path[q]).value();
                        prefix_at[path[q]] = s;
                        on_path[path[q]] = true;
                    }
                }

                for (Vertex col : idx.row(j)) {
                    if (col == sigma(j)) continue; // diagonal of r
                    const Vertex k = rm.cycle_column(col);
                    const std::int64_t next = rec.value + rm(j, k).value();
                    if (next >= bound) break;
                    if (k == i) {
                        if (record_cycle(path, next, sweep)) {
                            out.sweeps = sweep;
                            return out;
                        }
                        continue;
                    }
                    if (on_path[k]) {
                        const std::int64_t interior = next - prefix_at[k];
                        if (interior < bound) {
                            auto from = std::find(path.begin(), path.end(), k);
                            if (record_cycle(std::vector<Vertex>(from, path.end()), interior, sweep)) {
                                out.sweeps = sweep;
                                return out;
                            }
                        }
                        continue;
                    }
                    if (state.offer(i, k, next, id, sweep, rec.length + 1) && tracer.enabled(TraceLevel::path))
                        tracer.log(TraceLevel::path, "  (" + std::to_string(i + 1) + " " + std::to_string(j + 1) +
                                                         ")(" + std::to_string(j + 1) + " " + std::to_string(k + 1) +
                                                         ") = (" + std::to_string(i + 1) + " " +
                                                         std::to_string(k + 1) + "): " + std::to_string(next));
                }
            }
        }
        state.finish_sweep();
        out.sweeps = sweep;
        if (options.on_sweep) options.on_sweep(state);
    }
    return out;
}

enum class AssignmentMode { paper, guaranteed };

struct AssignmentResult {
    Permutation sigma;
    std::vector<AppliedStep> trace;
    std::size_t search_misses = 0; // negative cycles only Bellman–Ford found
    bool sweep_cap_hit = false;
};

/// Repeats fw_nvs_search (bound 0, first cycle) and applies each admissible
/// negative cycle until none is found. In guaranteed mode a Bellman–Ford pass
/// confirms exhaustion and supplies a cycle when the search missed one.
inline AssignmentResult solve_assignment(const CostMatrix &m, const OrdinalIndex &idx, const Permutation &sigma0,
                                         AssignmentMode mode, const Tracer &tracer = {}) {
    AssignmentResult result;
    result.sigma = sigma0;
    Cost value = permutation_value(m, sigma0);
    if (value.is_infinite()) throw InfiniteAssignment("initial permutation has infinite value");

    for (;;) {
        const ReducedMatrix rm(m, result.sigma);
        SearchOptions opts;
        opts.stop_at_first = true;
        const Permutation &current = result.sigma;
        opts.accept = [&current](const Cycle &c) { return is_admissible(current, c); };
        SearchOutcome found = fw_nvs_search(rm, idx, 0, opts, tracer);
        result.sweep_cap_hit = result.sweep_cap_hit || found.sweep_cap_hit;

        std::optional<Cycle> cycle;
        std::string origin = "phase2";
        if (!found.cycles.empty()) {
            cycle = found.cycles.front().cycle;
        } else if (mode == AssignmentMode::guaranteed) {
            cycle = bellman_ford_negative_cycle(rm.values());
            if (cycle) {
                ++result.search_misses;
                origin = "bellman-ford";
                tracer.log(TraceLevel::phase, "phase2: search missed negative cycle " + cycle->to_string());
            }
        }
        if (!cycle) break;

        const Cost delta = cycle_value_in_reduced(rm, *cycle);
        if (delta.is_infinite() || delta.value() >= 0 || !is_admissible(result.sigma, *cycle))
            throw InvariantViolation("phase 2 produced a non-improving cycle " + cycle->to_string());
        AppliedStep step;
        step.before = result.sigma;
        step.cycles = {annotate(rm, *cycle)};
        step.delta = delta.value();
        result.sigma = apply_cycle(result.sigma, *cycle);
        value = permutation_value(m, result.sigma);
        step.value_after = value.value();
        step.origin = origin;
        tracer.log(TraceLevel::cycle, "phase2: apply " + cycle->to_string() + " delta " +
                                          std::to_string(step.delta) + " -> " + std::to_string(step.value_after));
        result.trace.push_back(std::move(step));
    }
    return result;
}

} // namespace atspfw
