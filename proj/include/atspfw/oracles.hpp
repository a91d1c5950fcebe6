#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "permutation.hpp"

namespace atspfw {

struct DistanceTable {
    SquareMatrix<Cost> dist;
    bool has_negative_cycle = false;
};

/// Called after each pivot column j has been used for triangle operations.
using PivotObserver = std::function<void(Vertex pivot, const SquareMatrix<Cost> &dist)>;

/// Textbook Floyd–Warshall. The diagonal starts from w's own diagonal, so
/// dist[i][i] ends as the shortest closed walk through i (or w(i, i) when
/// smaller). Stops after the first pivot that drives a diagonal entry below
/// zero; in that case has_negative_cycle is set and dist is partial.
inline DistanceTable classic_floyd_warshall(const SquareMatrix<Cost> &w, const PivotObserver &after_pivot = {}) {
    const std::size_t n = w.size();
    DistanceTable t{w, false};
    auto &d = t.dist;
    for (Vertex j = 0; j < n; ++j) {
        for (Vertex i = 0; i < n; ++i) {
            if (d(i, j).is_infinite()) continue;
            for (Vertex k = 0; k < n; ++k) {
                if (d(j, k).is_infinite()) continue;
                const Cost via = d(i, j) + d(j, k);
                if (via < d(i, k)) d(i, k) = via;
            }
        }
        if (after_pivot) after_pivot(j, d);
        for (Vertex i = 0; i < n; ++i)
            if (d(i, i) < Cost(0)) t.has_negative_cycle = true;
        if (t.has_negative_cycle) break;
    }
    return t;
}

/// Single-source shortest distances; nullopt when a negative cycle is
/// reachable from `source`. dist[source] is 0, unreachable vertices INF.
/// Self-arcs are ignored.
inline std::optional<std::vector<Cost>> bellman_ford_distances(const SquareMatrix<Cost> &w, Vertex source) {
    const std::size_t n = w.size();
    std::vector<Cost> dist(n, kInfinite);
    dist[source] = 0;
    for (std::size_t round = 0; round < n; ++round) {
        bool changed = false;
        for (Vertex u = 0; u < n; ++u) {
            if (dist[u].is_infinite()) continue;
            for (Vertex v = 0; v < n; ++v) {
                if (u == v || w(u, v).is_infinite()) continue;
                const Cost via = dist[u] + w(u, v);
                if (via < dist[v]) {
                    dist[v] = via;
                    changed = true;
                }
            }
        }
        if (!changed) return dist;
        if (round + 1 == n) return std::nullopt;
    }
    return dist;
}

/// Some negative simple cycle of w (self-arcs ignored), or nullopt. Runs n
/// relaxation rounds from a virtual source joined to every vertex, then walks
/// predecessors from a vertex relaxed in the last round. The cycle starts at
/// its smallest vertex.
inline std::optional<Cycle> bellman_ford_negative_cycle(const SquareMatrix<Cost> &w) {
    const std::size_t n = w.size();
    constexpr Vertex none = std::numeric_limits<Vertex>::max();
    std::vector<std::int64_t> dist(n, 0);
    std::vector<Vertex> pred(n, none);
    Vertex last = none;
    for (std::size_t round = 0; round < n; ++round) {
        last = none;
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = 0; v < n; ++v) {
                if (u == v || w(u, v).is_infinite()) continue;
                const std::int64_t via = (Cost(dist[u]) + w(u, v)).value();
                if (via < dist[v]) {
                    dist[v] = via;
                    pred[v] = u;
                    last = v;
                }
            }
        }
        if (last == none) return std::nullopt;
    }
    // step back n times to land on the cycle
    Vertex x = last;
    for (std::size_t k = 0; k < n; ++k) x = pred[x];
    std::vector<Vertex> rev{x};
    for (Vertex y = pred[x]; y != x; y = pred[y]) rev.push_back(y);
    std::vector<Vertex> forward(rev.rbegin(), rev.rend());
    return Cycle(std::move(forward)).canonical();
}

/// Minimum-value derangement by the Hungarian method. Forbidden arcs get a
/// penalty larger than any finite assignment; a solution that still uses one
/// means no finite derangement exists.
inline std::pair<Permutation, std::int64_t> exact_assignment(const CostMatrix &m) {
    const std::size_t n = m.size();
    std::int64_t span = 1;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = 0; j < n; ++j)
            if (m(i, j).is_finite()) {
                const std::int64_t a = m(i, j).value();
                if (__builtin_add_overflow(span, a < 0 ? -a : a, &span))
                    throw DimensionError("costs too large for the assignment oracle");
            }
    std::int64_t penalty = 0;
    if (__builtin_mul_overflow(span, static_cast<std::int64_t>(2 * n + 2), &penalty))
        throw DimensionError("costs too large for the assignment oracle");
    auto cost = [&](std::size_t i, std::size_t j) {
        const Cost c = m(i - 1, j - 1);
        return c.is_finite() ? c.value() : penalty;
    };

    // 1-based potentials u (rows), v (columns); way[j] = previous column on the augmenting path
    const std::int64_t big = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::vector<std::int64_t> minv(n + 1, big);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = match[j0];
            std::int64_t delta = big;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const std::int64_t cur = cost(i0, j) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<Vertex> image(n);
    for (std::size_t j = 1; j <= n; ++j) image[match[j] - 1] = j - 1;
    Permutation p(std::move(image));
    const Cost value = permutation_value(m, p);
    if (value.is_infinite()) throw InfeasibleError("no finite derangement exists");
    return {std::move(p), value.value()};
}

/// Exact minimum tour by subset dynamic programming over tours through vertex
/// 0. Needs about 9 * 2^(n-1) * (n-1) bytes, so n is limited to 20.
inline std::pair<Permutation, std::int64_t> held_karp_tsp(const CostMatrix &m) {
    const std::size_t n = m.size();
    if (n > 20) throw DimensionError("held_karp_tsp supports n <= 20");
    const std::size_t k = n - 1; // vertices 1..n-1 are bits 0..k-1
    const std::size_t subsets = std::size_t{1} << k;
    constexpr std::int64_t unset = std::numeric_limits<std::int64_t>::max();
    // dp[mask * k + v]: cheapest path 0 -> ... -> v+1 visiting exactly mask, v in mask
    std::vector<std::int64_t> dp(subsets * k, unset);
    std::vector<std::uint8_t> parent(subsets * k, 0xff);

    for (std::size_t v = 0; v < k; ++v)
        if (m(0, v + 1).is_finite()) dp[(std::size_t{1} << v) * k + v] = m(0, v + 1).value();

    for (std::size_t mask = 1; mask < subsets; ++mask) {
        for (std::size_t v = 0; v < k; ++v) {
            const std::int64_t here = dp[mask * k + v];
            if (here == unset) continue;
            for (std::size_t w = 0; w < k; ++w) {
                if (mask & (std::size_t{1} << w)) continue;
                const Cost arc = m(v + 1, w + 1);
                if (arc.is_infinite()) continue;
                const std::size_t next = (mask | (std::size_t{1} << w)) * k + w;
                const std::int64_t cand = (Cost(here) + arc).value();
                if (cand < dp[next]) {
                    dp[next] = cand;
                    parent[next] = static_cast<std::uint8_t>(v);
                }
            }
        }
    }

    const std::size_t full = subsets - 1;
    std::int64_t best = unset;
    std::size_t best_end = k;
    for (std::size_t v = 0; v < k; ++v) {
        const std::int64_t here = dp[full * k + v];
        if (here == unset || m(v + 1, 0).is_infinite()) continue;
        const std::int64_t total = (Cost(here) + m(v + 1, 0)).value();
        if (total < best) {
            best = total;
            best_end = v;
        }
    }
    if (best == unset) throw InfeasibleError("no finite tour exists");

    std::vector<Vertex> order;
    std::size_t mask = full, v = best_end;
    while (true) {
        order.push_back(v + 1);
        const std::uint8_t p = parent[mask * k + v];
        mask &= ~(std::size_t{1} << v);
        if (p == 0xff) break;
        v = p;
    }
    order.push_back(0);
    std::reverse(order.begin(), order.end());
    return {Permutation::from_cycle(n, Cycle(std::move(order))), best};
}

/// All simple directed cycles of length 2..max_len with value < max_value,
/// each starting at its smallest vertex, in lexicographic order. Self-arcs
/// are ignored.
inline std::vector<Cycle> enumerate_simple_cycles(const SquareMatrix<Cost> &w, std::int64_t max_value,
                                                  std::size_t max_len) {
    const std::size_t n = w.size();
    std::vector<Cycle> out;
    std::vector<Vertex> path;
    std::vector<bool> on_path(n, false);

    std::function<void(Vertex, std::int64_t)> dfs = [&](Vertex start, std::int64_t value) {
        const Vertex x = path.back();
        for (Vertex y = start; y < n; ++y) {
            if (y == x || w(x, y).is_infinite()) continue;
            const std::int64_t next = (Cost(value) + w(x, y)).value();
            if (y == start) {
                if (path.size() >= 2 && next < max_value) out.emplace_back(path);
                continue;
            }
            if (on_path[y] || path.size() >= max_len) continue;
            path.push_back(y);
            on_path[y] = true;
            dfs(start, next);
            on_path[y] = false;
            path.pop_back();
        }
    };

    for (Vertex s = 0; s < n; ++s) {
        path = {s};
        on_path[s] = true;
        dfs(s, 0);
        on_path[s] = false;
    }
    std::sort(out.begin(), out.end(),
              [](const Cycle &a, const Cycle &b) { return a.vertices() < b.vertices(); });
    return out;
}

} // namespace atspfw
