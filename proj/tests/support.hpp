#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "atspfw/atspfw.hpp"

namespace atspfw::testing {

inline std::string data_path(const std::string &name) { return std::string(ATSPFW_DATA_DIR) + "/" + name; }

/// The 8-vertex instance (diagonal entries ignored).
inline CostMatrix example8() {
    return CostMatrix::from_rows({{0, 23, 99, 17, 12, 99, 18, 24},
                                  {43, 0, 2, 73, 15, 100, 53, 28},
                                  {1, 84, 0, 19, 53, 68, 44, 34},
                                  {89, 41, 45, 0, 40, 71, 79, 51},
                                  {83, 62, 94, 88, 0, 36, 6, 50},
                                  {61, 62, 98, 50, 29, 0, 52, 40},
                                  {50, 21, 53, 68, 39, 26, 0, 25},
                                  {16, 42, 61, 54, 81, 34, 92, 0}});
}

inline CostMatrix example20() { return load_matrix(data_path("example_20.txt")); }

/// Assignment optimum of example8: (1 4 2 3)(5 7 8 6), value 155.
inline Permutation example8_optimum() { return Permutation::one_based({4, 3, 1, 2, 7, 5, 8, 6}); }

/// 20-cycle of value 213 reached before the last improvement on example20.
inline Permutation example20_d7() {
    return Permutation::one_based({7, 8, 11, 17, 18, 14, 5, 1, 4, 12, 9, 20, 19, 13, 16, 6, 10, 15, 3, 2});
}

/// Deterministic integer in [lo, hi] (rejection sampling, no std distributions).
inline std::int64_t uniform(std::mt19937_64 &rng, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t top = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = top - top % range;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return lo + static_cast<std::int64_t>(x % range);
}

inline CostMatrix random_matrix(std::mt19937_64 &rng, std::size_t n, std::int64_t lo = 1, std::int64_t hi = 100) {
    SquareMatrix<Cost> c(n, kInfinite);
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = 0; j < n; ++j)
            if (i != j) c(i, j) = uniform(rng, lo, hi);
    return CostMatrix(std::move(c));
}

inline Permutation random_permutation(std::mt19937_64 &rng, std::size_t n) {
    std::vector<Vertex> image(n);
    std::iota(image.begin(), image.end(), Vertex{0});
    for (std::size_t i = n; i-- > 1;) std::swap(image[i], image[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(i)))]);
    return Permutation(std::move(image));
}

inline Permutation random_derangement(std::mt19937_64 &rng, std::size_t n) {
    for (;;) {
        Permutation p = random_permutation(rng, n);
        if (p.is_derangement()) return p;
    }
}

/// Random simple cycle of length 2..max_len over {0..n-1}.
inline Cycle random_cycle(std::mt19937_64 &rng, std::size_t n, std::size_t max_len) {
    const auto len = static_cast<std::size_t>(uniform(rng, 2, static_cast<std::int64_t>(std::min(n, max_len))));
    const Permutation p = random_permutation(rng, n);
    return Cycle(std::vector<Vertex>(p.image().begin(), p.image().begin() + static_cast<std::ptrdiff_t>(len)));
}

/// Random cycle c with p∘c still a derangement, or nullopt after many misses.
inline std::optional<Cycle> random_admissible_cycle(std::mt19937_64 &rng, const Permutation &p, std::size_t max_len) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Cycle c = random_cycle(rng, p.size(), max_len);
        if (is_admissible(p, c)) return c;
    }
    return std::nullopt;
}

/// Minimum-value derangement by trying all n! permutations.
inline std::optional<std::int64_t> brute_force_assignment(const CostMatrix &m) {
    std::vector<Vertex> image(m.size());
    std::iota(image.begin(), image.end(), Vertex{0});
    std::optional<std::int64_t> best;
    do {
        Cost total = 0;
        for (Vertex a = 0; a < image.size() && total.is_finite(); ++a) total += m(a, image[a]);
        if (total.is_finite() && (!best || total.value() < *best)) best = total.value();
    } while (std::next_permutation(image.begin(), image.end()));
    return best;
}

/// Optimal tour value by trying all (n-1)! visiting orders from vertex 0.
inline std::optional<std::int64_t> brute_force_tsp(const CostMatrix &m) {
    std::vector<Vertex> rest(m.size() - 1);
    std::iota(rest.begin(), rest.end(), Vertex{1});
    std::optional<std::int64_t> best;
    do {
        Cost total = m(0, rest.front());
        for (std::size_t k = 0; k + 1 < rest.size(); ++k) total += m(rest[k], rest[k + 1]);
        total += m(rest.back(), 0);
        if (total.is_finite() && (!best || total.value() < *best)) best = total.value();
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

/// Whether every cyclic partial sum starting at s is <= bound, by direct summation.
inline bool start_is_valid(const std::vector<std::int64_t> &w, std::size_t s, std::int64_t bound) {
    std::int64_t sum = 0;
    for (std::size_t m = 0; m < w.size(); ++m) {
        sum += w[(s + m) % w.size()];
        if (sum > bound) return false;
    }
    return true;
}

/// Cycle value of c over an arbitrary weight matrix.
inline Cost cycle_value(const SquareMatrix<Cost> &w, const Cycle &c) {
    Cost total = 0;
    for (std::size_t k = 0; k < c.size(); ++k) total += w(c[k], c.next(k));
    return total;
}

inline std::vector<std::vector<Vertex>> canonical_sets(const std::vector<Cycle> &cycles) {
    std::vector<std::vector<Vertex>> out;
    for (const Cycle &c : cycles) out.push_back(c.canonical().vertices());
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::vector<Vertex>> canonical_sets(const std::vector<FoundCycle> &cycles) {
    std::vector<Cycle> plain;
    for (const FoundCycle &f : cycles) plain.push_back(f.cycle);
    return canonical_sets(plain);
}

} // namespace atspfw::testing
