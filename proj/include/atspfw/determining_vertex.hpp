#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace atspfw {

/// Cyclic arc weights w1..wk with a bound N on partial sums.
struct WeightSequence {
    std::vector<std::int64_t> weights;
    std::int64_t bound = 0;
};

/// For every start position s (0-based) reports whether all cyclic partial
/// sums w[s] + ... + w[s+m mod k], m = 0..k-1, are <= bound. O(k).
inline std::vector<bool> determining_starts(std::span<const std::int64_t> w, std::int64_t bound) {
    const std::size_t k = w.size();
    // prefix[t] = w[0] + ... + w[t-1]
    std::vector<std::int64_t> prefix(k + 1, 0);
    for (std::size_t t = 0; t < k; ++t) prefix[t + 1] = prefix[t] + w[t];
    const std::int64_t total = prefix[k];

    // suffix_max[s] = max prefix[t] for t in [s, k]; head_max[s] = max prefix[t] for t in [1, s]
    std::vector<std::int64_t> suffix_max(k + 1);
    suffix_max[k] = prefix[k];
    for (std::size_t t = k; t-- > 0;) suffix_max[t] = std::max(prefix[t], suffix_max[t + 1]);
    std::vector<std::int64_t> head_max(k + 1, std::numeric_limits<std::int64_t>::min());
    for (std::size_t t = 1; t <= k; ++t) head_max[t] = std::max(head_max[t - 1], prefix[t]);

    std::vector<bool> ok(k, false);
    for (std::size_t s = 0; s < k; ++s) {
        // sums that do not wrap: prefix[t] - prefix[s], t in (s, k]
        bool good = suffix_max[s + 1] - prefix[s] <= bound;
        // sums that wrap past the end: total - prefix[s] + prefix[t], t in [1, s]
        if (good && s >= 1) good = total - prefix[s] + head_max[s] <= bound;
        ok[s] = good;
    }
    return ok;
}

/// Smallest 0-based start from which every cyclic partial sum is <= seq.bound.
///
/// Such a start always exists when the total is <= bound and bound >= 0.
/// With a negative bound existence is not guaranteed, e.g. (-2, -2) with
/// bound -4; that case also throws.
inline std::size_t find_determining_vertex(const WeightSequence &seq) {
    if (seq.weights.empty()) throw NoDeterminingVertex("empty weight sequence");
    const std::int64_t total = std::accumulate(seq.weights.begin(), seq.weights.end(), std::int64_t{0});
    if (total > seq.bound)
        throw NoDeterminingVertex("weight total " + std::to_string(total) + " exceeds bound " +
                                  std::to_string(seq.bound));
    const auto ok = determining_starts(seq.weights, seq.bound);
    for (std::size_t s = 0; s < ok.size(); ++s)
        if (ok[s]) return s;
    throw NoDeterminingVertex("no start keeps every partial sum within bound " + std::to_string(seq.bound));
}

/// Smallest 0-based start from which every cyclic partial sum is >= 0.
inline std::size_t find_nonneg_determining_vertex(std::span<const std::int64_t> weights) {
    WeightSequence negated;
    negated.weights.reserve(weights.size());
    for (std::int64_t w : weights) negated.weights.push_back(-w);
    negated.bound = 0;
    return find_determining_vertex(negated);
}

} // namespace atspfw
