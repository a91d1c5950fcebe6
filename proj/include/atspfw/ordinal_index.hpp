#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "matrix.hpp"

namespace atspfw {

/// Per-row ascending column order of a cost matrix (MIN(M)).
///
/// Row i lists every finite off-diagonal column of row i, cheapest first;
/// equal costs are ordered by column index.
class OrdinalIndex {
public:
    explicit OrdinalIndex(const CostMatrix &m) : order_(m.size()) {
        const std::size_t n = m.size();
        for (Vertex i = 0; i < n; ++i) {
            auto &row = order_[i];
            row.reserve(n - 1);
            for (Vertex j = 0; j < n; ++j)
                if (m(i, j).is_finite()) row.push_back(j);
            std::stable_sort(row.begin(), row.end(), [&](Vertex a, Vertex b) { return m(i, a) < m(i, b); });
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return order_.size(); }
    [[nodiscard]] std::span<const Vertex> row(Vertex i) const { return order_[i]; }
    [[nodiscard]] std::size_t ranks_in_row(Vertex i) const { return order_[i].size(); }

    /// 0-based rank of column j in row i, or ranks_in_row(i) when j is not listed.
    [[nodiscard]] std::size_t rank_of(Vertex i, Vertex j) const {
        const auto &row = order_[i];
        return static_cast<std::size_t>(std::find(row.begin(), row.end(), j) - row.begin());
    }

private:
    std::vector<std::vector<Vertex>> order_;
};

inline OrdinalIndex build_ordinal_index(const CostMatrix &m) { return OrdinalIndex(m); }

} // namespace atspfw
