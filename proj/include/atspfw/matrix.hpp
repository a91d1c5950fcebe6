#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "cost.hpp"
#include "error.hpp"

namespace atspfw {

/// 0-based vertex label. Conversions to the 1-based labels used in files,
/// reports and fixtures happen only at the I/O boundary.
using Vertex = std::size_t;

/// Dense row-major n x n matrix.
template <typename T>
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

    [[nodiscard]] std::size_t size() const noexcept { return n_; }

    T &operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const T &operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    [[nodiscard]] std::span<const T> row(std::size_t i) const {
        return std::span<const T>(data_).subspan(i * n_, n_);
    }

    friend bool operator==(const SquareMatrix &, const SquareMatrix &) = default;

private:
    std::size_t n_ = 0;
    std::vector<T> data_;
};

/// Arc costs of an ATSP instance. The diagonal is always infinite (self-arcs
/// are forbidden); off-diagonal entries may also be infinite.
class CostMatrix {
public:
    explicit CostMatrix(SquareMatrix<Cost> costs) : costs_(std::move(costs)) {
        if (costs_.size() < 2) throw DimensionError("cost matrix needs n >= 2");
        for (std::size_t i = 0; i < costs_.size(); ++i) costs_(i, i) = kInfinite;
    }

    /// Builds from nested rows; whatever sits on the diagonal is replaced by INF.
    static CostMatrix from_rows(const std::vector<std::vector<Cost>> &rows) {
        const std::size_t n = rows.size();
        SquareMatrix<Cost> m(n, kInfinite);
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n) throw DimensionError("row " + std::to_string(i + 1) + " has wrong length");
            for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
        }
        return CostMatrix(std::move(m));
    }

    static CostMatrix from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
        std::vector<std::vector<Cost>> nested;
        for (const auto &r : rows) nested.emplace_back(r.begin(), r.end());
        return from_rows(nested);
    }

    [[nodiscard]] std::size_t size() const noexcept { return costs_.size(); }
    Cost operator()(Vertex i, Vertex j) const { return costs_(i, j); }
    [[nodiscard]] std::span<const Cost> row(Vertex i) const { return costs_.row(i); }
    [[nodiscard]] const SquareMatrix<Cost> &values() const noexcept { return costs_; }

    friend bool operator==(const CostMatrix &, const CostMatrix &) = default;

private:
    SquareMatrix<Cost> costs_;
};

} // namespace atspfw
