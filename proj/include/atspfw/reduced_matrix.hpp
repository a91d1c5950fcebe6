#pragma once

#include <cstdint>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "permutation.hpp"

namespace atspfw {

/// Column-permuted, row-reduced costs relative to a derangement sigma.
///
///   r(i, j) = cost(i, sigma(j)) - cost(i, sigma(i))
///
/// Indices of r live in "cycle space": a cycle c of r applied to sigma gives
/// sigma∘c, and r's cycle value equals the change in permutation value. The
/// diagonal is exactly zero (the arcs of sigma). An entry is infinite iff the
/// underlying arc is forbidden, which covers every arc (a, sigma^-1(a)) that
/// would create a fixed point.
///
/// Holds a pointer to the base matrix; the matrix must outlive this object.
class ReducedMatrix {
public:
    ReducedMatrix(const CostMatrix &m, Permutation sigma)
        : base_(&m), sigma_(std::move(sigma)), sigma_inv_(sigma_.inverse()), r_(m.size(), kInfinite),
          offset_(m.size(), 0) {
        const std::size_t n = m.size();
        if (sigma_.size() != n) throw InvariantViolation("reduced matrix: permutation size mismatch");
        for (Vertex i = 0; i < n; ++i) {
            const Cost current = m(i, sigma_(i));
            if (current.is_infinite())
                throw InfiniteAssignment("arc (" + std::to_string(i + 1) + ", " + std::to_string(sigma_(i) + 1) +
                                         ") of the base permutation is infinite");
            offset_[i] = current.value();
        }
        for (Vertex i = 0; i < n; ++i)
            for (Vertex j = 0; j < n; ++j) r_(i, j) = m(i, sigma_(j)) - offset_[i];
    }

    [[nodiscard]] std::size_t size() const noexcept { return r_.size(); }
    Cost operator()(Vertex i, Vertex j) const { return r_(i, j); }
    [[nodiscard]] const SquareMatrix<Cost> &values() const noexcept { return r_; }

    [[nodiscard]] const CostMatrix &base() const noexcept { return *base_; }
    [[nodiscard]] const Permutation &sigma() const noexcept { return sigma_; }
    [[nodiscard]] const Permutation &sigma_inverse() const noexcept { return sigma_inv_; }

    /// Original-matrix column behind cycle-space column j.
    [[nodiscard]] Vertex original_column(Vertex j) const { return sigma_(j); }
    /// Cycle-space column that carries original-matrix column c.
    [[nodiscard]] Vertex cycle_column(Vertex c) const { return sigma_inv_(c); }
    /// cost(i, sigma(i)), the amount subtracted from row i.
    [[nodiscard]] std::int64_t row_offset(Vertex i) const { return offset_[i]; }

private:
    const CostMatrix *base_;
    Permutation sigma_;
    Permutation sigma_inv_;
    SquareMatrix<Cost> r_;
    std::vector<std::int64_t> offset_;
};

inline ReducedMatrix build_reduced(const CostMatrix &m, const Permutation &sigma) { return ReducedMatrix(m, sigma); }

/// Sum of r over the arcs (a, c(a)) of c; infinite if any arc is forbidden.
inline Cost cycle_value_in_reduced(const ReducedMatrix &rm, const Cycle &c) {
    Cost total = 0;
    for (std::size_t k = 0; k < c.size(); ++k) total += rm(c[k], c.next(k));
    return total;
}

/// Per-arc reduced weights of c, aligned with its vertices. Requires finite arcs.
inline Cycle annotate(const ReducedMatrix &rm, const Cycle &c) {
    std::vector<std::int64_t> w;
    w.reserve(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) w.push_back(rm(c[k], c.next(k)).value());
    return Cycle(c.vertices(), std::move(w));
}

} // namespace atspfw
