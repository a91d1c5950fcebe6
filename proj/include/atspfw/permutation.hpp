#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"

namespace atspfw {

/// Cyclic sequence of distinct vertices (a1 a2 ... ak), read as the
/// permutation a1 -> a2 -> ... -> ak -> a1. An empty cycle is the identity.
///
/// Per-arc weights are optional annotations; when present weights[i] belongs
/// to the arc (vertices[i], vertices[i+1 mod k]).
class Cycle {
public:
    Cycle() = default;
    explicit Cycle(std::vector<Vertex> vertices, std::vector<std::int64_t> weights = {})
        : vertices_(std::move(vertices)), weights_(std::move(weights)) {
        if (!weights_.empty() && weights_.size() != vertices_.size())
            throw InvariantViolation("cycle weights must align with arcs");
    }

    /// Fixture helper: vertices given with 1-based labels.
    static Cycle one_based(std::initializer_list<Vertex> labels) {
        std::vector<Vertex> v;
        v.reserve(labels.size());
        for (Vertex a : labels) v.push_back(a - 1);
        return Cycle(std::move(v));
    }

    [[nodiscard]] std::size_t size() const noexcept { return vertices_.size(); }
    [[nodiscard]] bool empty() const noexcept { return vertices_.empty(); }
    [[nodiscard]] const std::vector<Vertex> &vertices() const noexcept { return vertices_; }
    [[nodiscard]] const std::vector<std::int64_t> &weights() const noexcept { return weights_; }
    Vertex operator[](std::size_t k) const { return vertices_[k]; }

    /// Successor of the k-th vertex along the cycle.
    [[nodiscard]] Vertex next(std::size_t k) const { return vertices_[(k + 1) % vertices_.size()]; }

    [[nodiscard]] std::optional<std::int64_t> weight_sum() const {
        if (weights_.empty()) return std::nullopt;
        return std::accumulate(weights_.begin(), weights_.end(), std::int64_t{0});
    }

    [[nodiscard]] Cycle inverse() const {
        std::vector<Vertex> v(vertices_.rbegin(), vertices_.rend());
        return Cycle(std::move(v));
    }

    /// Same cycle rotated so that its smallest vertex comes first. Weights are dropped.
    [[nodiscard]] Cycle canonical() const {
        if (vertices_.empty()) return {};
        std::vector<Vertex> v = vertices_;
        std::rotate(v.begin(), std::min_element(v.begin(), v.end()), v.end());
        return Cycle(std::move(v));
    }

    [[nodiscard]] bool contains(Vertex a) const {
        return std::find(vertices_.begin(), vertices_.end(), a) != vertices_.end();
    }

    [[nodiscard]] std::string to_string() const {
        std::string out = "(";
        for (std::size_t k = 0; k < vertices_.size(); ++k) {
            if (k) out += ' ';
            out += std::to_string(vertices_[k] + 1);
        }
        return out + ")";
    }

    /// Equality ignores weights and rotation is significant.
    friend bool operator==(const Cycle &a, const Cycle &b) { return a.vertices_ == b.vertices_; }

    friend std::ostream &operator<<(std::ostream &os, const Cycle &c) { return os << c.to_string(); }

private:
    std::vector<Vertex> vertices_;
    std::vector<std::int64_t> weights_;
};

/// Permutation of {0..n-1} in one-line form: image[a] is where a maps.
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<Vertex> image) : image_(std::move(image)) {
        std::vector<bool> seen(image_.size(), false);
        for (Vertex b : image_) {
            if (b >= image_.size() || seen[b]) throw InvariantViolation("permutation image is not a bijection");
            seen[b] = true;
        }
    }

    static Permutation identity(std::size_t n) {
        std::vector<Vertex> image(n);
        std::iota(image.begin(), image.end(), Vertex{0});
        return Permutation(std::move(image));
    }

    /// The n-cycle a1 -> a2 -> ... -> an -> a1 given in visiting order.
    static Permutation from_cycle(std::size_t n, const Cycle &c) {
        std::vector<Vertex> image(n);
        std::iota(image.begin(), image.end(), Vertex{0});
        for (std::size_t k = 0; k < c.size(); ++k) image.at(c[k]) = c.next(k);
        return Permutation(std::move(image));
    }

    /// Row form with 1-based images, e.g. {2, 3, 4, 1}.
    static Permutation one_based(std::initializer_list<Vertex> images) {
        std::vector<Vertex> v;
        v.reserve(images.size());
        for (Vertex b : images) v.push_back(b - 1);
        return Permutation(std::move(v));
    }

    /// The canonical n-cycle (1 2 ... n).
    static Permutation canonical_cycle(std::size_t n) {
        std::vector<Vertex> image(n);
        for (std::size_t a = 0; a < n; ++a) image[a] = (a + 1) % n;
        return Permutation(std::move(image));
    }

    [[nodiscard]] std::size_t size() const noexcept { return image_.size(); }
    Vertex operator()(Vertex a) const { return image_[a]; }
    [[nodiscard]] const std::vector<Vertex> &image() const noexcept { return image_; }

    [[nodiscard]] Permutation inverse() const {
        std::vector<Vertex> inv(image_.size());
        for (Vertex a = 0; a < image_.size(); ++a) inv[image_[a]] = a;
        return Permutation(std::move(inv));
    }

    [[nodiscard]] bool is_derangement() const {
        for (Vertex a = 0; a < image_.size(); ++a)
            if (image_[a] == a) return false;
        return true;
    }

    [[nodiscard]] std::size_t cycle_count() const {
        std::vector<bool> seen(image_.size(), false);
        std::size_t count = 0;
        for (Vertex a = 0; a < image_.size(); ++a) {
            if (seen[a]) continue;
            ++count;
            for (Vertex x = a; !seen[x]; x = image_[x]) seen[x] = true;
        }
        return count;
    }

    [[nodiscard]] bool is_n_cycle() const { return !image_.empty() && image_.size() >= 2 && cycle_count() == 1; }

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const Permutation &, const Permutation &) = default;
    friend auto operator<=>(const Permutation &, const Permutation &) = default;

private:
    std::vector<Vertex> image_;
};

/// Composition p∘q: a -> p(q(a)).
inline Permutation compose(const Permutation &p, const Permutation &q) {
    if (p.size() != q.size()) throw InvariantViolation("compose: size mismatch");
    std::vector<Vertex> image(p.size());
    for (Vertex a = 0; a < p.size(); ++a) image[a] = p(q(a));
    return Permutation(std::move(image));
}

/// p∘c: vertices on c map to p(c(a)); all others keep p(a).
inline Permutation apply_cycle(const Permutation &p, const Cycle &c) {
    std::vector<Vertex> image = p.image();
    for (std::size_t k = 0; k < c.size(); ++k) image.at(c[k]) = p(c.next(k));
    return Permutation(std::move(image));
}

/// Applies pairwise disjoint cycles in sequence.
inline Permutation apply_cycles(const Permutation &p, std::span<const Cycle> cycles) {
    Permutation out = p;
    for (const Cycle &c : cycles) out = apply_cycle(out, c);
    return out;
}

/// True iff no vertex a on c is sent to p^-1(a), i.e. p∘c keeps every vertex of c moving.
inline bool is_admissible(const Permutation &p, const Cycle &c) {
    if (c.size() < 2) return true;
    for (std::size_t k = 0; k < c.size(); ++k)
        if (p(c.next(k)) == c[k]) return false;
    return true;
}

/// Disjoint cycles of p covering its non-fixed points; each starts at its
/// smallest vertex and the list is sorted by that vertex.
inline std::vector<Cycle> cycle_decomposition(const Permutation &p) {
    std::vector<Cycle> out;
    std::vector<bool> seen(p.size(), false);
    for (Vertex a = 0; a < p.size(); ++a) {
        if (seen[a] || p(a) == a) {
            seen[a] = true;
            continue;
        }
        std::vector<Vertex> v;
        for (Vertex x = a; !seen[x]; x = p(x)) {
            seen[x] = true;
            v.push_back(x);
        }
        out.emplace_back(std::move(v));
    }
    return out;
}

inline std::string Permutation::to_string() const {
    const auto cycles = cycle_decomposition(*this);
    if (cycles.empty()) return "()";
    std::string out;
    for (const Cycle &c : cycles) out += c.to_string();
    return out;
}

/// Sum of cost[a][p(a)]; infinite if any arc is forbidden (in particular a fixed point).
inline Cost permutation_value(const CostMatrix &m, const Permutation &p) {
    if (m.size() != p.size()) throw InvariantViolation("permutation_value: size mismatch");
    Cost total = 0;
    for (Vertex a = 0; a < p.size(); ++a) {
        total += m(a, p(a));
        if (total.is_infinite()) return kInfinite;
    }
    return total;
}

/// The tour p as a visiting sequence starting at vertex 0 (p must be an n-cycle).
inline Cycle tour_sequence(const Permutation &p) {
    std::vector<Vertex> v;
    v.reserve(p.size());
    Vertex x = 0;
    do {
        v.push_back(x);
        x = p(x);
    } while (x != 0 && v.size() <= p.size());
    return Cycle(std::move(v));
}

} // namespace atspfw
