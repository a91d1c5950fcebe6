#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace atspfw {

/// Extended integer arc cost: a signed 64-bit value or +infinity.
///
/// Infinity is a separate state rather than a large sentinel number, so
/// sums involving a forbidden arc stay forbidden instead of wrapping. Finite
/// additions that overflow throw std::overflow_error.
class Cost {
public:
    constexpr Cost() noexcept = default;
    constexpr Cost(std::int64_t v) noexcept : value_(v) {}  // NOLINT: implicit by design of the API

    static constexpr Cost infinite() noexcept {
        Cost c;
        c.infinite_ = true;
        return c;
    }

    [[nodiscard]] constexpr bool is_infinite() const noexcept { return infinite_; }
    [[nodiscard]] constexpr bool is_finite() const noexcept { return !infinite_; }

    [[nodiscard]] std::int64_t value() const {
        if (infinite_) throw std::logic_error("Cost::value() on infinite cost");
        return value_;
    }

    friend Cost operator+(Cost a, Cost b) {
        if (a.infinite_ || b.infinite_) return infinite();
        std::int64_t out{};
        if (__builtin_add_overflow(a.value_, b.value_, &out))
            throw std::overflow_error("cost addition overflow");
        return Cost(out);
    }

    Cost &operator+=(Cost other) { return *this = *this + other; }

    /// Subtracting a finite offset; infinite minus finite stays infinite.
    friend Cost operator-(Cost a, std::int64_t b) {
        if (a.infinite_) return infinite();
        std::int64_t out{};
        if (__builtin_sub_overflow(a.value_, b, &out))
            throw std::overflow_error("cost subtraction overflow");
        return Cost(out);
    }

    friend constexpr bool operator==(Cost a, Cost b) noexcept {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }

    friend constexpr std::strong_ordering operator<=>(Cost a, Cost b) noexcept {
        if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
        if (a.infinite_) return std::strong_ordering::greater;
        if (b.infinite_) return std::strong_ordering::less;
        return a.value_ <=> b.value_;
    }

    [[nodiscard]] std::string to_string() const {
        return infinite_ ? std::string("INF") : std::to_string(value_);
    }

    friend std::ostream &operator<<(std::ostream &os, Cost c) { return os << c.to_string(); }

private:
    std::int64_t value_ = 0;
    bool infinite_ = false;
};

inline constexpr Cost kInfinite = Cost::infinite();

} // namespace atspfw
