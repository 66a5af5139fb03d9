#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "maxplus/rational.hpp"

namespace maxplus {

/// Solution set of a one-parameter non-positive-circuit problem: empty, or
/// a closed interval whose endpoints are exact rationals or unbounded.
/// Crossed intervals are normalised to the empty set on construction.
class FeasibleSet {
public:
    static FeasibleSet empty();
    static FeasibleSet all();
    /// Closed interval; std::nullopt marks an unbounded side.
    static FeasibleSet interval(std::optional<Rat> lo, std::optional<Rat> hi);
    static FeasibleSet at_least(Rat lo) { return interval(std::move(lo), std::nullopt); }
    static FeasibleSet at_most(Rat hi) { return interval(std::nullopt, std::move(hi)); }
    static FeasibleSet point(Rat value);

    bool is_empty() const { return empty_; }
    bool lo_unbounded() const { return !empty_ && !lo_.has_value(); }
    bool hi_unbounded() const { return !empty_ && !hi_.has_value(); }
    /// Finite endpoints; throws DomainError when empty or unbounded.
    const Rat& lo() const;
    const Rat& hi() const;

    bool contains(const Rat& x) const;
    FeasibleSet intersect(const FeasibleSet& other) const;
    /// Exact change of variable x -> x / divisor (divisor > 0).
    FeasibleSet scale_down(long divisor) const;

    bool operator==(const FeasibleSet& other) const = default;

    /// "[7/2, 4]", "[0, inf)", "(-inf, inf)", "empty".
    std::string str() const;

private:
    FeasibleSet() : empty_(true) {}

    bool empty_;
    std::optional<Rat> lo_;
    std::optional<Rat> hi_;
};

std::ostream& operator<<(std::ostream& os, const FeasibleSet& s);

} // namespace maxplus
