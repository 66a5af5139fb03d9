#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "maxplus/feasible_set.hpp"
#include "maxplus/rational.hpp"

namespace maxplus {

/// Convex piecewise-linear function of one real variable with integer
/// slopes and rational breakpoints, in canonical form: slopes strictly
/// increase from left to right, one more slope than breakpoints.  The
/// value is anchored at x = 0.
class Pwl {
public:
    struct Line {
        long slope;
        Rat intercept; // f(x) = slope * x + intercept
    };

    static Pwl constant(Rat value);
    static Pwl line(long slope, Rat intercept);
    /// Upper envelope (pointwise max) of one or more lines.
    static Pwl upper_envelope(std::vector<Line> lines);

    /// Pointwise sum; the arguments stay convex, so does the result.
    Pwl plus(const Pwl& other) const;

    Rat value_at(const Rat& x) const;

    /// The exact solution set of f(x) <= 0 over the reals: empty, all,
    /// or a closed interval (possibly unbounded on one side).
    FeasibleSet leq_zero_set() const;

    const std::vector<Rat>& breakpoints() const { return breakpoints_; }
    const std::vector<long>& slopes() const { return slopes_; }
    const Rat& value_at_zero() const { return value0_; }

    bool operator==(const Pwl& other) const = default;

    std::string str() const;

private:
    Pwl() = default;

    std::vector<Rat> breakpoints_; // strictly increasing
    std::vector<long> slopes_;     // breakpoints_.size() + 1, strictly increasing
    Rat value0_;                   // f(0)

    std::vector<Rat> breakpoint_values() const;
};

std::ostream& operator<<(std::ostream& os, const Pwl& f);

} // namespace maxplus
