#include "maxplus/feasible_set.hpp"

#include <ostream>

#include "maxplus/errors.hpp"

namespace maxplus {

FeasibleSet FeasibleSet::empty() {
    return FeasibleSet();
}

FeasibleSet FeasibleSet::all() {
    return interval(std::nullopt, std::nullopt);
}

FeasibleSet FeasibleSet::interval(std::optional<Rat> lo, std::optional<Rat> hi) {
    if (lo && hi && *lo > *hi) {
        return FeasibleSet();
    }
    FeasibleSet s;
    s.empty_ = false;
    s.lo_ = std::move(lo);
    s.hi_ = std::move(hi);
    return s;
}

FeasibleSet FeasibleSet::point(Rat value) {
    return interval(value, value);
}

const Rat& FeasibleSet::lo() const {
    if (empty_ || !lo_) {
        throw DomainError("feasible set has no finite lower endpoint");
    }
    return *lo_;
}

const Rat& FeasibleSet::hi() const {
    if (empty_ || !hi_) {
        throw DomainError("feasible set has no finite upper endpoint");
    }
    return *hi_;
}

bool FeasibleSet::contains(const Rat& x) const {
    if (empty_) {
        return false;
    }
    if (lo_ && x < *lo_) {
        return false;
    }
    if (hi_ && x > *hi_) {
        return false;
    }
    return true;
}

FeasibleSet FeasibleSet::intersect(const FeasibleSet& other) const {
    if (empty_ || other.empty_) {
        return FeasibleSet();
    }
    std::optional<Rat> lo = lo_;
    if (other.lo_ && (!lo || *other.lo_ > *lo)) {
        lo = other.lo_;
    }
    std::optional<Rat> hi = hi_;
    if (other.hi_ && (!hi || *other.hi_ < *hi)) {
        hi = other.hi_;
    }
    return interval(std::move(lo), std::move(hi));
}

FeasibleSet FeasibleSet::scale_down(long divisor) const {
    if (divisor <= 0) {
        throw DomainError("scale_down: divisor must be positive");
    }
    if (empty_) {
        return FeasibleSet();
    }
    std::optional<Rat> lo = lo_;
    std::optional<Rat> hi = hi_;
    if (lo) {
        *lo /= divisor;
    }
    if (hi) {
        *hi /= divisor;
    }
    return interval(std::move(lo), std::move(hi));
}

std::string FeasibleSet::str() const {
    if (empty_) {
        return "empty";
    }
    std::string out = lo_ ? "[" + rat_str(*lo_) : "(-inf";
    out += ", ";
    out += hi_ ? rat_str(*hi_) + "]" : "inf)";
    return out;
}

std::ostream& operator<<(std::ostream& os, const FeasibleSet& s) {
    return os << s.str();
}

} // namespace maxplus
