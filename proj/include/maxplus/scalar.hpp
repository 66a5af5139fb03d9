#pragma once

#include <compare>
#include <iosfwd>
#include <string>

#include "maxplus/rational.hpp"

namespace maxplus {

/// An element of the completed max-plus semifield: -inf (epsilon, the
/// additive neutral), an exact rational, or +inf (top).  The canonical
/// dioid order coincides with the numeric order bottom < finite < top.
class ExtScalar {
public:
    enum class Kind : unsigned char { bottom, finite, top };

    ExtScalar() : kind_(Kind::bottom) {}
    ExtScalar(Rat value) : kind_(Kind::finite), value_(std::move(value)) {}
    ExtScalar(long value) : ExtScalar(Rat(value)) {}
    ExtScalar(int value) : ExtScalar(Rat(value)) {}

    static ExtScalar bottom() { return ExtScalar(); }
    static ExtScalar top() {
        ExtScalar s;
        s.kind_ = Kind::top;
        return s;
    }

    Kind kind() const { return kind_; }
    bool is_bottom() const { return kind_ == Kind::bottom; }
    bool is_finite() const { return kind_ == Kind::finite; }
    bool is_top() const { return kind_ == Kind::top; }

    /// The rational value; throws DomainError when not finite.
    const Rat& finite() const;

    std::string str() const;

    friend bool operator==(const ExtScalar& a, const ExtScalar& b) {
        if (a.kind_ != b.kind_) {
            return false;
        }
        return a.kind_ != Kind::finite || a.value_ == b.value_;
    }

    friend std::strong_ordering operator<=>(const ExtScalar& a, const ExtScalar& b) {
        if (a.kind_ != b.kind_) {
            return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
        }
        if (a.kind_ != Kind::finite) {
            return std::strong_ordering::equal;
        }
        int c = cmp(a.value_, b.value_);
        return c <=> 0;
    }

private:
    Kind kind_;
    Rat value_;
};

std::ostream& operator<<(std::ostream& os, const ExtScalar& s);

/// a (+) b: max under the total order.
ExtScalar oplus(const ExtScalar& a, const ExtScalar& b);

/// a /\ b: min under the total order (greatest lower bound).
ExtScalar wedge(const ExtScalar& a, const ExtScalar& b);

/// a (x) b: addition of finite values; bottom absorbs (even against top).
ExtScalar otimes(const ExtScalar& a, const ExtScalar& b);

/// Dual product: coincides with (x) except that top absorbs.
ExtScalar odot(const ExtScalar& a, const ExtScalar& b);

/// Multiplicative inverse: negation on finite values, bottom <-> top.
ExtScalar inverse(const ExtScalar& a);

} // namespace maxplus
