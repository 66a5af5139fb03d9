#include "maxplus/scalar.hpp"

#include <ostream>

#include "maxplus/errors.hpp"

namespace maxplus {

const Rat& ExtScalar::finite() const {
    if (kind_ != Kind::finite) {
        throw DomainError("scalar is not finite");
    }
    return value_;
}

std::string ExtScalar::str() const {
    switch (kind_) {
    case Kind::bottom:
        return "-inf";
    case Kind::top:
        return "inf";
    default:
        return rat_str(value_);
    }
}

std::ostream& operator<<(std::ostream& os, const ExtScalar& s) {
    return os << s.str();
}

ExtScalar oplus(const ExtScalar& a, const ExtScalar& b) {
    return a < b ? b : a;
}

ExtScalar wedge(const ExtScalar& a, const ExtScalar& b) {
    return a < b ? a : b;
}

ExtScalar otimes(const ExtScalar& a, const ExtScalar& b) {
    if (a.is_bottom() || b.is_bottom()) {
        return ExtScalar::bottom();
    }
    if (a.is_top() || b.is_top()) {
        return ExtScalar::top();
    }
    return ExtScalar(a.finite() + b.finite());
}

ExtScalar odot(const ExtScalar& a, const ExtScalar& b) {
    if (a.is_top() || b.is_top()) {
        return ExtScalar::top();
    }
    return otimes(a, b);
}

ExtScalar inverse(const ExtScalar& a) {
    if (a.is_bottom()) {
        return ExtScalar::top();
    }
    if (a.is_top()) {
        return ExtScalar::bottom();
    }
    return ExtScalar(-a.finite());
}

} // namespace maxplus
