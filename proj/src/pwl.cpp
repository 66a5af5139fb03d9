#include "maxplus/pwl.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "maxplus/errors.hpp"

namespace maxplus {

Pwl Pwl::constant(Rat value) {
    Pwl f;
    f.slopes_ = {0};
    f.value0_ = std::move(value);
    return f;
}

Pwl Pwl::line(long slope, Rat intercept) {
    Pwl f;
    f.slopes_ = {slope};
    f.value0_ = std::move(intercept);
    return f;
}

Pwl Pwl::upper_envelope(std::vector<Line> lines) {
    if (lines.empty()) {
        throw DomainError("upper_envelope: no lines");
    }
    std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
        return a.slope != b.slope ? a.slope < b.slope : a.intercept < b.intercept;
    });
    // Keep only the highest intercept per slope.
    std::vector<Line> distinct;
    for (Line& l : lines) {
        if (!distinct.empty() && distinct.back().slope == l.slope) {
            distinct.back() = std::move(l);
        } else {
            distinct.push_back(std::move(l));
        }
    }

    // Convex hull scan: starts[i] is where hull[i] takes over from hull[i-1];
    // the slot for the leftmost line is unused.
    std::vector<Line> hull;
    std::vector<Rat> starts;
    for (Line& l : distinct) {
        Rat start(0);
        while (!hull.empty()) {
            const Line& top = hull.back();
            Rat cross = (top.intercept - l.intercept) / Rat(l.slope - top.slope);
            if (hull.size() > 1 && cross <= starts.back()) {
                hull.pop_back();
                starts.pop_back();
                continue;
            }
            start = std::move(cross);
            break;
        }
        hull.push_back(std::move(l));
        starts.push_back(std::move(start));
    }

    Pwl f;
    for (const Line& l : hull) {
        f.slopes_.push_back(l.slope);
    }
    f.breakpoints_.assign(starts.begin() + 1, starts.end());
    // Anchor: value at 0 comes from the segment that covers x = 0.
    size_t seg = 0;
    while (seg + 1 < hull.size() && starts[seg + 1] <= 0) {
        ++seg;
    }
    f.value0_ = hull[seg].intercept;
    return f;
}

Pwl Pwl::plus(const Pwl& other) const {
    Pwl out;
    out.value0_ = value0_ + other.value0_;
    size_t ia = 0;
    size_t ib = 0;
    std::vector<Rat> bps;
    std::vector<long> slopes;
    slopes.push_back(slopes_[0] + other.slopes_[0]);
    while (ia < breakpoints_.size() || ib < other.breakpoints_.size()) {
        Rat next;
        if (ib == other.breakpoints_.size() ||
            (ia < breakpoints_.size() && breakpoints_[ia] <= other.breakpoints_[ib])) {
            next = breakpoints_[ia];
        } else {
            next = other.breakpoints_[ib];
        }
        while (ia < breakpoints_.size() && breakpoints_[ia] == next) {
            ++ia;
        }
        while (ib < other.breakpoints_.size() && other.breakpoints_[ib] == next) {
            ++ib;
        }
        bps.push_back(next);
        slopes.push_back(slopes_[ia] + other.slopes_[ib]);
    }
    // Both inputs are canonical, so slopes strictly increase at every merged
    // breakpoint; dedupe defensively anyway.
    out.slopes_.push_back(slopes[0]);
    for (size_t k = 0; k < bps.size(); ++k) {
        if (slopes[k + 1] != out.slopes_.back()) {
            out.breakpoints_.push_back(bps[k]);
            out.slopes_.push_back(slopes[k + 1]);
        }
    }
    return out;
}

Rat Pwl::value_at(const Rat& x) const {
    const size_t m = breakpoints_.size();
    size_t seg = 0;
    while (seg < m && breakpoints_[seg] <= 0) {
        ++seg;
    }
    Rat value = value0_;
    Rat pos(0);
    if (x >= 0) {
        while (seg < m && breakpoints_[seg] < x) {
            value += Rat(slopes_[seg]) * (breakpoints_[seg] - pos);
            pos = breakpoints_[seg];
            ++seg;
        }
        value += Rat(slopes_[seg]) * (x - pos);
    } else {
        while (seg > 0 && breakpoints_[seg - 1] > x) {
            value += Rat(slopes_[seg]) * (breakpoints_[seg - 1] - pos);
            pos = breakpoints_[seg - 1];
            --seg;
        }
        value += Rat(slopes_[seg]) * (x - pos);
    }
    return value;
}

std::vector<Rat> Pwl::breakpoint_values() const {
    std::vector<Rat> values;
    if (breakpoints_.empty()) {
        return values;
    }
    values.reserve(breakpoints_.size());
    values.push_back(value_at(breakpoints_[0]));
    for (size_t i = 1; i < breakpoints_.size(); ++i) {
        values.push_back(values.back() +
                         Rat(slopes_[i]) * (breakpoints_[i] - breakpoints_[i - 1]));
    }
    return values;
}

FeasibleSet Pwl::leq_zero_set() const {
    if (breakpoints_.empty()) {
        long s = slopes_[0];
        if (s == 0) {
            return value0_ <= 0 ? FeasibleSet::all() : FeasibleSet::empty();
        }
        Rat root = -value0_ / Rat(s);
        return s > 0 ? FeasibleSet::at_most(root) : FeasibleSet::at_least(root);
    }

    const std::vector<Rat> v = breakpoint_values();
    const size_t m = breakpoints_.size();
    const long s_first = slopes_.front();
    const long s_last = slopes_.back();

    if (s_first > 0) {
        // Strictly increasing: the sub-zero set is a left ray.
        Rat root;
        if (v[0] > 0) {
            root = breakpoints_[0] - v[0] / Rat(s_first);
        } else {
            size_t i = m - 1;
            while (v[i] > 0) {
                --i;
            }
            root = i == m - 1 ? breakpoints_[i] - v[i] / Rat(s_last)
                              : breakpoints_[i] - v[i] / Rat(slopes_[i + 1]);
        }
        return FeasibleSet::at_most(root);
    }
    if (s_last < 0) {
        // Strictly decreasing: a right ray.
        Rat root;
        if (v[m - 1] > 0) {
            root = breakpoints_[m - 1] - v[m - 1] / Rat(s_last);
        } else {
            size_t i = 0;
            while (v[i] > 0) {
                ++i;
            }
            root = i == 0 ? breakpoints_[0] - v[0] / Rat(s_first)
                          : breakpoints_[i] - v[i] / Rat(slopes_[i]);
        }
        return FeasibleSet::at_least(root);
    }

    // Finite minimum, attained at a breakpoint.
    Rat min_value = v[0];
    for (const Rat& value : v) {
        if (value < min_value) {
            min_value = value;
        }
    }
    if (min_value > 0) {
        return FeasibleSet::empty();
    }

    std::optional<Rat> lo;
    if (s_first < 0) {
        if (v[0] <= 0) {
            lo = breakpoints_[0] - v[0] / Rat(s_first);
        } else {
            size_t i = 0;
            while (v[i] > 0) {
                ++i;
            }
            lo = breakpoints_[i] - v[i] / Rat(slopes_[i]);
        }
    }
    std::optional<Rat> hi;
    if (s_last > 0) {
        if (v[m - 1] <= 0) {
            hi = breakpoints_[m - 1] - v[m - 1] / Rat(s_last);
        } else {
            size_t i = m - 1;
            while (v[i] > 0) {
                --i;
            }
            hi = breakpoints_[i] - v[i] / Rat(slopes_[i + 1]);
        }
    }
    return FeasibleSet::interval(std::move(lo), std::move(hi));
}

std::string Pwl::str() const {
    std::ostringstream os;
    os << "pwl{f(0)=" << rat_str(value0_) << ", slopes[";
    for (size_t i = 0; i < slopes_.size(); ++i) {
        os << slopes_[i] << (i + 1 < slopes_.size() ? " " : "");
    }
    os << "], bps[";
    for (size_t i = 0; i < breakpoints_.size(); ++i) {
        os << rat_str(breakpoints_[i]) << (i + 1 < breakpoints_.size() ? " " : "");
    }
    os << "]}";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Pwl& f) {
    return os << f.str();
}

} // namespace maxplus
