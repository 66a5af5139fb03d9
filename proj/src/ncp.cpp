#include "maxplus/ncp.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "maxplus/detail/positive_circuit.hpp"
#include "maxplus/errors.hpp"

namespace maxplus {

namespace {

void require_rmax_square(const MpMatrix& m, const char* name) {
    if (!m.is_square()) {
        throw DimensionError(std::string("PicTriple: ") + name + " must be square");
    }
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (m(i, j).is_top()) {
                throw DomainError(std::string("PicTriple: +inf entry in ") + name);
            }
        }
    }
}

FeasibleSet mirror(const FeasibleSet& s) {
    if (s.is_empty()) {
        return FeasibleSet::empty();
    }
    std::optional<Rat> lo;
    std::optional<Rat> hi;
    if (!s.hi_unbounded()) {
        lo = -s.hi();
    }
    if (!s.lo_unbounded()) {
        hi = -s.lo();
    }
    return FeasibleSet::interval(std::move(lo), std::move(hi));
}

// Probe cache plus the running intersection of witness-circuit cuts.
// Every infeasible probe contributes the exact interval on which its
// witness circuit has non-positive weight; the solution set is contained
// in every such cut.
class ProbeOracle {
public:
    explicit ProbeOracle(const PicTriple& t) : t_(t) {}

    bool feasible(const Rat& lambda) {
        auto it = cache_.find(lambda);
        if (it != cache_.end()) {
            return it->second;
        }
        MpMatrix a = eval_pic(t_.p, t_.i, t_.c, lambda);
        auto witness = detail::positive_circuit(a);
        bool ok = !witness.has_value();
        if (witness) {
            Pwl weight = circuit_pwl(Circuit::canonical(witness->nodes), t_.p, t_.i, t_.c);
            cuts_ = cuts_.intersect(weight.leq_zero_set());
        }
        cache_.emplace(lambda, ok);
        return ok;
    }

    const FeasibleSet& cuts() const { return cuts_; }

private:
    const PicTriple& t_;
    std::map<Rat, bool> cache_;
    FeasibleSet cuts_ = FeasibleSet::all();
};

struct Bounds {
    bool has_arcs = false;
    Rat bmax;      // every finite endpoint lies strictly inside [-bmax, bmax]
    Int den_bound; // n * lcm of entry denominators
    Rat gap;       // 1 / (2 * den_bound^2), below the Farey gap
};

Bounds instance_bounds(const PicTriple& t) {
    Bounds b;
    Rat max_abs(0);
    Int den_lcm(1);
    const MpMatrix* parts[3] = {&t.p, &t.i, &t.c};
    for (const MpMatrix* m : parts) {
        for (int i = 0; i < m->rows(); ++i) {
            for (int j = 0; j < m->cols(); ++j) {
                const ExtScalar& e = (*m)(i, j);
                if (!e.is_finite()) {
                    continue;
                }
                b.has_arcs = true;
                Rat mag = abs(e.finite());
                if (mag > max_abs) {
                    max_abs = mag;
                }
                mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), e.finite().get_den_mpz_t());
            }
        }
    }
    b.bmax = 1 + t.size() * max_abs;
    b.den_bound = t.size() * den_lcm;
    b.gap = Rat(1) / Rat(2 * b.den_bound * b.den_bound);
    return b;
}

// Envelope crossings of individual arcs, probed first as cheap anchor
// candidates (the spec's global breakpoint list).  Heuristic only: the
// cut loop below is what guarantees a correct answer.
std::vector<Rat> anchor_candidates(const PicTriple& t, const Bounds& bounds) {
    std::vector<Rat> out;
    const int n = t.size();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const ExtScalar& p = t.p(i, j);
            const ExtScalar& in = t.i(i, j);
            const ExtScalar& c = t.c(i, j);
            if (p.is_finite() && c.is_finite()) {
                out.push_back(c.finite() - p.finite());
            }
            if (in.is_finite() && c.is_finite()) {
                out.push_back(in.finite() - c.finite());
            }
            if (in.is_finite() && p.is_finite()) {
                out.push_back((in.finite() - p.finite()) / 2);
            }
        }
    }
    out.push_back(Rat(0));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::erase_if(out, [&](const Rat& x) { return x <= -bounds.bmax || x >= bounds.bmax; });
    if (out.size() > 16) {
        std::vector<Rat> sampled;
        size_t stride = out.size() / 16 + 1;
        for (size_t k = 0; k < out.size(); k += stride) {
            sampled.push_back(out[k]);
        }
        out = std::move(sampled);
    }
    return out;
}

// Finds some feasible point, or proves the solution set empty.  Maintains
// a bracket that always contains the solution set; midpoint probes either
// hit it or shrink the bracket below half via their witness cuts.  Once
// narrower than the Farey gap the bracket holds at most one rational with
// denominator <= den_bound, and the endpoints must be such rationals, so
// one final probe decides.
std::optional<Rat> find_anchor(ProbeOracle& oracle, const PicTriple& t, const Bounds& bounds) {
    for (const Rat& candidate : anchor_candidates(t, bounds)) {
        if (oracle.feasible(candidate)) {
            return candidate;
        }
    }
    Rat lo = -bounds.bmax;
    Rat hi = bounds.bmax;
    while (true) {
        const FeasibleSet& cuts = oracle.cuts();
        if (cuts.is_empty()) {
            return std::nullopt;
        }
        if (!cuts.lo_unbounded() && cuts.lo() > lo) {
            lo = cuts.lo();
        }
        if (!cuts.hi_unbounded() && cuts.hi() < hi) {
            hi = cuts.hi();
        }
        if (lo > hi) {
            return std::nullopt;
        }
        if (hi - lo < bounds.gap) {
            Rat probe = simplest_in_interval(lo, hi);
            if (oracle.feasible(probe)) {
                return probe;
            }
            return std::nullopt;
        }
        Rat mid = (lo + hi) / 2;
        if (oracle.feasible(mid)) {
            return mid;
        }
    }
}

// Largest feasible point in transformed coordinates y = direction * lambda.
// Preconditions: anchor feasible, bmax infeasible (both in y-coordinates).
Rat search_endpoint(ProbeOracle& oracle, const Bounds& bounds, const Rat& anchor, int direction) {
    auto probe = [&](const Rat& y) { return oracle.feasible(direction < 0 ? Rat(-y) : y); };
    auto cut_bound = [&]() -> std::optional<Rat> {
        FeasibleSet cuts = direction < 0 ? mirror(oracle.cuts()) : oracle.cuts();
        if (cuts.is_empty() || cuts.hi_unbounded()) {
            return std::nullopt;
        }
        return cuts.hi();
    };

    Rat feas = anchor;
    Rat infeas = bounds.bmax;
    while (true) {
        // A witness cut bounds the endpoint directly; probing the bound
        // either closes the search exactly or refutes it with a new cut.
        if (std::optional<Rat> bound = cut_bound(); bound && *bound < infeas) {
            if (*bound <= feas) {
                return feas;
            }
            infeas = *bound;
            if (probe(*bound)) {
                return *bound;
            }
            continue;
        }
        if (infeas - feas < bounds.gap) {
            Rat snapped = simplest_in_interval(feas, infeas);
            if (snapped == feas || probe(snapped)) {
                return snapped;
            }
            throw Error("solve_fast: endpoint snap failed verification");
        }
        Rat mid = (feas + infeas) / 2;
        if (probe(mid)) {
            feas = mid;
        } else {
            infeas = mid;
        }
    }
}

FeasibleSet solve_fast_impl(const PicTriple& t) {
    if (t.size() == 0) {
        return FeasibleSet::all();
    }
    Bounds bounds = instance_bounds(t);
    if (!bounds.has_arcs) {
        return FeasibleSet::all();
    }

    ProbeOracle oracle(t);
    bool unbounded_below = oracle.feasible(-bounds.bmax);
    bool unbounded_above = oracle.feasible(bounds.bmax);
    if (unbounded_below && unbounded_above) {
        return FeasibleSet::all();
    }

    std::optional<Rat> anchor;
    if (unbounded_below) {
        anchor = -bounds.bmax;
    } else if (unbounded_above) {
        anchor = bounds.bmax;
    } else {
        anchor = find_anchor(oracle, t, bounds);
        if (!anchor) {
            return FeasibleSet::empty();
        }
    }

    std::optional<Rat> hi;
    if (!unbounded_above) {
        hi = search_endpoint(oracle, bounds, *anchor, +1);
    }
    std::optional<Rat> lo;
    if (!unbounded_below) {
        lo = -search_endpoint(oracle, bounds, Rat(-*anchor), -1);
    }

    // Post-conditions: endpoints verified feasible, denominators within
    // the derived bound, plus one interior point.
    if (lo && Rat(lo->get_den()) > Rat(bounds.den_bound)) {
        throw Error("solve_fast: lower endpoint denominator exceeds bound");
    }
    if (hi && Rat(hi->get_den()) > Rat(bounds.den_bound)) {
        throw Error("solve_fast: upper endpoint denominator exceeds bound");
    }
    if ((lo && !oracle.feasible(*lo)) || (hi && !oracle.feasible(*hi))) {
        throw Error("solve_fast: endpoint failed verification");
    }
    if (lo && hi && !oracle.feasible((*lo + *hi) / 2)) {
        throw Error("solve_fast: interior point failed verification");
    }
    return FeasibleSet::interval(std::move(lo), std::move(hi));
}

} // namespace

PicTriple::PicTriple(MpMatrix p_, MpMatrix i_, MpMatrix c_)
    : p(std::move(p_)), i(std::move(i_)), c(std::move(c_)) {
    require_rmax_square(p, "P");
    require_rmax_square(i, "I");
    require_rmax_square(c, "C");
    if (p.rows() != i.rows() || p.rows() != c.rows()) {
        throw DimensionError("PicTriple: P, I, C sizes differ");
    }
}

bool feasible_at(const PicTriple& t, const Rat& lambda) {
    MpMatrix a = eval_pic(t.p, t.i, t.c, lambda);
    return !detail::positive_circuit(a).has_value();
}

FeasibleSet solve_exact(const PicTriple& t, int max_nodes) {
    if (t.size() > max_nodes) {
        throw InstanceTooLargeError("solve_exact: " + std::to_string(t.size()) +
                                    " nodes exceed the enumeration cap " +
                                    std::to_string(max_nodes));
    }
    ParamGraph g = ParamGraph::from_pic(t.p, t.i, t.c);
    FeasibleSet out = FeasibleSet::all();
    for_each_elementary_circuit(g.node_count(), g.successors(), [&](const Circuit& circuit) {
        if (out.is_empty()) {
            return;
        }
        Pwl weight = Pwl::constant(Rat(0));
        for (size_t k = 0; k < circuit.nodes.size(); ++k) {
            int from = circuit.nodes[k];
            int to = circuit.nodes[(k + 1) % circuit.nodes.size()];
            weight = weight.plus(g.arc_weight(from, to)->envelope());
        }
        out = out.intersect(weight.leq_zero_set());
    });
    return out;
}

FeasibleSet solve_fast(const PicTriple& t) {
    return solve_fast_impl(t);
}

SolutionSpace::SolutionSpace(const MpMatrix& a) : star_(kleene_star(a)) {}

std::vector<Rat> SolutionSpace::map(const std::vector<Rat>& u) const {
    std::vector<ExtScalar> lifted;
    lifted.reserve(u.size());
    for (const Rat& value : u) {
        lifted.emplace_back(value);
    }
    std::vector<ExtScalar> product = otimes(star_, lifted);
    std::vector<Rat> out;
    out.reserve(product.size());
    for (const ExtScalar& e : product) {
        out.push_back(e.finite());
    }
    return out;
}

} // namespace maxplus
