#include "maxplus/pteg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "maxplus/errors.hpp"

namespace maxplus {

namespace {

constexpr long kMaxNormalizedTransitions = 100000;

std::string join_diagnostics(const std::vector<Diagnostic>& diagnostics) {
    std::ostringstream os;
    for (size_t k = 0; k < diagnostics.size(); ++k) {
        if (diagnostics[k].place >= 0) {
            os << "place " << diagnostics[k].place + 1 << ": ";
        }
        os << diagnostics[k].message << (k + 1 < diagnostics.size() ? "; " : "");
    }
    return os.str();
}

std::string fresh_name(std::set<std::string>& used, long& counter) {
    while (true) {
        std::string candidate = "q" + std::to_string(counter++);
        if (used.insert(candidate).second) {
            return candidate;
        }
    }
}

} // namespace

std::vector<Diagnostic> validate_spec(const EventGraphSpec& spec) {
    std::vector<Diagnostic> out;
    const int n = spec.transition_count();

    std::set<std::string> names;
    for (const std::string& name : spec.transitions) {
        if (name.empty()) {
            out.push_back({-1, "empty transition name"});
        } else if (!names.insert(name).second) {
            out.push_back({-1, "duplicate transition name '" + name + "'"});
        }
    }

    for (int k = 0; k < static_cast<int>(spec.places.size()); ++k) {
        const PlaceSpec& p = spec.places[k];
        if (p.from < 0 || p.from >= n || p.to < 0 || p.to >= n) {
            out.push_back({k, "transition reference out of range"});
            continue;
        }
        if (p.marking < 0) {
            out.push_back({k, "negative marking"});
        }
        if (p.lower < 0) {
            out.push_back({k, "negative lower bound " + rat_str(p.lower)});
        }
        if (p.upper && *p.upper < p.lower) {
            out.push_back({k, "crossed interval [" + rat_str(p.lower) + ", " +
                                  rat_str(*p.upper) + "]"});
        }
    }

    // Duplicate places over the same (marking, from, to) merge by interval
    // intersection; an empty intersection cannot be satisfied by any token.
    std::map<std::tuple<long, int, int>, std::pair<Rat, std::optional<Rat>>> merged;
    for (int k = 0; k < static_cast<int>(spec.places.size()); ++k) {
        const PlaceSpec& p = spec.places[k];
        if (p.from < 0 || p.from >= n || p.to < 0 || p.to >= n || p.marking < 0) {
            continue;
        }
        auto key = std::make_tuple(p.marking, p.from, p.to);
        auto it = merged.find(key);
        if (it == merged.end()) {
            merged.emplace(key, std::make_pair(p.lower, p.upper));
            continue;
        }
        auto& [lo, hi] = it->second;
        if (p.lower > lo) {
            lo = p.lower;
        }
        if (p.upper && (!hi || *p.upper < *hi)) {
            hi = p.upper;
        }
        if (hi && *hi < lo) {
            out.push_back({k, "duplicate places merge to an empty interval"});
        }
    }

    long n_bar = n;
    for (const PlaceSpec& p : spec.places) {
        n_bar += std::max(0L, p.marking - 1);
    }
    if (n_bar > kMaxNormalizedTransitions) {
        out.push_back({-1, "normalization would need " + std::to_string(n_bar) + " transitions"});
    }
    return out;
}

Pteg dynamics_matrices(const EventGraphSpec& spec) {
    const int n = spec.transition_count();
    Pteg g;
    g.n = n;
    g.a0 = MpMatrix(n, n);
    g.a1 = MpMatrix(n, n);
    g.b0 = MpMatrix::all_bottom(n, n);
    g.b1 = MpMatrix::all_bottom(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            g.b0(i, j) = ExtScalar::top();
            g.b1(i, j) = ExtScalar::top();
        }
    }
    for (const PlaceSpec& p : spec.places) {
        if (p.marking != 0 && p.marking != 1) {
            throw DomainError("dynamics_matrices: marking " + std::to_string(p.marking) +
                              " (normalize first)");
        }
        MpMatrix& a = p.marking == 0 ? g.a0 : g.a1;
        MpMatrix& b = p.marking == 0 ? g.b0 : g.b1;
        ExtScalar lower(p.lower);
        ExtScalar upper = p.upper ? ExtScalar(*p.upper) : ExtScalar::top();
        a(p.to, p.from) = oplus(a(p.to, p.from), lower);
        b(p.to, p.from) = wedge(b(p.to, p.from), upper);
        if (a(p.to, p.from) > b(p.to, p.from)) {
            throw ValidationError("dynamics_matrices: empty merged interval between '" +
                                  spec.transitions[p.from] + "' and '" + spec.transitions[p.to] +
                                  "'");
        }
    }
    return g;
}

Normalization normalize(const EventGraphSpec& spec) {
    std::vector<Diagnostic> diagnostics = validate_spec(spec);
    if (!diagnostics.empty()) {
        throw ValidationError("invalid event graph: " + join_diagnostics(diagnostics));
    }

    Normalization out;
    out.spec.transitions = spec.transitions;
    out.transition_map.resize(spec.transitions.size());
    for (size_t k = 0; k < spec.transitions.size(); ++k) {
        out.transition_map[k] = static_cast<int>(k);
    }

    std::set<std::string> used(spec.transitions.begin(), spec.transitions.end());
    long counter = 1;
    for (const PlaceSpec& p : spec.places) {
        if (p.marking <= 1) {
            out.spec.places.push_back(p);
            continue;
        }
        // Chain of m single-token places; the original interval governs the
        // final hop so the accumulated sojourn over the m-step shift stays
        // exactly [lower, upper]; the fresh hops take zero time.
        int prev = p.from;
        for (long step = 1; step < p.marking; ++step) {
            out.spec.transitions.push_back(fresh_name(used, counter));
            int fresh = static_cast<int>(out.spec.transitions.size()) - 1;
            out.spec.places.push_back(PlaceSpec{prev, fresh, 1, Rat(0), Rat(0)});
            prev = fresh;
        }
        out.spec.places.push_back(PlaceSpec{prev, p.to, 1, p.lower, p.upper});
    }
    out.graph = dynamics_matrices(out.spec);
    return out;
}

PicTriple pic_reduction(const Pteg& graph) {
    return PicTriple(conjugate(graph.b1), oplus(graph.a1, MpMatrix::identity(graph.n)),
                     oplus(graph.a0, conjugate(graph.b0)));
}

TensorBlocks tensor_blocks(int d, const Rat& lambda) {
    if (d < 1) {
        throw DomainError("tensor_blocks: d must be positive");
    }
    TensorBlocks t;
    t.p = MpMatrix(d, d);
    t.i = MpMatrix(d, d);
    t.c = MpMatrix::identity(d);
    for (int r = 0; r + 1 < d; ++r) {
        t.p(r, r + 1) = ExtScalar(Rat(0));
        t.i(r + 1, r) = ExtScalar(Rat(0));
    }
    t.p(d - 1, 0) = oplus(t.p(d - 1, 0), ExtScalar(d * lambda));
    t.i(0, d - 1) = oplus(t.i(0, d - 1), ExtScalar(-d * lambda));
    return t;
}

MpMatrix tensor_system(const Pteg& graph, int d, const Rat& lambda) {
    PicTriple pic = pic_reduction(graph);
    TensorBlocks blocks = tensor_blocks(d, lambda);
    return oplus(oplus(tensor(blocks.p, pic.p), tensor(blocks.i, pic.i)),
                 tensor(blocks.c, pic.c));
}

PicTriple tensor_pic(const Pteg& graph, int d) {
    if (d < 1) {
        throw DomainError("tensor_pic: d must be positive");
    }
    PicTriple pic = pic_reduction(graph);
    MpMatrix corner_p(d, d);
    MpMatrix corner_i(d, d);
    MpMatrix shift_up(d, d);   // zero superdiagonal
    MpMatrix shift_down(d, d); // zero subdiagonal
    corner_p(d - 1, 0) = ExtScalar(Rat(0));
    corner_i(0, d - 1) = ExtScalar(Rat(0));
    for (int r = 0; r + 1 < d; ++r) {
        shift_up(r, r + 1) = ExtScalar(Rat(0));
        shift_down(r + 1, r) = ExtScalar(Rat(0));
    }
    MpMatrix constant = oplus(oplus(tensor(shift_up, pic.p), tensor(shift_down, pic.i)),
                              tensor(MpMatrix::identity(d), pic.c));
    return PicTriple(tensor(corner_p, pic.p), tensor(corner_i, pic.i), std::move(constant));
}

FeasibleSet period_set(const Pteg& graph, int d, PeriodMode mode, SolverKind solver,
                       int exact_cap) {
    if (d < 1) {
        throw DomainError("period_set: d must be positive");
    }
    PicTriple triple =
        mode == PeriodMode::theorem2 ? pic_reduction(graph) : tensor_pic(graph, d);
    FeasibleSet solved =
        solver == SolverKind::fast ? solve_fast(triple) : solve_exact(triple, exact_cap);
    if (mode == PeriodMode::tensor) {
        solved = solved.scale_down(d);
    }
    // lambda >= 0 holds automatically (I dominates the identity), but the
    // admissible-period set is defined within the non-negative reals.
    return solved.intersect(FeasibleSet::interval(Rat(0), std::nullopt));
}

bool bounded_consistency(const Pteg& graph) {
    return !period_set(graph, 1).is_empty();
}

Trajectory::Trajectory(int d, Rat lambda, std::vector<std::vector<Rat>> seeds)
    : d_(d), lambda_(std::move(lambda)), seeds_(std::move(seeds)) {
    if (d_ < 1) {
        throw DomainError("trajectory: d must be positive");
    }
    if (lambda_ < 0) {
        throw DomainError("trajectory: period must be non-negative");
    }
    if (static_cast<int>(seeds_.size()) != d_) {
        throw DimensionError("trajectory: expected " + std::to_string(d_) + " seed vectors");
    }
    for (const auto& seed : seeds_) {
        if (seed.size() != seeds_[0].size()) {
            throw DimensionError("trajectory: seed vectors of unequal length");
        }
    }
}

std::vector<Rat> Trajectory::at(long k) const {
    if (k < 0) {
        throw DomainError("trajectory: negative firing index");
    }
    long cycles = k / d_;
    Rat shift = Rat(cycles) * d_ * lambda_;
    std::vector<Rat> out = seeds_[static_cast<size_t>(k % d_)];
    for (Rat& value : out) {
        value += shift;
    }
    return out;
}

Trajectory synthesize(const Pteg& graph, int d, const Rat& lambda, const std::vector<Rat>& u) {
    if (d < 1) {
        throw DomainError("synthesize: d must be positive");
    }
    if (static_cast<int>(u.size()) != d * graph.n) {
        throw DimensionError("synthesize: u must have " + std::to_string(d * graph.n) +
                             " entries");
    }
    SolutionSpace space(tensor_system(graph, d, lambda));
    std::vector<Rat> stacked = space.map(u);
    std::vector<std::vector<Rat>> seeds(d);
    for (int b = 0; b < d; ++b) {
        seeds[b].assign(stacked.begin() + static_cast<long>(b) * graph.n,
                        stacked.begin() + static_cast<long>(b + 1) * graph.n);
    }
    return Trajectory(d, lambda, std::move(seeds));
}

TrajectoryReport validate_trajectory(const Pteg& graph, const Trajectory& t, long horizon) {
    if (t.dimension() != graph.n) {
        throw DimensionError("validate_trajectory: trajectory dimension " +
                             std::to_string(t.dimension()) + " does not match " +
                             std::to_string(graph.n) + " transitions");
    }
    TrajectoryReport report;
    std::vector<Rat> current = t.at(0);
    for (long k = 0; k <= horizon; ++k) {
        std::vector<Rat> next = t.at(k + 1);
        for (int i = 0; i < graph.n; ++i) {
            for (int j = 0; j < graph.n; ++j) {
                if (graph.a0(i, j).is_finite() &&
                    graph.a0(i, j).finite() + current[j] > current[i]) {
                    report.violations.push_back({k, "A0", i, j});
                }
                if (graph.b0(i, j).is_finite() &&
                    current[i] > graph.b0(i, j).finite() + current[j]) {
                    report.violations.push_back({k, "B0", i, j});
                }
                if (graph.a1(i, j).is_finite() &&
                    graph.a1(i, j).finite() + current[j] > next[i]) {
                    report.violations.push_back({k, "A1", i, j});
                }
                if (graph.b1(i, j).is_finite() &&
                    next[i] > graph.b1(i, j).finite() + current[j]) {
                    report.violations.push_back({k, "B1", i, j});
                }
            }
            if (next[i] < current[i]) {
                report.violations.push_back({k, "nondecreasing", i, i});
            }
        }
        current = std::move(next);
    }
    return report;
}

bool oracle_1periodic(const EventGraphSpec& spec, const Rat& lambda) {
    std::vector<Diagnostic> diagnostics = validate_spec(spec);
    if (!diagnostics.empty()) {
        throw ValidationError("invalid event graph: " + join_diagnostics(diagnostics));
    }
    // A 1-periodic dater x(k) = x + k*lambda is non-decreasing only for
    // non-negative periods.
    if (lambda < 0) {
        return false;
    }
    const int n = spec.transition_count();

    // Difference constraints x_b - x_a <= w become arcs a -> b; the system
    // is feasible iff the arc graph has no negative cycle.  Self-contained
    // shortest-path relaxation, independent of the max-plus reduction.
    struct Edge {
        int from;
        int to;
        Rat weight;
    };
    std::vector<Edge> edges;
    for (const PlaceSpec& p : spec.places) {
        Rat shift = Rat(p.marking) * lambda;
        edges.push_back({p.to, p.from, shift - p.lower});
        if (p.upper) {
            edges.push_back({p.from, p.to, *p.upper - shift});
        }
    }

    std::vector<Rat> dist(n, Rat(0));
    for (int round = 1; round <= n; ++round) {
        bool changed = false;
        std::vector<Rat> next = dist;
        for (const Edge& e : edges) {
            Rat candidate = dist[e.from] + e.weight;
            if (candidate < next[e.to]) {
                next[e.to] = candidate;
                changed = true;
            }
        }
        dist = std::move(next);
        if (!changed) {
            return true;
        }
    }
    return false;
}

} // namespace maxplus
