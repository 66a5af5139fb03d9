#include "maxplus/detail/positive_circuit.hpp"

#include <algorithm>

#include "maxplus/errors.hpp"

namespace maxplus::detail {

namespace {

struct ScaledArc {
    int from;
    int to;
    Int weight; // original weight times the common denominator
};

std::vector<int> rotate_smallest_first(std::vector<int> nodes) {
    auto smallest = std::min_element(nodes.begin(), nodes.end());
    std::rotate(nodes.begin(), smallest, nodes.end());
    return nodes;
}

// Splices non-positive cycles out of a closed-or-open walk until a positive
// elementary circuit is found.  The walk must have positive total weight and
// more nodes than the graph has, which guarantees success: removing cycles
// of weight <= 0 never decreases the remaining weight, and a simple path
// cannot account for a positive surplus over all shorter walks.
std::optional<std::vector<int>> extract_positive_cycle(
    const std::vector<int>& walk, const std::vector<std::vector<const ScaledArc*>>& arc_at) {
    std::vector<int> nodes = walk;
    while (true) {
        std::vector<int> seen_at(arc_at.size(), -1);
        int first = -1;
        int last = -1;
        for (int pos = 0; pos < static_cast<int>(nodes.size()); ++pos) {
            int v = nodes[pos];
            if (seen_at[v] >= 0) {
                first = seen_at[v];
                last = pos;
                break;
            }
            seen_at[v] = pos;
        }
        if (first < 0) {
            return std::nullopt; // walk became simple: no cycle left
        }
        Int weight = 0;
        for (int pos = first; pos < last; ++pos) {
            weight += arc_at[nodes[pos]][nodes[pos + 1]]->weight;
        }
        if (weight > 0) {
            return std::vector<int>(nodes.begin() + first, nodes.begin() + last);
        }
        nodes.erase(nodes.begin() + first, nodes.begin() + last);
    }
}

} // namespace

std::optional<WitnessCircuit> positive_circuit(const MpMatrix& a) {
    if (!a.is_square()) {
        throw DimensionError("positive_circuit: matrix must be square");
    }
    const int n = a.rows();
    if (n == 0) {
        return std::nullopt;
    }

    // Scale all weights by the lcm of their denominators so the relaxation
    // runs over integers.
    Int common_den = 1;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const ExtScalar& e = a(i, j);
            if (e.is_top()) {
                throw DomainError("positive_circuit: +inf entry not allowed");
            }
            if (e.is_finite()) {
                mpz_lcm(common_den.get_mpz_t(), common_den.get_mpz_t(),
                        e.finite().get_den_mpz_t());
            }
        }
    }
    std::vector<ScaledArc> arcs;
    std::vector<std::vector<const ScaledArc*>> arc_at(n, std::vector<const ScaledArc*>(n, nullptr));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const ExtScalar& e = a(i, j);
            if (e.is_finite()) {
                Int w = e.finite().get_num() * (common_den / e.finite().get_den());
                arcs.push_back(ScaledArc{j, i, w});
            }
        }
    }
    if (arcs.empty()) {
        return std::nullopt;
    }
    for (const ScaledArc& arc : arcs) {
        arc_at[arc.from][arc.to] = &arc;
    }

    // Synchronous rounds: dist_r[v] = best weight over walks of length <= r
    // ending at v, starting anywhere (zero initialisation).  If round n still
    // improves some node, a walk of length n beats every shorter one, which
    // is only possible through a positive circuit.
    std::vector<Int> dist(n, Int(0));
    std::vector<std::vector<int>> pred(1, std::vector<int>(n, -1));
    int improved_node = -1;
    int rounds = 0;
    for (int round = 1; round <= n; ++round) {
        std::vector<Int> next = dist;
        std::vector<int> round_pred(n, -1);
        bool changed = false;
        for (const ScaledArc& arc : arcs) {
            Int candidate = dist[arc.from] + arc.weight;
            if (candidate > next[arc.to]) {
                next[arc.to] = candidate;
                round_pred[arc.to] = arc.from;
                changed = true;
            }
        }
        pred.push_back(std::move(round_pred));
        dist = std::move(next);
        rounds = round;
        if (!changed) {
            return std::nullopt; // stabilised: every circuit has weight <= 0
        }
    }
    for (int v = 0; v < n && improved_node < 0; ++v) {
        if (pred[rounds][v] >= 0) {
            improved_node = v;
        }
    }
    if (improved_node < 0) {
        throw Error("positive_circuit: inconsistent relaxation state");
    }

    // Reconstruct the improving walk backwards through the per-round
    // predecessors, then carve a positive elementary circuit out of it.
    std::vector<int> walk;
    int cur = improved_node;
    walk.push_back(cur);
    for (int round = rounds; round >= 1; --round) {
        if (pred[round][cur] >= 0) {
            cur = pred[round][cur];
            walk.push_back(cur);
        }
    }
    std::reverse(walk.begin(), walk.end());
    std::optional<std::vector<int>> cycle = extract_positive_cycle(walk, arc_at);
    if (!cycle) {
        throw Error("positive_circuit: internal extraction failure");
    }

    std::vector<int> nodes = rotate_smallest_first(*cycle);
    Rat weight = 0;
    for (size_t k = 0; k < nodes.size(); ++k) {
        int from = nodes[k];
        int to = nodes[(k + 1) % nodes.size()];
        weight += a(to, from).finite();
    }
    if (weight <= 0) {
        throw Error("positive_circuit: extracted witness is not positive");
    }
    return WitnessCircuit{std::move(nodes), std::move(weight)};
}

} // namespace maxplus::detail
