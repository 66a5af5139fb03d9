#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "maxplus/matrix.hpp"
#include "maxplus/pwl.hpp"

namespace maxplus {

/// An elementary circuit as a cyclic node sequence (0-based, the closing
/// arc back to the first node is implicit).  Canonical rotation puts the
/// smallest node first.
struct Circuit {
    std::vector<int> nodes;

    static Circuit canonical(std::vector<int> nodes);

    int length() const { return static_cast<int>(nodes.size()); }
    bool operator==(const Circuit& other) const = default;

    /// "1 -> 2 -> 1" with 1-based node labels.
    std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const Circuit& c);

/// Precedence graph of an R_max matrix: one arc (j -> i) of weight A_ij
/// per finite entry.
class PrecGraph {
public:
    struct Arc {
        int from;
        int to;
        Rat weight;
    };

    /// Throws DimensionError for non-square input, DomainError on +inf.
    static PrecGraph from_matrix(const MpMatrix& a);

    int node_count() const { return n_; }
    int arc_count() const { return static_cast<int>(arcs_.size()); }
    const std::vector<Arc>& arcs() const { return arcs_; }
    std::optional<Rat> arc_weight(int from, int to) const;
    const std::vector<std::vector<int>>& successors() const { return successors_; }

    /// One digraph block; nodes in index order, arcs in (from, to)
    /// lexicographic order, numeric labels.
    std::string to_dot() const;

private:
    int n_ = 0;
    std::vector<Arc> arcs_;
    std::vector<int> arc_index_; // n*n lookup, -1 when absent
    std::vector<std::vector<int>> successors_;
};

/// Sum of arc weights along the circuit; throws NotACircuitError when some
/// consecutive pair is not an arc (or the circuit is empty).
Rat circuit_weight(const PrecGraph& g, const Circuit& c);

/// A witness circuit of strictly positive weight, or nullopt when the graph
/// is in Gamma.  Deterministic for fixed input.
std::optional<Circuit> detect_positive_circuit(const MpMatrix& a);

/// True iff the precedence graph of A contains no positive-weight circuit.
bool in_gamma(const MpMatrix& a);

/// Visits every elementary circuit exactly once (canonical rotation,
/// deterministic order: Johnson-style blocked search from each start node
/// in increasing order).
void for_each_elementary_circuit(int node_count, const std::vector<std::vector<int>>& successors,
                                 const std::function<void(const Circuit&)>& visit);

std::vector<Circuit> elementary_circuits(const PrecGraph& g);

/// Parametric arc weight max(p + lambda, i - lambda, c); absent terms are
/// bottom, and at least one term is finite for the arc to exist.
struct ParamArcWeight {
    ExtScalar p;
    ExtScalar i;
    ExtScalar c;

    bool exists() const { return p.is_finite() || i.is_finite() || c.is_finite(); }
    Rat eval(const Rat& lambda) const;
    Pwl envelope() const;
    /// Fig-2 style label: "max(-4+λ, -λ)", "0.5-λ", "2".
    std::string label() const;
};

/// Parametric precedence graph of a PIC triple: arc (j -> i) exists iff
/// any of P_ij, I_ij, C_ij is finite.
class ParamGraph {
public:
    struct Arc {
        int from;
        int to;
        ParamArcWeight weight;
    };

    static ParamGraph from_pic(const MpMatrix& p, const MpMatrix& i, const MpMatrix& c);

    int node_count() const { return n_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const ParamArcWeight* arc_weight(int from, int to) const;
    const std::vector<std::vector<int>>& successors() const { return successors_; }

    /// Parametric DOT export with textual envelope labels.
    std::string to_dot() const;

private:
    int n_ = 0;
    std::vector<Arc> arcs_;
    std::vector<int> arc_index_;
    std::vector<std::vector<int>> successors_;
};

std::vector<Circuit> elementary_circuits(const ParamGraph& g);

/// A(lambda) = lambda P (+) lambda^-1 I (+) C, elementwise
/// max(P + lambda, I - lambda, C).
MpMatrix eval_pic(const MpMatrix& p, const MpMatrix& i, const MpMatrix& c, const Rat& lambda);

/// Exact convex piecewise-linear weight of a circuit of the parametric
/// graph as a function of lambda.  Throws MissingArcError when the circuit
/// uses a non-existent arc.
Pwl circuit_pwl(const Circuit& circuit, const MpMatrix& p, const MpMatrix& i, const MpMatrix& c);

} // namespace maxplus
