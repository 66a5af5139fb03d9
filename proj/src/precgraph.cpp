#include "maxplus/precgraph.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "maxplus/detail/positive_circuit.hpp"
#include "maxplus/errors.hpp"

namespace maxplus {

namespace {

void require_square_no_top(const MpMatrix& a, const char* op) {
    if (!a.is_square()) {
        throw DimensionError(std::string(op) + ": matrix must be square");
    }
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_top()) {
                throw DomainError(std::string(op) + ": +inf entry at (" + std::to_string(i + 1) +
                                  "," + std::to_string(j + 1) + ")");
            }
        }
    }
}

template <typename Arc>
std::string dot_of_arcs(int n, std::vector<Arc> arcs,
                        const std::function<std::string(const Arc&)>& label) {
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    std::ostringstream os;
    os << "digraph precedence {\n";
    for (int v = 1; v <= n; ++v) {
        os << "  " << v << ";\n";
    }
    for (const Arc& arc : arcs) {
        os << "  " << arc.from + 1 << " -> " << arc.to + 1 << " [label=\"" << label(arc)
           << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace

Circuit Circuit::canonical(std::vector<int> nodes) {
    if (nodes.empty()) {
        throw NotACircuitError("circuit must have at least one node");
    }
    auto smallest = std::min_element(nodes.begin(), nodes.end());
    std::rotate(nodes.begin(), smallest, nodes.end());
    return Circuit{std::move(nodes)};
}

std::string Circuit::str() const {
    std::ostringstream os;
    for (int v : nodes) {
        os << v + 1 << " -> ";
    }
    os << (nodes.empty() ? 0 : nodes.front() + 1);
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Circuit& c) {
    return os << c.str();
}

PrecGraph PrecGraph::from_matrix(const MpMatrix& a) {
    require_square_no_top(a, "precedence graph");
    PrecGraph g;
    g.n_ = a.rows();
    g.arc_index_.assign(static_cast<size_t>(g.n_) * g.n_, -1);
    g.successors_.assign(g.n_, {});
    for (int i = 0; i < g.n_; ++i) {
        for (int j = 0; j < g.n_; ++j) {
            if (a(i, j).is_finite()) {
                g.arc_index_[static_cast<size_t>(j) * g.n_ + i] =
                    static_cast<int>(g.arcs_.size());
                g.arcs_.push_back(Arc{j, i, a(i, j).finite()});
                g.successors_[j].push_back(i);
            }
        }
    }
    for (auto& succ : g.successors_) {
        std::sort(succ.begin(), succ.end());
    }
    return g;
}

std::optional<Rat> PrecGraph::arc_weight(int from, int to) const {
    int idx = arc_index_[static_cast<size_t>(from) * n_ + to];
    if (idx < 0) {
        return std::nullopt;
    }
    return arcs_[idx].weight;
}

std::string PrecGraph::to_dot() const {
    return dot_of_arcs<Arc>(n_, arcs_,
                            [](const Arc& arc) { return decimal_str(arc.weight); });
}

Rat circuit_weight(const PrecGraph& g, const Circuit& c) {
    if (c.nodes.empty()) {
        throw NotACircuitError("empty circuit");
    }
    Rat total = 0;
    for (size_t k = 0; k < c.nodes.size(); ++k) {
        int from = c.nodes[k];
        int to = c.nodes[(k + 1) % c.nodes.size()];
        std::optional<Rat> w = g.arc_weight(from, to);
        if (!w) {
            throw NotACircuitError("no arc " + std::to_string(from + 1) + " -> " +
                                   std::to_string(to + 1));
        }
        total += *w;
    }
    return total;
}

std::optional<Circuit> detect_positive_circuit(const MpMatrix& a) {
    require_square_no_top(a, "detect_positive_circuit");
    auto witness = detail::positive_circuit(a);
    if (!witness) {
        return std::nullopt;
    }
    return Circuit::canonical(std::move(witness->nodes));
}

bool in_gamma(const MpMatrix& a) {
    return !detect_positive_circuit(a).has_value();
}

namespace {

// Johnson-style elementary circuit search rooted at the smallest node of
// each circuit: from start s we explore only nodes >= s, with the usual
// blocked set and unblock lists.
class CircuitSearch {
public:
    CircuitSearch(int n, const std::vector<std::vector<int>>& successors,
                  const std::function<void(const Circuit&)>& visit)
        : n_(n), successors_(successors), visit_(visit) {}

    void run() {
        for (start_ = 0; start_ < n_; ++start_) {
            blocked_.assign(n_, false);
            block_list_.assign(n_, {});
            stack_.clear();
            explore(start_);
        }
    }

private:
    bool explore(int v) {
        bool found = false;
        stack_.push_back(v);
        blocked_[v] = true;
        for (int w : successors_[v]) {
            if (w < start_) {
                continue;
            }
            if (w == start_) {
                visit_(Circuit{stack_});
                found = true;
            } else if (!blocked_[w]) {
                if (explore(w)) {
                    found = true;
                }
            }
        }
        if (found) {
            unblock(v);
        } else {
            for (int w : successors_[v]) {
                if (w < start_) {
                    continue;
                }
                auto& lst = block_list_[w];
                if (std::find(lst.begin(), lst.end(), v) == lst.end()) {
                    lst.push_back(v);
                }
            }
        }
        stack_.pop_back();
        return found;
    }

    void unblock(int v) {
        blocked_[v] = false;
        std::vector<int> pending = std::move(block_list_[v]);
        block_list_[v].clear();
        for (int w : pending) {
            if (blocked_[w]) {
                unblock(w);
            }
        }
    }

    int n_;
    const std::vector<std::vector<int>>& successors_;
    const std::function<void(const Circuit&)>& visit_;
    int start_ = 0;
    std::vector<bool> blocked_;
    std::vector<std::vector<int>> block_list_;
    std::vector<int> stack_;
};

} // namespace

void for_each_elementary_circuit(int node_count, const std::vector<std::vector<int>>& successors,
                                 const std::function<void(const Circuit&)>& visit) {
    CircuitSearch(node_count, successors, visit).run();
}

std::vector<Circuit> elementary_circuits(const PrecGraph& g) {
    std::vector<Circuit> out;
    for_each_elementary_circuit(g.node_count(), g.successors(),
                                [&](const Circuit& c) { out.push_back(c); });
    return out;
}

Rat ParamArcWeight::eval(const Rat& lambda) const {
    std::optional<Rat> best;
    if (p.is_finite()) {
        best = p.finite() + lambda;
    }
    if (i.is_finite()) {
        Rat candidate = i.finite() - lambda;
        if (!best || candidate > *best) {
            best = candidate;
        }
    }
    if (c.is_finite()) {
        if (!best || c.finite() > *best) {
            best = c.finite();
        }
    }
    if (!best) {
        throw MissingArcError("parametric arc with no finite term");
    }
    return *best;
}

Pwl ParamArcWeight::envelope() const {
    std::vector<Pwl::Line> lines;
    if (p.is_finite()) {
        lines.push_back(Pwl::Line{1, p.finite()});
    }
    if (i.is_finite()) {
        lines.push_back(Pwl::Line{-1, i.finite()});
    }
    if (c.is_finite()) {
        lines.push_back(Pwl::Line{0, c.finite()});
    }
    if (lines.empty()) {
        throw MissingArcError("parametric arc with no finite term");
    }
    return Pwl::upper_envelope(std::move(lines));
}

std::string ParamArcWeight::label() const {
    std::vector<std::string> terms;
    if (p.is_finite()) {
        terms.push_back(p.finite() == 0 ? "λ" : decimal_str(p.finite()) + "+λ");
    }
    if (i.is_finite()) {
        terms.push_back(i.finite() == 0 ? "-λ" : decimal_str(i.finite()) + "-λ");
    }
    if (c.is_finite()) {
        terms.push_back(decimal_str(c.finite()));
    }
    if (terms.empty()) {
        throw MissingArcError("parametric arc with no finite term");
    }
    if (terms.size() == 1) {
        return terms.front();
    }
    std::string out = "max(";
    for (size_t k = 0; k < terms.size(); ++k) {
        out += terms[k];
        out += k + 1 < terms.size() ? ", " : ")";
    }
    return out;
}

ParamGraph ParamGraph::from_pic(const MpMatrix& p, const MpMatrix& i, const MpMatrix& c) {
    if (p.rows() != i.rows() || p.rows() != c.rows() || p.cols() != i.cols() ||
        p.cols() != c.cols()) {
        throw DimensionError("parametric graph: P, I, C shapes differ");
    }
    require_square_no_top(p, "parametric graph (P)");
    require_square_no_top(i, "parametric graph (I)");
    require_square_no_top(c, "parametric graph (C)");

    ParamGraph g;
    g.n_ = p.rows();
    g.arc_index_.assign(static_cast<size_t>(g.n_) * g.n_, -1);
    g.successors_.assign(g.n_, {});
    for (int row = 0; row < g.n_; ++row) {
        for (int col = 0; col < g.n_; ++col) {
            ParamArcWeight w{p(row, col), i(row, col), c(row, col)};
            if (w.exists()) {
                g.arc_index_[static_cast<size_t>(col) * g.n_ + row] =
                    static_cast<int>(g.arcs_.size());
                g.arcs_.push_back(Arc{col, row, std::move(w)});
                g.successors_[col].push_back(row);
            }
        }
    }
    for (auto& succ : g.successors_) {
        std::sort(succ.begin(), succ.end());
    }
    return g;
}

const ParamArcWeight* ParamGraph::arc_weight(int from, int to) const {
    int idx = arc_index_[static_cast<size_t>(from) * n_ + to];
    return idx < 0 ? nullptr : &arcs_[idx].weight;
}

std::string ParamGraph::to_dot() const {
    return dot_of_arcs<Arc>(n_, arcs_, [](const Arc& arc) { return arc.weight.label(); });
}

std::vector<Circuit> elementary_circuits(const ParamGraph& g) {
    std::vector<Circuit> out;
    for_each_elementary_circuit(g.node_count(), g.successors(),
                                [&](const Circuit& c) { out.push_back(c); });
    return out;
}

MpMatrix eval_pic(const MpMatrix& p, const MpMatrix& i, const MpMatrix& c, const Rat& lambda) {
    if (p.rows() != i.rows() || p.rows() != c.rows() || p.cols() != i.cols() ||
        p.cols() != c.cols()) {
        throw DimensionError("eval_pic: P, I, C shapes differ");
    }
    require_square_no_top(p, "eval_pic (P)");
    require_square_no_top(i, "eval_pic (I)");
    require_square_no_top(c, "eval_pic (C)");
    ScaledMatrix proportional{ExtScalar(lambda), p};
    ScaledMatrix inverse_term{inverse(ExtScalar(lambda)), i};
    return oplus(oplus(proportional.evaluate(), inverse_term.evaluate()), c);
}

Pwl circuit_pwl(const Circuit& circuit, const MpMatrix& p, const MpMatrix& i, const MpMatrix& c) {
    ParamGraph g = ParamGraph::from_pic(p, i, c);
    if (circuit.nodes.empty()) {
        throw MissingArcError("empty circuit");
    }
    Pwl total = Pwl::constant(Rat(0));
    for (size_t k = 0; k < circuit.nodes.size(); ++k) {
        int from = circuit.nodes[k];
        int to = circuit.nodes[(k + 1) % circuit.nodes.size()];
        const ParamArcWeight* w = g.arc_weight(from, to);
        if (!w) {
            throw MissingArcError("no parametric arc " + std::to_string(from + 1) + " -> " +
                                  std::to_string(to + 1));
        }
        total = total.plus(w->envelope());
    }
    return total;
}

} // namespace maxplus
