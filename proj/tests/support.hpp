#pragma once

// Shared fixtures and independent oracles for the test suites.  The fig1
// fixtures pin the documented three-transition example model; the brute
// helpers deliberately re-derive results by enumeration so library
// algorithms are checked against an unrelated computation path.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "maxplus/model_io.hpp"
#include "maxplus/ncp.hpp"
#include "maxplus/precgraph.hpp"
#include "maxplus/pteg.hpp"

namespace testsupport {

using maxplus::Circuit;
using maxplus::ExtScalar;
using maxplus::MpMatrix;
using maxplus::Rat;

inline ExtScalar cell(const std::string& text) {
    if (text == "-inf") {
        return ExtScalar::bottom();
    }
    if (text == "inf") {
        return ExtScalar::top();
    }
    return ExtScalar(maxplus::parse_rational(text));
}

inline MpMatrix mp(const std::vector<std::vector<std::string>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    MpMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < c; ++j) {
            m(i, j) = cell(rows[i][j]);
        }
    }
    return m;
}

inline Rat rat(const std::string& text) {
    return maxplus::parse_rational(text);
}

// --- The documented example model (three transitions, six places). ---

inline maxplus::EventGraphSpec fig1_spec() {
    maxplus::EventGraphSpec spec;
    spec.transitions = {"t1", "t2", "t3"};
    spec.places = {
        {0, 1, 0, rat("2"), rat("3")},     {1, 0, 1, rat("0"), std::nullopt},
        {1, 2, 0, rat("1/2"), std::nullopt}, {2, 1, 1, rat("1/2"), std::nullopt},
        {0, 2, 0, rat("6"), std::nullopt},   {2, 2, 1, rat("0"), rat("4")},
    };
    return spec;
}

inline MpMatrix fig1_a0() {
    return mp({{"-inf", "-inf", "-inf"}, {"2", "-inf", "-inf"}, {"6", "1/2", "-inf"}});
}

inline MpMatrix fig1_a1() {
    return mp({{"-inf", "0", "-inf"}, {"-inf", "-inf", "1/2"}, {"-inf", "-inf", "0"}});
}

inline MpMatrix fig1_b0() {
    return mp({{"inf", "inf", "inf"}, {"3", "inf", "inf"}, {"inf", "inf", "inf"}});
}

inline MpMatrix fig1_b1() {
    return mp({{"inf", "inf", "inf"}, {"inf", "inf", "inf"}, {"inf", "inf", "4"}});
}

inline maxplus::Pteg fig1_pteg() {
    maxplus::Pteg g;
    g.n = 3;
    g.a0 = fig1_a0();
    g.a1 = fig1_a1();
    g.b0 = fig1_b0();
    g.b1 = fig1_b1();
    return g;
}

inline MpMatrix fig1_p() {
    return mp({{"-inf", "-inf", "-inf"}, {"-inf", "-inf", "-inf"}, {"-inf", "-inf", "-4"}});
}

inline MpMatrix fig1_i() {
    return mp({{"0", "0", "-inf"}, {"-inf", "0", "1/2"}, {"-inf", "-inf", "0"}});
}

inline MpMatrix fig1_c() {
    return mp({{"-inf", "-3", "-inf"}, {"2", "-inf", "-inf"}, {"6", "1/2", "-inf"}});
}

inline maxplus::PicTriple fig1_pic() {
    return maxplus::PicTriple(fig1_p(), fig1_i(), fig1_c());
}

/// Star of the d=2, lambda=4 stacked system, entry for entry.
inline MpMatrix fig1_star6() {
    return mp({
        {"0", "-3", "-13/2", "-9/2", "-15/2", "-21/2"},
        {"5/2", "0", "-7/2", "-3/2", "-9/2", "-15/2"},
        {"6", "3", "0", "2", "-1", "-4"},
        {"7/2", "1/2", "-5/2", "0", "-3", "-13/2"},
        {"13/2", "7/2", "1/2", "5/2", "0", "-7/2"},
        {"10", "7", "4", "6", "3", "0"},
    });
}

inline maxplus::FeasibleSet fig1_period_set() {
    return maxplus::FeasibleSet::interval(rat("7/2"), rat("4"));
}

// --- Deterministic random generation. ---

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    long uniform(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(engine_);
    }

    bool chance(int percent) { return uniform(0, 99) < percent; }

    Rat rational(long max_abs_num, long max_den) {
        long den = uniform(1, max_den);
        long num = uniform(-max_abs_num, max_abs_num);
        return Rat(num) / Rat(den);
    }

    Rat nonneg_rational(long max_num, long max_den) {
        long den = uniform(1, max_den);
        long num = uniform(0, max_num);
        return Rat(num) / Rat(den);
    }

    /// R_max matrix with roughly density% finite entries.
    MpMatrix rmax_matrix(int n, int density_percent, long max_abs_num = 10, long max_den = 4) {
        MpMatrix m(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (chance(density_percent)) {
                    m(i, j) = ExtScalar(rational(max_abs_num, max_den));
                }
            }
        }
        return m;
    }

    std::vector<Rat> finite_vector(int n, long max_abs_num = 10, long max_den = 4) {
        std::vector<Rat> out;
        out.reserve(n);
        for (int k = 0; k < n; ++k) {
            out.push_back(rational(max_abs_num, max_den));
        }
        return out;
    }

    maxplus::PicTriple pic_triple(int n, int density_percent = 30) {
        return maxplus::PicTriple(rmax_matrix(n, density_percent),
                                  rmax_matrix(n, density_percent),
                                  rmax_matrix(n, density_percent));
    }

    /// Normalized P-TEG over n transitions with random interval places.
    maxplus::Pteg pteg(int n, int place_percent = 30, long max_num = 8, long max_den = 4) {
        maxplus::EventGraphSpec spec;
        for (int k = 0; k < n; ++k) {
            spec.transitions.push_back("t" + std::to_string(k + 1));
        }
        for (long marking = 0; marking <= 1; ++marking) {
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    if (!chance(place_percent)) {
                        continue;
                    }
                    Rat lo = rng_bound(max_num, max_den);
                    std::optional<Rat> hi;
                    if (chance(60)) {
                        hi = lo + rng_bound(max_num, max_den);
                    }
                    spec.places.push_back(maxplus::PlaceSpec{j, i, marking, lo, hi});
                }
            }
        }
        return maxplus::dynamics_matrices(spec);
    }

    /// Raw spec with markings up to max_marking (for normalization tests).
    maxplus::EventGraphSpec raw_spec(int n, int max_marking, int place_percent = 35,
                                     long max_num = 6, long max_den = 4) {
        maxplus::EventGraphSpec spec;
        for (int k = 0; k < n; ++k) {
            spec.transitions.push_back("t" + std::to_string(k + 1));
        }
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (!chance(place_percent)) {
                    continue;
                }
                long marking = uniform(0, max_marking);
                Rat lo = rng_bound(max_num, max_den);
                std::optional<Rat> hi;
                if (chance(60)) {
                    hi = lo + rng_bound(max_num, max_den);
                }
                spec.places.push_back(maxplus::PlaceSpec{j, i, marking, lo, hi});
            }
        }
        return spec;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    Rat rng_bound(long max_num, long max_den) { return nonneg_rational(max_num, max_den); }

    std::mt19937_64 engine_;
};

// --- Brute-force oracles. ---

/// Max weight over all directed paths j -> i of exactly r arcs, by full
/// enumeration of node sequences.
inline ExtScalar brute_path_weight(const MpMatrix& a, int r, int j, int i) {
    const int n = a.rows();
    std::vector<int> seq(r + 1);
    ExtScalar best = ExtScalar::bottom();
    std::function<void(int)> rec = [&](int pos) {
        if (pos == r + 1) {
            if (seq[0] != j || seq[r] != i) {
                return;
            }
            ExtScalar w(Rat(0));
            for (int k = 0; k < r; ++k) {
                w = otimes(w, a(seq[k + 1], seq[k]));
            }
            best = oplus(best, w);
            return;
        }
        for (int v = 0; v < n; ++v) {
            seq[pos] = v;
            rec(pos + 1);
        }
    };
    rec(0);
    return best;
}

/// All elementary circuits by plain DFS from each minimal start node,
/// independent of the Johnson-style search in the library.
inline std::vector<std::vector<int>> brute_elementary_circuits(
    int n, const std::vector<std::vector<int>>& successors) {
    std::vector<std::vector<int>> out;
    std::vector<int> path;
    std::vector<bool> on_path(n, false);
    std::function<void(int, int)> rec = [&](int start, int v) {
        path.push_back(v);
        on_path[v] = true;
        for (int w : successors[v]) {
            if (w == start) {
                out.push_back(path);
            } else if (w > start && !on_path[w]) {
                rec(start, w);
            }
        }
        on_path[v] = false;
        path.pop_back();
    };
    for (int s = 0; s < n; ++s) {
        rec(s, s);
    }
    return out;
}

/// True iff some elementary circuit has strictly positive weight
/// (exhaustive; usable for small n only).
inline bool brute_has_positive_circuit(const MpMatrix& a) {
    maxplus::PrecGraph g = maxplus::PrecGraph::from_matrix(a);
    for (const auto& nodes : brute_elementary_circuits(g.node_count(), g.successors())) {
        if (maxplus::circuit_weight(g, Circuit{nodes}) > 0) {
            return true;
        }
    }
    return false;
}

} // namespace testsupport
