#pragma once

#include <vector>

#include "maxplus/feasible_set.hpp"
#include "maxplus/matrix.hpp"
#include "maxplus/precgraph.hpp"

namespace maxplus {

/// The three n x n R_max matrices of a Proportional-Inverse-Constant NCP:
/// arc weights max(P_ij + lambda, I_ij - lambda, C_ij).
struct PicTriple {
    MpMatrix p;
    MpMatrix i;
    MpMatrix c;

    PicTriple(MpMatrix p_, MpMatrix i_, MpMatrix c_);

    int size() const { return p.rows(); }
};

/// True iff G(lambda P (+) lambda^-1 I (+) C) has no positive circuit.
bool feasible_at(const PicTriple& t, const Rat& lambda);

/// Exhaustive oracle: intersects, over every elementary circuit of the
/// parametric graph, the exact solution interval of its convex
/// piecewise-linear weight <= 0.  Guarded by a node cap (default 12);
/// throws InstanceTooLargeError beyond it.
FeasibleSet solve_exact(const PicTriple& t, int max_nodes = 12);

/// Polynomial-time certified solver; returns exactly solve_exact's result.
/// Feasibility probes drive a witness-cut bracketing of each endpoint,
/// narrowed below the Farey gap 1/(2 (nD)^2) of denominators n*D (D the
/// lcm of input denominators) and snapped to the unique small-denominator
/// rational in the bracket; snapped endpoints, emptiness decisions and an
/// interior point are all re-verified with feasibility probes.
FeasibleSet solve_fast(const PicTriple& t);

/// Parametrisation of all finite solutions of A (x) x <= x as
/// { A* (x) u | u finite }; construction throws PositiveCircuitError when
/// G(A) is not in Gamma.
class SolutionSpace {
public:
    explicit SolutionSpace(const MpMatrix& a);

    const MpMatrix& star() const { return star_; }
    /// x = A* (x) u for a finite vector u; the result is finite and
    /// satisfies A (x) x <= x.
    std::vector<Rat> map(const std::vector<Rat>& u) const;

private:
    MpMatrix star_;
};

} // namespace maxplus
