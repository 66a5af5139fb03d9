#pragma once

#include <optional>
#include <vector>

#include "maxplus/matrix.hpp"

namespace maxplus::detail {

struct WitnessCircuit {
    std::vector<int> nodes; // elementary, rotated so the smallest node is first
    Rat weight;             // strictly positive
};

/// Deterministic positive-circuit detector for the precedence graph of a
/// square R_max matrix (arc j->i of weight A_ij per finite entry).
/// Bellman-Ford with synchronous rounds over integer-scaled weights,
/// O(n*q); the returned circuit is verified exactly.
std::optional<WitnessCircuit> positive_circuit(const MpMatrix& a);

} // namespace maxplus::detail
