#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxplus/ncp.hpp"

namespace maxplus {

/// One place of a P-time event graph: a token produced by `from` and
/// consumed by `to` must sojourn between lower and upper time units.
struct PlaceSpec {
    int from;
    int to;
    long marking;             // initial tokens, >= 0
    Rat lower;                // tau-
    std::optional<Rat> upper; // tau+; nullopt encodes +inf

    bool operator==(const PlaceSpec& other) const = default;
};

/// Raw user-facing P-TEG description; markings are arbitrary.
struct EventGraphSpec {
    std::vector<std::string> transitions;
    std::vector<PlaceSpec> places;

    int transition_count() const { return static_cast<int>(transitions.size()); }
    bool operator==(const EventGraphSpec& other) const = default;
};

struct Diagnostic {
    int place; // index into places, or -1 for a global problem
    std::string message;
};

/// Structural and interval checks; returns every violation found.
std::vector<Diagnostic> validate_spec(const EventGraphSpec& spec);

/// Normalized P-TEG (every marking 0 or 1) in dynamics-matrix form:
/// ι(p) = [A^m_ij, B^m_ij] per place, -inf / +inf where no place exists.
struct Pteg {
    int n = 0;
    MpMatrix a0;
    MpMatrix a1;
    MpMatrix b0;
    MpMatrix b1;
};

struct Normalization {
    EventGraphSpec spec;             // all markings 0/1
    std::vector<int> transition_map; // original index -> normalized index
    Pteg graph;
};

/// Validates, rewrites every place with marking m >= 2 into a chain of m
/// single-token places through m-1 fresh transitions (the original
/// interval sits on the place entering the original downstream
/// transition, [0,0] on the rest), and builds the dynamics matrices.
/// Throws ValidationError when the spec is invalid.
Normalization normalize(const EventGraphSpec& spec);

/// Dynamics matrices of a 0/1-marked spec; duplicate places over the same
/// (marking, from, to) merge to the tightest bounds.
Pteg dynamics_matrices(const EventGraphSpec& spec);

/// P := B1#, I := A1 (+) E, C := A0 (+) B0#.
PicTriple pic_reduction(const Pteg& graph);

struct TensorBlocks {
    MpMatrix p;
    MpMatrix i;
    MpMatrix c;
};

/// The d x d tensor factors: T^P has a zero superdiagonal and d*lambda in
/// the bottom-left corner, T^I the mirror, T^C is the identity.
TensorBlocks tensor_blocks(int d, const Rat& lambda);

/// (T^P tensor P) (+) (T^I tensor I) (+) (T^C tensor C), the dn x dn
/// matrix whose non-positive-circuit condition characterises d-periodic
/// trajectories of period lambda.
MpMatrix tensor_system(const Pteg& graph, int d, const Rat& lambda);

/// The dn x dn PIC triple in the parameter mu = d * lambda whose
/// evaluation reproduces tensor_system.
PicTriple tensor_pic(const Pteg& graph, int d);

enum class PeriodMode { theorem2, tensor };
enum class SolverKind { fast, exact };

/// All admissible periods of d-periodic trajectories.  theorem2 mode
/// solves the n x n PIC-NCP (the result does not depend on d); tensor
/// mode solves the dn x dn reduction in mu = d*lambda and rescales.
FeasibleSet period_set(const Pteg& graph, int d, PeriodMode mode = PeriodMode::theorem2,
                       SolverKind solver = SolverKind::fast, int exact_cap = 12);

/// True iff a consistent 1-periodic trajectory exists.
bool bounded_consistency(const Pteg& graph);

/// A d-periodic trajectory: d seed vectors and the extension rule
/// x(k + d) = d*lambda + x(k).
class Trajectory {
public:
    Trajectory(int d, Rat lambda, std::vector<std::vector<Rat>> seeds);

    int d() const { return d_; }
    const Rat& lambda() const { return lambda_; }
    int dimension() const { return seeds_.empty() ? 0 : static_cast<int>(seeds_[0].size()); }
    const std::vector<std::vector<Rat>>& seeds() const { return seeds_; }

    std::vector<Rat> at(long k) const;

private:
    int d_;
    Rat lambda_;
    std::vector<std::vector<Rat>> seeds_;
};

/// Seeds a d-periodic trajectory as star(tensor_system) (x) u and splits
/// it into x(0) ... x(d-1).  Throws PositiveCircuitError when lambda is
/// not an admissible period.
Trajectory synthesize(const Pteg& graph, int d, const Rat& lambda, const std::vector<Rat>& u);

struct TrajectoryViolation {
    long k;
    std::string constraint; // "A0", "B0", "A1", "B1", "nondecreasing"
    int i;
    int j;
};

struct TrajectoryReport {
    std::vector<TrajectoryViolation> violations;

    bool pass() const { return violations.empty(); }
};

/// Checks the interval dynamics and monotonicity for k = 0 .. horizon.
TrajectoryReport validate_trajectory(const Pteg& graph, const Trajectory& t, long horizon);

/// Independent feasibility oracle for 1-periodic trajectories of the raw
/// spec (arbitrary markings): decides the difference-constraint system
/// tau- <= x_i + m(p)*lambda - x_j <= tau+ by negative-cycle detection,
/// bypassing normalization and the NCP reduction entirely.
bool oracle_1periodic(const EventGraphSpec& spec, const Rat& lambda);

} // namespace maxplus
