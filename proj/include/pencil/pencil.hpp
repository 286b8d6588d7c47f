#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "pencil/flow.hpp"
#include "pencil/space.hpp"

namespace pencil {

struct Curve {
    std::vector<int> path; // point ids from source to sink, no repeats
    Rat weight;            // > 0
    double length = 0;     // sum of edge lengths
};

// Weighted family of source-sink arcs. Before normalization the weights sum
// to the norm of the generating flow; after, to 1.
struct Pencil {
    std::vector<Curve> curves;
    Rat total_weight;
    bool normalized = false;
    int source = -1;
    int sink = -1;
    double dist_st = 0;
};

struct CycleEntry {
    std::vector<int> cycle; // v0 -> v1 -> ... -> v0 implied; starts at min id
    Rat weight;             // > 0
};

struct CycleSet {
    std::vector<CycleEntry> cycles;

    // Sum over cycles of weight * cycle length (needs edge lengths).
    double mass(const Space& space) const;
};

// Raised by good_half when the retained curves carry less than half of the
// total weight; minimal_c0 is the smallest threshold multiplier that would
// keep half the mass.
struct GoodHalfError : std::runtime_error {
    double minimal_c0;
    explicit GoodHalfError(double c0)
        : std::runtime_error("good_half would retain less than half of the curve mass; "
                             "minimal admissible C0 = " +
                             std::to_string(c0)),
          minimal_c0(c0) {}
};

// Cancels directed cycles in the flow's positive support by repeated
// bottleneck subtraction; the boundary is unchanged and every removal is
// sign-consistent, so per-edge magnitudes only decrease.
std::pair<Flow, CycleSet> acyclic_reduce(const Flow& flow);

// Greedy path stripping of an acyclic flow: repeatedly follow positive flow
// from the source, always towards the smallest point id, extract the
// bottleneck. Reconstructs the flow edge-wise exactly.
Pencil decompose(const Flow& flow, const Space& space);

// Weights divided by the total; throws on a zero pencil.
Pencil normalize(const Pencil& pencil);

// Keeps curves with length <= c0 * d(s,t) (inclusive) and renormalizes to
// total weight 1. Throws GoodHalfError when the retained mass drops below
// half of the input mass.
Pencil good_half(const Pencil& pencil, const Space& space, double c0);

struct PcCheck {
    double lhs = 0;
    double rhs = 0;
    double ratio = 0; // empirical C0 for this g; 0 when lhs = rhs = 0
};

// The pencil-of-curves inequality for one test density g >= 0: averaged
// curve integrals of g on the left, the two-pole density integral over the
// domain ball on the right.
PcCheck verify_pc_inequality(const Pencil& pencil, const Space& space,
                             const std::vector<double>& g, double c0);

// Signed per-edge sums of curves and removed cycles; used by the exact
// reconstruction checks. Keyed like graph.edges.
std::vector<Rat> edge_sums(const NetGraph& graph, const Pencil& pencil,
                           const CycleSet& cycles);

} // namespace pencil
