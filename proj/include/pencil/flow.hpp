#pragma once

#include <string>
#include <vector>

#include "pencil/netgraph.hpp"
#include "pencil/rational.hpp"

namespace pencil {

// Antisymmetric edge function: value[e] is the flow along the canonical
// orientation a -> b of graph->edges[e]; the reverse value is implied.
// The graph must outlive the flow.
struct Flow {
    const NetGraph* graph = nullptr;
    std::vector<Rat> value;

    // Signed flow leaving `from` along the edge with index e.
    Rat along(int e, int from) const {
        return graph->edges[e].a == from ? value[e] : -value[e];
    }
};

struct MinCut {
    std::vector<int> side; // S: sorted point ids, source side
    Rat capacity;
};

struct FlowValidation {
    bool ok = false;
    std::string message;
};

// Exact maximum flow. Capacities are scaled by the least common multiple of
// their denominators to integers (big integers), solved with shortest-
// augmenting-path phases (Dinic), and scaled back. A graph with no s-t path
// yields the zero flow.
Flow max_flow(const NetGraph& graph);

// ||f|| = f({s}, V): the net outflow at the source.
Rat flow_norm(const Flow& flow);

// Net flow f(S, S^c) over the crossing edges of a cut. Equals ||f|| for
// every cut (both sides of the identity are exercised in tests).
Rat flow_across(const Flow& flow, const std::vector<int>& cut_side);

// Source side of the residual graph of a maximum flow (the s-side-minimal
// minimum cut) together with its capacity.
MinCut min_cut(const Flow& max_flow);
MinCut min_cut(const NetGraph& graph);

// Exact minimum over all 2^(|V|-2) cuts. Throws if |V| > 20.
Rat enumerate_cuts_oracle(const NetGraph& graph);

// Checks (F1)-(F3); reports the first violated constraint.
FlowValidation validate_flow(const Flow& flow);

} // namespace pencil
