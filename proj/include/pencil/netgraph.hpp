#pragma once

#include <vector>

#include "pencil/rational.hpp"
#include "pencil/space.hpp"

namespace pencil {

struct GraphEdge {
    int a = -1; // point ids, canonical orientation a < b
    int b = -1;
    Rat capacity;      // strictly positive
    double length = 0; // dist(a,b)
};

// G_n over a net: vertices are the net points, an edge joins x,x' exactly
// when the open balls B(x,2r_n) and B(x',2r_n) overlap, i.e. dist < 4 r_n.
struct NetGraph {
    Net net;
    std::vector<GraphEdge> edges; // sorted by (a,b)
    int max_degree = 0;

    int vertex_count() const { return static_cast<int>(net.vertices.size()); }

    // Dense index of a point id within net.vertices; -1 if absent.
    int vertex_index(int point_id) const;

    // Edge index for the unordered pair {x,y}; -1 if absent.
    int edge_index(int x, int y) const;

    // adjacency()[dense vertex index] = list of (neighbour point id, edge index),
    // ordered by edge index.
    std::vector<std::vector<std::pair<int, int>>> adjacency() const;

    // Recomputes max_degree and sorts edges canonically. Called by
    // build_graph; test factories building graphs by hand call it too.
    void finalize();
};

// Partition-of-unity cut function: values(y) = sum over x in S of psi_x(y)
// with psi_x = phi_x / sum phi, phi_x(y) = max(0, 2r_n - d(y,x)) / 2r_n.
struct CutFunction {
    std::vector<int> cut_side;  // S, sorted point ids
    std::vector<double> values; // one entry per space point, in [0,1]
};

NetGraph build_graph(const Net& net, const Space& space);

// Capacity of the edge {x,y}. Exactly 1 when the edge touches the source or
// sink; otherwise the symmetrised density-ratio value
//   1/2 [Th(x,r_n)/Th(s,d(s,x)) + Th(y,r_n)/Th(t,d(t,y))]
// + 1/2 [Th(y,r_n)/Th(s,d(s,y)) + Th(x,r_n)/Th(t,d(t,x))]
// computed in exact rational arithmetic and rounded to the nearest multiple
// of 10^-6 (clamped away from zero), so every capacity has denominator
// dividing 10^6.
Rat capacity(const Space& space, const Net& net, int x, int y);

// Sum of capacities over edges with exactly one endpoint in S.
Rat cut_capacity(const NetGraph& graph, const std::vector<int>& cut_side);

// S must contain the source and not the sink; members must be net vertices.
CutFunction cut_function(const NetGraph& graph, const std::vector<int>& cut_side,
                         const Space& space);

// Vertices of S with at least one edge into the complement.
std::vector<int> cut_boundary(const NetGraph& graph, const std::vector<int>& cut_side);

} // namespace pencil
