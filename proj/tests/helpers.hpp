#pragma once

#include <tuple>
#include <vector>

#include "pencil/flow.hpp"
#include "pencil/netgraph.hpp"
#include "pencil/rng.hpp"

namespace pencil::testing {

// Synthetic graph on point ids 0..n-1. Vertex insertion order mimics
// build_net (source, sink, then ascending). Edge lengths default to 1.
inline NetGraph make_graph(int n, int s, int t,
                           const std::vector<std::tuple<int, int, Rat>>& edges,
                           double scale = 1.0) {
    NetGraph g;
    g.net.scale = scale;
    g.net.domain_radius = 1e9;
    g.net.source = s;
    g.net.sink = t;
    g.net.vertices.push_back(s);
    g.net.vertices.push_back(t);
    for (int v = 0; v < n; ++v) {
        if (v != s && v != t) g.net.vertices.push_back(v);
    }
    for (const auto& [a, b, c] : edges) {
        GraphEdge e;
        e.a = a;
        e.b = b;
        e.capacity = c;
        e.length = 1.0;
        g.edges.push_back(e);
    }
    g.finalize();
    return g;
}

// Random connected-ish graph with rational capacities, denominators <= 100.
inline NetGraph random_graph(Rng& rng, int min_n = 4, int max_n = 12) {
    int n = rng.next_int(min_n, max_n);
    std::vector<std::tuple<int, int, Rat>> edges;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (rng.next_double() < 0.35) {
                edges.emplace_back(a, b, Rat(rng.next_int(1, 300), rng.next_int(1, 100)));
            }
        }
    }
    // spine so that most instances carry flow
    for (int v = 0; v + 1 < n; ++v) {
        bool present = false;
        for (const auto& [a, b, c] : edges) {
            if (a == v && b == v + 1) present = true;
        }
        if (!present && rng.next_double() < 0.8) {
            edges.emplace_back(v, v + 1, Rat(rng.next_int(1, 300), rng.next_int(1, 100)));
        }
    }
    if (edges.empty()) edges.emplace_back(0, n - 1, Rat(1));
    return make_graph(n, 0, n - 1, edges);
}

// Random source-side cut (contains s, excludes t), sorted.
inline std::vector<int> random_cut_side(Rng& rng, const NetGraph& g) {
    std::vector<int> side = {g.net.source};
    for (int v : g.net.vertices) {
        if (v == g.net.source || v == g.net.sink) continue;
        if (rng.next_u64() & 1) side.push_back(v);
    }
    std::sort(side.begin(), side.end());
    return side;
}

} // namespace pencil::testing
