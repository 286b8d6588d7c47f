#include "pencil/flow.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace pencil {

namespace {

bool side_contains(const std::vector<int>& sorted_side, int v) {
    return std::binary_search(sorted_side.begin(), sorted_side.end(), v);
}

// Dinic over the doubled-arc representation of an undirected graph: each
// edge {a,b} of capacity c becomes mutually-reverse arcs a->b and b->a, both
// of capacity c. The net flow a->b is then c - residual(a->b).
struct Dinic {
    int n, s, t;
    std::vector<std::vector<int>> adj; // arc indices per dense vertex
    std::vector<int> head;             // arc target (dense index)
    std::vector<BigInt> residual;
    std::vector<int> level, iter;

    Dinic(int n, int s, int t) : n(n), s(s), t(t), adj(n) {}

    void add_pair(int a, int b, const BigInt& cap) {
        adj[a].push_back(static_cast<int>(head.size()));
        head.push_back(b);
        residual.push_back(cap);
        adj[b].push_back(static_cast<int>(head.size()));
        head.push_back(a);
        residual.push_back(cap);
    }

    bool bfs() {
        level.assign(n, -1);
        std::queue<int> q;
        level[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int id : adj[v]) {
                int u = head[id];
                if (level[u] < 0 && residual[id] > 0) {
                    level[u] = level[v] + 1;
                    q.push(u);
                }
            }
        }
        return level[t] >= 0;
    }

    BigInt dfs(int v, const BigInt& pushed) {
        if (v == t) return pushed;
        for (int& i = iter[v]; i < static_cast<int>(adj[v].size()); ++i) {
            int id = adj[v][i];
            int u = head[id];
            if (residual[id] > 0 && level[u] == level[v] + 1) {
                BigInt d = dfs(u, std::min(pushed, residual[id]));
                if (d > 0) {
                    residual[id] -= d;
                    residual[id ^ 1] += d;
                    return d;
                }
            }
        }
        return 0;
    }

    void solve(const BigInt& infinite) {
        while (bfs()) {
            iter.assign(n, 0);
            while (dfs(s, infinite) > 0) {
            }
        }
    }
};

} // namespace

Flow max_flow(const NetGraph& graph) {
    int s = graph.vertex_index(graph.net.source);
    int t = graph.vertex_index(graph.net.sink);
    if (s < 0 || t < 0) throw std::invalid_argument("graph lacks source or sink");

    // Integrality reduction: multiply every capacity by the common
    // denominator so the solver works over integers.
    BigInt common = 1;
    for (const auto& e : graph.edges) {
        common = boost::multiprecision::lcm(common, denominator(e.capacity));
    }
    std::vector<BigInt> scaled(graph.edges.size());
    BigInt total = 1;
    for (size_t e = 0; e < graph.edges.size(); ++e) {
        Rat c = graph.edges[e].capacity * common;
        scaled[e] = numerator(c); // denominator is 1 by construction
        total += scaled[e];
    }

    Dinic dinic(graph.vertex_count(), s, t);
    for (size_t e = 0; e < graph.edges.size(); ++e) {
        dinic.add_pair(graph.vertex_index(graph.edges[e].a),
                       graph.vertex_index(graph.edges[e].b), scaled[e]);
    }
    dinic.solve(total);

    Flow f;
    f.graph = &graph;
    f.value.resize(graph.edges.size());
    for (size_t e = 0; e < graph.edges.size(); ++e) {
        f.value[e] = Rat(scaled[e] - dinic.residual[2 * e], common);
    }
    return f;
}

Rat flow_norm(const Flow& flow) {
    const NetGraph& g = *flow.graph;
    Rat norm = 0;
    for (size_t e = 0; e < g.edges.size(); ++e) {
        if (g.edges[e].a == g.net.source) norm += flow.value[e];
        else if (g.edges[e].b == g.net.source) norm -= flow.value[e];
    }
    return norm;
}

Rat flow_across(const Flow& flow, const std::vector<int>& cut_side) {
    const NetGraph& g = *flow.graph;
    std::vector<int> side = cut_side;
    std::sort(side.begin(), side.end());
    Rat total = 0;
    for (size_t e = 0; e < g.edges.size(); ++e) {
        bool a_in = side_contains(side, g.edges[e].a);
        bool b_in = side_contains(side, g.edges[e].b);
        if (a_in && !b_in) total += flow.value[e];
        else if (b_in && !a_in) total -= flow.value[e];
    }
    return total;
}

MinCut min_cut(const Flow& max_flow) {
    const NetGraph& g = *max_flow.graph;
    auto adj = g.adjacency();
    std::vector<char> reach(g.net.vertices.size(), 0);
    std::vector<int> stack = {g.vertex_index(g.net.source)};
    reach[stack[0]] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        int vid = g.net.vertices[v];
        for (const auto& [u, e] : adj[v]) {
            int ui = g.vertex_index(u);
            if (reach[ui]) continue;
            // residual capacity from vid towards u
            Rat res = g.edges[e].capacity - max_flow.along(e, vid);
            if (res > 0) {
                reach[ui] = 1;
                stack.push_back(ui);
            }
        }
    }
    MinCut cut;
    for (size_t i = 0; i < g.net.vertices.size(); ++i) {
        if (reach[i]) cut.side.push_back(g.net.vertices[i]);
    }
    std::sort(cut.side.begin(), cut.side.end());
    cut.capacity = cut_capacity(g, cut.side);
    return cut;
}

MinCut min_cut(const NetGraph& graph) {
    Flow f = max_flow(graph);
    return min_cut(f);
}

Rat enumerate_cuts_oracle(const NetGraph& graph) {
    int n = graph.vertex_count();
    if (n > 20) throw std::invalid_argument("cut enumeration limited to 20 vertices");

    // Same integrality reduction as the solver; plain integer sums per cut.
    BigInt common = 1;
    for (const auto& e : graph.edges) {
        common = boost::multiprecision::lcm(common, denominator(e.capacity));
    }
    struct E {
        int a, b;
        BigInt cap;
    };
    std::vector<E> es;
    std::vector<int> frees; // dense indices other than s,t
    int s = graph.vertex_index(graph.net.source);
    int t = graph.vertex_index(graph.net.sink);
    for (int i = 0; i < n; ++i) {
        if (i != s && i != t) frees.push_back(i);
    }
    for (const auto& e : graph.edges) {
        es.push_back({graph.vertex_index(e.a), graph.vertex_index(e.b),
                      numerator(Rat(e.capacity * common))});
    }
    bool have = false;
    BigInt best = 0;
    std::vector<char> in_side(n, 0);
    const std::uint64_t subsets = 1ULL << frees.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        std::fill(in_side.begin(), in_side.end(), 0);
        in_side[s] = 1;
        for (size_t b = 0; b < frees.size(); ++b) {
            if (mask & (1ULL << b)) in_side[frees[b]] = 1;
        }
        BigInt sum = 0;
        for (const auto& e : es) {
            if (in_side[e.a] != in_side[e.b]) sum += e.cap;
        }
        if (!have || sum < best) {
            best = sum;
            have = true;
        }
    }
    return Rat(best, common);
}

FlowValidation validate_flow(const Flow& flow) {
    const NetGraph& g = *flow.graph;
    if (flow.value.size() != g.edges.size()) {
        return {false, "flow has " + std::to_string(flow.value.size()) + " values for " +
                           std::to_string(g.edges.size()) + " edges"};
    }
    // (F1) holds by representation: a single signed value per undirected edge.
    // (F2) conservation at every non-terminal vertex.
    for (int v : g.net.vertices) {
        if (v == g.net.source || v == g.net.sink) continue;
        Rat net = 0;
        for (size_t e = 0; e < g.edges.size(); ++e) {
            if (g.edges[e].a == v) net += flow.value[e];
            else if (g.edges[e].b == v) net -= flow.value[e];
        }
        if (net != 0) {
            return {false, "(F2) violated at vertex " + std::to_string(v) +
                               ": net flow " + rat_to_string(net)};
        }
    }
    // (F3) capacity bound, both orientations.
    for (size_t e = 0; e < g.edges.size(); ++e) {
        if (abs(flow.value[e]) > g.edges[e].capacity) {
            return {false, "(F3) violated at edge (" + std::to_string(g.edges[e].a) + "," +
                               std::to_string(g.edges[e].b) + "): |" +
                               rat_to_string(flow.value[e]) + "| > " +
                               rat_to_string(g.edges[e].capacity)};
        }
    }
    return {true, "ok"};
}

} // namespace pencil
