#include "pencil/pencil.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace pencil {

namespace {

// Adjacency in smallest-target-id-first order, as required by the
// deterministic traversal rule. Entries are (neighbour point id, edge idx).
std::vector<std::vector<std::pair<int, int>>> sorted_adjacency(const NetGraph& g) {
    auto adj = g.adjacency();
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
}

// Flow carried away from `from` on edge e, given working values.
Rat carry(const NetGraph& g, const std::vector<Rat>& work, int e, int from) {
    return g.edges[e].a == from ? work[e] : -work[e];
}

void subtract(const NetGraph& g, std::vector<Rat>& work, int e, int from, const Rat& amount) {
    if (g.edges[e].a == from) work[e] -= amount;
    else work[e] += amount;
}

// One directed cycle in the positive support of `work`, as a list of
// (vertex point id, outgoing edge idx); empty when the support is acyclic.
std::vector<std::pair<int, int>>
find_cycle(const NetGraph& g, const std::vector<Rat>& work,
           const std::vector<std::vector<std::pair<int, int>>>& adj) {
    int n = g.vertex_count();
    std::vector<int> color(n, 0); // 0 new, 1 on stack, 2 done
    std::vector<std::pair<int, int>> path; // (point id, edge taken out of it)

    // Iterative DFS; frame = (dense vertex, next adjacency position).
    for (int root = 0; root < n; ++root) {
        if (color[root] != 0) continue;
        std::vector<std::pair<int, size_t>> stack;
        stack.emplace_back(root, 0);
        color[root] = 1;
        path.clear();
        while (!stack.empty()) {
            int v = stack.back().first;
            int vid = g.net.vertices[v];
            bool advanced = false;
            while (stack.back().second < adj[v].size()) {
                auto [uid, e] = adj[v][stack.back().second++];
                if (!(carry(g, work, e, vid) > 0)) continue;
                int u = g.vertex_index(uid);
                if (color[u] == 1) {
                    // close the cycle: walk path back to uid
                    path.emplace_back(vid, e);
                    size_t start = 0;
                    while (path[start].first != uid) ++start;
                    return {path.begin() + start, path.end()};
                }
                if (color[u] == 0) {
                    path.emplace_back(vid, e);
                    color[u] = 1;
                    stack.emplace_back(u, 0);
                    advanced = true;
                    break;
                }
            }
            if (!advanced) {
                color[v] = 2;
                stack.pop_back();
                if (!path.empty()) path.pop_back();
            }
        }
    }
    return {};
}

void rotate_to_min(std::vector<int>& cycle) {
    auto it = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), it, cycle.end());
}

} // namespace

double CycleSet::mass(const Space& space) const {
    double m = 0;
    for (const auto& c : cycles) {
        double len = 0;
        for (size_t i = 0; i < c.cycle.size(); ++i) {
            len += space.dist(c.cycle[i], c.cycle[(i + 1) % c.cycle.size()]);
        }
        m += rat_to_double(c.weight) * len;
    }
    return m;
}

std::pair<Flow, CycleSet> acyclic_reduce(const Flow& flow) {
    const NetGraph& g = *flow.graph;
    auto adj = sorted_adjacency(g);
    Flow out = flow;
    CycleSet removed;
    while (true) {
        auto cyc = find_cycle(g, out.value, adj);
        if (cyc.empty()) break;
        Rat bottleneck;
        bool first = true;
        for (const auto& [vid, e] : cyc) {
            Rat c = carry(g, out.value, e, vid);
            if (first || c < bottleneck) bottleneck = c;
            first = false;
        }
        CycleEntry entry;
        entry.weight = bottleneck;
        for (const auto& [vid, e] : cyc) {
            entry.cycle.push_back(vid);
            subtract(g, out.value, e, vid, bottleneck);
        }
        rotate_to_min(entry.cycle);
        removed.cycles.push_back(std::move(entry));
    }
    return {std::move(out), std::move(removed)};
}

Pencil decompose(const Flow& flow, const Space& space) {
    const NetGraph& g = *flow.graph;
    auto adj = sorted_adjacency(g);
    if (!find_cycle(g, flow.value, adj).empty()) {
        throw std::invalid_argument("decompose requires an acyclic flow");
    }
    std::vector<Rat> work = flow.value;
    Pencil pencil;
    pencil.source = g.net.source;
    pencil.sink = g.net.sink;
    pencil.dist_st = space.dist(pencil.source, pencil.sink);
    pencil.total_weight = 0;

    int s_idx = g.vertex_index(pencil.source);
    auto next_arc = [&](int vid) -> std::pair<int, int> {
        int v = g.vertex_index(vid);
        for (const auto& [uid, e] : adj[v]) {
            if (carry(g, work, e, vid) > 0) return {uid, e};
        }
        return {-1, -1};
    };

    while (true) {
        if (next_arc(g.net.vertices[s_idx]).first < 0) break;
        std::vector<int> path = {pencil.source};
        std::vector<int> path_edges;
        int v = pencil.source;
        while (v != pencil.sink) {
            auto [u, e] = next_arc(v);
            if (u < 0) {
                throw std::runtime_error("decompose: traversal stuck at vertex " +
                                         std::to_string(v) + " (conservation broken)");
            }
            if (std::find(path.begin(), path.end(), u) != path.end()) {
                throw std::runtime_error("decompose: revisited vertex " + std::to_string(u));
            }
            path.push_back(u);
            path_edges.push_back(e);
            v = u;
        }
        Rat bottleneck;
        bool first = true;
        for (size_t i = 0; i < path_edges.size(); ++i) {
            Rat c = carry(g, work, path_edges[i], path[i]);
            if (first || c < bottleneck) bottleneck = c;
            first = false;
        }
        Curve curve;
        curve.path = path;
        curve.weight = bottleneck;
        for (size_t i = 0; i < path_edges.size(); ++i) {
            curve.length += g.edges[path_edges[i]].length;
            subtract(g, work, path_edges[i], path[i], bottleneck);
        }
        pencil.total_weight += bottleneck;
        pencil.curves.push_back(std::move(curve));
    }
    for (const Rat& w : work) {
        if (w != 0) {
            throw std::runtime_error("decompose: nonzero residual after stripping");
        }
    }
    return pencil;
}

Pencil normalize(const Pencil& pencil) {
    if (pencil.total_weight == 0) {
        throw std::invalid_argument("cannot normalize a zero pencil");
    }
    Pencil out = pencil;
    for (auto& c : out.curves) c.weight /= pencil.total_weight;
    out.total_weight = 1;
    out.normalized = true;
    return out;
}

Pencil good_half(const Pencil& pencil, const Space& space, double c0) {
    (void)space;
    if (pencil.total_weight == 0) {
        throw std::invalid_argument("good_half on a zero pencil");
    }
    double threshold = c0 * pencil.dist_st;
    Pencil out;
    out.source = pencil.source;
    out.sink = pencil.sink;
    out.dist_st = pencil.dist_st;
    Rat retained = 0;
    for (const auto& c : pencil.curves) {
        if (c.length <= threshold) {
            out.curves.push_back(c);
            retained += c.weight;
        }
    }
    if (2 * retained < pencil.total_weight) {
        // smallest threshold keeping half the mass: weighted median length
        std::vector<std::pair<double, Rat>> by_len;
        for (const auto& c : pencil.curves) by_len.emplace_back(c.length, c.weight);
        std::sort(by_len.begin(), by_len.end(),
                  [](const auto& l, const auto& r) { return l.first < r.first; });
        Rat acc = 0;
        double median_len = by_len.back().first;
        for (const auto& [len, w] : by_len) {
            acc += w;
            if (2 * acc >= pencil.total_weight) {
                median_len = len;
                break;
            }
        }
        throw GoodHalfError(median_len / pencil.dist_st);
    }
    for (auto& c : out.curves) c.weight /= retained;
    out.total_weight = 1;
    out.normalized = true;
    return out;
}

PcCheck verify_pc_inequality(const Pencil& pencil, const Space& space,
                             const std::vector<double>& g, double c0) {
    if (!pencil.normalized) {
        throw std::invalid_argument("verify_pc_inequality expects a normalized pencil");
    }
    if (g.size() != static_cast<size_t>(space.size())) {
        throw std::invalid_argument("g must cover every point");
    }
    for (double v : g) {
        if (!(v >= 0)) throw std::invalid_argument("g must be nonnegative");
    }
    PcCheck out;
    for (const auto& c : pencil.curves) {
        double along = 0;
        for (size_t i = 0; i + 1 < c.path.size(); ++i) {
            int x = c.path[i], y = c.path[i + 1];
            along += space.dist(x, y) * 0.5 * (g[x] + g[y]);
        }
        out.lhs += rat_to_double(c.weight) * along;
    }
    double radius = c0 * pencil.dist_st;
    for (int y = 0; y < space.size(); ++y) {
        if (y == pencil.source || y == pencil.sink) continue;
        if (!(space.dist(pencil.source, y) < radius)) continue;
        double ds = space.dist(pencil.source, y);
        double dt = space.dist(pencil.sink, y);
        out.rhs += space.weight(y) * g[y] *
                   (1.0 / theta(space, pencil.source, ds) + 1.0 / theta(space, pencil.sink, dt));
    }
    if (out.lhs == 0 && out.rhs == 0) out.ratio = 0;
    else if (out.rhs == 0) out.ratio = std::numeric_limits<double>::infinity();
    else out.ratio = out.lhs / out.rhs;
    return out;
}

std::vector<Rat> edge_sums(const NetGraph& graph, const Pencil& pencil,
                           const CycleSet& cycles) {
    std::vector<Rat> sums(graph.edges.size(), Rat(0));
    auto add_walk = [&](const std::vector<int>& walk, bool closed, const Rat& w) {
        size_t steps = closed ? walk.size() : walk.size() - 1;
        for (size_t i = 0; i < steps; ++i) {
            int u = walk[i], v = walk[(i + 1) % walk.size()];
            int e = graph.edge_index(u, v);
            if (e < 0) throw std::invalid_argument("walk uses a non-edge");
            sums[e] += (graph.edges[e].a == u) ? w : -w;
        }
    };
    for (const auto& c : pencil.curves) add_walk(c.path, false, c.weight);
    for (const auto& c : cycles.cycles) add_walk(c.cycle, true, c.weight);
    return sums;
}

} // namespace pencil
