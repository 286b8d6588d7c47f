#include "pencil/netgraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace pencil {

namespace {

const BigInt kCapacityDenominator = 1'000'000;

bool side_contains(const std::vector<int>& sorted_side, int v) {
    return std::binary_search(sorted_side.begin(), sorted_side.end(), v);
}

std::vector<int> normalized_side(const NetGraph& graph, const std::vector<int>& cut_side) {
    std::vector<int> side = cut_side;
    std::sort(side.begin(), side.end());
    side.erase(std::unique(side.begin(), side.end()), side.end());
    for (int v : side) {
        if (graph.vertex_index(v) < 0) {
            throw std::invalid_argument("cut side contains a non-vertex point id " +
                                        std::to_string(v));
        }
    }
    if (!side_contains(side, graph.net.source)) {
        throw std::invalid_argument("cut side must contain the source");
    }
    if (side_contains(side, graph.net.sink)) {
        throw std::invalid_argument("cut side must not contain the sink");
    }
    return side;
}

} // namespace

int NetGraph::vertex_index(int point_id) const {
    for (size_t i = 0; i < net.vertices.size(); ++i) {
        if (net.vertices[i] == point_id) return static_cast<int>(i);
    }
    return -1;
}

int NetGraph::edge_index(int x, int y) const {
    if (x > y) std::swap(x, y);
    auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(x, y),
                               [](const GraphEdge& e, const std::pair<int, int>& key) {
                                   return std::make_pair(e.a, e.b) < key;
                               });
    if (it != edges.end() && it->a == x && it->b == y) {
        return static_cast<int>(it - edges.begin());
    }
    return -1;
}

std::vector<std::vector<std::pair<int, int>>> NetGraph::adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(net.vertices.size());
    for (size_t e = 0; e < edges.size(); ++e) {
        int ia = vertex_index(edges[e].a);
        int ib = vertex_index(edges[e].b);
        adj[ia].emplace_back(edges[e].b, static_cast<int>(e));
        adj[ib].emplace_back(edges[e].a, static_cast<int>(e));
    }
    return adj;
}

void NetGraph::finalize() {
    for (auto& e : edges) {
        if (e.a > e.b) std::swap(e.a, e.b);
        if (e.a == e.b) throw std::invalid_argument("self-loop edge");
        if (!(e.capacity > 0)) throw std::invalid_argument("capacities must be positive");
    }
    std::sort(edges.begin(), edges.end(), [](const GraphEdge& l, const GraphEdge& r) {
        return std::make_pair(l.a, l.b) < std::make_pair(r.a, r.b);
    });
    for (size_t i = 1; i < edges.size(); ++i) {
        if (edges[i - 1].a == edges[i].a && edges[i - 1].b == edges[i].b) {
            throw std::invalid_argument("duplicate edge");
        }
    }
    std::vector<int> degree(net.vertices.size(), 0);
    for (const auto& e : edges) {
        ++degree[vertex_index(e.a)];
        ++degree[vertex_index(e.b)];
    }
    max_degree = degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
}

Rat capacity(const Space& space, const Net& net, int x, int y) {
    if (x == y || !net.contains(x) || !net.contains(y) ||
        !(space.dist(x, y) < 4 * net.scale)) {
        throw std::invalid_argument("capacity requested for a non-edge pair");
    }
    int s = net.source, t = net.sink;
    if (x == s || x == t || y == s || y == t) {
        return Rat(1);
    }
    auto term = [&](int u, int v) -> Rat {
        // Th(u, r_n) / Th(anchor, d(anchor, u)) split into its two poles, with
        // v in the sink pole; u, v are never s or t here, so distances are > 0.
        Rat th_u = theta_exact(space, u, net.scale);
        Rat th_v = theta_exact(space, v, net.scale);
        Rat th_s = theta_exact(space, s, space.dist(s, u));
        Rat th_t = theta_exact(space, t, space.dist(t, v));
        return th_u / th_s + th_v / th_t;
    };
    Rat value = (term(x, y) + term(y, x)) / 2;
    // Grid rounding keeps the common denominator of all capacities at most
    // 10^6, so the solver's integrality rescaling stays small.
    Rat rounded = round_to_grid(value, kCapacityDenominator);
    if (rounded <= 0) {
        rounded = Rat(1, kCapacityDenominator); // capacities stay strictly positive
    }
    return rounded;
}

NetGraph build_graph(const Net& net, const Space& space) {
    if (net.vertices.size() < 2) {
        throw std::invalid_argument("net graph needs at least two vertices");
    }
    NetGraph g;
    g.net = net;
    for (size_t i = 0; i < net.vertices.size(); ++i) {
        for (size_t j = i + 1; j < net.vertices.size(); ++j) {
            int x = net.vertices[i], y = net.vertices[j];
            double d = space.dist(x, y);
            if (d < 4 * net.scale) {
                GraphEdge e;
                e.a = std::min(x, y);
                e.b = std::max(x, y);
                e.length = d;
                e.capacity = capacity(space, net, x, y);
                g.edges.push_back(std::move(e));
            }
        }
    }
    g.finalize();
    return g;
}

Rat cut_capacity(const NetGraph& graph, const std::vector<int>& cut_side) {
    std::vector<int> side = normalized_side(graph, cut_side);
    Rat total = 0;
    for (const auto& e : graph.edges) {
        if (side_contains(side, e.a) != side_contains(side, e.b)) {
            total += e.capacity;
        }
    }
    return total;
}

std::vector<int> cut_boundary(const NetGraph& graph, const std::vector<int>& cut_side) {
    std::vector<int> side = normalized_side(graph, cut_side);
    std::vector<int> bd;
    for (int v : side) {
        bool crossing = false;
        for (const auto& e : graph.edges) {
            int other = -1;
            if (e.a == v) other = e.b;
            else if (e.b == v) other = e.a;
            else continue;
            if (!side_contains(side, other)) {
                crossing = true;
                break;
            }
        }
        if (crossing) bd.push_back(v);
    }
    return bd;
}

CutFunction cut_function(const NetGraph& graph, const std::vector<int>& cut_side,
                         const Space& space) {
    CutFunction out;
    out.cut_side = normalized_side(graph, cut_side);
    out.values.assign(static_cast<size_t>(space.size()), 0.0);
    const double r2 = 2 * graph.net.scale;
    for (int y = 0; y < space.size(); ++y) {
        // One pass in vertex order; the numerator accumulates exactly the
        // same nonzero terms as the denominator whenever every covering
        // vertex sits in S, which makes values(source) == 1 bit-exact.
        double num = 0, den = 0;
        for (int x : graph.net.vertices) {
            double d = space.dist(y, x);
            if (d >= r2) continue;
            double phi = (r2 - d) / r2;
            den += phi;
            if (side_contains(out.cut_side, x)) num += phi;
        }
        out.values[y] = den > 0 ? num / den : 0.0;
    }
    return out;
}

} // namespace pencil
