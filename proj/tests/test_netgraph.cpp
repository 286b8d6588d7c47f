#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "pencil/netgraph.hpp"
#include "pencil/rng.hpp"

using namespace pencil;

namespace {

Space line(int k) {
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < k; ++i) pts.push_back({static_cast<double>(i) / (k - 1)});
    return Space::from_points(pts, std::vector<double>(k, 1.0));
}

Space grid3() {
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) pts.push_back({j * 0.5, i * 0.5});
    return Space::from_points(pts, std::vector<double>(9, 1.0));
}

// Independent evaluation of the capacity formula by direct summation over
// balls, kept free of theta_exact / capacity internals.
Rat capacity_oracle(const Space& space, const Net& net, int x, int y) {
    auto mass = [&](int center, double r) {
        Rat m = 0;
        for (int p = 0; p < space.size(); ++p) {
            if (space.dist(center, p) < r) m += rat_from_double(space.weight(p));
        }
        return m;
    };
    auto th = [&](int center, double r) {
        return Rat(mass(center, r) / rat_from_double(r));
    };
    int s = net.source, t = net.sink;
    Rat half1 = th(x, net.scale) / th(s, space.dist(s, x)) +
                th(y, net.scale) / th(t, space.dist(t, y));
    Rat half2 = th(y, net.scale) / th(s, space.dist(s, y)) +
                th(x, net.scale) / th(t, space.dist(t, x));
    return round_to_grid(Rat((half1 + half2) / 2), BigInt(1'000'000));
}

} // namespace

TEST_CASE("build_graph on the three-vertex line net") {
    Space s = line(5);
    Net net = build_net(s, 0, 4, 0.3, 10.0); // vertices {0, 4, 2}
    NetGraph g = build_graph(net, s);
    REQUIRE(g.edges.size() == 3); // all pairwise distances <= 1 < 1.2
    CHECK(g.edge_index(0, 2) >= 0);
    CHECK(g.edge_index(2, 4) >= 0);
    CHECK(g.edge_index(0, 4) >= 0);
    CHECK(g.max_degree == 2);
    for (const auto& e : g.edges) CHECK(e.capacity == Rat(1)); // all touch s or t
}

TEST_CASE("build_graph edge criterion is strict") {
    Space s = line(5);
    Net net = build_net(s, 0, 4, 0.1, 10.0); // all five points
    // 4 r_n = 0.4: neighbours at 0.25 qualify, 0.5 does not
    NetGraph g = build_graph(net, s);
    CHECK(g.edge_index(0, 1) >= 0);
    CHECK(g.edge_index(0, 2) < 0);

    Net coarse = build_net(s, 0, 4, 0.05, 10.0);
    coarse.scale = 0.05; // 4 r_n = 0.2 < 0.25: no edges at all
    NetGraph empty = build_graph(coarse, s);
    CHECK(empty.edges.empty());

    Space two = Space::from_points({{0.0}, {1.0}}, {1, 1});
    Net n2 = build_net(two, 0, 1, 0.5, 10.0);
    NetGraph g2 = build_graph(n2, two); // dist 1 < 4*0.5
    REQUIRE(g2.edges.size() == 1);
    CHECK(g2.edges[0].capacity == Rat(1));

    Net tiny;
    tiny.vertices = {0};
    tiny.source = 0;
    tiny.sink = 0;
    CHECK_THROWS_AS(build_graph(tiny, two), std::invalid_argument);
}

TEST_CASE("capacity: terminal edges are exactly one") {
    Space s = line(9);
    Net net = build_net(s, 0, 8, 0.25, 10.0); // vertices {0, 8, 2, 4, 6}
    CHECK(capacity(s, net, 0, 2) == Rat(1));
    CHECK(capacity(s, net, 6, 8) == Rat(1));
    CHECK_THROWS_AS(capacity(s, net, 0, 8), std::invalid_argument); // dist 1 = 4 r_n: non-edge
}

TEST_CASE("capacity matches independent recomputation on the nine-point line") {
    Space s = line(9);
    Net net = build_net(s, 0, 8, 0.25, 10.0);
    for (auto [x, y] : {std::pair{2, 4}, {4, 6}, {2, 6}}) {
        Rat got = capacity(s, net, x, y);
        CHECK(got == capacity_oracle(s, net, x, y));
        CHECK(got > 0);
        CHECK(denominator(got) <= 1'000'000);
        CHECK(capacity(s, net, y, x) == got); // symmetry, exact
    }
}

TEST_CASE("capacity: symmetric edge equidistant from both poles") {
    // grid corners s = (0,0), t = (1,1); the anti-diagonal edge {2,4} has both
    // endpoints equidistant from s and t, so the two symmetrisation halves
    // coincide and the value equals the unsymmetrised formula.
    Space s = grid3();
    Net net = build_net(s, 0, 8, 0.3, 10.0);
    REQUIRE(net.vertices.size() == 9);
    Rat got = capacity(s, net, 2, 4);
    auto th = [&](int c, double r) { return theta_exact(s, c, r); };
    Rat unsym = th(2, net.scale) / th(0, s.dist(0, 2)) +
                th(4, net.scale) / th(8, s.dist(8, 4));
    CHECK(got == round_to_grid(unsym, BigInt(1'000'000)));
}

TEST_CASE("cut_capacity examples and oracle") {
    Space s = line(9);
    Net net = build_net(s, 0, 8, 0.25, 10.0);
    NetGraph g = build_graph(net, s);
    // s has terminal edges to 2, 4, 6 (dist < 1), each capacity 1
    Rat at_source = cut_capacity(g, {0});
    CHECK(at_source == Rat(3));

    // disconnected components: no crossing edges
    NetGraph two = testing::make_graph(4, 0, 3, {{0, 1, Rat(2)}, {2, 3, Rat(5)}});
    CHECK(cut_capacity(two, {0, 1}) == Rat(0));

    Rng rng(5);
    for (int it = 0; it < 20; ++it) {
        NetGraph rg = testing::random_graph(rng, 6, 10);
        auto side = testing::random_cut_side(rng, rg);
        Rat expect = 0;
        for (const auto& e : rg.edges) {
            bool a_in = std::binary_search(side.begin(), side.end(), e.a);
            bool b_in = std::binary_search(side.begin(), side.end(), e.b);
            if (a_in != b_in) expect += e.capacity;
        }
        CHECK(cut_capacity(rg, side) == expect);
    }

    CHECK_THROWS_AS(cut_capacity(g, std::vector<int>{2}), std::invalid_argument);   // no source
    CHECK_THROWS_AS(cut_capacity(g, std::vector<int>{0, 8}), std::invalid_argument); // has sink
}

TEST_CASE("cut_function terminal values") {
    // all vertices except the sink: far points evaluate to exactly 1
    Space s = line(9);
    Net net = build_net(s, 0, 8, 0.25, 10.0);
    NetGraph g = build_graph(net, s);
    auto cf = cut_function(g, {0, 2, 4, 6}, s);
    // y = 0.25 is more than 2 r_n = 0.5 away from the only S^c vertex (1.0)
    CHECK(cf.values[2] == 1.0);
    CHECK(cf.values[0] == 1.0);
    // y = 1.0 is covered by 1.0 itself and by 0.75-ball? d(6->8)=0.25 < 0.5
    CHECK(cf.values[8] < 1.0);

    // S = {s} with no other vertex within 2 r_n of s
    Space gap = Space::from_points({{0.0}, {1.0}, {1.2}, {2.0}}, {1, 1, 1, 1});
    Net gnet = build_net(gap, 0, 3, 0.3, 10.0); // vertices {0, 3, 1}
    NetGraph gg = build_graph(gnet, gap);
    auto gcf = cut_function(gg, {0}, gap);
    CHECK(gcf.values[0] == 1.0);
    CHECK(gcf.values[3] == 0.0);
}

TEST_CASE("cut_function half value at an equidistant midpoint") {
    Space s = Space::from_points({{0.0}, {0.5}, {1.0}}, {1, 1, 1});
    Net net = build_net(s, 0, 2, 0.6, 10.0); // vertices {0, 2}: 0.5 rejected
    REQUIRE(net.vertices == std::vector<int>{0, 2});
    NetGraph g = build_graph(net, s);
    auto cf = cut_function(g, {0}, s);
    CHECK(cf.values[1] == 0.5); // exactly: equal phi values
    // 2 r_n = 1.2 > d(s,t), so each terminal is covered by the other one
    // too and the terminal values are strictly interior here.
    CHECK(cf.values[0] > 0.5);
    CHECK(cf.values[2] < 0.5);
}

TEST_CASE("partition of unity and psi support") {
    Space s = line(9);
    Net net = build_net(s, 0, 8, 0.25, 10.0);
    double r2 = 2 * net.scale;
    for (int y = 0; y < s.size(); ++y) {
        double total = 0;
        bool covered = false;
        for (int x : net.vertices) {
            double d = s.dist(y, x);
            double phi = d < r2 ? (r2 - d) / r2 : 0.0;
            CHECK((d < r2) == (phi > 0));
            total += phi;
            covered = covered || phi > 0;
        }
        REQUIRE(covered);
        // psi_x = phi_x / total sums to 1 by construction; check the
        // normalisation is well conditioned
        CHECK(total > 0.1);
    }
}

TEST_CASE("cut_function dichotomy on random cuts") {
    Space s = line(9);
    Net net = build_net(s, 0, 8, 0.25, 10.0);
    NetGraph g = build_graph(net, s);
    Rng rng(13);
    for (int it = 0; it < 20; ++it) {
        auto side = testing::random_cut_side(rng, g);
        auto cf = cut_function(g, side, s);
        for (int y = 0; y < s.size(); ++y) {
            CHECK(cf.values[y] >= 0.0);
            CHECK(cf.values[y] <= 1.0);
            bool all_in = true, all_out = true;
            for (int x : net.vertices) {
                if (s.dist(y, x) >= 2 * net.scale) continue;
                bool in = std::binary_search(side.begin(), side.end(), x);
                all_in = all_in && in;
                all_out = all_out && !in;
            }
            CHECK((cf.values[y] == 1.0) == all_in);
            CHECK((cf.values[y] == 0.0) == all_out);
        }
    }
}

TEST_CASE("cut_function rejects invalid cuts") {
    Space s = line(5);
    Net net = build_net(s, 0, 4, 0.3, 10.0);
    NetGraph g = build_graph(net, s);
    CHECK_THROWS_AS(cut_function(g, {2}, s), std::invalid_argument);
    CHECK_THROWS_AS(cut_function(g, {0, 4}, s), std::invalid_argument);
    CHECK_THROWS_AS(cut_function(g, {0, 1}, s), std::invalid_argument); // 1 not a vertex
}
