#include <doctest.h>

#include <cmath>

#include "pencil/generators.hpp"

using namespace pencil;

TEST_CASE("line generator") {
    Space s = generate("line", {5});
    REQUIRE(s.size() == 5);
    CHECK(s.coords()[1][0] == doctest::Approx(0.25));
    CHECK(s.coords()[4][0] == doctest::Approx(1.0));
    for (int i = 0; i < 5; ++i) CHECK(s.weight(i) == 1.0);
}

TEST_CASE("grid2d generator") {
    Space s = generate("grid2d", {3});
    REQUIRE(s.size() == 9);
    CHECK(s.dist(0, 1) == doctest::Approx(0.5)); // unit spacing 0.5 on [0,1]^2
    CHECK(s.dist(0, 8) == doctest::Approx(std::sqrt(2.0)));
    CHECK(s.metric() == Metric::euclidean);
}

TEST_CASE("circle generator") {
    Space s = generate("circle", {12});
    REQUIRE(s.size() == 12);
    CHECK(s.dist(0, 6) == doctest::Approx(2.0)); // antipodal chord
    for (int i = 0; i < 12; ++i)
        CHECK(std::hypot(s.coords()[i][0], s.coords()[i][1]) == doctest::Approx(1.0));
}

TEST_CASE("dumbbell generator") {
    Space s = generate("dumbbell", {4, 0.01, 3});
    REQUIRE(s.size() == 35); // 16 + 3 + 16
    // order: left grid, neck, right grid
    CHECK(s.weight(0) == 1.0);
    CHECK(s.weight(16) == 0.01);
    CHECK(s.weight(18) == 0.01);
    CHECK(s.weight(34) == 1.0);
    CHECK(s.coords()[16][0] == doctest::Approx(1.25));
    CHECK(s.coords()[16][1] == doctest::Approx(0.5));
    CHECK(s.coords()[34][0] == doctest::Approx(3.0));
    CHECK(s.coords()[34][1] == doctest::Approx(1.0));
}

TEST_CASE("theta_graph generator") {
    Space s = generate("theta_graph", {5});
    REQUIRE(s.size() == 17); // 2 poles + 3 arcs of 5
    CHECK(s.coords()[0][0] == 0.0);
    CHECK(s.coords()[16][0] == doctest::Approx(1.0));
}

TEST_CASE("generator errors") {
    CHECK_THROWS_AS(generate("moebius", {4}), std::invalid_argument);
    CHECK_THROWS_AS(generate("grid2d", {}), std::invalid_argument);
    CHECK_THROWS_AS(generate("grid2d", {1}), std::invalid_argument);
    CHECK_THROWS_AS(generate("grid2d", {2.5}), std::invalid_argument);
    CHECK_THROWS_AS(generate("dumbbell", {4, -0.1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(generate("dumbbell", {4}), std::invalid_argument);
}
