#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvlab/errors.hpp"
#include "curvlab/graph.hpp"
#include "test_util.hpp"

using namespace curvlab;

TEST_CASE("unit edge builds and rejects detailed-balance violations") {
    Graph k2 = build_graph({"x", "y"}, {{"x", "y", 1.0}, {"y", "x", 1.0}});
    CHECK(k2.size() == 2);
    CHECK(k2.rate(0, 1) == 1.0);
    CHECK(k2.q_min() == 1.0);

    CHECK_THROWS_AS(build_graph({"x", "y"}, {{"x", "y", 2.0}, {"y", "x", 1.0}}), NonReversible);

    // Weighted measure restores balance: 2 * 1 == 1 * 2.
    Graph weighted = build_graph({"x", "y"}, {{"x", "y", 2.0}, {"y", "x", 1.0}},
                                 {{"x", 1.0}, {"y", 2.0}});
    CHECK(weighted.measure(1) == 2.0);
}

TEST_CASE("malformed inputs") {
    CHECK_THROWS_AS(build_graph({"x", "y"}, {{"x", "y", -1.0}, {"y", "x", -1.0}}),
                    NonPositiveRate);
    CHECK_THROWS_AS(build_graph({"x", "y", "z"},
                                {{"x", "y", 1.0}, {"y", "x", 1.0}, {"y", "z", 1.0}}),
                    AsymmetricSupport);
    CHECK_THROWS_AS(build_graph({"x", "y", "z"}, {{"x", "y", 1.0}, {"y", "x", 1.0}}),
                    DisconnectedGraph);
    CHECK_THROWS_AS(build_graph({"x", "x"}, {}), BadParams);

    GraphOptions allow;
    allow.allow_disconnected = true;
    Graph parts = build_graph({"x", "y", "z"}, {{"x", "y", 1.0}, {"y", "x", 1.0}}, {}, allow);
    CHECK_FALSE(parts.connected());
    CHECK(parts.components().size() == 2);
    CHECK_THROWS_AS(parts.distances(), DisconnectedGraph);
    Graph piece = parts.subgraph(parts.components()[0]);
    CHECK(piece.size() == 2);
}

TEST_CASE("hop distances") {
    Graph c6 = generate_cycle(6);
    const auto& d = c6.distances();
    CHECK(d(0, 3) == 3);
    CHECK(d(0, 0) == 0);
    CHECK(d(1, 2) == 1);

    Graph q3 = generate_hypercube(3);
    CHECK(q3.distances()(q3.index("000"), q3.index("111")) == 3);
}

TEST_CASE("q_min") {
    CHECK(generate_cycle(5).q_min() == 1.0);
    Graph mixed = build_graph({"a", "b", "c"},
                              {{"a", "b", 1.0}, {"b", "a", 1.0},
                               {"b", "c", 0.5}, {"c", "b", 0.5},
                               {"a", "c", 2.0}, {"c", "a", 2.0}});
    CHECK(mixed.q_min() == 0.5);
    double c = 0.75;
    CHECK(generate_birth_death(4, 2.0 * c).q_min() == 2.0 * c);
}

TEST_CASE("diameter") {
    CHECK(generate_cycle(6).diameter() == 3);
    CHECK(generate_complete(5).diameter() == 1);
    for (int n : {2, 4, 7}) CHECK(generate_path(n).diameter() == n - 1);
}

TEST_CASE("generated families") {
    Graph c6 = generate_cycle(6);
    CHECK(c6.size() == 6);
    int entries = 0;
    for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y)
            if (c6.rate(x, y) > 0.0) {
                ++entries;
                CHECK(c6.rate(x, y) == 1.0);
            }
    CHECK(entries == 12);

    Graph q3 = generate_hypercube(3);
    CHECK(q3.size() == 8);
    for (int v = 0; v < 8; ++v) CHECK(q3.neighbors(v).size() == 3);

    CHECK_THROWS_AS(generate_cycle(2), BadParams);
    CHECK_THROWS_AS(generate("nosuch", {}), BadParams);
    CHECK(generate("torus2d", {{"n", "3"}, {"m", "4"}}).size() == 12);
    CHECK(generate("cartesian_product", {{"a", "cycle:4"}, {"b", "path:3"}}).size() == 12);
}

TEST_CASE("absorbing birth-death rate pattern") {
    double q_min = 1.0;
    auto rates = birth_death_rates(5, 2.0 * q_min, /*absorbing=*/true);
    for (const auto& [from, to, rate] : rates) {
        CHECK(from > 0);
        CHECK(std::abs(from - to) == 1);
        CHECK(rate == 2.0 * q_min);
    }
    int interior = 0;
    for (const auto& [from, to, rate] : rates)
        if (from >= 1 && from <= 4) ++interior;
    CHECK(interior == 8);

    // The reversible variant keeps level 0 attached.
    auto reflecting = birth_death_rates(5, 2.0, /*absorbing=*/false);
    bool from_zero = false;
    for (const auto& [from, to, rate] : reflecting)
        if (from == 0) from_zero = true;
    CHECK(from_zero);
}

TEST_CASE("generated graphs are exactly reversible with unit measure") {
    for (const auto& [name, g] : testutil::named_corpus()) {
        CAPTURE(name);
        for (int x = 0; x < g.size(); ++x) {
            CHECK(g.measure(x) == 1.0);
            for (int y : g.neighbors(x)) CHECK(g.rate(x, y) == g.rate(y, x));
        }
    }
}

TEST_CASE("triangle inequality on every corpus graph") {
    for (const auto& [name, g] : testutil::full_corpus(6)) {
        CAPTURE(name);
        const auto& d = g.distances();
        for (int x = 0; x < g.size(); ++x) {
            for (int y = 0; y < g.size(); ++y) {
                CHECK(d(x, y) == d(y, x));
                if (x != y) CHECK((d(x, y) == 1) == g.adjacent(x, y));
                for (int z = 0; z < g.size(); ++z) CHECK(d(x, z) <= d(x, y) + d(y, z));
            }
        }
    }
}

TEST_CASE("product diameter adds") {
    Graph c6 = generate_cycle(6);
    Graph p4 = generate_path(4);
    CHECK(cartesian_product(c6, p4).diameter() == c6.diameter() + p4.diameter());
    Graph c4 = generate_cycle(4);
    CHECK(cartesian_product(c4, c4).diameter() == 4);
}

TEST_CASE("random reversible corpus stays valid") {
    for (int s = 0; s < 10; ++s) {
        Graph g = testutil::random_reversible_graph(static_cast<std::uint64_t>(s) + 1, 4 + s % 7);
        CHECK(g.connected());
        CHECK(g.q_min() > 0.0);
    }
}
