#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "pursuit/families.hpp"
#include "pursuit/oracle.hpp"

using namespace pursuit;

TEST_CASE("finite graphs speak the oracle interface") {
    FamilyGraph p = makeFiniteFamily("path?n=4");
    DismantleResult d = dismantle(p.graph);
    REQUIRE(d.constructible);
    FiniteGraphOracle o(p.graph, d.cert, "path4");

    CHECK(o.name() == "path4");
    CHECK(o.locallyFinite());
    CHECK(o.isVertex("2"));
    CHECK_FALSE(o.isVertex("4"));
    CHECK(o.adjacent("1", "2"));
    CHECK_FALSE(o.adjacent("0", "2"));
    CHECK(o.adjacentOrEqual("3", "3"));
    CHECK_FALSE(o.adjacentOrEqual("nope", "nope"));
    CHECK(o.neighbors("1") == std::vector<Key>({"0", "2"}));

    // Parent chain walks to the construction root and stops.
    CHECK(o.hasParentMap());
    Key root = o.startVertex();
    CHECK_FALSE(o.parent(root).has_value());
    CHECK(o.trailHits(root, {root}) == 0);
    int steps = 0;
    for (Key cur = "0"; o.parent(cur); cur = *o.parent(cur)) ++steps;
    CHECK(steps == 3);
    CHECK(o.trailHits("0", {root}) == 3);
    CHECK_FALSE(o.trailHits("0", {}).has_value());

    // Default menu: self first, then sorted neighbors.
    auto k = makeOracle("k");
    CHECK(k->moveMenu("w", 100) == std::vector<Key>({"w", "t", "tp", "z", "zp"}));

    std::vector<Vertex> badParents(4, -1);
    ConstructionCertificate bad{{0, 1, 2, 3}, badParents};
    CHECK_THROWS_AS(FiniteGraphOracle(p.graph, bad, "bad"), std::invalid_argument);
}

TEST_CASE("ball snapshots around chain vertices") {
    auto chain = makeFamily("kchain").oracle;
    REQUIRE(chain);
    Materialized ball = materializeBall(*chain, {"x1"}, 2);
    // x1 sees x2, t1, tp1; the second step reaches the rest of block 1 plus
    // x3, t2, tp2 through the joint x2.
    CHECK(ball.keys.size() == 10);
    CHECK(ball.graph.edgeCount() == 19);
    CHECK(ball.index.count("x3"));
    CHECK(ball.index.count("w1"));
    CHECK_FALSE(ball.index.count("x4"));
    CHECK_FALSE(ball.index.count("z2"));

    // Boundary marks exactly the shell at the radius.
    std::set<Key> shell;
    for (Vertex v = 0; v < ball.graph.size(); ++v)
        if (ball.boundary[static_cast<std::size_t>(v)]) shell.insert(ball.graph.label(v));
    CHECK(shell == std::set<Key>({"t2", "tp2", "w1", "x3", "z1", "zp1"}));

    // Inner-shell edges survive id ordering: x2 is interior, t2 on the shell.
    CHECK(ball.graph.adjacent(ball.index.at("x2"), ball.index.at("t2")));
    CHECK(ball.graph.adjacent(ball.index.at("x2"), ball.index.at("tp2")));

    // Shell-shell edges come from exact adjacency: the interior triangle z1,
    // zp1, w1 sits entirely on the shell.
    CHECK(ball.graph.adjacent(ball.index.at("z1"), ball.index.at("zp1")));
    CHECK(ball.graph.adjacent(ball.index.at("z1"), ball.index.at("w1")));
    CHECK(ball.graph.adjacent(ball.index.at("zp1"), ball.index.at("w1")));

    CHECK_THROWS_AS(materializeBall(*chain, {"nope"}, 1), std::invalid_argument);
    CHECK_THROWS_AS(materializeBall(*chain, {"x1"}, 5, 3), BudgetError);
}

TEST_CASE("filter snapshots and budget limits") {
    auto hub = makeFamily("kchain?hub=1").oracle;
    Materialized m = materializeFilter(*hub, {"hub", "x1", "x2", "t1"});
    CHECK(m.graph.size() == 4);
    CHECK(m.graph.adjacent(m.index.at("hub"), m.index.at("x1")));
    CHECK(m.graph.adjacent(m.index.at("x1"), m.index.at("t1")));
    CHECK_FALSE(m.graph.adjacent(m.index.at("hub"), m.index.at("t1")));
    // Not locally finite: boundary is conservatively full.
    for (char b : m.boundary) CHECK(b == 1);

    auto plain = makeFamily("kchain").oracle;
    Materialized closed = materializeFilter(*plain, {"x1", "t1", "tp1"});
    // x1's neighborhood sticks out of the set, t1's too.
    for (char b : closed.boundary) CHECK(b == 1);
}

TEST_CASE("oracle breadth-first distances") {
    auto chain = makeFamily("kchain").oracle;
    CHECK(distanceOracle(*chain, "x1", {"x4"}, 10) == 3);
    CHECK(distanceOracle(*chain, "x1", {"x1"}, 0) == 0);
    CHECK_FALSE(distanceOracle(*chain, "x1", {"x4"}, 2).has_value());
    CHECK(distanceOracle(*chain, "x1", [&](const Key& k) { return chain->driftPotential(k) >= 3.0; }, 10) == 2);
    CHECK(distanceOracle(*chain, "t1", {"w1"}, 5) == 1);
    CHECK_THROWS_AS(distanceOracle(*chain, "x1", {"x9"}, 100, 10), BudgetError);
}
