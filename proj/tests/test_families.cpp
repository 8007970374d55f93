#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <set>

#include <json.hpp>

#include "pursuit/families.hpp"
#include "pursuit/solver.hpp"

using namespace pursuit;

namespace {

std::set<std::pair<std::string, std::string>> labeledEdges(const FiniteGraph& g) {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& [u, v] : g.edgeList()) {
        std::string a = g.label(u), b = g.label(v);
        if (a > b) std::swap(a, b);
        out.emplace(a, b);
    }
    return out;
}

}  // namespace

TEST_CASE("family spec grammar") {
    FamilySpec plain = FamilySpec::parse("k");
    CHECK(plain.name == "k");
    CHECK(plain.params.empty());
    CHECK(plain.canonical() == "k");

    FamilySpec chain = FamilySpec::parse("kchain?hub=1&blocks=3");
    CHECK(chain.getInt("blocks") == 3);
    CHECK(chain.getBool("hub", false));
    CHECK(chain.canonical() == "kchain?blocks=3&hub=1");

    FamilySpec nested = FamilySpec::parse("ppath?base={cycle?n=4}&n=6");
    CHECK(nested.getString("base") == "cycle?n=4");
    CHECK(nested.getInt("n") == 6);
    CHECK(nested.canonical() == "ppath?base={cycle?n=4}&n=6");
    CHECK(FamilySpec::parse(nested.canonical()).getString("base") == "cycle?n=4");

    FamilySpec doubly = FamilySpec::parse("hive?base={ppath?base={cycle?n=4}&n=2}&height=3");
    CHECK(doubly.getString("base") == "ppath?base={cycle?n=4}&n=2");

    CHECK_THROWS_AS(FamilySpec::parse("?n=3"), std::invalid_argument);
    CHECK_THROWS_AS(FamilySpec::parse("path?n=3&n=4"), std::invalid_argument);
    CHECK_THROWS_AS(FamilySpec::parse("path?n"), std::invalid_argument);
    CHECK_THROWS_AS(FamilySpec::parse("ppath?base={cycle?n=4"), std::invalid_argument);
    CHECK_THROWS_AS(makeFamily("no_such_family"), std::invalid_argument);
    CHECK_THROWS_AS(makeFamily("k?bogus=1"), std::invalid_argument);
    CHECK_THROWS_AS(makeFamily("path?m=3"), std::invalid_argument);
}

TEST_CASE("valve gadget matches its frozen edge set") {
    FamilyGraph k = makeFiniteFamily("k");
    REQUIRE(k.graph.size() == 7);
    REQUIRE(k.graph.edgeCount() == 14);

    std::set<std::pair<std::string, std::string>> expected = {
        {"x", "y"}, {"y", "z"}, {"y", "zp"}, {"t", "y"}, {"tp", "y"}, {"t", "x"}, {"tp", "x"},
        {"t", "w"}, {"w", "z"}, {"tp", "w"}, {"w", "zp"}, {"t", "z"}, {"tp", "zp"}, {"z", "zp"},
    };
    CHECK(labeledEdges(k.graph) == expected);

    // The unique dominated vertex is x (under y); dismantling succeeds.
    for (Vertex v = 0; v < k.graph.size(); ++v) {
        bool dominated = false;
        for (Vertex u = 0; u < k.graph.size(); ++u)
            if (u != v && dominates(k.graph, u, v)) dominated = true;
        CHECK(dominated == (k.graph.label(v) == "x"));
    }
    CHECK(dismantle(k.graph).constructible);
}

TEST_CASE("valve gadget round-trips through the repository fixture") {
    std::ifstream in(std::string(PURSUIT_SOURCE_DIR) + "/data/k_graph.json");
    REQUIRE(in.good());
    nlohmann::json fixture = nlohmann::json::parse(in);
    FamilyGraph k = makeFiniteFamily("k");
    CHECK(graphToJson(k.graph, "k") == fixture);
    NamedGraph loaded = graphFromJson(fixture);
    CHECK(loaded.name == "k");
    CHECK(labeledEdges(loaded.graph) == labeledEdges(k.graph));
}

TEST_CASE("two glued blocks share one joint") {
    FamilyGraph g = makeFiniteFamily("two_k");
    CHECK(g.graph.size() == 13);
    CHECK(g.graph.edgeCount() == 28);
    CHECK(g.lookup("y2") == g.lookup("x1"));
    CHECK(g.groups.at("block1").size() == 7);
    CHECK(g.groups.at("block2").size() == 7);
    CHECK(connected(g.graph));

    // Constructible, and the elimination must start at the far joint x2,
    // dominated by the shared vertex. Yet no order's domination map is a
    // homomorphism; this one is no exception.
    DismantleResult d = dismantle(g.graph);
    REQUIRE(d.constructible);
    CHECK(g.graph.label(d.cert.order.back()) == "x2");
    CHECK(g.graph.label(d.cert.parent[static_cast<std::size_t>(g.lookup("x2"))]) == "x1");
    CHECK_FALSE(isHomomorphism(g.graph, d.cert));
    GameSolution sol = solve(g.graph);
    CHECK(sol.copwin);
}

TEST_CASE("finite chains") {
    FamilyGraph hubbed = makeFiniteFamily("kchain?blocks=3&hub=1");
    CHECK(hubbed.graph.size() == 20);
    CHECK(hubbed.graph.edgeCount() == 3 * 14 + 4);
    CHECK(hubbed.lookup("y1") == hubbed.lookup("x2"));
    CHECK(hubbed.groups.at("joints").size() == 4);
    for (int i = 1; i <= 3; ++i) CHECK(hubbed.groups.at("block" + std::to_string(i)).size() == 7);
    CHECK(hubbed.boundary == std::vector<Vertex>{hubbed.lookup("x4")});
    for (int i = 1; i <= 4; ++i)
        CHECK(hubbed.graph.adjacent(hubbed.lookup("hub"), hubbed.lookup("x" + std::to_string(i))));
    CHECK(dismantle(hubbed.graph).constructible);

    FamilyGraph plain = makeFiniteFamily("kchain?blocks=3");
    CHECK(plain.graph.size() == 19);
    CHECK(plain.graph.edgeCount() == 42);
    CHECK_THROWS_AS(plain.lookup("hub"), std::invalid_argument);

    FamilyGraph twoWay = makeFiniteFamily("kchain?blocks=3&direction=two");
    CHECK(twoWay.boundary == std::vector<Vertex>({twoWay.lookup("x1"), twoWay.lookup("x4")}));

    CHECK_THROWS_AS(makeFiniteFamily("kchain?blocks=0"), std::invalid_argument);
    CHECK_THROWS_AS(makeFiniteFamily("kchain?blocks=2&direction=diagonal"), std::invalid_argument);
}

TEST_CASE("two blocks under a pair of apex vertices") {
    FamilyGraph g = makeFiniteFamily("omega1?blocks=2");
    CHECK(g.graph.size() == 16);
    CHECK(g.graph.edgeCount() == 2 * 14 + 4 + 2 + 1);
    Vertex a = g.lookup("A"), bv = g.lookup("B");
    CHECK(g.graph.adjacent(a, bv));
    for (int i = 1; i <= 2; ++i) {
        CHECK(g.graph.adjacent(a, g.lookup("x" + std::to_string(i))));
        CHECK(g.graph.adjacent(a, g.lookup("y" + std::to_string(i))));
        CHECK(g.graph.adjacent(bv, g.lookup("x" + std::to_string(i))));
        CHECK_FALSE(g.graph.adjacent(bv, g.lookup("y" + std::to_string(i))));
    }
    CHECK(g.boundary == std::vector<Vertex>({a, bv}));
    CHECK(connected(g.graph));
    CHECK(dismantle(g.graph).constructible);
}

TEST_CASE("layered path product") {
    FamilyGraph g = makeFiniteFamily("ppath?base={cycle?n=4}&n=6");
    CHECK(g.graph.size() == 28);
    CHECK(g.graph.edgeCount() == 102);
    for (int j = 0; j <= 6; ++j) CHECK(g.groups.at("layer" + std::to_string(j)).size() == 4);

    // Top layer is a clique; other layers copy the base cycle.
    const auto& top = g.groups.at("layer6");
    for (std::size_t i = 0; i < top.size(); ++i)
        for (std::size_t j = i + 1; j < top.size(); ++j) CHECK(g.graph.adjacent(top[i], top[j]));
    CHECK_FALSE(g.graph.adjacent(g.lookup("(0,0)"), g.lookup("(2,0)")));
    CHECK(g.graph.adjacent(g.lookup("(0,0)"), g.lookup("(1,1)")));
    CHECK(g.graph.adjacent(g.lookup("(0,2)"), g.lookup("(0,3)")));
    CHECK_FALSE(g.graph.adjacent(g.lookup("(0,0)"), g.lookup("(0,2)")));
    CHECK(connected(g.graph));
}

TEST_CASE("cycle-decorated graph") {
    FamilyGraph g = makeFiniteFamily("c4dot?base=k");
    CHECK(g.graph.size() == 28);
    CHECK(g.graph.edgeCount() == 7 * 4 + 14);
    CHECK(g.groups.at("core").size() == 7);
    CHECK(g.graph.adjacent(g.lookup("(x,0)"), g.lookup("(y,0)")));
    CHECK_FALSE(g.graph.adjacent(g.lookup("(x,1)"), g.lookup("(y,1)")));
    CHECK(g.graph.adjacent(g.lookup("(x,0)"), g.lookup("(x,1)")));
    CHECK(g.graph.adjacent(g.lookup("(x,0)"), g.lookup("(x,3)")));
    CHECK_FALSE(g.graph.adjacent(g.lookup("(x,1)"), g.lookup("(x,3)")));
}

TEST_CASE("paths cycles and capped prisms") {
    FamilyGraph p = makeFiniteFamily("path?n=5");
    CHECK(p.graph.size() == 5);
    CHECK(p.graph.edgeCount() == 4);
    CHECK(dismantle(p.graph).constructible);

    FamilyGraph c = makeFiniteFamily("cycle?n=4");
    CHECK(c.graph.size() == 4);
    CHECK(c.graph.edgeCount() == 4);
    CHECK_FALSE(dismantle(c.graph).constructible);
    CHECK_THROWS_AS(makeFiniteFamily("cycle?n=2"), std::invalid_argument);

    FamilyGraph h = makeFiniteFamily("hive?base={cycle?n=4}&height=7");
    CHECK(h.graph.size() == 33);
    Vertex apex = h.lookup("hive");
    CHECK(h.graph.degree(apex) == 4);
    for (Vertex v : h.groups.at("layer7")) CHECK(h.graph.adjacent(apex, v));
    for (Vertex v : h.groups.at("layer6")) CHECK_FALSE(h.graph.adjacent(apex, v));
    CHECK(connected(h.graph));
}

TEST_CASE("coordinate stages and union truncations dispatch") {
    CHECK(makeFiniteFamily("gee?stage=2").graph.size() == 28);
    CHECK(makeFiniteFamily("hgraph?levels=1").graph.size() == 34);

    FamilyInstance inf1 = makeFamily("gee");
    REQUIRE(inf1.oracle);
    CHECK_FALSE(inf1.isFinite());
    CHECK(inf1.oracle->startVertex() == "[]");

    FamilyInstance inf2 = makeFamily("hgraph");
    REQUIRE(inf2.oracle);
    CHECK(inf2.oracle->startVertex() == "0:o");

    FamilyInstance inf3 = makeFamily("kchain?hub=1");
    REQUIRE(inf3.oracle);
    CHECK_FALSE(inf3.oracle->locallyFinite());
}

TEST_CASE("block extension combinator") {
    FamilyGraph k = makeFiniteFamily("k");
    Vertex a = k.lookup("z"), b = k.lookup("y");
    BlockExtension ext = extendWithBlock(k.graph, a, b);
    CHECK(ext.graph.size() == 13);
    CHECK(ext.graph.edgeCount() == 14 + 15);
    CHECK(ext.graph.label(ext.newX) == "x@7");
    CHECK(ext.graph.adjacent(ext.newX, a));
    CHECK(ext.graph.adjacent(ext.newX, b));
    CHECK(ext.graph.adjacent(ext.graph.requireLabel("w@7"), ext.graph.requireLabel("z@7")));
    CHECK_FALSE(ext.graph.adjacent(ext.graph.requireLabel("w@7"), b));
    CHECK(dismantle(ext.graph).constructible);

    // Extending across a non-edge is rejected.
    CHECK_THROWS_AS(extendWithBlock(k.graph, k.lookup("x"), k.lookup("w")), std::invalid_argument);

    // Chained extensions keep fresh labels and stay constructible.
    BlockExtension ext2 = extendWithBlock(ext.graph, ext.attachB, ext.newX);
    CHECK(ext2.graph.size() == 19);
    CHECK(ext2.graph.edgeCount() == 29 + 15);
    CHECK(dismantle(ext2.graph).constructible);
}

TEST_CASE("chain oracle agrees with finite truncations") {
    auto oracle = makeFamily("kchain").oracle;
    REQUIRE(oracle);
    CHECK(oracle->locallyFinite());

    CHECK(oracle->isVertex("x1"));
    CHECK(oracle->isVertex("zp3"));
    CHECK(oracle->isVertex("x12"));
    CHECK_FALSE(oracle->isVertex("x0"));
    CHECK_FALSE(oracle->isVertex("x"));
    CHECK_FALSE(oracle->isVertex("x01"));
    CHECK_FALSE(oracle->isVertex("q5"));
    CHECK_FALSE(oracle->isVertex("hub"));

    // Snapshot of blocks 1..3 equals the finite family member label-for-label.
    FamilyGraph finite = makeFiniteFamily("kchain?blocks=3");
    std::vector<Key> keys;
    for (Vertex v = 0; v < finite.graph.size(); ++v) keys.push_back(finite.graph.label(v));
    Materialized snap = materializeFilter(*oracle, keys);
    CHECK(labeledEdges(snap.graph) == labeledEdges(finite.graph));
    for (Vertex v = 0; v < snap.graph.size(); ++v)
        CHECK(static_cast<bool>(snap.boundary[static_cast<std::size_t>(v)]) == (snap.graph.label(v) == "x4"));

    // Rightward parents: one block gained at most every two steps.
    CHECK(oracle->hasParentMap());
    CHECK(oracle->parent("x1") == Key("x2"));
    CHECK(oracle->parent("t2") == Key("z2"));
    CHECK(oracle->parent("w2") == Key("z2"));
    CHECK(oracle->parent("tp1") == Key("zp1"));
    CHECK(oracle->parent("z1") == Key("x2"));
    CHECK(oracle->trailHits("t1", {"x3"}) == 3);
    CHECK(oracle->trailHits("x1", {"x1"}) == 0);
    CHECK_FALSE(oracle->trailHits("t1", {"w2", "tp2"}).has_value());
    CHECK(oracle->driftPotential("w5") == 5.0);

    // Every parent is a neighbor, and trails leave any finite window.
    for (const Key& k : keys) {
        auto par = oracle->parent(k);
        REQUIRE(par);
        CHECK(oracle->adjacent(k, *par));
    }
}

TEST_CASE("chain oracle hub and two-way variants") {
    auto hub = makeFamily("kchain?hub=1").oracle;
    REQUIRE(hub);
    CHECK(hub->isVertex("hub"));
    CHECK(hub->adjacent("hub", "x7"));
    CHECK_FALSE(hub->adjacent("hub", "z3"));
    CHECK_THROWS_AS(hub->neighbors("hub", 1000), BudgetError);
    std::vector<Key> menu = hub->moveMenu("hub", 5);
    CHECK(menu == std::vector<Key>({"hub", "x1", "x2", "x3", "x4"}));
    CHECK_FALSE(hub->hasParentMap());
    // Joints see the hub in their neighborhoods.
    std::vector<Key> nx2 = hub->neighbors("x2", 100);
    CHECK(std::find(nx2.begin(), nx2.end(), "hub") != nx2.end());

    auto two = makeFamily("kchain?direction=two").oracle;
    REQUIRE(two);
    CHECK(two->isVertex("x0"));
    CHECK(two->isVertex("x-2"));
    CHECK(two->isVertex("w-1"));
    CHECK(two->adjacent("x0", "x1"));
    CHECK(two->adjacent("x-1", "x0"));
    CHECK(two->adjacent("x0", "z-1"));
    CHECK_FALSE(two->hasParentMap());
    CHECK(two->neighbors("x1", 100).size() == 8);  // no chain end, no hub
}

TEST_CASE("oracle wrapper for finite members carries construction parents") {
    auto k = makeOracle("k");
    CHECK(k->locallyFinite());
    CHECK(k->hasParentMap());
    CHECK(k->parent("x") == Key("y"));
    CHECK(k->adjacentOrEqual("x", "x"));
    CHECK_FALSE(k->parent(k->startVertex()).has_value());

    // Non-dismantlable member: wrapper exists, but no parent map.
    auto c4 = makeOracle("cycle?n=4");
    CHECK_FALSE(c4->hasParentMap());
    CHECK(c4->neighbors("0", 10).size() == 2);
}
