#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "pursuit/families.hpp"
#include "pursuit/hgraph.hpp"

using namespace pursuit;
using namespace pursuit::hg;

TEST_CASE("address codec") {
    CHECK(encodeAddr(originAt(0)) == "0:o");
    CHECK(encodeAddr(hiveAt(1)) == "1:v");
    CHECK(encodeAddr(originAt(2)) == "2:((o,0),0)");
    CHECK(encodeAddr(embed(hiveAt(1))) == "2:(v,0)");

    for (const char* good : {"0:o", "1:v", "1:(o,3)", "1:(c1,0)", "2:((o,0),5)", "2:(c2,0)", "2:(v,3)",
                             "2:((c3,7),9)", "3:((v,1),0)"}) {
        auto a = tryDecodeAddr(good);
        REQUIRE(a.has_value());
        CHECK(encodeAddr(*a) == good);
    }

    for (const char* bad : {"", "o", ":o", "0:v", "1:o", "1:c1", "0:c1", "1:(o,8)", "2:(o,3)", "1:(v,0)",
                            "2:((o,0),10)", "1:(o,-1)", "1:(o,3", "x:o", "1:(o,3))", "2:((o,1),0)x"})
        CHECK_FALSE(tryDecodeAddr(bad).has_value());

    // Layer ranges follow the stage: stage 1 tops out at 7, stage 2 at 9.
    CHECK(levelLength(1) == 7);
    CHECK(levelLength(2) == 9);
    CHECK(tryDecodeAddr("2:((o,7),9)").has_value());
    CHECK_FALSE(tryDecodeAddr("2:((o,8),9)").has_value());
}

TEST_CASE("stage sizes") {
    CHECK(stageSize(0) == 1);
    CHECK(stageSize(1) == 33);
    CHECK(stageSize(2) == 361);
    CHECK(stageVertices(1).size() == 33);
    CHECK(stageVertices(2).size() == 361);
    CHECK_THROWS_AS(stageVertices(2, 100), BudgetError);
}

TEST_CASE("stage adjacency on frozen pairs") {
    auto adj = [](const char* a, const char* b) { return adjacentUnion(decodeAddr(a), decodeAddr(b)); };

    // Apex sees exactly the top layer.
    CHECK(adj("1:v", "1:(o,7)"));
    CHECK(adj("1:v", "1:(c2,7)"));
    CHECK_FALSE(adj("1:v", "1:(o,6)"));

    // Within a layer: the wrap's edges; across layers: adjacent-or-equal.
    CHECK(adj("1:(c1,3)", "1:(o,3)"));
    CHECK(adj("1:(c1,3)", "1:(c2,4)"));
    CHECK_FALSE(adj("1:(c1,3)", "1:(c3,3)"));
    CHECK(adj("1:(c1,3)", "1:(c1,4)"));
    CHECK_FALSE(adj("1:(c1,3)", "1:(c1,5)"));
    CHECK(adj("1:(o,0)", "1:(c3,1)"));

    // Union edges: embedded copy plus its closed neighborhood one stage up.
    CHECK(adj("0:o", "1:(o,0)"));
    CHECK(adj("0:o", "1:(o,1)"));
    CHECK(adj("0:o", "1:(c1,0)"));
    CHECK_FALSE(adj("0:o", "1:(o,2)"));
    CHECK_FALSE(adj("0:o", "2:((o,0),0)"));
    CHECK(adj("1:(o,0)", "2:((o,0),0)"));
    CHECK(adj("1:(o,0)", "2:((o,0),1)"));
    CHECK_FALSE(adj("1:(c2,5)", "2:((c2,5),4)"));
    CHECK(adj("1:v", "2:(v,0)"));
    CHECK(adj("1:v", "2:(v,1)"));
    CHECK_FALSE(adj("1:v", "2:(v,2)"));
}

TEST_CASE("truncations agree with the oracle's neighbor enumeration") {
    Truncation t = buildTruncation(1);
    CHECK(t.graph.size() == 34);
    HGraphOracle o;
    CHECK(o.locallyFinite());
    for (Vertex v = 0; v < t.graph.size(); ++v) {
        std::set<std::string> inGraph;
        for (Vertex w : t.graph.neighbors(v)) inGraph.insert(t.graph.label(w));
        std::set<std::string> fromOracle;
        for (const Key& k : o.neighbors(t.graph.label(v), 100000))
            if (decodeAddr(k).level <= 1) fromOracle.insert(k);
        REQUIRE(inGraph == fromOracle);
    }

    // Union neighborhoods off the truncation edge: the level-0 origin also
    // sees its copy one level up and that copy's neighbors.
    std::vector<Key> n0 = o.neighbors("0:o", 1000);
    CHECK(n0 == std::vector<Key>({"1:(c1,0)", "1:(c1,1)", "1:(c3,0)", "1:(c3,1)", "1:(o,0)", "1:(o,1)"}));
}

TEST_CASE("exact stage distances match breadth-first search") {
    // Apex to bottom spine: one more than the layer count.
    CHECK(stageDistance(hiveAt(1), originAt(1)) == levelLength(1) + 1);
    CHECK(stageDistance(hiveAt(2), originAt(2)) == levelLength(2) + 1);

    Truncation t1 = buildTruncation(1);
    std::vector<Vertex> level1;
    std::vector<Addr> addr1;
    for (Vertex v = 0; v < t1.graph.size(); ++v)
        if (t1.addrs[static_cast<std::size_t>(v)].level == 1) {
            level1.push_back(v);
            addr1.push_back(t1.addrs[static_cast<std::size_t>(v)]);
        }
    Induced g1 = induced(t1.graph, level1);
    for (std::size_t i = 0; i < addr1.size(); ++i)
        for (std::size_t j = i + 1; j < addr1.size(); ++j) {
            auto bfs = distance(g1.graph, static_cast<Vertex>(i), static_cast<Vertex>(j), 100);
            REQUIRE(bfs.has_value());
            REQUIRE(stageDistance(addr1[i], addr1[j]) == *bfs);
        }

    // Sampled pairs at stage 2.
    Truncation t2 = buildTruncation(2);
    std::vector<Vertex> level2;
    std::vector<Addr> addr2;
    for (Vertex v = 0; v < t2.graph.size(); ++v)
        if (t2.addrs[static_cast<std::size_t>(v)].level == 2) {
            level2.push_back(v);
            addr2.push_back(t2.addrs[static_cast<std::size_t>(v)]);
        }
    Induced g2 = induced(t2.graph, level2);
    Rng rng(20240817);
    for (int trial = 0; trial < 60; ++trial) {
        auto i = rng.bounded(addr2.size());
        auto j = rng.bounded(addr2.size());
        auto bfs = distance(g2.graph, static_cast<Vertex>(i), static_cast<Vertex>(j), 1000);
        REQUIRE(bfs.has_value());
        REQUIRE(stageDistance(addr2[i], addr2[j]) == *bfs);
    }

    // The lower bound never exceeds a true union distance.
    for (int trial = 0; trial < 40; ++trial) {
        auto i = rng.bounded(static_cast<std::size_t>(t2.graph.size()));
        auto j = rng.bounded(static_cast<std::size_t>(t2.graph.size()));
        auto bfs = distance(t2.graph, static_cast<Vertex>(i), static_cast<Vertex>(j), 1000);
        REQUIRE(bfs.has_value());
        CHECK(unionDistanceLowerBound(t2.addrs[i], t2.addrs[j]) <= *bfs);
    }
}

TEST_CASE("projections and hive types") {
    // One-step retraction collapses cycle vertices to the stage origin.
    CHECK(qProjection(decodeAddr("1:(c2,4)")) == originAt(0));
    CHECK(qProjection(decodeAddr("2:((o,3),5)")) == decodeAddr("1:(o,3)"));
    CHECK_FALSE(qProjection(hiveAt(2)).has_value());

    CHECK(jProjection(decodeAddr("2:((o,3),5)"), 1) == decodeAddr("1:(o,3)"));
    CHECK(jProjection(decodeAddr("2:(v,8)"), 1) == hiveAt(1));
    CHECK(jProjection(decodeAddr("0:o"), 2) == originAt(2));
    CHECK(jProjection(hiveAt(2), 1) == hiveAt(2));

    CHECK(hiveTypeOrder(hiveAt(2)) == 2);
    CHECK(hiveTypeOrder(decodeAddr("2:(v,3)")) == 1);
    CHECK_FALSE(hiveTypeOrder(decodeAddr("2:((c2,4),7)")).has_value());
    CHECK_FALSE(hiveTypeOrder(originAt(2)).has_value());

    WrapProjection wp = jPrimeProjection(decodeAddr("2:(v,8)"), 1);
    CHECK(wp.atApex);
    CHECK(wp.apexStage == 1);
    WrapProjection wc = jPrimeProjection(decodeAddr("2:((c2,4),7)"), 1);
    CHECK_FALSE(wc.atApex);
    CHECK(wc.h.cyc == 2);

    CHECK(isSpine(originAt(2)));
    CHECK(isSpine(decodeAddr("0:o")));
    CHECK_FALSE(isSpine(decodeAddr("2:((o,1),0)")));
    CHECK_FALSE(isSpine(hiveAt(1)));
}

TEST_CASE("family wrapper groups the truncation") {
    FamilyGraph fam = makeFiniteFamily("hgraph?levels=2");
    CHECK(fam.graph.size() == 395);
    CHECK(fam.groups.at("level0").size() == 1);
    CHECK(fam.groups.at("level1").size() == 33);
    CHECK(fam.groups.at("level2").size() == 361);
    CHECK(fam.groups.at("spine").size() == 3);
    CHECK(fam.groups.at("hivetype1").size() == 11);
    CHECK(fam.groups.at("hivetype2").size() == 1);
    CHECK(fam.lookup("v1") == fam.lookup("1:v"));
    CHECK(fam.lookup("origin") == fam.lookup("0:o"));

    // First apex sits at the documented depth from the whole spine.
    auto d = distance(fam.graph, fam.lookup("v1"), fam.groups.at("spine"), 100);
    REQUIRE(d.has_value());
    CHECK(*d == 8);
}

TEST_CASE("oracle move menus stay legal under budget pressure") {
    HGraphOracle o;
    for (const Key& k : {Key("0:o"), Key("1:(o,3)"), Key("2:(v,9)"), Key("1:v"), Key("2:v")}) {
        std::vector<Key> menu = o.moveMenu(k, 40);
        REQUIRE(!menu.empty());
        CHECK(menu.front() == k);
        CHECK(menu.size() <= 40);
        for (std::size_t i = 1; i < menu.size(); ++i) CHECK(o.adjacent(k, menu[i]));
        CHECK(std::set<Key>(menu.begin(), menu.end()).size() == menu.size());
    }
    CHECK(o.driftPotential("2:(v,3)") == 2.0);
    CHECK(o.startVertex() == "0:o");
}
