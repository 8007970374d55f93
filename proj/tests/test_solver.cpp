#include <catch2/catch_amalgamated.hpp>

#include "pursuit/construct.hpp"
#include "pursuit/solver.hpp"

using namespace pursuit;

namespace {

FiniteGraph makeKByHand() {
    std::vector<std::string> labels = {"x", "y", "z", "zp", "t", "tp", "w"};
    auto id = [&labels](const std::string& s) {
        return static_cast<int>(std::find(labels.begin(), labels.end(), s) - labels.begin());
    };
    std::vector<Edge> edges;
    for (auto [a, b] : std::vector<std::pair<std::string, std::string>>{
             {"y", "x"}, {"y", "z"}, {"y", "zp"}, {"y", "t"}, {"y", "tp"}, {"x", "t"}, {"x", "tp"},
             {"w", "t"}, {"w", "z"}, {"w", "tp"}, {"w", "zp"}, {"z", "t"}, {"zp", "tp"}, {"z", "zp"}})
        edges.emplace_back(id(a), id(b));
    return FiniteGraph(7, edges, labels);
}

FiniteGraph cycle(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return FiniteGraph(n, edges);
}

FiniteGraph path(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return FiniteGraph(n, edges);
}

struct PolicyPlayout {
    bool captured = false;
    int copMoves = 0;
    Vertex captureVertex = -1;
};

// Runs both optimal policies from the solution's own placements.
PolicyPlayout playPolicies(const GameSolution& sol, int maxCopMoves) {
    PolicyPlayout out;
    Vertex c = sol.copStart;
    Vertex r = sol.robberPlace[static_cast<std::size_t>(c)];
    if (r == -1) {  // single-vertex board: robber must sit on the cop
        out.captured = true;
        out.captureVertex = c;
        return out;
    }
    auto idx = [&sol](Vertex cc, Vertex rr) {
        return static_cast<std::size_t>(cc) * static_cast<std::size_t>(sol.n) + static_cast<std::size_t>(rr);
    };
    for (int move = 1; move <= maxCopMoves; ++move) {
        c = sol.copPolicy[idx(c, r)];
        ++out.copMoves;
        if (c == r) {
            out.captured = true;
            out.captureVertex = c;
            return out;
        }
        r = sol.robberPolicy[idx(c, r)];
        if (r == c) {
            out.captured = true;
            out.captureVertex = c;
            return out;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("trivial boards") {
    auto one = solve(FiniteGraph(1, {}));
    CHECK(one.copwin);
    CHECK(one.captureTime == 0);

    auto edge = solve(FiniteGraph(2, {{0, 1}}));
    CHECK(edge.copwin);
    CHECK(edge.captureTime == 1);

    auto p3 = solve(path(3));
    CHECK(p3.copwin);
    CHECK(p3.captureTime == 1);
    CHECK(p3.copStart == 1);
}

TEST_CASE("four-cycle is a robber win") {
    auto sol = solve(cycle(4));
    CHECK_FALSE(sol.copwin);
    CHECK(sol.captureTime == -1);

    // The extracted robber policy must evade forever, against the optimal
    // cop policy and against arbitrary cop behavior.
    auto idx = [&sol](Vertex c, Vertex r) { return static_cast<std::size_t>(c) * 4 + static_cast<std::size_t>(r); };
    Vertex c = 0;
    Vertex r = sol.robberPlace[0];
    REQUIRE(r != -1);
    for (int turn = 0; turn < 10'000; ++turn) {
        c = sol.copPolicy[idx(c, r)];
        REQUIRE(c != r);
        r = sol.robberPolicy[idx(c, r)];
        REQUIRE(r != c);
    }
    Rng rng(7);
    c = 2;
    r = sol.robberPlace[2];
    for (int turn = 0; turn < 10'000; ++turn) {
        auto menu = closedNeighborhood(cycle(4), c);
        c = menu[static_cast<std::size_t>(rng.boundedInt(static_cast<int>(menu.size())))];
        REQUIRE(c != r);
        r = sol.robberPolicy[idx(c, r)];
        REQUIRE(r != c);
    }
}

TEST_CASE("blocking gadget value and capture vertex") {
    FiniteGraph k = makeKByHand();
    auto sol = solve(k);
    CHECK(sol.copwin);
    // Opening at z leaves the robber only x (dies in 2) or tp; from tp the
    // reply tp -> x against z -> zp -> y is forced, so the value is 3.
    CHECK(sol.captureTime == 3);
    CHECK(k.label(sol.copStart) == "z");
    auto playout = playPolicies(sol, 10);
    REQUIRE(playout.captured);
    CHECK(playout.copMoves == sol.captureTime);
    CHECK(k.label(playout.captureVertex) == "x");
}

TEST_CASE("constructible iff copwin on assorted graphs") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        FiniteGraph g = randomConstructibleGraph(3 + static_cast<int>(seed % 10), seed * 131);
        CAPTURE(seed);
        CHECK(solve(g).copwin);
    }
    CHECK_FALSE(solve(cycle(5)).copwin);
    CHECK(solve(cycle(3)).copwin);
}

TEST_CASE("optimal playout matches capture time") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        FiniteGraph g = randomConstructibleGraph(4 + static_cast<int>(seed % 9), seed * 311);
        auto sol = solve(g);
        REQUIRE(sol.copwin);
        auto playout = playPolicies(sol, sol.captureTime + 2);
        CAPTURE(seed);
        CHECK(playout.captured);
        CHECK(playout.copMoves == sol.captureTime);
    }
}

TEST_CASE("bellman consistency") {
    FiniteGraph k = makeKByHand();
    auto sol = solve(k);
    const int n = k.size();
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) {
            if (c == r) continue;
            std::uint32_t vc = sol.at(c, r, 0);
            std::uint32_t best = kInfValue;
            for (Vertex cp : closedNeighborhood(k, c)) {
                std::uint32_t succ = cp == r ? 0 : sol.at(cp, r, 1);
                best = std::min(best, succ == kInfValue ? kInfValue : succ);
            }
            std::uint32_t expect = best == kInfValue ? kInfValue : best + 1;
            CHECK(vc == expect);

            std::uint32_t vr = sol.at(c, r, 1);
            std::uint32_t worst = 0;
            for (Vertex rp : closedNeighborhood(k, r)) {
                if (rp == c) continue;  // suicide move is never the max (stay exists)
                worst = std::max(worst, sol.at(c, rp, 0));
            }
            CHECK(vr == worst);
        }
    }
}

TEST_CASE("forbidden cop vertices") {
    FiniteGraph p3 = path(3);
    auto sol = solve(p3, {1});
    CHECK_FALSE(sol.copwin);  // robber camps on the forbidden middle vertex

    CHECK_THROWS_AS(solve(p3, {0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(solve(p3, {5}), std::invalid_argument);

    auto noF = solve(p3, {});
    CHECK(noF.copwin);

    // Monotonicity as stated: whenever both sides are cop-win the
    // unrestricted game is at most as slow.
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        FiniteGraph g = randomConstructibleGraph(7, seed * 17);
        auto base = solve(g);
        for (int f = 0; f < g.size(); ++f) {
            auto restricted = solve(g, {f});
            if (base.copwin && restricted.copwin) CHECK(base.captureTime <= restricted.captureTime);
        }
    }
}

TEST_CASE("solution json shape") {
    FiniteGraph k = makeKByHand();
    auto sol = solve(k);
    auto j = solutionToJson(k, sol, true);
    CHECK(j["copwin"] == true);
    CHECK(j["capture_time"] == 3);
    CHECK(j["cop_start"] == "z");
    CHECK(j["values"].size() == 7);
    CHECK(j["cop_policy"].size() == 7);

    auto brief = solutionToJson(k, sol, false);
    CHECK_FALSE(brief.contains("values"));

    auto c4 = solve(cycle(4));
    auto jc = solutionToJson(cycle(4), c4, false);
    CHECK(jc["copwin"] == false);
    CHECK(jc["capture_time"].is_null());
}
