#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "pursuit/strategies.hpp"

using namespace pursuit;

namespace {

/// Places at a fixed vertex and replays a scripted move list, then stays.
struct Scripted : Strategy {
    Key start;
    std::vector<Key> script;
    std::size_t at = 0;

    Scripted(Key s, std::vector<Key> moves) : start(std::move(s)), script(std::move(moves)) {}

    std::string spec() const override { return "scripted"; }
    Key place(StepContext&, const std::optional<Key>&) override { return start; }
    Key move(StepContext&, const Key& self, const Key&) override {
        return at < script.size() ? script[at++] : self;
    }
};

/// Robber that places straight onto the cop.
struct Suicidal : Strategy {
    std::string spec() const override { return "suicidal"; }
    Key place(StepContext&, const std::optional<Key>& cop) override { return *cop; }
    Key move(StepContext&, const Key& self, const Key&) override { return self; }
};

void checkLegal(const Board& b, const Transcript& t) {
    REQUIRE(t.events.size() >= 2);
    CHECK(t.events[0].turn == 0);
    CHECK(t.events[0].copActor);
    CHECK(t.events[1].turn == 0);
    CHECK_FALSE(t.events[1].copActor);
    Key cop = t.events[0].vertex, robber = t.events[1].vertex;
    REQUIRE(b.isVertex(cop));
    REQUIRE(b.isVertex(robber));
    bool copNext = true;
    int turn = 0;
    for (std::size_t i = 2; i < t.events.size(); ++i) {
        const TranscriptEvent& e = t.events[i];
        if (copNext) ++turn;
        CHECK(e.copActor == copNext);
        CHECK(e.turn == turn);
        Key& mover = e.copActor ? cop : robber;
        REQUIRE(b.isVertex(e.vertex));
        CHECK(b.adjacentOrEqual(mover, e.vertex));
        mover = e.vertex;
        // A capture truncates the turn, so the cop may act twice in a row
        // only at the very end; events after a coincidence do not exist.
        if (cop == robber) {
            CHECK(i + 1 == t.events.size());
            break;
        }
        copNext = !copNext;
    }
    if (t.outcome.captured) CHECK(cop == robber);
}

}  // namespace

TEST_CASE("boards expose menus, safe moves, aliases, and certificates") {
    Board k = makeBoard("k");
    REQUIRE(k.isFinite());
    CHECK(k.spec == "k");

    std::vector<Key> menu = k.moveMenu("w");
    REQUIRE_FALSE(menu.empty());
    CHECK(menu[0] == "w");  // self comes first
    CHECK(menu == std::vector<Key>{"w", "t", "tp", "z", "zp"});

    // y covers every interior vertex, so from w only waiting is safe.
    CHECK(k.safeMoves("w", "y") == std::vector<Key>{"w"});
    // x's whole closed neighborhood is covered by y.
    CHECK(k.safeMoves("x", "y").empty());

    // The gadget is constructible, so the board carries a parent map.
    CHECK(k.oracle->hasParentMap());
    CHECK(k.oracle->parent("x") == Key("y"));

    // A 4-cycle has no dominated vertex: no certificate, no parents.
    Board c4 = makeBoard("cycle?n=4");
    CHECK_FALSE(c4.oracle->hasParentMap());

    Board chain = makeBoard("kchain?blocks=2&hub=1");
    CHECK(chain.resolve("y1") == "x2");
    CHECK(chain.resolve("x1") == "x1");
    CHECK_THROWS_AS(chain.resolve("nope"), std::invalid_argument);

    Board gee = makeBoard("gee");
    CHECK_FALSE(gee.isFinite());
    CHECK_THROWS_AS(gee.finite(), std::invalid_argument);
    CHECK(gee.resolve("[1,2]") == "[1,2]");
    CHECK_THROWS_AS(gee.resolve("x"), std::invalid_argument);
}

TEST_CASE("play referees captures, turn limits, and placements") {
    Board b = makeBoard("two_k");

    SECTION("solver against solver captures at the solved capture time") {
        GameSolution sol = solve(b.finite().graph);
        REQUIRE(sol.copwin);
        auto cop = makeStrategy("solver", Side::Cop, b);
        auto robber = makeStrategy("solver", Side::Robber, b);
        Transcript t = play(b, *cop, *robber, 100, 1);
        REQUIRE(t.outcome.error.empty());
        REQUIRE(t.outcome.captured);
        CHECK(t.outcome.captureByCop);
        CHECK(t.outcome.captureTurn == sol.captureTime);
        checkLegal(b, t);
    }

    SECTION("a robber placing onto the cop is captured at turn zero") {
        Scripted cop("x1", {});
        Suicidal robber;
        Transcript t = play(b, cop, robber, 10, 1);
        REQUIRE(t.outcome.captured);
        CHECK(t.outcome.captureTurn == 0);
        CHECK_FALSE(t.outcome.captureByCop);
        CHECK(t.outcome.turnsPlayed == 0);
        CHECK(t.events.size() == 2);
    }

    SECTION("an unreachable cop move ends the run with an error") {
        Scripted cop("x1", {"w2"});  // w2 is not adjacent to x1
        Scripted robber("w2", {});
        Transcript t = play(b, cop, robber, 10, 1);
        CHECK(t.outcome.error == "cop emitted an illegal move at turn 1: 'w2'");
        CHECK_FALSE(t.outcome.captured);
        CHECK_FALSE(t.outcome.horizonReached);
        CHECK(t.outcome.turnsPlayed == 1);
    }

    SECTION("a robber naming an unknown vertex ends the run with an error") {
        Scripted cop("x1", {});
        Scripted robber("w2", {"nowhere"});
        Transcript t = play(b, cop, robber, 10, 1);
        CHECK(t.outcome.error == "robber emitted an illegal move at turn 1: 'nowhere'");
    }

    SECTION("the horizon is enforced and reported") {
        Scripted cop("x1", {});
        Scripted robber("w2", {});
        Transcript t = play(b, cop, robber, 7, 1);
        CHECK_FALSE(t.outcome.captured);
        CHECK(t.outcome.horizonReached);
        CHECK(t.outcome.turnsPlayed == 7);
        CHECK(t.events.size() == 2 + 2 * 7);
    }

    SECTION("a horizon below one is rejected") {
        Scripted cop("x1", {});
        Scripted robber("w2", {});
        CHECK_THROWS_AS(play(b, cop, robber, 0, 1), std::invalid_argument);
    }
}

TEST_CASE("random play is legal across seeds") {
    Board b = makeBoard("k");
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto cop = makeStrategy("random", Side::Cop, b);
        auto robber = makeStrategy("random", Side::Robber, b);
        Transcript t = play(b, *cop, *robber, 60, seed);
        REQUIRE(t.outcome.error.empty());
        checkLegal(b, t);
    }
}

TEST_CASE("metrics stream matches offline analysis") {
    Board b = makeBoard("k");
    auto cop = makeStrategy("random", Side::Cop, b);
    auto robber = makeStrategy("random", Side::Robber, b);
    PlayOptions opt;
    opt.marks = {"x", "w"};
    Transcript t = play(b, *cop, *robber, 40, 9, opt);
    REQUIRE(t.outcome.error.empty());

    Metrics again = analyze(t, opt.marks, &b);
    CHECK(again == t.metrics);

    const MarkStats& w = t.metrics.marks.at("w");
    if (w.visits > 0) {
        CHECK(w.firstVisit >= 0);
        CHECK(w.lastVisit >= w.firstVisit);
    } else {
        CHECK(w.firstVisit == -1);
    }

    SECTION("streamed-only runs keep the same metrics without events") {
        auto cop2 = makeStrategy("random", Side::Cop, b);
        auto robber2 = makeStrategy("random", Side::Robber, b);
        PlayOptions lean = opt;
        lean.recordEvents = false;
        Transcript u = play(b, *cop2, *robber2, 40, 9, lean);
        CHECK(u.events.empty());
        CHECK(u.outcome == t.outcome);
        CHECK(u.metrics == t.metrics);
        CHECK_THROWS_AS(analyze(u, opt.marks, &b), std::invalid_argument);
    }

    SECTION("an observer sees every event in order") {
        auto cop2 = makeStrategy("random", Side::Cop, b);
        auto robber2 = makeStrategy("random", Side::Robber, b);
        std::vector<TranscriptEvent> seen;
        PlayOptions watched = opt;
        watched.observer = [&](const TranscriptEvent& e) { seen.push_back(e); };
        Transcript u = play(b, *cop2, *robber2, 40, 9, watched);
        CHECK(seen == u.events);
    }
}

TEST_CASE("transcripts round-trip through the line format") {
    Board b = makeBoard("two_k");
    auto cop = makeStrategy("solver", Side::Cop, b);
    auto robber = makeStrategy("shadow", Side::Robber, b);
    Transcript t = play(b, *cop, *robber, 50, 3);

    std::string text = transcriptToJsonl(t);
    Transcript back = transcriptFromJsonl(text);
    CHECK(back.header == t.header);
    CHECK(back.events == t.events);
    CHECK(back.outcome == t.outcome);

    SECTION("error and horizon outcomes survive the round trip") {
        Scripted cop2("x1", {"w2"});
        Scripted rob2("w2", {});
        Transcript e = play(b, cop2, rob2, 10, 1);
        CHECK(transcriptFromJsonl(transcriptToJsonl(e)).outcome == e.outcome);

        Scripted cop3("x1", {});
        Scripted rob3("w2", {});
        Transcript h = play(b, cop3, rob3, 4, 1);
        CHECK(transcriptFromJsonl(transcriptToJsonl(h)).outcome == h.outcome);
    }

    SECTION("malformed streams are rejected") {
        CHECK_THROWS_AS(transcriptFromJsonl(std::string{}), std::invalid_argument);
        CHECK_THROWS_AS(transcriptFromJsonl(std::string{"{\"type\":\"outcome\",\"turns\":0,\"result\":\"horizon\"}\n"}),
                        std::invalid_argument);
        std::string dup = text + text;
        CHECK_THROWS_AS(transcriptFromJsonl(dup), std::invalid_argument);
    }
}

TEST_CASE("identical headers replay to identical transcripts") {
    Board b = makeBoard("two_k");
    auto cop = makeStrategy("random", Side::Cop, b);
    auto robber = makeStrategy("random", Side::Robber, b);
    Transcript t = play(b, *cop, *robber, 80, 1234);
    REQUIRE(t.outcome.error.empty());

    Transcript r1 = replay(t.header);
    Transcript r2 = replay(t.header);
    CHECK(r1.events == t.events);
    CHECK(r1.outcome == t.outcome);
    CHECK(r2.events == r1.events);

    TranscriptHeader other = t.header;
    other.seed += 1;
    Transcript r3 = replay(other);
    CHECK(r3.events != t.events);  // seeds drive the randomness
}
