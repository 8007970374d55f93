#pragma once

#include <chrono>
#include <set>
#include <sstream>

#include "pursuit/strategies.hpp"

namespace pursuit {

/// One acceptance check; detail carries the measured numbers for the report.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteOptions {
    bool quick = false;  // reduced seed counts and horizons for smoke runs
    std::uint64_t seed = 1;
};

namespace suitedetail {

using Clock = std::chrono::steady_clock;

inline long elapsedMs(Clock::time_point start) {
    return static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
}

/// Collects failures; a criterion passes when nothing was recorded.
struct Log {
    bool pass = true;
    std::ostringstream detail;

    void fail(const std::string& what) {
        pass = false;
        if (detail.tellp() > 0) detail << "; ";
        detail << what;
    }
    void require(bool ok, const std::string& what) {
        if (!ok) fail(what);
    }
};

struct Timeline {
    std::vector<Key> cop, robber;
    std::vector<std::string> copNote, robberNote;
};

inline Timeline unroll(const Transcript& t) {
    Timeline tl;
    for (const TranscriptEvent& e : t.events) {
        (e.copActor ? tl.cop : tl.robber).push_back(e.vertex);
        (e.copActor ? tl.copNote : tl.robberNote).push_back(e.note);
    }
    return tl;
}

/// "stage=2;m=3;kp=1" -> {{"stage",2},{"m",3},{"kp",1}}; absent keys read 0.
inline std::map<std::string, int> parseNote(const std::string& note) {
    std::map<std::string, int> out;
    std::istringstream is(note);
    std::string part;
    while (std::getline(is, part, ';')) {
        std::size_t eq = part.find('=');
        if (eq != std::string::npos) out[part.substr(0, eq)] = std::stoi(part.substr(eq + 1));
    }
    return out;
}

struct ChainParsed {
    std::string role;
    int idx = 0;
};

inline ChainParsed parseChainKey(const Key& k) {
    std::size_t d = 0;
    while (d < k.size() && !std::isdigit(static_cast<unsigned char>(k[d]))) ++d;
    if (d == k.size()) return {k, 0};
    return {k.substr(0, d), std::stoi(k.substr(d))};
}

/// All connected graphs on up to maxN labeled vertices.
template <typename F>
void forEachConnectedGraph(int maxN, F&& f) {
    for (int n = 1; n <= maxN; ++n) {
        int m = n * (n - 1) / 2;
        std::vector<std::pair<Vertex, Vertex>> pairs;
        for (Vertex i = 0; i < n; ++i)
            for (Vertex j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        for (long long mask = 0; mask < (1LL << m); ++mask) {
            std::vector<Edge> edges;
            for (int bit = 0; bit < m; ++bit)
                if (mask >> bit & 1) edges.emplace_back(pairs[bit].first, pairs[bit].second);
            FiniteGraph g(n, std::move(edges));
            if (connected(g)) f(g);
        }
    }
}

inline hg::HElem squareCornerElem(int i, int n) {
    if (i == 0) return hg::HElem{0, hg::originAt(n - 1)};
    return hg::HElem{i, {}};
}

inline int squareCornerIndex(const hg::Addr& a) {
    switch (a.terminal) {
        case hg::Terminal::Origin: return 0;
        case hg::Terminal::Cyc1: return 1;
        case hg::Terminal::Cyc2: return 2;
        case hg::Terminal::Cyc3: return 3;
        default: return -1;
    }
}

}  // namespace suitedetail

/// 1. Dismantlability and the game solver agree on every small connected graph.
inline CriterionResult criterionSolverEquivalence(const SuiteOptions& opt) {
    namespace sd = suitedetail;
    auto start = sd::Clock::now();
    int maxN = opt.quick ? 5 : 6;
    long long checked = 0, mismatches = 0;
    sd::forEachConnectedGraph(maxN, [&](const FiniteGraph& g) {
        ++checked;
        if (dismantle(g).constructible != solve(g).copwin) ++mismatches;
    });
    long ms = sd::elapsedMs(start);
    std::ostringstream d;
    d << checked << " connected graphs on <=" << maxN << " vertices, " << mismatches
      << " mismatches, " << ms << " ms";
    return {1, "dismantle == cop-win on small graphs", mismatches == 0 && ms < 120000, d.str()};
}

/// 2. The seven-vertex valve: unique dominated vertex, its dominator, the
/// textbook dismantling order, the hub's coverage, and the capture square.
inline CriterionResult criterionValveProperties(const SuiteOptions&) {
    namespace sd = suitedetail;
    sd::Log log;
    FamilyGraph k = makeFiniteFamily("k");
    const FiniteGraph& g = k.graph;

    std::vector<std::pair<std::string, std::string>> dominated;
    for (Vertex v = 0; v < g.size(); ++v)
        for (Vertex u = 0; u < g.size(); ++u) {
            if (u == v) continue;
            bool dom = true;
            for (Vertex w : g.neighbors(v)) dom &= w == u || g.adjacent(u, w);
            if (dom && g.adjacent(u, v)) dominated.emplace_back(g.label(v), g.label(u));
        }
    log.require(dominated.size() == 1, "expected exactly one dominated pair");
    if (dominated.size() == 1) {
        log.require(dominated[0].first == "x", "dominated vertex is " + dominated[0].first);
        log.require(dominated[0].second == "y", "dominator is " + dominated[0].second);
    }

    auto at = [&](const std::string& s) { return g.requireLabel(s); };
    ConstructionCertificate stated;
    stated.order = {at("z"), at("w"), at("zp"), at("y"), at("tp"), at("t"), at("x")};
    stated.parent.assign(static_cast<std::size_t>(g.size()), -1);
    auto setParent = [&](const std::string& c, const std::string& p) {
        stated.parent[static_cast<std::size_t>(at(c))] = at(p);
    };
    setParent("w", "z");
    setParent("zp", "z");
    setParent("y", "z");
    setParent("tp", "zp");
    setParent("t", "z");
    setParent("x", "y");
    log.require(!validate(g, stated).has_value(), "stated dismantling order rejected");

    Vertex y = at("y"), w = at("w");
    for (Vertex v = 0; v < g.size(); ++v)
        log.require(g.adjacent(y, v) == (v != y && v != w), "hub coverage wrong at " + g.label(v));

    Board board = makeBoard("k");
    auto cop = makeStrategy("solver", Side::Cop, board);
    auto robber = makeStrategy("solver", Side::Robber, board);
    Transcript t = play(board, *cop, *robber, 100, 1);
    log.require(t.outcome.captured && t.outcome.error.empty(), "optimal play did not capture");
    if (t.outcome.captured)
        log.require(t.events.back().vertex == "x",
                    "capture at " + t.events.back().vertex + ", expected x");

    if (log.pass) log.detail << "unique domination x<-y, stated order valid, capture at x";
    return {2, "valve gadget properties", log.pass, log.detail.str()};
}

/// 3. No construction order of the doubled valve has a homomorphism
/// domination map; simple graphs do.
inline CriterionResult criterionHomObstruction(const SuiteOptions&) {
    namespace sd = suitedetail;
    sd::Log log;
    auto start = sd::Clock::now();
    HomSearchResult r = searchHom(makeFiniteFamily("two_k").graph, std::chrono::milliseconds(60000));
    long ms = sd::elapsedMs(start);
    log.require(r.status == HomSearchStatus::None, "two_k search did not exhaust to none");
    log.require(ms < 60000, "two_k search exceeded 60 s");

    for (const char* spec : {"cycle?n=3", "path?n=4"}) {
        FiniteGraph g = makeFiniteFamily(spec).graph;
        HomSearchResult w = searchHom(g, std::chrono::milliseconds(10000));
        bool ok = w.status == HomSearchStatus::Witness && !validate(g, w.cert).has_value() &&
                  isHomomorphism(g, w.cert);
        log.require(ok, std::string(spec) + " should yield a homomorphism witness");
    }
    if (log.pass)
        log.detail << "two_k exhausted (" << r.nodesExplored << " nodes, " << ms
                   << " ms), controls produced witnesses";
    return {3, "domination map is never a homomorphism on two_k", log.pass, log.detail.str()};
}

/// 4. The scripted sweep wins the hubbed chain and every scripted step leaves
/// the robber exactly the forced square.
inline CriterionResult criterionChainChase(const SuiteOptions& opt) {
    namespace sd = suitedetail;
    sd::Log log;
    int totalForced = 0;
    std::vector<int> sizes = opt.quick ? std::vector<int>{2, 3} : std::vector<int>{2, 3, 4};
    for (int blocks : sizes) {
        std::string spec = "kchain?blocks=" + std::to_string(blocks) + "&hub=1";
        Board b = makeBoard(spec);
        GameSolution sol = solve(b.finite().graph);
        log.require(sol.copwin, spec + " should be cop-win");

        auto cop = makeStrategy("chain-script", Side::Cop, b);
        auto robber = makeStrategy("solver", Side::Robber, b);
        Transcript t = play(b, *cop, *robber, 400, opt.seed);
        log.require(t.outcome.captured && t.outcome.error.empty(), spec + ": sweep did not capture");

        sd::Timeline tl = suitedetail::unroll(t);
        int forced = 0;
        for (std::size_t turn = 1; turn < tl.cop.size() && turn - 1 < tl.robber.size(); ++turn) {
            const Key& c = tl.cop[turn];
            const Key& r = tl.robber[turn - 1];
            if (c == r) continue;
            sd::ChainParsed pc = sd::parseChainKey(c), pr = sd::parseChainKey(r);
            std::vector<Key> safe = b.safeMoves(r, c);
            std::sort(safe.begin(), safe.end());
            auto idx = [](const std::string& s, int i) { return s + std::to_string(i); };
            auto expect = [&](std::vector<Key> want) {
                std::sort(want.begin(), want.end());
                if (safe != want) log.fail(spec + ": forced set wrong at cop=" + c + " robber=" + r);
                ++forced;
            };
            bool interior = pr.role == "z" || pr.role == "zp" || pr.role == "t" ||
                            pr.role == "tp" || pr.role == "w";
            if (interior && pc.role == "x" && pc.idx == pr.idx + 1) {
                expect({idx("w", pr.idx)});
            } else if (pr.role == "w" && pc.role == "z" && pc.idx == pr.idx) {
                expect({idx("tp", pr.idx)});
            } else if (pr.role == "tp" && pc.role == "zp" && pc.idx == pr.idx) {
                expect({idx("x", pr.idx)});
            } else if (pr.role == "x" && pc.role == "x" && pc.idx == pr.idx + 1) {
                if (pr.idx == 1)
                    expect({});
                else
                    expect({idx("t", pr.idx - 1), idx("tp", pr.idx - 1), idx("x", pr.idx - 1),
                            idx("z", pr.idx - 1), idx("zp", pr.idx - 1)});
            }
        }
        log.require(forced >= 2 * blocks, spec + ": sweep steps missing");
        totalForced += forced;
    }
    if (log.pass) log.detail << "all chains swept, " << totalForced << " forced singletons verified";
    return {4, "scripted chain sweep forces and captures", log.pass, log.detail.str()};
}

/// 5. Construction-order prefixes on the two-block fan: one complete block
/// plus both anchors is impossible; both blocks complete make it possible.
inline CriterionResult criterionPrefixObstruction(const SuiteOptions&) {
    suitedetail::Log log;
    FamilyGraph g = makeFiniteFamily("omega1?blocks=2");
    std::vector<Vertex> prefix{g.graph.requireLabel("A"), g.graph.requireLabel("B")};
    for (Vertex v : g.groups.at("block1")) prefix.push_back(v);
    log.require(!orderExistsWithPrefix(g.graph, prefix), "one-block prefix should be impossible");
    for (Vertex v : g.groups.at("block2")) prefix.push_back(v);
    log.require(orderExistsWithPrefix(g.graph, prefix), "two-block prefix should be possible");
    if (log.pass) log.detail << "prefix impossible with one block, possible with two";
    return {5, "prefix obstruction on the two-block fan", log.pass, log.detail.str()};
}

/// 6. Trail pursuit on seeded constructible graphs: never stuck, strict trail
/// index progress on revisits, capture within the quadratic bound.
inline CriterionResult criterionTrailPursuit(const SuiteOptions& opt) {
    namespace sd = suitedetail;
    sd::Log log;
    int runs = opt.quick ? 40 : 200;
    int slowest = 0;
    long revisits = 0;
    for (int i = 0; i < runs && log.pass; ++i) {
        std::uint64_t seed = opt.seed * 1000003 + static_cast<std::uint64_t>(i);
        int n = 5 + i % 21;
        Board b = makeBoard(randomConstructibleGraph(n, seed), "trial");
        auto cop = makeStrategy("trail", Side::Cop, b);
        auto robber = makeStrategy("random", Side::Robber, b);
        int bound = n * n + 2 * n;
        Transcript t = play(b, *cop, *robber, bound, seed);
        std::string tag = "seed " + std::to_string(i) + ": ";
        log.require(t.outcome.error.empty(), tag + t.outcome.error);
        log.require(!t.metrics.copFlagged, tag + "cop got stuck");
        log.require(t.outcome.captured, tag + "no capture within the bound");
        slowest = std::max(slowest, t.outcome.captureTurn);

        sd::Timeline tl = suitedetail::unroll(t);
        std::map<Key, int> lastIndex;
        for (std::size_t turn = 1; turn < tl.cop.size(); ++turn) {
            auto note = sd::parseNote(tl.copNote[turn]);
            const Key& rv = tl.robber[turn - 1];
            auto it = lastIndex.find(rv);
            if (it != lastIndex.end()) {
                ++revisits;
                if (note["k"] >= it->second)
                    log.fail(tag + "trail index failed to drop on revisit of " + rv);
            }
            lastIndex[rv] = note["k"];
        }
    }
    log.require(revisits > 0, "no robber revisit was ever exercised");
    if (log.pass)
        log.detail << runs << " runs captured, slowest " << slowest << " turns, " << revisits
                   << " revisits all with strict progress";
    return {6, "trail pursuit lemma on random constructible graphs", log.pass, log.detail.str()};
}

/// 7. Cycle-times-path products are constructible, but fencing the cop off
/// the far layer hands the short product to the robber.
inline CriterionResult criterionLayeredProduct(const SuiteOptions&) {
    suitedetail::Log log;
    for (int n : {3, 6}) {
        FamilyGraph g = makeFiniteFamily("ppath?base={cycle?n=4}&n=" + std::to_string(n));
        log.require(dismantle(g.graph).constructible,
                    "ppath n=" + std::to_string(n) + " should be constructible");
    }
    FamilyGraph g3 = makeFiniteFamily("ppath?base={cycle?n=4}&n=3");
    GameSolution fenced = solve(g3.graph, g3.groups.at("layer3"));
    log.require(!fenced.copwin, "forbidding the top layer should flip n=3 to robber-win");
    if (log.pass) log.detail << "products constructible; fenced n=3 is robber-win";
    return {7, "layered product constructibility and the fenced flip", log.pass, log.detail.str()};
}

/// 8. Coordinate-graph snapshots alternate, and the committed-coordinate
/// robber outlasts every shipped cop at full horizon.
inline CriterionResult criterionGeeSurvival(const SuiteOptions& opt) {
    namespace sd = suitedetail;
    sd::Log log;
    for (int k = 1; k <= 4; ++k) {
        bool c = dismantle(gee::buildStage(k)).constructible;
        log.require(c == (k % 2 == 0), "stage " + std::to_string(k) + " constructibility wrong");
    }

    Board b = makeBoard("gee");
    int horizon = opt.quick ? 10000 : 100000;
    std::uint64_t seeds = opt.quick ? 3 : 20;
    long runs = 0;
    for (const char* copName : {"six-seek", "shortest-path", "random"}) {
        for (std::uint64_t s = 1; s <= seeds; ++s, ++runs) {
            auto cop = makeStrategy(copName, Side::Cop, b);
            auto robber = makeStrategy("gee", Side::Robber, b);
            PlayOptions po;
            po.marks = {"[]"};
            Transcript t = play(b, *cop, *robber, horizon, opt.seed * 7919 + s, po);
            std::string tag = std::string(copName) + " seed " + std::to_string(s) + ": ";
            log.require(t.outcome.error.empty(), tag + t.outcome.error);
            log.require(!t.outcome.captured, tag + "robber was captured");
            log.require(!t.metrics.robberFlagged, tag + "robber flagged a violated stage");
            bool confined = t.metrics.tailDistinctRobberVertices <= 4;
            bool recurrent = t.metrics.marks.at("[]").visits >= 5;
            log.require(confined || recurrent, tag + "neither confined nor recurrent");
            if (!log.pass) break;
        }
        if (!log.pass) break;
    }
    if (log.pass)
        log.detail << "stages alternate; " << runs << " runs x " << horizon
                   << " turns survived, confined or recurrent";
    return {8, "coordinate-graph alternation and robber survival", log.pass, log.detail.str()};
}

/// 9. Tower metric facts, then the corner-cycle robber survives with every
/// declared stage invariant checked turn by turn.
inline CriterionResult criterionTowerSurvival(const SuiteOptions& opt) {
    namespace sd = suitedetail;
    sd::Log log;

    for (int m : {1, 2}) {
        hg::Truncation t = hg::buildTruncation(m, 100000);
        std::vector<Vertex> level;
        for (Vertex v = 0; v < t.graph.size(); ++v)
            if (t.addrs[static_cast<std::size_t>(v)].level == m) level.push_back(v);
        Induced stage = induced(t.graph, level);
        auto d = distance(stage.graph, stage.graph.requireLabel(hg::encodeAddr(hg::hiveAt(m))),
                          stage.graph.requireLabel(hg::encodeAddr(hg::originAt(m))));
        log.require(d.has_value() && *d == hg::levelLength(m) + 1,
                    "apex-origin distance wrong at stage " + std::to_string(m));
    }

    hg::Truncation tr = hg::buildTruncation(2, 100000);
    std::vector<Vertex> spine;
    for (int j = 0; j <= 2; ++j) spine.push_back(tr.graph.requireLabel(hg::encodeAddr(hg::originAt(j))));
    int orderOnes = 0;
    for (std::size_t i = 0; i < tr.addrs.size(); ++i) {
        auto ord = hg::hiveTypeOrder(tr.addrs[i]);
        if (!ord || *ord != 1) continue;
        ++orderOnes;
        auto d = distance(tr.graph, static_cast<Vertex>(i), spine);
        if (!d || *d < hg::levelLength(1) + 1) {
            log.fail("order-1 vertex " + tr.graph.label(static_cast<Vertex>(i)) + " too close to the spine");
            break;
        }
    }
    log.require(orderOnes > 0, "no order-1 hive-type vertices found in the truncation");

    Board b = makeBoard("hgraph");
    int horizon = opt.quick ? 2500 : 10000;
    std::uint64_t seeds = opt.quick ? 3 : 20;
    long runs = 0;
    for (const char* copName : {"hive-seek", "shortest-path", "random"}) {
        for (std::uint64_t s = 1; s <= seeds; ++s, ++runs) {
            auto cop = makeStrategy(copName, Side::Cop, b);
            auto robber = makeStrategy("hgraph", Side::Robber, b);
            Transcript t = play(b, *cop, *robber, horizon, opt.seed * 60013 + s);
            std::string tag = std::string(copName) + " seed " + std::to_string(s) + ": ";
            log.require(t.outcome.error.empty(), tag + t.outcome.error);
            log.require(!t.outcome.captured, tag + "robber was captured");
            log.require(!t.metrics.robberFlagged, tag + "robber flagged a violated stage");

            sd::Timeline tl = suitedetail::unroll(t);
            std::optional<std::size_t> entry;
            int mAtEntry = 0;
            for (std::size_t turn = 1; turn < tl.robber.size() && log.pass; ++turn) {
                auto note = sd::parseNote(tl.robberNote[turn]);
                auto prev = sd::parseNote(tl.robberNote[turn - 1]);
                hg::Addr c = hg::decodeAddr(tl.cop[turn]);
                if (note["stage"] == 1) {
                    // Keep the projected cop two squares away on the wrap.
                    int m = note["m"];
                    hg::WrapProjection wp = hg::jPrimeProjection(c, m);
                    if (wp.atApex) {
                        log.fail(tag + "stage 1 with the cop already at apex order >= m");
                        break;
                    }
                    hg::Addr self = hg::decodeAddr(tl.robber[turn]);
                    int corner = sd::squareCornerIndex(self);
                    if (corner < 0 || self.level != m) {
                        log.fail(tag + "stage-1 position off the committed square: " + tl.robber[turn]);
                        break;
                    }
                    if (hg::hDistance(wp.h, sd::squareCornerElem(corner, m), m) < 2) {
                        log.fail(tag + "stage-1 wrap distance dropped below 2 at turn " +
                                 std::to_string(turn));
                        break;
                    }
                }
                if (note["stage"] == 2 && prev["stage"] == 1) {
                    entry = turn;
                    mAtEntry = prev["m"];
                    auto ord = hg::hiveTypeOrder(c);
                    if (!ord || *ord < mAtEntry) {
                        log.fail(tag + "stage-2 entry without a qualifying apex sighting");
                        break;
                    }
                }
                if (note["stage"] == 2 && prev["stage"] == 3) {
                    // Abort: a higher apex restarts the run; the robber sat at
                    // most at level kp'+1 <= kp, so kp bounds the new descent.
                    entry = turn;
                    mAtEntry = note["kp"];
                }
                if (entry && note["stage"] == 1 && prev["stage"] == 3) {
                    // Run home plus recommit fits the declared window.
                    if (turn - *entry > static_cast<std::size_t>(mAtEntry + note["kp"] + 5)) {
                        log.fail(tag + "stage 2+3 overran its time budget");
                        break;
                    }
                    entry.reset();
                }
            }
            if (!log.pass) break;
        }
        if (!log.pass) break;
    }
    if (log.pass)
        log.detail << "metric facts hold (" << orderOnes << " order-1 vertices checked); " << runs
                   << " runs x " << horizon << " turns survived with invariants";
    return {9, "tower metric lemmas and robber survival", log.pass, log.detail.str()};
}

/// 10. Transcripts replay bit-exactly from their headers and every artifact
/// format round-trips through its reader.
inline CriterionResult criterionReproducibility(const SuiteOptions& opt) {
    namespace sd = suitedetail;
    sd::Log log;

    struct Run {
        const char* graph;
        const char* cop;
        const char* robber;
        int horizon;
    };
    std::vector<Run> roster{
        {"k", "solver", "solver", 50},
        {"two_k", "shortest-path", "shadow", 60},
        {"kchain?blocks=3&hub=1", "chain-script", "solver", 200},
        {"kchain", "consistent", "shadow", 200},
        {"cycle?n=4", "random", "random", 200},
        {"path?n=6", "trail", "random", 100},
        {"gee", "six-seek", "gee", opt.quick ? 500 : 2000},
        {"hgraph", "hive-seek", "hgraph", opt.quick ? 500 : 2000},
    };
    int replayed = 0;
    for (const Run& r : roster) {
        TranscriptHeader h{r.graph, r.cop, r.robber, opt.seed + 17, r.horizon};
        Transcript a = replay(h);
        Transcript bb = replay(h);
        std::string tag = std::string(r.graph) + "/" + r.cop + "/" + r.robber + ": ";
        log.require(a.outcome.error.empty(), tag + a.outcome.error);
        log.require(a.events == bb.events, tag + "replay diverged in events");
        log.require(a.outcome == bb.outcome && a.metrics == bb.metrics,
                    tag + "replay diverged in outcome or metrics");
        std::string once = transcriptToJsonl(a);
        Transcript back = transcriptFromJsonl(once);
        log.require(transcriptToJsonl(back) == once, tag + "jsonl round-trip not byte-stable");
        log.require(back.events == a.events, tag + "jsonl lost events");
        ++replayed;
        if (!log.pass) break;
    }

    FiniteGraph g = randomConstructibleGraph(12, opt.seed + 4);
    NamedGraph ng = graphFromJson(graphToJson(g, "sample"));
    bool sameGraph = ng.graph.size() == g.size() && ng.graph.edgeCount() == g.edgeCount();
    for (Vertex v = 0; sameGraph && v < g.size(); ++v) {
        sameGraph &= ng.graph.label(v) == g.label(v);
        for (Vertex u : g.neighbors(v)) sameGraph &= ng.graph.adjacent(v, u);
    }
    log.require(sameGraph, "graph json round-trip changed the graph");
    log.require(graphToJson(ng.graph, "sample").dump() == graphToJson(g, "sample").dump(),
                "graph json not byte-stable");

    DismantleResult dr = dismantle(g);
    log.require(dr.constructible, "sample graph should be constructible");
    ConstructionCertificate cert = certFromJson(g, certToJson(g, dr.cert));
    log.require(cert.order == dr.cert.order && cert.parent == dr.cert.parent,
                "certificate json round-trip changed the certificate");

    GameSolution sol = solve(g);
    nlohmann::json sj = solutionToJson(g, sol, true);
    log.require(nlohmann::json::parse(sj.dump()) == sj, "solution json not parse-stable");
    SolutionSummary sum = solutionSummaryFromJson(sj);
    bool sumOk = sum.copwin == sol.copwin && sum.hasTables &&
                 sum.captureTime == std::optional<int>(sol.captureTime) &&
                 sum.copStart == std::optional<std::string>(g.label(sol.copStart));
    log.require(sumOk, "solution summary reader disagreed with the solution");

    if (log.pass) log.detail << replayed << " headers replayed bit-exactly; all artifacts round-trip";
    return {10, "bit-exact replay and artifact round-trips", log.pass, log.detail.str()};
}

inline std::vector<CriterionResult> runAcceptanceSuite(const SuiteOptions& opt = {}) {
    return {
        criterionSolverEquivalence(opt), criterionValveProperties(opt),
        criterionHomObstruction(opt),    criterionChainChase(opt),
        criterionPrefixObstruction(opt), criterionTrailPursuit(opt),
        criterionLayeredProduct(opt),    criterionGeeSurvival(opt),
        criterionTowerSurvival(opt),     criterionReproducibility(opt),
    };
}

}  // namespace pursuit
