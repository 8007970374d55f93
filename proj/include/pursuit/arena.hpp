#pragma once

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pursuit/families.hpp"
#include "pursuit/oracle.hpp"
#include "pursuit/util.hpp"

namespace pursuit {

/// One playing surface: a family spec, its oracle view, and (for finite
/// families) the labeled graph behind it. Strategies that need global
/// structure (the solver, breadth-first chasing) require finite().
struct Board {
    std::string spec;
    std::shared_ptr<NeighborOracle> oracle;
    std::optional<FamilyGraph> finiteGraph;
    std::size_t menuCap = 64;

    bool isFinite() const { return finiteGraph.has_value(); }
    const FamilyGraph& finite() const {
        if (!finiteGraph) throw std::invalid_argument("board '" + spec + "' is not finite");
        return *finiteGraph;
    }

    bool isVertex(const Key& k) const { return oracle->isVertex(k); }
    bool adjacentOrEqual(const Key& a, const Key& b) const { return oracle->adjacentOrEqual(a, b); }
    double drift(const Key& k) const { return oracle->driftPotential(k); }

    /// Deterministic move list: the vertex itself first, then neighbors.
    std::vector<Key> moveMenu(const Key& k) const { return oracle->moveMenu(k, menuCap); }

    /// Menu moves that do not lose immediately: not on or next to the
    /// opponent. Exact on finite boards, where the menu is the full
    /// closed neighborhood.
    std::vector<Key> safeMoves(const Key& self, const Key& opponent) const {
        std::vector<Key> out;
        for (const Key& m : moveMenu(self))
            if (!adjacentOrEqual(m, opponent)) out.push_back(m);
        return out;
    }

    /// Aliases resolve on finite boards; oracle keys pass through.
    Key resolve(const std::string& nameOrAlias) const {
        if (finiteGraph) return finiteGraph->graph.label(finiteGraph->lookup(nameOrAlias));
        if (!oracle->isVertex(nameOrAlias))
            throw std::invalid_argument("board '" + spec + "': unknown vertex '" + nameOrAlias + "'");
        return nameOrAlias;
    }
};

inline Board makeBoard(const std::string& specString, std::size_t menuCap = 64) {
    FamilyInstance inst = makeFamily(specString);
    Board b;
    b.spec = FamilySpec::parse(specString).canonical();
    b.menuCap = menuCap;
    if (inst.isFinite()) {
        b.finiteGraph = std::move(inst.finite);
        std::optional<ConstructionCertificate> cert;
        if (connected(b.finiteGraph->graph)) {
            DismantleResult d = dismantle(b.finiteGraph->graph);
            if (d.constructible) cert = d.cert;
        }
        b.oracle = std::make_shared<FiniteGraphOracle>(b.finiteGraph->graph, std::move(cert), b.spec);
    } else {
        b.oracle = inst.oracle;
    }
    return b;
}

/// Board over an ad-hoc finite graph (a file, a generator). The name only
/// labels transcripts; such boards cannot be rebuilt by replay().
inline Board makeBoard(FiniteGraph g, const std::string& name, std::size_t menuCap = 64) {
    Board b;
    b.spec = name;
    b.menuCap = menuCap;
    FamilyGraph fg;
    fg.graph = std::move(g);
    fg.spec = name;
    b.finiteGraph = std::move(fg);
    std::optional<ConstructionCertificate> cert;
    if (b.finiteGraph->graph.size() > 0 && connected(b.finiteGraph->graph)) {
        DismantleResult d = dismantle(b.finiteGraph->graph);
        if (d.constructible) cert = d.cert;
    }
    b.oracle = std::make_shared<FiniteGraphOracle>(b.finiteGraph->graph, std::move(cert), b.spec);
    return b;
}

/// Per-move view handed to a strategy. Strategies may keep declared memory
/// across calls; the referee logs their annotation() after every move.
struct StepContext {
    const Board& board;
    Rng& rng;
    int turn = 0;  // 0 during placement, then the 1-based game turn
};

class Strategy {
public:
    virtual ~Strategy() = default;

    virtual std::string spec() const = 0;

    /// Cops place with copPlacement empty; the robber sees the cop's choice.
    virtual Key place(StepContext& ctx, const std::optional<Key>& copPlacement) = 0;

    virtual Key move(StepContext& ctx, const Key& self, const Key& opponent) = 0;

    /// Declared memory (stage, committed coordinate, trail index), logged
    /// per move so tests can assert strategy-internal invariants.
    virtual std::string annotation() const { return {}; }

    /// Set once a strategy abandons its script (boundary contamination,
    /// violated stage precondition). Flagged transcripts are excluded from
    /// theorem-surrogate assertions.
    virtual bool flagged() const { return false; }
};

struct TranscriptHeader {
    std::string graphSpec;
    std::string copSpec;
    std::string robberSpec;
    std::uint64_t seed = 0;
    int horizon = 0;

    bool operator==(const TranscriptHeader&) const = default;
};

struct TranscriptEvent {
    int turn = 0;  // 0 for placements
    bool copActor = true;
    Key vertex;
    std::string note;

    bool operator==(const TranscriptEvent&) const = default;
};

struct Outcome {
    bool captured = false;
    int captureTurn = -1;
    bool captureByCop = true;  // false: the robber stepped onto the cop
    bool horizonReached = false;
    std::string error;  // non-empty: an illegal move ended the run
    int turnsPlayed = 0;

    bool operator==(const Outcome&) const = default;
};

struct MarkStats {
    int visits = 0;
    int firstVisit = -1;
    int lastVisit = -1;
    int maxGap = 0;  // max turn gap between consecutive robber visits

    bool operator==(const MarkStats&) const = default;
};

/// Robber-centric run statistics, streamed during play so long runs can
/// skip event recording.
struct Metrics {
    std::map<Key, MarkStats> marks;
    double maxDrift = 0.0;
    int distinctRobberVertices = 0;
    int tailDistinctRobberVertices = 0;  // distinct positions in the later half
    int copAnnotationChanges = 0;
    int robberAnnotationChanges = 0;
    bool copFlagged = false;
    bool robberFlagged = false;

    bool operator==(const Metrics&) const = default;
};

struct Transcript {
    TranscriptHeader header;
    std::vector<TranscriptEvent> events;  // empty when recording was off
    Outcome outcome;
    Metrics metrics;
};

struct PlayOptions {
    bool recordEvents = true;
    std::vector<Key> marks;
    std::function<void(const TranscriptEvent&)> observer;
};

namespace detail {

class MetricsStream {
public:
    MetricsStream(const Board& b, const std::vector<Key>& marks, int horizon) : board_(&b), horizon_(horizon) {
        for (const Key& m : marks) metrics_.marks.emplace(m, MarkStats{});
    }

    void robberAt(const Key& v, int turn) {
        metrics_.maxDrift = std::max(metrics_.maxDrift, board_->drift(v));
        seen_.insert(v);
        if (2 * turn >= horizon_) tail_.insert(v);
        auto it = metrics_.marks.find(v);
        if (it != metrics_.marks.end()) {
            MarkStats& s = it->second;
            if (s.visits == 0)
                s.firstVisit = turn;
            else
                s.maxGap = std::max(s.maxGap, turn - s.lastVisit);
            ++s.visits;
            s.lastVisit = turn;
        }
    }

    void note(bool copActor, const std::string& n) {
        std::string& prev = copActor ? lastCopNote_ : lastRobberNote_;
        int& count = copActor ? metrics_.copAnnotationChanges : metrics_.robberAnnotationChanges;
        if (n != prev) {
            ++count;
            prev = n;
        }
    }

    Metrics finish(bool copFlagged, bool robberFlagged) {
        metrics_.distinctRobberVertices = static_cast<int>(seen_.size());
        metrics_.tailDistinctRobberVertices = static_cast<int>(tail_.size());
        metrics_.copFlagged = copFlagged;
        metrics_.robberFlagged = robberFlagged;
        return std::move(metrics_);
    }

private:
    const Board* board_;
    int horizon_;
    Metrics metrics_;
    std::set<Key> seen_, tail_;
    std::string lastCopNote_, lastRobberNote_;
};

}  // namespace detail

/// Referee: cop places, robber places, then alternating moves with the cop
/// first. Capture is position coincidence after either actor's move. Every
/// emitted move is validated; an illegal one ends the run with an error
/// outcome naming the actor and turn.
inline Transcript play(const Board& board, Strategy& cop, Strategy& robber, int horizon, std::uint64_t seed,
                       const PlayOptions& opt = {}) {
    if (horizon < 1) throw std::invalid_argument("play: horizon must be at least 1");
    Transcript t;
    t.header = {board.spec, cop.spec(), robber.spec(), seed, horizon};
    Rng copRng(Rng::substream(seed, 0));
    Rng robberRng(Rng::substream(seed, 1));
    detail::MetricsStream ms(board, opt.marks, horizon);

    auto record = [&](int turn, bool copActor, const Key& v, const std::string& note) {
        TranscriptEvent e{turn, copActor, v, note};
        if (opt.recordEvents) t.events.push_back(e);
        if (opt.observer) opt.observer(e);
        if (!copActor) ms.robberAt(v, turn);
        ms.note(copActor, note);
    };
    auto fail = [&](bool copActor, int turn, const Key& v) {
        t.outcome.error = std::string(copActor ? "cop" : "robber") + " emitted an illegal move at turn " +
                          std::to_string(turn) + ": '" + v + "'";
        t.outcome.turnsPlayed = turn;
        t.metrics = ms.finish(cop.flagged(), robber.flagged());
        return t;
    };

    StepContext copCtx{board, copRng, 0};
    StepContext robberCtx{board, robberRng, 0};

    Key c = cop.place(copCtx, std::nullopt);
    if (!board.isVertex(c)) return fail(true, 0, c);
    record(0, true, c, cop.annotation());

    Key r = robber.place(robberCtx, c);
    if (!board.isVertex(r)) return fail(false, 0, r);
    record(0, false, r, robber.annotation());
    if (r == c) {
        t.outcome = {true, 0, false, false, "", 0};
        t.metrics = ms.finish(cop.flagged(), robber.flagged());
        return t;
    }

    for (int turn = 1; turn <= horizon; ++turn) {
        copCtx.turn = robberCtx.turn = turn;
        t.outcome.turnsPlayed = turn;

        Key nc = cop.move(copCtx, c, r);
        if (!board.isVertex(nc) || !board.adjacentOrEqual(c, nc)) return fail(true, turn, nc);
        c = nc;
        record(turn, true, c, cop.annotation());
        if (c == r) {
            t.outcome.captured = true;
            t.outcome.captureTurn = turn;
            t.outcome.captureByCop = true;
            break;
        }

        Key nr = robber.move(robberCtx, r, c);
        if (!board.isVertex(nr) || !board.adjacentOrEqual(r, nr)) return fail(false, turn, nr);
        r = nr;
        record(turn, false, r, robber.annotation());
        if (r == c) {
            t.outcome.captured = true;
            t.outcome.captureTurn = turn;
            t.outcome.captureByCop = false;
            break;
        }
    }
    t.outcome.horizonReached = !t.outcome.captured;
    t.metrics = ms.finish(cop.flagged(), robber.flagged());
    return t;
}

/// Recompute robber statistics from recorded events; needs the board only
/// for the drift column.
inline Metrics analyze(const Transcript& t, const std::vector<Key>& marks, const Board* board = nullptr) {
    if (t.events.empty() && t.outcome.turnsPlayed > 0)
        throw std::invalid_argument("analyze: transcript has no recorded events");
    Metrics m;
    for (const Key& k : marks) m.marks.emplace(k, MarkStats{});
    std::set<Key> seen, tail;
    std::string lastCop, lastRobber;
    for (const TranscriptEvent& e : t.events) {
        std::string& prev = e.copActor ? lastCop : lastRobber;
        int& count = e.copActor ? m.copAnnotationChanges : m.robberAnnotationChanges;
        if (e.note != prev) {
            ++count;
            prev = e.note;
        }
        if (e.copActor) continue;
        if (board) m.maxDrift = std::max(m.maxDrift, board->drift(e.vertex));
        seen.insert(e.vertex);
        if (2 * e.turn >= t.header.horizon) tail.insert(e.vertex);
        auto it = m.marks.find(e.vertex);
        if (it != m.marks.end()) {
            MarkStats& s = it->second;
            if (s.visits == 0)
                s.firstVisit = e.turn;
            else
                s.maxGap = std::max(s.maxGap, e.turn - s.lastVisit);
            ++s.visits;
            s.lastVisit = e.turn;
        }
    }
    m.distinctRobberVertices = static_cast<int>(seen.size());
    m.tailDistinctRobberVertices = static_cast<int>(tail.size());
    m.copFlagged = t.metrics.copFlagged;
    m.robberFlagged = t.metrics.robberFlagged;
    return m;
}

/// Transcript stream format: a header line, one line per event, and a final
/// outcome line, each a standalone JSON object.
inline void transcriptToJsonl(const Transcript& t, std::ostream& os) {
    nlohmann::json h{{"type", "header"},
                     {"graph", t.header.graphSpec},
                     {"cop", t.header.copSpec},
                     {"robber", t.header.robberSpec},
                     {"seed", t.header.seed},
                     {"horizon", t.header.horizon}};
    os << h.dump() << '\n';
    for (const TranscriptEvent& e : t.events) {
        nlohmann::json j{{"type", "event"},
                         {"turn", e.turn},
                         {"actor", e.copActor ? "cop" : "robber"},
                         {"vertex", e.vertex}};
        if (!e.note.empty()) j["note"] = e.note;
        os << j.dump() << '\n';
    }
    nlohmann::json o{{"type", "outcome"}, {"turns", t.outcome.turnsPlayed}};
    if (!t.outcome.error.empty()) {
        o["result"] = "error";
        o["error"] = t.outcome.error;
    } else if (t.outcome.captured) {
        o["result"] = "capture";
        o["turn"] = t.outcome.captureTurn;
        o["actor"] = t.outcome.captureByCop ? "cop" : "robber";
    } else {
        o["result"] = "horizon";
    }
    os << o.dump() << '\n';
}

inline std::string transcriptToJsonl(const Transcript& t) {
    std::ostringstream os;
    transcriptToJsonl(t, os);
    return os.str();
}

inline Transcript transcriptFromJsonl(std::istream& is) {
    Transcript t;
    std::string line;
    bool sawHeader = false, sawOutcome = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        std::string type = j.at("type").get<std::string>();
        if (type == "header") {
            if (sawHeader) throw std::invalid_argument("transcript stream: duplicate header");
            t.header.graphSpec = j.at("graph").get<std::string>();
            t.header.copSpec = j.at("cop").get<std::string>();
            t.header.robberSpec = j.at("robber").get<std::string>();
            t.header.seed = j.at("seed").get<std::uint64_t>();
            t.header.horizon = j.at("horizon").get<int>();
            sawHeader = true;
        } else if (type == "event") {
            if (!sawHeader || sawOutcome) throw std::invalid_argument("transcript stream: event out of order");
            TranscriptEvent e;
            e.turn = j.at("turn").get<int>();
            e.copActor = j.at("actor").get<std::string>() == "cop";
            e.vertex = j.at("vertex").get<std::string>();
            if (j.contains("note")) e.note = j.at("note").get<std::string>();
            t.events.push_back(std::move(e));
        } else if (type == "outcome") {
            if (!sawHeader || sawOutcome) throw std::invalid_argument("transcript stream: outcome out of order");
            t.outcome.turnsPlayed = j.at("turns").get<int>();
            std::string result = j.at("result").get<std::string>();
            if (result == "error") {
                t.outcome.error = j.at("error").get<std::string>();
            } else if (result == "capture") {
                t.outcome.captured = true;
                t.outcome.captureTurn = j.at("turn").get<int>();
                t.outcome.captureByCop = j.at("actor").get<std::string>() == "cop";
            } else if (result == "horizon") {
                t.outcome.horizonReached = true;
            } else {
                throw std::invalid_argument("transcript stream: unknown result '" + result + "'");
            }
            sawOutcome = true;
        } else {
            throw std::invalid_argument("transcript stream: unknown line type '" + type + "'");
        }
    }
    if (!sawHeader || !sawOutcome) throw std::invalid_argument("transcript stream: missing header or outcome");
    return t;
}

inline Transcript transcriptFromJsonl(const std::string& s) {
    std::istringstream is(s);
    return transcriptFromJsonl(is);
}

}  // namespace pursuit
