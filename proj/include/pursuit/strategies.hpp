#pragma once

#include <algorithm>
#include <cctype>
#include <limits>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "pursuit/arena.hpp"
#include "pursuit/gee.hpp"
#include "pursuit/hgraph.hpp"
#include "pursuit/solver.hpp"

namespace pursuit {

enum class Side { Cop, Robber };

namespace stratdetail {

/// First step of a shortest path from `from` toward `to`; stays put when
/// already there or unreachable. Ties break on the smaller label.
inline Key bfsChaseStep(const FiniteGraph& g, const Key& fromL, const Key& toL) {
    Vertex from = g.requireLabel(fromL), to = g.requireLabel(toL);
    if (from == to) return fromL;
    std::vector<int> dist(static_cast<std::size_t>(g.size()), -1);
    std::queue<Vertex> q;
    dist[static_cast<std::size_t>(to)] = 0;
    q.push(to);
    while (!q.empty()) {
        Vertex v = q.front();
        q.pop();
        for (Vertex w : g.neighbors(v))
            if (dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                q.push(w);
            }
    }
    Key best = fromL;
    int bestD = dist[static_cast<std::size_t>(from)] < 0 ? std::numeric_limits<int>::max()
                                                         : dist[static_cast<std::size_t>(from)];
    for (Vertex w : g.neighbors(from)) {
        int d = dist[static_cast<std::size_t>(w)];
        if (d < 0) continue;
        Key l = g.label(w);
        if (d < bestD || (d == bestD && l < best)) {
            bestD = d;
            best = l;
        }
    }
    return best;
}

inline std::vector<int> bfsAll(const FiniteGraph& g, Vertex src) {
    std::vector<int> dist(static_cast<std::size_t>(g.size()), -1);
    std::queue<Vertex> q;
    dist[static_cast<std::size_t>(src)] = 0;
    q.push(src);
    while (!q.empty()) {
        Vertex v = q.front();
        q.pop();
        for (Vertex w : g.neighbors(v))
            if (dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                q.push(w);
            }
    }
    return dist;
}

/// Evasive move used both by the shadow strategy and as the staged robbers'
/// fallback: the safe move farthest from the opponent, exact distances on
/// finite boards and the family estimate otherwise.
inline Key shadowMove(const Board& board, const Key& self, const Key& opponent) {
    std::vector<Key> safe = board.safeMoves(self, opponent);
    const bool doomed = safe.empty();
    if (doomed)
        for (const Key& m : board.moveMenu(self))
            if (m != opponent) safe.push_back(m);
    if (safe.empty()) return self;
    std::optional<std::vector<int>> dist;
    if (board.isFinite()) dist = bfsAll(board.finite().graph, board.finite().graph.requireLabel(opponent));
    Key best;
    double bestScore = -1;
    for (const Key& m : safe) {
        double score;
        if (dist) {
            int d = (*dist)[static_cast<std::size_t>(board.finite().graph.requireLabel(m))];
            score = d < 0 ? std::numeric_limits<double>::infinity() : d;
        } else {
            score = board.oracle->distanceEstimate(m, opponent);
        }
        if (best.empty() || score > bestScore || (score == bestScore && m < best)) {
            best = m;
            bestScore = score;
        }
    }
    return best;
}

inline Key randomPlacement(StepContext& ctx) {
    const Board& b = ctx.board;
    if (b.isFinite()) {
        const FiniteGraph& g = b.finite().graph;
        return g.label(static_cast<Vertex>(ctx.rng.bounded(static_cast<std::uint64_t>(g.size()))));
    }
    Key cur = b.oracle->startVertex();
    std::uint64_t steps = ctx.rng.bounded(9);
    for (std::uint64_t i = 0; i < steps; ++i) {
        std::vector<Key> menu = b.moveMenu(cur);
        cur = menu[ctx.rng.bounded(menu.size())];
    }
    return cur;
}

}  // namespace stratdetail

/// Uniform choice from the local menu. On infinite boards the wander is
/// kept inside a drift window: without it the walk's coordinates grow
/// without bound and every later query pays for that growth, turning long
/// seeded runs superlinear.
class RandomStrategy : public Strategy {
public:
    std::string spec() const override { return "random"; }

    Key place(StepContext& ctx, const std::optional<Key>&) override {
        Key at = stratdetail::randomPlacement(ctx);
        ceiling_ = ctx.board.drift(at) + 16;
        return at;
    }

    Key move(StepContext& ctx, const Key& self, const Key&) override {
        std::vector<Key> menu = ctx.board.moveMenu(self);
        if (!ctx.board.isFinite()) {
            std::vector<Key> inWindow;
            for (Key& m : menu)
                if (ctx.board.drift(m) <= ceiling_) inWindow.push_back(std::move(m));
            if (!inWindow.empty()) menu = std::move(inWindow);
        }
        return menu[ctx.rng.bounded(menu.size())];
    }

private:
    double ceiling_ = 1e18;
};

/// Exact pursuit on finite boards, greedy descent on the family's distance
/// estimate otherwise.
class ShortestPathCop : public Strategy {
public:
    std::string spec() const override { return "shortest-path"; }

    Key place(StepContext& ctx, const std::optional<Key>&) override {
        if (!ctx.board.isFinite()) return ctx.board.oracle->startVertex();
        const FiniteGraph& g = ctx.board.finite().graph;
        Key best = g.label(0);
        for (Vertex v = 1; v < g.size(); ++v) best = std::min(best, g.label(v));
        return best;
    }

    Key move(StepContext& ctx, const Key& self, const Key& opponent) override {
        if (ctx.board.isFinite()) return stratdetail::bfsChaseStep(ctx.board.finite().graph, self, opponent);
        Key best;
        double bestScore = 0;
        for (const Key& m : ctx.board.moveMenu(self)) {
            double score = m == opponent ? -1 : ctx.board.oracle->distanceEstimate(m, opponent);
            if (best.empty() || score < bestScore || (score == bestScore && m < best)) {
                best = m;
                bestScore = score;
            }
        }
        return best;
    }
};

class ShadowRobber : public Strategy {
public:
    std::string spec() const override { return "shadow"; }

    Key place(StepContext& ctx, const std::optional<Key>& copPlacement) override {
        const Board& b = ctx.board;
        const Key& cop = *copPlacement;
        if (b.isFinite()) {
            const FiniteGraph& g = b.finite().graph;
            std::vector<int> dist = stratdetail::bfsAll(g, g.requireLabel(cop));
            Key best;
            double bestScore = -1;
            for (Vertex v = 0; v < g.size(); ++v) {
                double score = dist[static_cast<std::size_t>(v)] < 0 ? std::numeric_limits<double>::infinity()
                                                                     : dist[static_cast<std::size_t>(v)];
                Key l = g.label(v);
                if (best.empty() || score > bestScore || (score == bestScore && l < best)) {
                    best = l;
                    bestScore = score;
                }
            }
            return best;
        }
        Key cur = b.oracle->startVertex();
        for (int i = 0; i < 8; ++i) cur = stratdetail::shadowMove(b, cur, cop);
        return cur;
    }

    Key move(StepContext& ctx, const Key& self, const Key& opponent) override {
        return stratdetail::shadowMove(ctx.board, self, opponent);
    }
};

/// The valve recipe on the seven-vertex gadget: wait at w, answer a cop at
/// t or z by going to t', a cop at t' or z' by going to t, then stay, fall
/// back to w, or exit through x.
class KEscapeRobber : public Strategy {
public:
    explicit KEscapeRobber(const Board& board) {
        if (FamilySpec::parse(board.spec).name != "k")
            throw std::invalid_argument("k-escape: the board must be the seven-vertex gadget");
    }

    std::string spec() const override { return "k-escape"; }

    Key place(StepContext& ctx, const std::optional<Key>& copPlacement) override {
        if (!ctx.board.adjacentOrEqual("w", *copPlacement)) return "w";
        std::vector<Key> options;
        for (const Key& k : std::vector<Key>{"t", "tp", "x", "y", "z", "zp"})
            if (!ctx.board.adjacentOrEqual(k, *copPlacement)) options.push_back(k);
        return options.empty() ? Key("w") : options.front();
    }

    Key move(StepContext& ctx, const Key& self, const Key& cop) override {
        const Board& b = ctx.board;
        auto safe = [&](const Key& k) { return !b.adjacentOrEqual(k, cop); };
        if (self == "w") {
            if (cop == "t" || cop == "z") return "tp";
            if (cop == "tp" || cop == "zp") return "t";
            if (safe("w")) return "w";
            return stratdetail::shadowMove(b, self, cop);
        }
        if (self == "t" || self == "tp") {
            if (safe("x")) return "x";
            if (safe("w")) return "w";
            if (safe(self)) return self;
            return stratdetail::shadowMove(b, self, cop);
        }
        if (self == "x") {
            if (safe("x")) return "x";
            // Cornered at the exit the robber concedes there; fleeing into
            // another dominated square would only relocate the capture.
            if (b.safeMoves(self, cop).empty()) return "x";
            return stratdetail::shadowMove(b, self, cop);
        }
        if (b.adjacentOrEqual(self, "w") && safe("w")) return "w";
        return stratdetail::shadowMove(b, self, cop);
    }
};

/// Positional play from the exact game solution of a finite board.
class SolverCop : public Strategy {
public:
    explicit SolverCop(const Board& board) : g_(&board.finite().graph), sol_(solve(*g_)) {}

    std::string spec() const override { return "solver"; }

    Key place(StepContext&, const std::optional<Key>&) override { return g_->label(sol_.copStart); }

    Key move(StepContext&, const Key& self, const Key& opponent) override {
        Vertex mv = sol_.copPolicy[static_cast<std::size_t>(g_->requireLabel(self)) *
                                       static_cast<std::size_t>(sol_.n) +
                                   static_cast<std::size_t>(g_->requireLabel(opponent))];
        return mv < 0 ? self : g_->label(mv);
    }

private:
    const FiniteGraph* g_;
    GameSolution sol_;
};

class SolverRobber : public Strategy {
public:
    explicit SolverRobber(const Board& board) : g_(&board.finite().graph), sol_(solve(*g_)) {}

    std::string spec() const override { return "solver"; }

    Key place(StepContext&, const std::optional<Key>& copPlacement) override {
        Vertex reply = sol_.robberPlace[static_cast<std::size_t>(g_->requireLabel(*copPlacement))];
        return g_->label(reply);
    }

    Key move(StepContext&, const Key& self, const Key& opponent) override {
        Vertex mv = sol_.robberPolicy[static_cast<std::size_t>(g_->requireLabel(opponent)) *
                                          static_cast<std::size_t>(sol_.n) +
                                      static_cast<std::size_t>(g_->requireLabel(self))];
        return mv < 0 ? self : g_->label(mv);
    }

private:
    const FiniteGraph* g_;
    GameSolution sol_;
};

/// Construction-order pursuit on a finite board: start at the root, then
/// always move to the latest-added vertex on the robber's trail within
/// reach. Annotates the trail index so tests can check that revisits see it
/// strictly shrink.
class TrailCop : public Strategy {
public:
    explicit TrailCop(const Board& board) : board_(&board) {
        if (!board.isFinite() || !board.oracle->hasParentMap())
            throw std::invalid_argument("trail: the board must be finite and constructible");
    }

    std::string spec() const override { return "trail"; }

    Key place(StepContext& ctx, const std::optional<Key>&) override { return ctx.board.oracle->startVertex(); }

    Key move(StepContext& ctx, const Key& self, const Key& opponent) override {
        const Board& b = ctx.board;
        Key cur = opponent;
        for (int k = 0;; ++k) {
            if (b.adjacentOrEqual(self, cur)) {
                note_ = "k=" + std::to_string(k);
                return cur;
            }
            auto p = b.oracle->parent(cur);
            if (!p) break;
            cur = *p;
        }
        flagged_ = true;  // the well-definedness lemma failed; do not mask it
        note_ = "stuck";
        return self;
    }

    std::string annotation() const override { return note_; }
    bool flagged() const override { return flagged_; }

private:
    const Board* board_;
    std::string note_;
    bool flagged_ = false;
};

/// Pursuit from a consistent parent map on a possibly infinite board: move
/// to the most recent robber ancestor in reach (Case 1), otherwise climb to
/// the parent of the current position (Case 2). Case 1 must persist once
/// entered; a relapse flags the transcript.
class ConsistentCop : public Strategy {
public:
    explicit ConsistentCop(const Board& board) {
        if (!board.oracle->hasParentMap())
            throw std::invalid_argument("consistent: the board carries no parent map");
    }

    std::string spec() const override { return "consistent"; }

    Key place(StepContext& ctx, const std::optional<Key>&) override { return ctx.board.oracle->startVertex(); }

    Key move(StepContext& ctx, const Key& self, const Key& opponent) override {
        const Board& b = ctx.board;
        std::vector<Key> reach = b.moveMenu(self);
        std::optional<int> k = b.oracle->trailHits(opponent, reach);
        if (k) {
            if (everCase1_ && lastCase_ == 2) flagged_ = true;
            everCase1_ = true;
            lastCase_ = 1;
            note_ = "case=1;k=" + std::to_string(*k);
            Key cur = opponent;
            for (int i = 0; i < *k; ++i) cur = *b.oracle->parent(cur);
            return cur;
        }
        if (everCase1_) flagged_ = true;  // Case 1 must persist
        lastCase_ = 2;
        note_ = "case=2";
        auto p = b.oracle->parent(self);
        if (!p) {
            flagged_ = true;
            return self;
        }
        return *p;
    }

    std::string annotation() const override { return note_; }
    bool flagged() const override { return flagged_; }

private:
    std::string note_;
    int lastCase_ = 0;
    bool everCase1_ = false;
    bool flagged_ = false;
};

/// The hub chase on a finite chain-of-gadgets with a hub: sit at the hub,
/// then sweep the robber's block with the forcing sequence and follow him
/// leftward block by block.
class ScriptedChainCop : public Strategy {
public:
    explicit ScriptedChainCop(const Board& board) {
        FamilySpec s = FamilySpec::parse(board.spec);
        if (s.name != "kchain" || !s.getBool("hub", false) || !board.isFinite())
            throw std::invalid_argument("chain-script: the board must be a finite hubbed chain");
    }

    std::string spec() const override { return "chain-script"; }

    Key place(StepContext&, const std::optional<Key>&) override {
        note_ = "phase=hub";
        return "hub";
    }

    Key move(StepContext& ctx, const Key& self, const Key& opponent) override {
        const Board& b = ctx.board;
        if (b.adjacentOrEqual(self, opponent)) {
            note_ = "phase=capture";
            return opponent;
        }
        auto me = parse(self);
        auto rb = parse(opponent);
        note_ = "phase=script";
        if (rb.role != 'x' && rb.role != 'h') {
            // Robber strictly inside block i.
            long long i = rb.idx;
            if (me.role == 'h') return joint(i + 1);
            if (me.role == 'x') {
                if (me.idx == i + 1 && rb.role == 'w') return "z" + std::to_string(i);
                return joint(me.idx < i + 1 ? me.idx + 1 : me.idx - 1);
            }
            if (me.role == 'z' && me.idx == i && rb.role == 'p') return "zp" + std::to_string(i);
        } else if (rb.role == 'x' && me.role == 'x') {
            return joint(me.idx < rb.idx ? me.idx + 1 : me.idx - 1);
        } else if (rb.role == 'x' && me.role == 'q' && me.idx == rb.idx) {
            // Cop on z', robber pushed to the left joint: close with y_i.
            return joint(rb.idx + 1);
        }
        note_ = "phase=chase";
        return stratdetail::bfsChaseStep(b.finite().graph, self, opponent);
    }

    std::string annotation() const override { return note_; }

private:
    struct Parsed {
        char role;  // h=hub, x=joint, z, q=zp, t, p=tp, w
        long long idx = 0;
    };

    static Parsed parse(const Key& k) {
        if (k == "hub") return {'h', 0};
        std::size_t d = 0;
        while (d < k.size() && !std::isdigit(static_cast<unsigned char>(k[d]))) ++d;
        std::string role = k.substr(0, d);
        long long idx = std::stoll(k.substr(d));
        if (role == "zp") return {'q', idx};
        if (role == "tp") return {'p', idx};
        return {role[0], idx};
    }

    static Key joint(long long j) { return "x" + std::to_string(j); }

    std::string note_;
};

/// The committed-coordinate evasion on the coordinate graph. Memory: the
/// stage and the committed cycle position m. Mirrors the cop on the m-th
/// cycle, runs home when the cop shows a 6, and re-commits above the cop's
/// support from home.
class GeeRobber : public Strategy {
public:
    explicit GeeRobber(const Board& board) {
        if (FamilySpec::parse(board.spec).name != "gee" || board.isFinite())
            throw std::invalid_argument("gee: the board must be the coordinate-graph oracle");
    }

    std::string spec() const override { return "gee"; }

    Key place(StepContext&, const std::optional<Key>& copPlacement) override {
        gee::Coords c = gee::decodeKey(*copPlacement);
        m_ = firstOddAbove(gee::support(c));
        stage_ = hasSix(c) ? 2 : 1;
        prevCop_ = c;
        return gee::encodeKey(gee::withValue({}, m_, 2));
    }

    Key move(StepContext& ctx, const Key& self, const Key& opponent) override {
        const Board& b = ctx.board;
        gee::Coords w = gee::decodeKey(self);
        gee::Coords c = gee::decodeKey(opponent);
        Key out = self;
        if (stage_ == 1) {
            if (hasSix(c)) {
                stage_ = 2;  // freeze this turn; the run home starts next move
                out = self;
            } else if (gee::at(c, m_) != gee::at(prevCop_, m_)) {
                int delta = (gee::at(c, m_) - gee::at(prevCop_, m_)) & 3;
                out = emit(b, self, opponent, gee::withValue(w, m_, (gee::at(w, m_) + delta) & 3));
            } else {
                int d = gee::cycleDist4(gee::at(w, m_), gee::at(c, m_));
                if (d >= 2) {
                    out = self;
                } else if (d == 1) {
                    int away = ((gee::at(w, m_) - gee::at(c, m_)) & 3) == 1 ? 1 : 3;
                    out = emit(b, self, opponent, gee::withValue(w, m_, (gee::at(w, m_) + away) & 3));
                } else {
                    out = bail(b, self, opponent);
                }
            }
            if (stage_ == 1 && !flagged_) {
                gee::Coords now = gee::decodeKey(out);
                if (gee::support(now) == 0) {
                    stage_ = 3;
                } else {
                    int d = gee::cycleDist4(gee::at(now, m_), gee::at(c, m_));
                    if (!(d == 2 || (d == 1 && copBelowNonzero(c)))) out = bail(b, self, opponent);
                }
            }
        } else if (stage_ == 2) {
            if (gee::support(w) == 0) {
                stage_ = 3;
                out = recommit(b, self, opponent, c);
            } else if (offScript(w)) {
                out = bail(b, self, opponent);
            } else {
                int v = gee::at(w, m_);
                int next = v == 2 ? 1 : 0;
                gee::Coords tgt = gee::withValue(w, m_, next);
                out = emit(b, self, opponent, tgt);
                if (next == 0 && out == gee::encodeKey(tgt)) stage_ = 3;
            }
        } else {
            out = recommit(b, self, opponent, c);
        }
        prevCop_ = c;
        return out;
    }

    std::string annotation() const override {
        return "stage=" + std::to_string(stage_) + ";m=" + std::to_string(m_);
    }
    bool flagged() const override { return flagged_; }

private:
    static int firstOddAbove(int s) { return s % 2 == 0 ? s + 1 : s + 2; }

    static bool hasSix(const gee::Coords& c) {
        for (int p = 2; p <= gee::support(c); p += 2)
            if (gee::at(c, p) == 6) return true;
        return false;
    }

    bool copBelowNonzero(const gee::Coords& c) const {
        for (int p = 1; p < m_; ++p)
            if (gee::at(c, p) != 0) return true;
        return false;
    }

    /// The run home assumes the robber is a lone committed-cycle value.
    bool offScript(const gee::Coords& w) const {
        return gee::support(w) != m_ || [&] {
            for (int p = 1; p < m_; ++p)
                if (gee::at(w, p) != 0) return true;
            return false;
        }();
    }

    Key emit(const Board& b, const Key& self, const Key& cop, const gee::Coords& target) {
        Key t = gee::encodeKey(target);
        if (b.adjacentOrEqual(t, cop)) return bail(b, self, cop);
        return t;
    }

    Key bail(const Board& b, const Key& self, const Key& cop) {
        flagged_ = true;
        return stratdetail::shadowMove(b, self, cop);
    }

    Key recommit(const Board& b, const Key& self, const Key& cop, const gee::Coords& c) {
        int next = firstOddAbove(gee::support(c));
        Key t = gee::encodeKey(gee::withValue({}, next, 1));
        if (b.adjacentOrEqual(t, cop)) return bail(b, self, cop);
        stage_ = 1;
        m_ = next;
        return t;
    }

    int stage_ = 1;
    int m_ = 1;
    gee::Coords prevCop_;
    bool flagged_ = false;
};

/// The corner-cycle evasion on the level-union graph. Memory: the stage,
/// the committed level m, and the highest apex order the cop has shown.
class HRobber : public Strategy {
public:
    explicit HRobber(const Board& board) {
        if (FamilySpec::parse(board.spec).name != "hgraph" || board.isFinite())
            throw std::invalid_argument("hgraph: the board must be the level-union oracle");
    }

    std::string spec() const override { return "hgraph"; }

    Key place(StepContext&, const std::optional<Key>& copPlacement) override {
        hg::Addr c = hg::decodeAddr(*copPlacement);
        m_ = std::max(c.level, hg::hiveTypeOrder(c).value_or(0)) + 1;
        stage_ = 1;
        return hg::encodeAddr(corner(2, m_));
    }

    Key move(StepContext& ctx, const Key& self, const Key& opponent) override {
        const Board& b = ctx.board;
        hg::Addr a = hg::decodeAddr(self);
        hg::Addr c = hg::decodeAddr(opponent);
        std::optional<int> copOrd = hg::hiveTypeOrder(c);
        if (stage_ == 1) {
            if (copOrd && *copOrd >= m_) {
                stage_ = 2;
                kprime_ = *copOrd;
                return runHome(b, a, opponent);
            }
            hg::WrapProjection wp = hg::jPrimeProjection(c, m_);
            if (wp.atApex) return bail(b, self, opponent);  // order >= m_ was handled above
            std::optional<int> corner = cornerIndex(a);
            if (!corner) return bail(b, self, opponent);
            Key best;
            for (int cand : neighborsOnSquare(*corner)) {
                if (hg::hDistance(wp.h, cornerElem(cand, m_), m_) < 2) continue;
                Key key = hg::encodeAddr(this->corner(cand, m_));
                if (cand == *corner) return key;  // staying wins ties
                if (best.empty() || key < best) best = key;
            }
            if (best.empty()) return bail(b, self, opponent);
            return best;
        }
        if (stage_ == 2) {
            kprime_ = std::max(kprime_, copOrd.value_or(0));
            return runHome(b, a, opponent);
        }
        // Stage 3: climb the spine to level kprime_+1 and step onto the far
        // corner of its square, aborting if the cop shows a higher apex.
        if (copOrd && *copOrd >= kprime_ + 1) {
            kprime_ = *copOrd;
            stage_ = 2;
            return runHome(b, a, opponent);
        }
        int target = kprime_ + 1;
        if (hg::isSpine(a)) {
            if (a.level < target) return emit(b, self, opponent, hg::originAt(a.level + 1));
            return emit(b, self, opponent, corner(1, target));
        }
        if (a == corner(1, target)) {
            Key want = hg::encodeAddr(corner(2, target));
            Key out = emit(b, self, opponent, corner(2, target));
            if (out == want) {
                stage_ = 1;
                m_ = target;
            }
            return out;
        }
        return bail(b, self, opponent);
    }

    std::string annotation() const override {
        return "stage=" + std::to_string(stage_) + ";m=" + std::to_string(m_) + ";kp=" + std::to_string(kprime_);
    }
    bool flagged() const override { return flagged_; }

private:
    /// Corner i of the square that closes level n: 0 is the spine point,
    /// 1..3 the added cycle.
    static hg::Addr corner(int i, int n) {
        if (i == 0) return hg::originAt(n);
        return hg::addrOf(hg::HElem{i, {}}, 0, n);
    }

    /// Corner i of the level-n square as an element of the wrap it closes.
    static hg::HElem cornerElem(int i, int n) {
        if (i == 0) return hg::HElem{0, hg::originAt(n - 1)};
        return hg::HElem{i, {}};
    }

    /// Which corner of the level-m_ square this address is, if any.
    std::optional<int> cornerIndex(const hg::Addr& a) const {
        for (int i = 0; i < 4; ++i)
            if (a == corner(i, m_)) return i;
        return std::nullopt;
    }

    static std::vector<int> neighborsOnSquare(int i) { return {i, (i + 3) & 3, (i + 1) & 3}; }

    /// Stage-2 legwork: corners step to the spine, the spine walks down to
    /// the origin, arrival flips to stage 3.
    Key runHome(const Board& b, const hg::Addr& a, const Key& cop) {
        Key self = hg::encodeAddr(a);
        if (hg::isSpine(a)) {
            if (a.level == 0) {
                stage_ = 3;  // already home; start the climb right away
                return emit(b, self, cop, hg::originAt(1));
            }
            Key out = emit(b, self, cop, hg::originAt(a.level - 1));
            if (a.level == 1 && out == hg::encodeAddr(hg::originAt(0))) stage_ = 3;
            return out;
        }
        // On a cycle corner of some square: cyc 1 and 3 touch the spine.
        if (a.pairLvls.size() == 1 && a.pairLvls[0] == 0 && a.terminal != hg::Terminal::Origin &&
            a.terminal != hg::Terminal::Hive) {
            hg::HElem h = hg::innerOf(a);
            if (h.cyc == 1 || h.cyc == 3) return emit(b, self, cop, hg::originAt(a.level));
            if (h.cyc == 2) return emit(b, self, cop, hg::addrOf(hg::HElem{1, {}}, 0, a.level));
        }
        return bail(b, self, cop);
    }

    Key emit(const Board& b, const Key& self, const Key& cop, const hg::Addr& target) {
        Key t = hg::encodeAddr(target);
        if (b.adjacentOrEqual(t, cop)) return bail(b, self, cop);
        return t;
    }

    Key bail(const Board& b, const Key& self, const Key& cop) {
        flagged_ = true;
        return stratdetail::shadowMove(b, self, cop);
    }

    int stage_ = 1;
    int m_ = 1;
    int kprime_ = 0;
    bool flagged_ = false;
};

/// Adversary probe for the coordinate graph: pump the first path coordinate
/// to 6 and back, forever.
class SixSeekCop : public Strategy {
public:
    explicit SixSeekCop(const Board& board) {
        if (FamilySpec::parse(board.spec).name != "gee" || board.isFinite())
            throw std::invalid_argument("six-seek: the board must be the coordinate-graph oracle");
    }

    std::string spec() const override { return "six-seek"; }

    Key place(StepContext&, const std::optional<Key>&) override { return "[]"; }

    Key move(StepContext&, const Key& self, const Key&) override {
        gee::Coords c = gee::decodeKey(self);
        int v = gee::at(c, 2);
        if (up_ && v == 6) up_ = false;
        if (!up_ && v == 0) up_ = true;
        return gee::encodeKey(gee::withValue(c, 2, up_ ? v + 1 : v - 1));
    }

private:
    bool up_ = true;
};

/// Adversary probe for the level union: keep climbing to an apex one order
/// above the robber's current level.
class HiveSeekCop : public Strategy {
public:
    explicit HiveSeekCop(const Board& board) {
        if (FamilySpec::parse(board.spec).name != "hgraph" || board.isFinite())
            throw std::invalid_argument("hive-seek: the board must be the level-union oracle");
    }

    std::string spec() const override { return "hive-seek"; }

    Key place(StepContext&, const std::optional<Key>&) override { return "0:o"; }

    Key move(StepContext&, const Key& self, const Key& opponent) override {
        hg::Addr a = hg::decodeAddr(self);
        hg::Addr r = hg::decodeAddr(opponent);
        target_ = std::max(target_, r.level + 1);
        if (a.level < target_) return hg::encodeAddr(hg::embed(a));
        if (hg::isHiveVertex(a)) return self;  // camp until the robber climbs
        int top = hg::levelLength(a.level);
        int layer = a.pairLvls[0];
        if (layer == top) return hg::encodeAddr(hg::hiveAt(a.level));
        hg::Addr up = a;
        up.pairLvls[0] = layer + 1;
        return hg::encodeAddr(up);
    }

private:
    int target_ = 1;
};

inline std::unique_ptr<Strategy> makeStrategy(const std::string& specString, Side side, const Board& board) {
    FamilySpec s = FamilySpec::parse(specString);
    auto copOnly = [&] {
        if (side != Side::Cop) throw std::invalid_argument("strategy '" + s.name + "' only plays the cop");
    };
    auto robberOnly = [&] {
        if (side != Side::Robber) throw std::invalid_argument("strategy '" + s.name + "' only plays the robber");
    };
    s.expectKeys({});
    if (s.name == "random") return std::make_unique<RandomStrategy>();
    if (s.name == "solver")
        return side == Side::Cop ? std::unique_ptr<Strategy>(std::make_unique<SolverCop>(board))
                                 : std::unique_ptr<Strategy>(std::make_unique<SolverRobber>(board));
    if (s.name == "shortest-path") {
        copOnly();
        return std::make_unique<ShortestPathCop>();
    }
    if (s.name == "trail") {
        copOnly();
        return std::make_unique<TrailCop>(board);
    }
    if (s.name == "consistent") {
        copOnly();
        return std::make_unique<ConsistentCop>(board);
    }
    if (s.name == "chain-script") {
        copOnly();
        return std::make_unique<ScriptedChainCop>(board);
    }
    if (s.name == "six-seek") {
        copOnly();
        return std::make_unique<SixSeekCop>(board);
    }
    if (s.name == "hive-seek") {
        copOnly();
        return std::make_unique<HiveSeekCop>(board);
    }
    if (s.name == "shadow") {
        robberOnly();
        return std::make_unique<ShadowRobber>();
    }
    if (s.name == "k-escape") {
        robberOnly();
        return std::make_unique<KEscapeRobber>(board);
    }
    if (s.name == "gee") {
        robberOnly();
        return std::make_unique<GeeRobber>(board);
    }
    if (s.name == "hgraph") {
        robberOnly();
        return std::make_unique<HRobber>(board);
    }
    throw std::invalid_argument("unknown strategy '" + s.name + "'");
}

/// Rebuild everything from a transcript header and run it again; identical
/// headers must reproduce identical transcripts.
inline Transcript replay(const TranscriptHeader& h, const PlayOptions& opt = {}) {
    Board board = makeBoard(h.graphSpec);
    std::unique_ptr<Strategy> cop = makeStrategy(h.copSpec, Side::Cop, board);
    std::unique_ptr<Strategy> robber = makeStrategy(h.robberSpec, Side::Robber, board);
    return play(board, *cop, *robber, h.horizon, h.seed, opt);
}

}  // namespace pursuit
