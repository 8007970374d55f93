#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pursuit/graph.hpp"
#include "pursuit/oracle.hpp"
#include "pursuit/util.hpp"

namespace pursuit::hg {

/// Stage graphs are built iteratively: stage 0 is a single origin vertex;
/// stage k wraps stage k-1 in a 4-cycle attached at the origin (the "h" step)
/// and then extrudes the result through levelLength(k) layers capped by an
/// apex vertex (the "hive" step). The union of all stages, each stage linked
/// to its embedded copy inside the next, is the infinite object the oracle
/// walks.

inline int levelLength(int k) { return 2 * k + 5; }

enum class Terminal { Origin, Hive, Cyc1, Cyc2, Cyc3 };

/// Address of a stage vertex. pairLvls[j] is the layer chosen at nesting
/// depth j (outermost first); the terminal says what sits innermost: the
/// stage-0 origin, a cycle vertex of the innermost wrap, or a whole-stage
/// apex. As a union vertex, level doubles as the stage index.
struct Addr {
    int level = 0;
    std::vector<int> pairLvls;
    Terminal terminal = Terminal::Origin;

    bool operator==(const Addr&) const = default;
    auto operator<=>(const Addr&) const = default;
};

inline bool validAddr(const Addr& a) {
    int depth = static_cast<int>(a.pairLvls.size());
    if (a.level < 0 || depth > a.level) return false;
    for (int j = 0; j < depth; ++j)
        if (a.pairLvls[j] < 0 || a.pairLvls[j] > levelLength(a.level - j)) return false;
    int inner = a.level - depth;
    switch (a.terminal) {
        case Terminal::Origin: return inner == 0;
        case Terminal::Hive: return inner >= 1;
        default: return depth >= 1;
    }
}

inline Addr originAt(int n) { return {n, std::vector<int>(static_cast<std::size_t>(n), 0), Terminal::Origin}; }
inline Addr hiveAt(int n) { return {n, {}, Terminal::Hive}; }
inline bool isHiveVertex(const Addr& a) { return a.pairLvls.empty() && a.terminal == Terminal::Hive; }
inline bool isSpine(const Addr& a) {
    if (a.terminal != Terminal::Origin) return false;
    for (int l : a.pairLvls)
        if (l != 0) return false;
    return true;
}

/// The layer-0 copy of stage n inside stage n+1.
inline Addr embed(Addr a) {
    a.level += 1;
    a.pairLvls.insert(a.pairLvls.begin(), 0);
    return a;
}

inline std::string encodeAddr(const Addr& a) {
    std::string s;
    switch (a.terminal) {
        case Terminal::Origin: s = "o"; break;
        case Terminal::Hive: s = "v"; break;
        case Terminal::Cyc1: s = "c1"; break;
        case Terminal::Cyc2: s = "c2"; break;
        case Terminal::Cyc3: s = "c3"; break;
    }
    for (auto it = a.pairLvls.rbegin(); it != a.pairLvls.rend(); ++it)
        s = "(" + s + "," + std::to_string(*it) + ")";
    return std::to_string(a.level) + ":" + s;
}

inline std::optional<Addr> tryDecodeAddr(const std::string& key) {
    std::size_t colon = key.find(':');
    if (colon == std::string::npos || colon == 0) return std::nullopt;
    Addr a;
    try {
        std::size_t used = 0;
        a.level = std::stoi(key.substr(0, colon), &used);
        if (used != colon) return std::nullopt;
    } catch (...) {
        return std::nullopt;
    }
    std::size_t i = colon + 1;
    int depth = 0;
    while (i < key.size() && key[i] == '(') {
        ++depth;
        ++i;
    }
    if (i >= key.size()) return std::nullopt;
    if (key[i] == 'o') {
        a.terminal = Terminal::Origin;
        ++i;
    } else if (key[i] == 'v') {
        a.terminal = Terminal::Hive;
        ++i;
    } else if (key[i] == 'c' && i + 1 < key.size() && key[i + 1] >= '1' && key[i + 1] <= '3') {
        a.terminal = key[i + 1] == '1' ? Terminal::Cyc1 : key[i + 1] == '2' ? Terminal::Cyc2 : Terminal::Cyc3;
        i += 2;
    } else {
        return std::nullopt;
    }
    a.pairLvls.assign(static_cast<std::size_t>(depth), 0);
    for (int j = depth - 1; j >= 0; --j) {
        if (i >= key.size() || key[i] != ',') return std::nullopt;
        ++i;
        std::size_t start = i;
        while (i < key.size() && key[i] >= '0' && key[i] <= '9') ++i;
        if (i == start || i - start > 4) return std::nullopt;
        a.pairLvls[static_cast<std::size_t>(j)] = std::stoi(key.substr(start, i - start));
        if (i >= key.size() || key[i] != ')') return std::nullopt;
        ++i;
    }
    if (i != key.size()) return std::nullopt;
    if (!validAddr(a)) return std::nullopt;
    return a;
}

inline Addr decodeAddr(const std::string& key) {
    auto a = tryDecodeAddr(key);
    if (!a) throw std::invalid_argument("not a stage address: " + key);
    return *a;
}

/// Element of the wrap H_k = stage k-1 plus three cycle vertices (the cycle
/// closes through the stage's origin). cyc in 1..3 marks a cycle vertex,
/// otherwise g holds a stage k-1 address.
struct HElem {
    int cyc = 0;
    Addr g;
    bool operator==(const HElem&) const = default;
};

/// Strips the outermost layer pair; precondition: a is a pair address.
inline HElem innerOf(const Addr& a) {
    if (a.pairLvls.size() == 1 && a.terminal != Terminal::Origin && a.terminal != Terminal::Hive) {
        int idx = a.terminal == Terminal::Cyc1 ? 1 : a.terminal == Terminal::Cyc2 ? 2 : 3;
        return {idx, {}};
    }
    Addr g = a;
    g.level -= 1;
    g.pairLvls.erase(g.pairLvls.begin());
    return {0, std::move(g)};
}

inline Addr addrOf(const HElem& h, int layer, int k) {
    if (h.cyc) {
        Terminal t = h.cyc == 1 ? Terminal::Cyc1 : h.cyc == 2 ? Terminal::Cyc2 : Terminal::Cyc3;
        return {k, {layer}, t};
    }
    Addr a = h.g;
    a.level = k;
    a.pairLvls.insert(a.pairLvls.begin(), layer);
    return a;
}

inline bool adjacentStage(const Addr& a, const Addr& b);

inline bool hAdjacentOrEqual(const HElem& p, const HElem& q, int k) {
    if (p == q) return true;
    if (p.cyc && q.cyc) return std::abs(p.cyc - q.cyc) == 1;
    if (p.cyc) return (p.cyc == 1 || p.cyc == 3) && q.g == originAt(k - 1);
    if (q.cyc) return (q.cyc == 1 || q.cyc == 3) && p.g == originAt(k - 1);
    return adjacentStage(p.g, q.g);
}

/// Adjacency within one stage: the apex sees the whole top layer; two layer
/// pairs are adjacent when their wrap elements are adjacent-or-equal and
/// their layers differ by at most one.
inline bool adjacentStage(const Addr& a, const Addr& b) {
    if (a == b || a.level != b.level) return false;
    int k = a.level;
    if (isHiveVertex(a)) return !b.pairLvls.empty() && b.pairLvls[0] == levelLength(k);
    if (isHiveVertex(b)) return !a.pairLvls.empty() && a.pairLvls[0] == levelLength(k);
    if (a.pairLvls.empty() || b.pairLvls.empty()) return false;  // only stage 0, which is a single vertex
    if (std::abs(a.pairLvls[0] - b.pairLvls[0]) > 1) return false;
    return hAdjacentOrEqual(innerOf(a), innerOf(b), k);
}

inline bool adjacentOrEqualStage(const Addr& a, const Addr& b) { return a == b || adjacentStage(a, b); }

namespace detail {

inline void enumerateStage(int k, std::vector<Addr>& out, std::size_t budget);

inline void guardPush(std::vector<Addr>& out, Addr a, std::size_t budget) {
    if (out.size() >= budget) throw BudgetError("stage enumeration budget exceeded");
    out.push_back(std::move(a));
}

inline std::vector<HElem> allH(int k, std::size_t budget) {
    std::vector<HElem> out{{1, {}}, {2, {}}, {3, {}}};
    std::vector<Addr> g;
    enumerateStage(k - 1, g, budget);
    for (Addr& a : g) out.push_back({0, std::move(a)});
    return out;
}

inline void enumerateStage(int k, std::vector<Addr>& out, std::size_t budget) {
    if (k == 0) {
        guardPush(out, originAt(0), budget);
        return;
    }
    guardPush(out, hiveAt(k), budget);
    for (const HElem& h : allH(k, budget))
        for (int l = 0; l <= levelLength(k); ++l) guardPush(out, addrOf(h, l, k), budget);
}

}  // namespace detail

inline std::vector<Addr> stageVertices(int k, std::size_t budget = 100'000) {
    std::vector<Addr> out;
    detail::enumerateStage(k, out, budget);
    std::sort(out.begin(), out.end());
    return out;
}

inline long long stageSize(int k) {
    long long n = 1;
    for (int j = 1; j <= k; ++j) {
        n = 1 + (n + 3) * (levelLength(j) + 1);
        if (n > 1'000'000'000LL) throw BudgetError("stageSize: out of range");
    }
    return n;
}

inline std::vector<Addr> stageNeighbors(const Addr& a, std::size_t budget = 100'000);

/// Closed neighborhood of a wrap element, as wrap elements.
inline std::vector<HElem> hClosedNeighbors(const HElem& h, int k, std::size_t budget) {
    std::vector<HElem> out{h};
    if (h.cyc) {
        if (h.cyc == 2) {
            out.push_back({1, {}});
            out.push_back({3, {}});
        } else {
            out.push_back({2, {}});
            out.push_back({0, originAt(k - 1)});
        }
        return out;
    }
    if (h.g == originAt(k - 1)) {
        out.push_back({1, {}});
        out.push_back({3, {}});
    }
    for (Addr& nb : stageNeighbors(h.g, budget)) out.push_back({0, std::move(nb)});
    return out;
}

inline std::vector<Addr> stageNeighbors(const Addr& a, std::size_t budget) {
    int k = a.level;
    std::vector<Addr> out;
    if (isHiveVertex(a)) {
        for (const HElem& h : detail::allH(k, budget)) detail::guardPush(out, addrOf(h, levelLength(k), k), budget);
        std::sort(out.begin(), out.end());
        return out;
    }
    if (a.pairLvls.empty()) return {};  // stage-0 origin
    int layer = a.pairLvls[0];
    HElem h = innerOf(a);
    for (const HElem& nb : hClosedNeighbors(h, k, budget))
        for (int l = std::max(0, layer - 1); l <= std::min(levelLength(k), layer + 1); ++l) {
            Addr cand = addrOf(nb, l, k);
            if (cand != a) detail::guardPush(out, std::move(cand), budget);
        }
    if (layer == levelLength(k)) detail::guardPush(out, hiveAt(k), budget);
    std::sort(out.begin(), out.end());
    return out;
}

/// Union adjacency: same-stage edges, plus each vertex linked to its embedded
/// copy's closed neighborhood one stage up.
inline bool adjacentUnion(const Addr& a, const Addr& b) {
    if (a.level == b.level) return adjacentStage(a, b);
    if (std::abs(a.level - b.level) != 1) return false;
    const Addr& lo = a.level < b.level ? a : b;
    const Addr& hi = a.level < b.level ? b : a;
    return adjacentOrEqualStage(embed(lo), hi);
}

inline std::vector<Addr> unionNeighbors(const Addr& a, std::size_t budget = 100'000) {
    std::set<Addr> out;
    auto add = [&](Addr x) {
        if (out.size() >= budget) throw BudgetError("unionNeighbors: budget exceeded");
        out.insert(std::move(x));
    };
    std::vector<Addr> same = stageNeighbors(a, budget);
    for (Addr& x : same) add(x);
    add(embed(a));
    for (Addr& x : stageNeighbors(embed(a), budget)) add(std::move(x));
    if (a.level >= 1) {
        same.push_back(a);
        for (const Addr& b : same)
            if (!b.pairLvls.empty() && b.pairLvls[0] == 0) {
                HElem h = innerOf(b);
                if (!h.cyc) add(h.g);
            }
    }
    return {out.begin(), out.end()};
}

inline int stageDistance(const Addr& a, const Addr& b);

/// Distance between wrap elements inside H_k; cycle vertices reach the rest
/// of the wrap only through the stage origin.
inline int hDistance(const HElem& p, const HElem& q, int k) {
    auto square = [](int i, int j) {
        int d = std::abs(i - j);
        return std::min(d, 4 - d);
    };
    if (p.cyc && q.cyc) return square(p.cyc, q.cyc);
    if (p.cyc) return square(p.cyc, 0) + stageDistance(originAt(k - 1), q.g);
    if (q.cyc) return square(q.cyc, 0) + stageDistance(originAt(k - 1), p.g);
    return stageDistance(p.g, q.g);
}

/// Exact distance within one stage, O(level) per query: layer pairs live in
/// a wrap-times-path strong product (max metric), with the apex shortcut as
/// the only alternative route.
inline int stageDistance(const Addr& a, const Addr& b) {
    if (a == b) return 0;
    if (a.level != b.level) throw std::invalid_argument("stageDistance: different stages");
    int k = a.level;
    int top = levelLength(k);
    if (isHiveVertex(a)) return (top - b.pairLvls[0]) + 1;
    if (isHiveVertex(b)) return (top - a.pairLvls[0]) + 1;
    int la = a.pairLvls[0], lb = b.pairLvls[0];
    int direct = std::max(hDistance(innerOf(a), innerOf(b), k), std::abs(la - lb));
    int viaApex = (top - la) + 2 + (top - lb);
    return std::min(direct, viaApex);
}

/// Lower bound on union distance: stage gap and the distance of the embedded
/// images in the larger stage are both necessary step counts.
inline int unionDistanceLowerBound(Addr a, Addr b) {
    int gap = std::abs(a.level - b.level);
    while (a.level < b.level) a = embed(a);
    while (b.level < a.level) b = embed(b);
    return std::max(gap, stageDistance(a, b));
}

/// Forgets the layer: stage k minus its apex maps onto the wrap H_k.
inline std::optional<HElem> hiveProjection(const Addr& a) {
    if (a.pairLvls.empty()) return std::nullopt;
    return innerOf(a);
}

/// One-step retraction onto the previous stage: cycle vertices collapse to
/// the origin, layer pairs forget their layer. Undefined on the apex.
inline std::optional<Addr> qProjection(const Addr& a) {
    if (a.pairLvls.empty()) return std::nullopt;
    HElem h = innerOf(a);
    if (h.cyc) return originAt(a.level - 1);
    return h.g;
}

/// Iterated retraction onto stage n. Retraction stops at an apex: those
/// vertices project to the apex itself, reported at its own (higher) stage.
inline Addr jProjection(Addr a, int n) {
    while (a.level < n) a = embed(a);
    while (a.level > n && !isHiveVertex(a)) a = *qProjection(a);
    return a;
}

/// Stage index of the apex this vertex retracts to, if any.
inline std::optional<int> hiveTypeOrder(Addr a) {
    while (true) {
        if (isHiveVertex(a)) return a.level;
        if (a.level == 0) return std::nullopt;
        a = *qProjection(a);
    }
}

/// J' projection target: either a wrap element of H_n or an apex at stage
/// >= n that the retraction ran into.
struct WrapProjection {
    bool atApex = false;
    int apexStage = 0;
    HElem h;
};

inline WrapProjection jPrimeProjection(const Addr& a, int n) {
    Addr j = jProjection(a, n);
    if (isHiveVertex(j)) return {true, j.level, {}};
    return {false, 0, *hiveProjection(j)};
}

struct Truncation {
    FiniteGraph graph;
    std::vector<Addr> addrs;  // id -> address, in label order
};

/// The union restricted to stages 0..maxLevel, with string labels.
inline Truncation buildTruncation(int maxLevel, std::size_t budget = 10'000) {
    std::vector<Addr> all;
    for (int n = 0; n <= maxLevel; ++n)
        for (Addr& a : stageVertices(n, budget)) {
            if (all.size() >= budget) throw BudgetError("buildTruncation: budget exceeded");
            all.push_back(std::move(a));
        }
    std::vector<std::string> labels;
    for (const Addr& a : all) labels.push_back(encodeAddr(a));
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (adjacentUnion(all[i], all[j]))
                edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    return {FiniteGraph(static_cast<int>(all.size()), std::move(edges), labels), std::move(all)};
}

class HGraphOracle : public NeighborOracle {
public:
    std::string name() const override { return "hgraph"; }
    bool locallyFinite() const override { return true; }
    bool isVertex(const Key& k) const override { return tryDecodeAddr(k).has_value(); }

    bool adjacent(const Key& a, const Key& b) const override {
        return adjacentUnion(decodeAddr(a), decodeAddr(b));
    }

    std::vector<Key> neighborsImpl(const Key& k, std::size_t budget) const override {
        std::vector<Key> out;
        for (const Addr& a : unionNeighbors(decodeAddr(k), budget)) out.push_back(encodeAddr(a));
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Degrees grow with stage (an apex sees a whole wrap), so the menu falls
    /// back to structural moves when enumeration passes a small multiple of
    /// the cap: layer steps, the apex hop, the embedding, and the drop to the
    /// stage below. The tight budget keeps the per-call cost proportional to
    /// the cap rather than to the (potentially huge) true degree.
    std::vector<Key> moveMenu(const Key& k, std::size_t cap) const override {
        Addr a = decodeAddr(k);
        try {
            std::vector<Key> out{k};
            for (const Addr& m : unionNeighbors(a, 4 * cap + 16)) {
                Key mk = encodeAddr(m);
                if (mk != k) out.push_back(std::move(mk));
            }
            std::sort(out.begin() + 1, out.end());
            if (out.size() > cap && cap >= 1) out.resize(cap);
            return out;
        } catch (const BudgetError&) {
        }
        std::set<Addr> moves;
        moves.insert(embed(a));
        if (isHiveVertex(a)) {
            moves.insert(addrOf(HElem{0, originAt(a.level - 1)}, levelLength(a.level), a.level));
            for (int c = 1; c <= 3; ++c) moves.insert(addrOf(HElem{c, {}}, levelLength(a.level), a.level));
        } else if (!a.pairLvls.empty()) {
            int layer = a.pairLvls[0];
            HElem h = innerOf(a);
            for (int l = std::max(0, layer - 1); l <= std::min(levelLength(a.level), layer + 1); ++l)
                if (l != layer) moves.insert(addrOf(h, l, a.level));
            if (layer == levelLength(a.level)) moves.insert(hiveAt(a.level));
            if (layer == 0 && !h.cyc) moves.insert(h.g);
        }
        std::vector<Key> out{k};
        for (const Addr& m : moves) out.push_back(encodeAddr(m));
        if (out.size() > cap && cap >= 1) out.resize(cap);
        return out;
    }

    double driftPotential(const Key& k) const override { return decodeAddr(k).level; }

    double distanceEstimate(const Key& a, const Key& b) const override {
        return unionDistanceLowerBound(decodeAddr(a), decodeAddr(b));
    }

    Key startVertex() const override { return "0:o"; }
};

}  // namespace pursuit::hg
