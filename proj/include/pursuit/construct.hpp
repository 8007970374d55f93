#pragma once

#include <bit>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "pursuit/graph.hpp"
#include "pursuit/util.hpp"

namespace pursuit {

/// A construction order plus domination map. order[0] is the root;
/// parent[v] is the earlier vertex whose closed neighborhood contained
/// N[v] at the moment v was added (-1 for the root / unassigned).
struct ConstructionCertificate {
    std::vector<Vertex> order;
    std::vector<Vertex> parent;
};

struct DismantleResult {
    bool constructible = false;
    ConstructionCertificate cert;   // filled on success
    std::vector<Vertex> core;       // the stuck induced subgraph on failure; {root} on success
};

namespace detail {

/// Closed-neighborhood rows as bitsets; subset tests are word ops.
class AdjBits {
public:
    explicit AdjBits(const FiniteGraph& g) : n_(g.size()), words_((g.size() + 63) / 64) {
        rows_.assign(static_cast<std::size_t>(n_) * words_, 0);
        for (int v = 0; v < n_; ++v) {
            setBit(row(v), v);
            for (Vertex w : g.neighbors(v)) setBit(row(v), w);
        }
    }

    std::uint64_t* row(int v) { return rows_.data() + static_cast<std::size_t>(v) * words_; }
    const std::uint64_t* row(int v) const { return rows_.data() + static_cast<std::size_t>(v) * words_; }
    int words() const { return static_cast<int>(words_); }

    static void setBit(std::uint64_t* w, int i) { w[i >> 6] |= 1ull << (i & 63); }
    static void clearBit(std::uint64_t* w, int i) { w[i >> 6] &= ~(1ull << (i & 63)); }
    static bool testBit(const std::uint64_t* w, int i) { return (w[i >> 6] >> (i & 63)) & 1; }

    /// N[v] ∩ alive ⊆ N[u] ∩ alive
    bool dominatesAlive(int u, int v, const std::uint64_t* alive) const {
        const std::uint64_t* nu = row(u);
        const std::uint64_t* nv = row(v);
        for (std::size_t i = 0; i < words_; ++i)
            if (nv[i] & alive[i] & ~nu[i]) return false;
        return true;
    }

private:
    int n_;
    std::size_t words_;
    std::vector<std::uint64_t> rows_;
};

}  // namespace detail

/// Repeatedly deletes a dominated vertex. pickFn(dominatedAlive) chooses which;
/// parentFn(v, dominatorsOfV) chooses the recorded dominator.
template <typename PickFn, typename ParentFn>
DismantleResult dismantleWith(const FiniteGraph& g, PickFn&& pickFn, ParentFn&& parentFn) {
    if (g.size() == 0) throw std::invalid_argument("dismantle: empty graph");
    if (!connected(g)) throw std::invalid_argument("dismantle: input graph is disconnected");
    const int n = g.size();
    detail::AdjBits bits(g);
    std::vector<std::uint64_t> alive(static_cast<std::size_t>(bits.words()), 0);
    for (int v = 0; v < n; ++v) detail::AdjBits::setBit(alive.data(), v);

    auto findDominators = [&](int v) {
        std::vector<int> out;
        for (Vertex u : g.neighbors(v))
            if (detail::AdjBits::testBit(alive.data(), u) && bits.dominatesAlive(u, v, alive.data()))
                out.push_back(u);
        return out;  // ascending: neighbors() is sorted
    };

    std::set<int> dominated;
    for (int v = 0; v < n; ++v)
        if (!findDominators(v).empty()) dominated.insert(v);

    std::vector<Vertex> removal;
    std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
    int aliveCount = n;
    while (aliveCount > 1) {
        if (dominated.empty()) {
            std::vector<Vertex> core;
            for (int v = 0; v < n; ++v)
                if (detail::AdjBits::testBit(alive.data(), v)) core.push_back(v);
            return {false, {}, std::move(core)};
        }
        int v = pickFn(dominated);
        auto doms = findDominators(v);
        parent[static_cast<std::size_t>(v)] = parentFn(v, doms);
        detail::AdjBits::clearBit(alive.data(), v);
        dominated.erase(v);
        removal.push_back(v);
        --aliveCount;
        // Deleting v can create or (if v was the sole dominator) destroy
        // domination only at v's neighbors; everything else is unaffected.
        for (Vertex w : g.neighbors(v)) {
            if (!detail::AdjBits::testBit(alive.data(), w)) continue;
            if (findDominators(w).empty())
                dominated.erase(w);
            else
                dominated.insert(w);
        }
    }
    int root = -1;
    for (int v = 0; v < n; ++v)
        if (detail::AdjBits::testBit(alive.data(), v)) root = v;
    ConstructionCertificate cert;
    cert.order.push_back(root);
    for (auto it = removal.rbegin(); it != removal.rend(); ++it) cert.order.push_back(*it);
    cert.parent = std::move(parent);
    return {true, std::move(cert), {root}};
}

/// Greedy dismantling: always the lowest-id dominated vertex, recording its
/// lowest-id dominator. For finite graphs the verdict is order-independent.
inline DismantleResult dismantle(const FiniteGraph& g) {
    return dismantleWith(
        g, [](const std::set<int>& d) { return *d.begin(); },
        [](int, const std::vector<int>& doms) { return doms.front(); });
}

/// Seeded random choices of victim and dominator; verdict must match dismantle().
inline DismantleResult dismantleRandomized(const FiniteGraph& g, std::uint64_t seed) {
    Rng rng(seed);
    return dismantleWith(
        g,
        [&rng](const std::set<int>& d) {
            auto it = d.begin();
            std::advance(it, rng.boundedInt(static_cast<int>(d.size())));
            return *it;
        },
        [&rng](int, const std::vector<int>& doms) {
            return doms[static_cast<std::size_t>(rng.boundedInt(static_cast<int>(doms.size())))];
        });
}

struct ValidationIssue {
    int position;        // index into order; -1 for shape problems
    std::string reason;
};

/// Checks a certificate against the graph: order is a permutation, the root
/// has no parent, and every later vertex is dominated by its parent inside
/// the prefix it joins. nullopt = valid.
inline std::optional<ValidationIssue> validate(const FiniteGraph& g, const ConstructionCertificate& cert) {
    const int n = g.size();
    if (static_cast<int>(cert.order.size()) != n)
        return ValidationIssue{-1, "order must list every vertex exactly once"};
    if (static_cast<int>(cert.parent.size()) != n)
        return ValidationIssue{-1, "parent table has wrong size"};
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int p = 0; p < n; ++p) {
        Vertex v = cert.order[static_cast<std::size_t>(p)];
        if (v < 0 || v >= n) return ValidationIssue{p, "order entry out of range"};
        if (seen[static_cast<std::size_t>(v)]) return ValidationIssue{p, "vertex repeated in order"};
        seen[static_cast<std::size_t>(v)] = 1;
    }
    if (cert.parent[static_cast<std::size_t>(cert.order[0])] != -1)
        return ValidationIssue{0, "root must not have a parent"};
    std::vector<char> inPrefix(static_cast<std::size_t>(n), 0);
    inPrefix[static_cast<std::size_t>(cert.order[0])] = 1;
    for (int p = 1; p < n; ++p) {
        Vertex v = cert.order[static_cast<std::size_t>(p)];
        Vertex u = cert.parent[static_cast<std::size_t>(v)];
        if (u < 0) return ValidationIssue{p, "missing parent for '" + g.label(v) + "'"};
        if (u == v) return ValidationIssue{p, "vertex cannot be its own parent"};
        if (!inPrefix[static_cast<std::size_t>(u)])
            return ValidationIssue{p, "parent of '" + g.label(v) + "' is not earlier in the order"};
        if (!g.adjacent(u, v))
            return ValidationIssue{p, "parent of '" + g.label(v) + "' is not a neighbor"};
        for (Vertex w : g.neighbors(v))
            if (inPrefix[static_cast<std::size_t>(w)] && w != u && !g.adjacent(u, w))
                return ValidationIssue{p, "'" + g.label(v) + "' has prefix neighbor '" + g.label(w) +
                                              "' outside N[" + g.label(u) + "]"};
        inPrefix[static_cast<std::size_t>(v)] = 1;
    }
    return std::nullopt;
}

/// Vertices u ≠ v with N[v] ⊆ N[u].
inline std::vector<Vertex> dominators(const FiniteGraph& g, Vertex v) {
    std::vector<Vertex> out;
    for (Vertex u : g.neighbors(v))
        if (dominates(g, u, v)) out.push_back(u);
    return out;
}

/// Whether some construction order of g ends at v.
inline bool canBeLast(const FiniteGraph& g, Vertex v) {
    if (g.size() == 1) return v == 0;
    if (dominators(g, v).empty()) return false;
    std::vector<Vertex> rest;
    for (int u = 0; u < g.size(); ++u)
        if (u != v) rest.push_back(u);
    auto sub = induced(g, rest);
    if (!connected(sub.graph)) return false;
    return dismantle(sub.graph).constructible;
}

/// Whether some construction order of the whole graph has S as a prefix set
/// (in some internal order). Exact subset DP; graphs over 20 vertices are
/// rejected because the table is 2^n.
inline bool orderExistsWithPrefix(const FiniteGraph& g, const std::vector<Vertex>& sIn) {
    const int n = g.size();
    if (n > 20) throw BudgetError("order_exists_with_prefix: graph too large (limit 20 vertices)");
    if (n == 0) throw std::invalid_argument("order_exists_with_prefix: empty graph");
    std::uint32_t sMask = 0;
    for (Vertex v : sIn) {
        if (v < 0 || v >= n) throw std::invalid_argument("order_exists_with_prefix: vertex out of range");
        sMask |= 1u << v;
    }
    std::vector<std::uint32_t> nb(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        nb[static_cast<std::size_t>(v)] = 1u << v;
        for (Vertex w : g.neighbors(v)) nb[static_cast<std::size_t>(v)] |= 1u << w;
    }
    const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    auto dominatedIn = [&](std::uint32_t mask, int v) {
        std::uint32_t need = nb[static_cast<std::size_t>(v)] & mask;
        std::uint32_t cands = nb[static_cast<std::size_t>(v)] & mask & ~(1u << v);
        while (cands) {
            int u = std::countr_zero(cands);
            cands &= cands - 1;
            if ((need & ~nb[static_cast<std::size_t>(u)]) == 0) return true;
        }
        return false;
    };
    std::vector<std::int8_t> buildMemo(std::size_t{1} << n, -1);
    std::vector<std::int8_t> extendMemo(std::size_t{1} << n, -1);
    auto buildable = [&](auto&& self, std::uint32_t mask) -> bool {
        if (std::popcount(mask) <= 1) return true;
        auto& m = buildMemo[mask];
        if (m >= 0) return m;
        bool ok = false;
        std::uint32_t it = mask;
        while (it && !ok) {
            int v = std::countr_zero(it);
            it &= it - 1;
            if (dominatedIn(mask, v)) ok = self(self, mask & ~(1u << v));
        }
        m = ok;
        return ok;
    };
    auto extendable = [&](auto&& self, std::uint32_t mask) -> bool {
        if (mask == full) return true;
        auto& m = extendMemo[mask];
        if (m >= 0) return m;
        bool ok = false;
        std::uint32_t it = full & ~mask;
        while (it && !ok) {
            int v = std::countr_zero(it);
            it &= it - 1;
            std::uint32_t grown = mask | (1u << v);
            if (mask == 0 || dominatedIn(grown, v)) ok = self(self, grown);
        }
        m = ok;
        return ok;
    };
    if (sMask == 0) return extendable(extendable, 0);
    return buildable(buildable, sMask) && extendable(extendable, sMask);
}

/// Whether the certificate's domination map (v ↦ parent, root ↦ root) maps
/// every edge between non-root vertices to an edge or a single vertex.
/// Edges touching the root are exempt. Invalid certificates are rejected.
inline bool isHomomorphism(const FiniteGraph& g, const ConstructionCertificate& cert) {
    if (auto issue = validate(g, cert))
        throw std::invalid_argument("is_homomorphism: invalid certificate: " + issue->reason);
    const Vertex root = cert.order[0];
    for (auto [u, v] : g.edgeList()) {
        if (u == root || v == root) continue;
        Vertex pu = cert.parent[static_cast<std::size_t>(u)];
        Vertex pv = cert.parent[static_cast<std::size_t>(v)];
        if (pu != pv && !g.adjacent(pu, pv)) return false;
    }
    return true;
}

enum class HomSearchStatus { Witness, None, BudgetExceeded };

struct HomSearchResult {
    HomSearchStatus status = HomSearchStatus::None;
    ConstructionCertificate cert;       // filled for Witness
    std::uint64_t nodesExplored = 0;
};

/// Exhaustive search for a construction order whose domination map is a
/// homomorphism. Explores removal sequences; a parent choice is pruned the
/// moment it violates the homomorphism condition against an already-removed
/// neighbor (edges into still-alive vertices are checked when those vertices
/// are removed; edges at the eventual root are thereby exempt).
inline HomSearchResult searchHom(const FiniteGraph& g, std::chrono::milliseconds budget,
                                 std::uint64_t nodeCap = 50'000'000) {
    const int n = g.size();
    if (n > 64) throw BudgetError("search_hom: graph too large (limit 64 vertices)");
    if (n == 0) throw std::invalid_argument("search_hom: empty graph");
    if (!connected(g)) throw std::invalid_argument("search_hom: input graph is disconnected");
    HomSearchResult res;
    if (n == 1) {
        res.status = HomSearchStatus::Witness;
        res.cert.order = {0};
        res.cert.parent = {-1};
        return res;
    }
    std::vector<std::uint64_t> nb(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        nb[static_cast<std::size_t>(v)] = 1ull << v;
        for (Vertex w : g.neighbors(v)) nb[static_cast<std::size_t>(v)] |= 1ull << w;
    }
    const std::uint64_t full = n == 64 ? ~0ull : (1ull << n) - 1;
    std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> removal;
    const auto deadline = std::chrono::steady_clock::now() + budget;
    struct BudgetStop {};
    auto adjacentOrEq = [&](Vertex a, Vertex b) { return a == b || g.adjacent(a, b); };

    auto dfs = [&](auto&& self, std::uint64_t alive) -> bool {
        if (std::popcount(alive) == 1) return true;
        if (++res.nodesExplored > nodeCap) throw BudgetStop{};
        if ((res.nodesExplored & 0x3ff) == 0 && std::chrono::steady_clock::now() > deadline)
            throw BudgetStop{};
        for (std::uint64_t it = alive; it; it &= it - 1) {
            int v = std::countr_zero(it);
            std::uint64_t needed = nb[static_cast<std::size_t>(v)] & alive;
            for (std::uint64_t cand = needed & ~(1ull << v); cand; cand &= cand - 1) {
                int u = std::countr_zero(cand);
                if ((needed & ~nb[static_cast<std::size_t>(u)]) != 0) continue;  // u does not dominate v
                bool homOk = true;
                for (Vertex w : g.neighbors(v)) {
                    if ((alive >> w) & 1) continue;  // deferred to w's own removal (or root exemption)
                    if (!adjacentOrEq(u, parent[static_cast<std::size_t>(w)])) {
                        homOk = false;
                        break;
                    }
                }
                if (!homOk) continue;
                parent[static_cast<std::size_t>(v)] = u;
                removal.push_back(v);
                if (self(self, alive & ~(1ull << v))) return true;
                removal.pop_back();
                parent[static_cast<std::size_t>(v)] = -1;
            }
        }
        return false;
    };

    try {
        if (dfs(dfs, full)) {
            res.status = HomSearchStatus::Witness;
            std::uint64_t alive = full;
            for (Vertex v : removal) alive &= ~(1ull << v);
            res.cert.order.push_back(std::countr_zero(alive));
            for (auto rit = removal.rbegin(); rit != removal.rend(); ++rit) res.cert.order.push_back(*rit);
            res.cert.parent = parent;
        } else {
            res.status = HomSearchStatus::None;
        }
    } catch (BudgetStop&) {
        res.status = HomSearchStatus::BudgetExceeded;
    }
    return res;
}

inline nlohmann::json certToJson(const FiniteGraph& g, const ConstructionCertificate& cert) {
    nlohmann::json j;
    auto order = nlohmann::json::array();
    for (Vertex v : cert.order) order.push_back(g.label(v));
    j["order"] = std::move(order);
    auto parents = nlohmann::json::object();
    for (int v = 0; v < g.size(); ++v)
        if (cert.parent[static_cast<std::size_t>(v)] >= 0)
            parents[g.label(v)] = g.label(cert.parent[static_cast<std::size_t>(v)]);
    j["parents"] = std::move(parents);
    return j;
}

inline ConstructionCertificate certFromJson(const FiniteGraph& g, const nlohmann::json& j) {
    ConstructionCertificate cert;
    if (!j.contains("order") || !j["order"].is_array())
        throw std::invalid_argument("certFromJson: missing order array");
    for (const auto& s : j["order"]) cert.order.push_back(g.requireLabel(s.get<std::string>()));
    cert.parent.assign(static_cast<std::size_t>(g.size()), -1);
    const nlohmann::json parents = j.value("parents", nlohmann::json::object());
    for (const auto& [child, par] : parents.items())
        cert.parent[static_cast<std::size_t>(g.requireLabel(child))] = g.requireLabel(par.get<std::string>());
    return cert;
}

/// Seeded generator of constructible graphs: vertex v ≥ 1 picks an earlier
/// parent u and attaches to u plus a random subset of u's current neighbors,
/// which makes the insertion order a construction order by definition.
inline FiniteGraph randomConstructibleGraph(int n, std::uint64_t seed) {
    if (n <= 0) throw std::invalid_argument("randomConstructibleGraph: n must be positive");
    Rng rng(seed);
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) {
        int u = rng.boundedInt(v);
        std::vector<Vertex> attach = {u};
        for (Vertex w : adj[static_cast<std::size_t>(u)])
            if (rng.chance(0.5)) attach.push_back(w);
        for (Vertex w : attach) {
            edges.emplace_back(w, v);
            adj[static_cast<std::size_t>(w)].push_back(v);
            adj[static_cast<std::size_t>(v)].push_back(w);
        }
    }
    return FiniteGraph(n, std::move(edges));
}

}  // namespace pursuit
