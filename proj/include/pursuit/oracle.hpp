#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "pursuit/construct.hpp"
#include "pursuit/graph.hpp"
#include "pursuit/util.hpp"

namespace pursuit {

using Key = std::string;

inline constexpr std::size_t kDefaultNeighborBudget = 100'000;

/// Adjacency oracle for a (possibly infinite) graph with canonical string
/// keys. Pairwise adjacency is always exact. neighbors() enumerates a
/// vertex's neighborhood completely when the family is locally finite;
/// families with infinite-degree vertices enumerate a documented window of
/// the neighborhood instead, and every enumeration throws BudgetError rather
/// than exceed its budget.
class NeighborOracle {
public:
    virtual ~NeighborOracle() = default;

    virtual std::string name() const = 0;
    virtual bool locallyFinite() const = 0;
    virtual bool isVertex(const Key& k) const = 0;
    virtual bool adjacent(const Key& a, const Key& b) const = 0;

    bool adjacentOrEqual(const Key& a, const Key& b) const {
        return a == b ? isVertex(a) : adjacent(a, b);
    }

    std::vector<Key> neighbors(const Key& k, std::size_t budget = kDefaultNeighborBudget) const {
        return neighborsImpl(k, budget);
    }

    /// Bounded, deterministic move list for simulations: always contains the
    /// vertex itself, and only true neighbors otherwise. For families with
    /// infinite-degree vertices this is a proper subset of the neighborhood.
    virtual std::vector<Key> moveMenu(const Key& k, std::size_t cap) const {
        std::vector<Key> nbrs = neighbors(k, cap);
        std::sort(nbrs.begin(), nbrs.end());
        std::vector<Key> out{k};
        for (Key& w : nbrs)
            if (w != k) out.push_back(std::move(w));
        return out;
    }

    /// Domination map of a consistent local construction, when the family
    /// carries one.
    virtual std::optional<Key> parent(const Key&) const { return std::nullopt; }
    virtual bool hasParentMap() const { return false; }

    /// Earliest k >= 0 with parent^k(v) in S, or nullopt when the trail
    /// provably misses S. Families override the default chase cutoff with an
    /// exact potential argument.
    virtual std::optional<int> trailHits(const Key& v, const std::vector<Key>& s) const {
        if (!hasParentMap()) return std::nullopt;
        std::set<Key> wanted(s.begin(), s.end());
        Key cur = v;
        for (int k = 0; k < 100'000; ++k) {
            if (wanted.count(cur)) return k;
            auto p = parent(cur);
            if (!p) return std::nullopt;
            cur = *p;
        }
        throw BudgetError("trailHits: trail walk exceeded step budget");
    }

    /// Monotone escape statistic (block index, coordinate support, level).
    virtual double driftPotential(const Key&) const { return 0.0; }

    /// Coarse distance guess for greedy chasing on infinite boards; families
    /// without a usable estimate return 0 for every pair.
    virtual double distanceEstimate(const Key&, const Key&) const { return 0.0; }

    /// Canonical placement anchor for simulations.
    virtual Key startVertex() const = 0;

protected:
    virtual std::vector<Key> neighborsImpl(const Key& k, std::size_t budget) const = 0;
};

/// Any finite graph viewed through the oracle interface; keys are labels.
/// An optional certificate provides the parent map.
class FiniteGraphOracle : public NeighborOracle {
public:
    explicit FiniteGraphOracle(FiniteGraph g, std::optional<ConstructionCertificate> cert = std::nullopt,
                               std::string name = "wrapped")
        : g_(std::move(g)), name_(std::move(name)) {
        if (cert) {
            if (auto issue = validate(g_, *cert))
                throw std::invalid_argument("FiniteGraphOracle: invalid certificate: " + issue->reason);
            cert_ = std::move(*cert);
        }
    }

    std::string name() const override { return name_; }
    bool locallyFinite() const override { return true; }
    bool isVertex(const Key& k) const override { return g_.byLabel(k).has_value(); }

    bool adjacent(const Key& a, const Key& b) const override {
        return g_.adjacent(g_.requireLabel(a), g_.requireLabel(b));
    }

    std::vector<Key> neighborsImpl(const Key& k, std::size_t) const override {
        std::vector<Key> out;
        for (Vertex v : g_.neighbors(g_.requireLabel(k))) out.push_back(g_.label(v));
        return out;
    }

    std::optional<Key> parent(const Key& k) const override {
        if (!cert_) return std::nullopt;
        Vertex p = cert_->parent[static_cast<std::size_t>(g_.requireLabel(k))];
        if (p < 0) return std::nullopt;  // root
        return g_.label(p);
    }

    bool hasParentMap() const override { return cert_.has_value(); }

    Key startVertex() const override {
        return cert_ ? g_.label(cert_->order[0]) : g_.label(0);
    }

    const FiniteGraph& graph() const { return g_; }

private:
    FiniteGraph g_;
    std::optional<ConstructionCertificate> cert_;
    std::string name_;
};

struct Materialized {
    FiniteGraph graph;
    std::vector<Key> keys;            // id -> key
    std::map<Key, Vertex> index;
    std::vector<char> boundary;       // id -> may have un-materialized neighbors
};

/// Snapshot of the ball of given radius around the seeds. Vertices on the
/// final shell keep boundary markers since their neighborhoods were not
/// expanded.
inline Materialized materializeBall(const NeighborOracle& o, const std::vector<Key>& seeds, int radius,
                                    std::size_t vertexBudget = 200'000,
                                    std::size_t neighborBudget = kDefaultNeighborBudget) {
    Materialized m;
    std::map<Key, int> dist;
    std::queue<Key> q;
    for (const Key& s : seeds) {
        if (!o.isVertex(s)) throw std::invalid_argument("materializeBall: seed is not a vertex: " + s);
        if (dist.emplace(s, 0).second) q.push(s);
    }
    while (!q.empty()) {
        Key v = q.front();
        q.pop();
        int d = dist.at(v);
        if (d >= radius) continue;
        for (const Key& w : o.neighbors(v, neighborBudget)) {
            if (dist.emplace(w, d + 1).second) {
                if (dist.size() > vertexBudget) throw BudgetError("materializeBall: vertex budget exceeded");
                q.push(w);
            }
        }
    }
    for (const auto& [k, d] : dist) {
        m.index.emplace(k, static_cast<Vertex>(m.keys.size()));
        m.keys.push_back(k);
        m.boundary.push_back(d >= radius ? 1 : 0);
    }
    std::vector<Edge> edges;
    for (const auto& [k, id] : m.index) {
        if (!m.boundary[static_cast<std::size_t>(id)]) {
            // Shell vertices never enumerate, so an inner-shell edge is seen
            // only from this side; take it regardless of id order.
            for (const Key& w : o.neighbors(k, neighborBudget)) {
                auto it = m.index.find(w);
                if (it == m.index.end()) continue;
                Vertex id2 = it->second;
                if (m.boundary[static_cast<std::size_t>(id2)] || id < id2)
                    edges.emplace_back(std::min(id, id2), std::max(id, id2));
            }
        } else {
            // Shell vertices were not expanded; recover their inner edges
            // from the already-known side, plus exact shell-shell checks.
            for (const auto& [k2, id2] : m.index)
                if (id < id2 && m.boundary[static_cast<std::size_t>(id2)] && o.adjacent(k, k2))
                    edges.emplace_back(id, id2);
        }
    }
    m.graph = FiniteGraph(static_cast<int>(m.keys.size()), std::move(edges), m.keys);
    return m;
}

/// Snapshot induced on an explicit key set, using exact pairwise adjacency
/// (no neighborhood enumeration, so it works at infinite-degree vertices).
/// Boundary markers are computed by enumeration when the family is locally
/// finite and conservatively set otherwise.
inline Materialized materializeFilter(const NeighborOracle& o, const std::vector<Key>& keysIn,
                                      std::size_t neighborBudget = kDefaultNeighborBudget) {
    Materialized m;
    for (const Key& k : keysIn) {
        if (!o.isVertex(k)) throw std::invalid_argument("materializeFilter: not a vertex: " + k);
        if (m.index.emplace(k, static_cast<Vertex>(m.keys.size())).second) m.keys.push_back(k);
    }
    std::vector<Edge> edges;
    for (const auto& [a, ia] : m.index)
        for (const auto& [b, ib] : m.index)
            if (ia < ib && o.adjacent(a, b)) edges.emplace_back(ia, ib);
    m.boundary.assign(m.keys.size(), 1);
    if (o.locallyFinite()) {
        for (const auto& [k, id] : m.index) {
            bool open = false;
            for (const Key& w : o.neighbors(k, neighborBudget))
                if (!m.index.count(w)) {
                    open = true;
                    break;
                }
            m.boundary[static_cast<std::size_t>(id)] = open ? 1 : 0;
        }
    }
    m.graph = FiniteGraph(static_cast<int>(m.keys.size()), std::move(edges), m.keys);
    return m;
}

/// BFS distance from a key to the nearest vertex satisfying the predicate;
/// nullopt means every vertex within cap steps fails the predicate.
inline std::optional<int> distanceOracle(const NeighborOracle& o, const Key& from,
                                         const std::function<bool(const Key&)>& isTarget, int cap,
                                         std::size_t nodeBudget = 1'000'000,
                                         std::size_t neighborBudget = kDefaultNeighborBudget) {
    if (!o.isVertex(from)) throw std::invalid_argument("distanceOracle: not a vertex: " + from);
    if (isTarget(from)) return 0;
    std::map<Key, int> dist;
    dist.emplace(from, 0);
    std::queue<Key> q;
    q.push(from);
    while (!q.empty()) {
        Key v = q.front();
        q.pop();
        int d = dist.at(v) + 1;
        if (d >= cap + 1) continue;
        for (const Key& w : o.neighbors(v, neighborBudget)) {
            if (dist.count(w)) continue;
            if (isTarget(w)) return d;
            if (d < cap) {
                dist.emplace(w, d);
                if (dist.size() > nodeBudget) throw BudgetError("distanceOracle: node budget exceeded");
                q.push(w);
            }
        }
    }
    return std::nullopt;
}

inline std::optional<int> distanceOracle(const NeighborOracle& o, const Key& from, const std::vector<Key>& targets,
                                         int cap, std::size_t nodeBudget = 1'000'000) {
    std::set<Key> t(targets.begin(), targets.end());
    return distanceOracle(
        o, from, [&t](const Key& k) { return t.count(k) > 0; }, cap, nodeBudget);
}

}  // namespace pursuit
