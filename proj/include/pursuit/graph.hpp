#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pursuit/util.hpp"

namespace pursuit {

using Vertex = int;
using Edge = std::pair<int, int>;

/// Finite simple graph with stable vertex ids 0..n-1 and unique string
/// labels. Immutable after construction; adjacency lists are kept sorted.
class FiniteGraph {
public:
    FiniteGraph() = default;

    FiniteGraph(int n, std::vector<Edge> edges, std::vector<std::string> labels = {})
        : adj_(static_cast<std::size_t>(n)), labels_(std::move(labels)) {
        if (n < 0) throw std::invalid_argument("FiniteGraph: negative vertex count");
        if (labels_.empty()) {
            labels_.reserve(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v) labels_.push_back(std::to_string(v));
        }
        if (static_cast<int>(labels_.size()) != n)
            throw std::invalid_argument("FiniteGraph: label count != vertex count");
        std::set<Edge> seen;
        for (auto [u, v] : edges) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw std::invalid_argument("FiniteGraph: edge endpoint out of range");
            if (u == v) throw std::invalid_argument("FiniteGraph: loop edge");
            if (u > v) std::swap(u, v);
            if (!seen.insert({u, v}).second) continue;
            adj_[static_cast<std::size_t>(u)].push_back(v);
            adj_[static_cast<std::size_t>(v)].push_back(u);
        }
        for (auto& row : adj_) std::sort(row.begin(), row.end());
        std::set<std::string> uniq(labels_.begin(), labels_.end());
        if (static_cast<int>(uniq.size()) != n)
            throw std::invalid_argument("FiniteGraph: duplicate labels");
    }

    int size() const { return static_cast<int>(adj_.size()); }

    int edgeCount() const {
        std::size_t twice = 0;
        for (const auto& row : adj_) twice += row.size();
        return static_cast<int>(twice / 2);
    }

    bool adjacent(Vertex u, Vertex v) const {
        checkVertex(u);
        checkVertex(v);
        const auto& row = adj_[static_cast<std::size_t>(u)];
        return std::binary_search(row.begin(), row.end(), v);
    }

    bool adjacentOrEqual(Vertex u, Vertex v) const { return u == v ? (checkVertex(u), true) : adjacent(u, v); }

    const std::vector<Vertex>& neighbors(Vertex v) const {
        checkVertex(v);
        return adj_[static_cast<std::size_t>(v)];
    }

    int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

    const std::string& label(Vertex v) const {
        checkVertex(v);
        return labels_[static_cast<std::size_t>(v)];
    }

    const std::vector<std::string>& labels() const { return labels_; }

    std::optional<Vertex> byLabel(const std::string& s) const {
        for (int v = 0; v < size(); ++v)
            if (labels_[static_cast<std::size_t>(v)] == s) return v;
        return std::nullopt;
    }

    Vertex requireLabel(const std::string& s) const {
        auto v = byLabel(s);
        if (!v) throw std::invalid_argument("FiniteGraph: unknown label '" + s + "'");
        return *v;
    }

    /// Edges as (i, j) with i < j, sorted lexicographically.
    std::vector<Edge> edgeList() const {
        std::vector<Edge> out;
        for (int u = 0; u < size(); ++u)
            for (int v : neighbors(u))
                if (u < v) out.emplace_back(u, v);
        return out;  // already lexicographic: outer loop ascending, rows sorted
    }

private:
    void checkVertex(Vertex v) const {
        if (v < 0 || v >= size()) throw std::invalid_argument("FiniteGraph: vertex out of range");
    }

    std::vector<std::vector<Vertex>> adj_;
    std::vector<std::string> labels_;
};

/// N[v] = {v} ∪ N(v), sorted.
inline std::vector<Vertex> closedNeighborhood(const FiniteGraph& g, Vertex v) {
    std::vector<Vertex> out = g.neighbors(v);
    out.insert(std::lower_bound(out.begin(), out.end(), v), v);
    return out;
}

/// Whether N[v] ⊆ N[u]. u == v holds trivially.
inline bool dominates(const FiniteGraph& g, Vertex u, Vertex v) {
    if (u == v) return g.size() > v && v >= 0;
    if (!g.adjacent(u, v)) return false;  // v ∈ N[v] must lie in N[u]
    const auto& nu = g.neighbors(u);
    for (Vertex w : g.neighbors(v)) {
        if (w == u) continue;
        if (!std::binary_search(nu.begin(), nu.end(), w)) return false;
    }
    return true;
}

struct Induced {
    FiniteGraph graph;
    std::vector<Vertex> original;  // new id -> original id
};

/// Induced subgraph on S (any order, duplicates rejected). Labels carry over.
inline Induced induced(const FiniteGraph& g, std::vector<Vertex> s) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("induced: duplicate vertex in set");
    std::vector<int> newId(static_cast<std::size_t>(g.size()), -1);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0 || s[i] >= g.size()) throw std::invalid_argument("induced: vertex out of range");
        newId[static_cast<std::size_t>(s[i])] = static_cast<int>(i);
        labels.push_back(g.label(s[i]));
    }
    std::vector<Edge> edges;
    for (Vertex v : s)
        for (Vertex w : g.neighbors(v))
            if (v < w && newId[static_cast<std::size_t>(w)] >= 0)
                edges.emplace_back(newId[static_cast<std::size_t>(v)], newId[static_cast<std::size_t>(w)]);
    return {FiniteGraph(static_cast<int>(s.size()), std::move(edges), std::move(labels)), std::move(s)};
}

/// BFS distance from u to the nearest vertex of targets; nullopt when every
/// target is at distance >= cap (or unreachable).
inline std::optional<int> distance(const FiniteGraph& g, Vertex u, const std::vector<Vertex>& targets,
                                   int cap = 1 << 30) {
    std::vector<char> isTarget(static_cast<std::size_t>(g.size()), 0);
    for (Vertex t : targets) {
        if (t < 0 || t >= g.size()) throw std::invalid_argument("distance: target out of range");
        isTarget[static_cast<std::size_t>(t)] = 1;
    }
    if (u < 0 || u >= g.size()) throw std::invalid_argument("distance: source out of range");
    if (isTarget[static_cast<std::size_t>(u)]) return 0;
    std::vector<int> dist(static_cast<std::size_t>(g.size()), -1);
    dist[static_cast<std::size_t>(u)] = 0;
    std::queue<Vertex> q;
    q.push(u);
    while (!q.empty()) {
        Vertex v = q.front();
        q.pop();
        int d = dist[static_cast<std::size_t>(v)] + 1;
        if (d >= cap) continue;
        for (Vertex w : g.neighbors(v)) {
            if (dist[static_cast<std::size_t>(w)] >= 0) continue;
            if (isTarget[static_cast<std::size_t>(w)]) return d;
            dist[static_cast<std::size_t>(w)] = d;
            q.push(w);
        }
    }
    return std::nullopt;
}

inline std::optional<int> distance(const FiniteGraph& g, Vertex u, Vertex v, int cap = 1 << 30) {
    return distance(g, u, std::vector<Vertex>{v}, cap);
}

inline bool connected(const FiniteGraph& g) {
    if (g.size() <= 1) return true;
    std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
    std::queue<Vertex> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        Vertex v = q.front();
        q.pop();
        for (Vertex w : g.neighbors(v))
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++count;
                q.push(w);
            }
    }
    return count == g.size();
}

/// Robber moves from r that stay off N[c]: {v ∈ N[r] ∪ {r} : v ∉ N[c] ∪ {c}}.
inline std::vector<Vertex> safeMoves(const FiniteGraph& g, Vertex r, Vertex c) {
    std::vector<Vertex> out;
    for (Vertex v : closedNeighborhood(g, r))
        if (v != c && !g.adjacent(c, v)) out.push_back(v);
    return out;
}

inline nlohmann::json graphToJson(const FiniteGraph& g, const std::string& name = "") {
    nlohmann::json j;
    j["format"] = "pursuit-graph-v1";
    j["name"] = name;
    auto verts = nlohmann::json::array();
    for (int v = 0; v < g.size(); ++v) verts.push_back({{"id", v}, {"label", g.label(v)}});
    j["vertices"] = std::move(verts);
    auto edges = nlohmann::json::array();
    for (auto [u, v] : g.edgeList()) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    return j;
}

struct NamedGraph {
    FiniteGraph graph;
    std::string name;
};

inline NamedGraph graphFromJson(const nlohmann::json& j) {
    if (!j.is_object() || j.value("format", "") != "pursuit-graph-v1")
        throw std::invalid_argument("graphFromJson: missing format tag pursuit-graph-v1");
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw std::invalid_argument("graphFromJson: missing vertices");
    const auto& verts = j["vertices"];
    int n = static_cast<int>(verts.size());
    std::vector<std::string> labels(static_cast<std::size_t>(n));
    std::vector<char> idSeen(static_cast<std::size_t>(n), 0);
    for (const auto& v : verts) {
        if (!v.contains("id") || !v.contains("label"))
            throw std::invalid_argument("graphFromJson: vertex needs id and label");
        int id = v["id"].get<int>();
        if (id < 0 || id >= n || idSeen[static_cast<std::size_t>(id)])
            throw std::invalid_argument("graphFromJson: vertex ids must be 0..n-1 without repeats");
        idSeen[static_cast<std::size_t>(id)] = 1;
        labels[static_cast<std::size_t>(id)] = v["label"].get<std::string>();
    }
    std::vector<Edge> edges;
    for (const auto& e : j.value("edges", nlohmann::json::array())) {
        if (!e.is_array() || e.size() != 2) throw std::invalid_argument("graphFromJson: bad edge entry");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return {FiniteGraph(n, std::move(edges), std::move(labels)), j.value("name", "")};
}

inline std::string dotEscape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

inline std::string graphToDot(const FiniteGraph& g, const std::string& name = "G") {
    std::string out = "graph \"" + dotEscape(name.empty() ? "G" : name) + "\" {\n";
    for (int v = 0; v < g.size(); ++v)
        out += "  " + std::to_string(v) + " [label=\"" + dotEscape(g.label(v)) + "\"];\n";
    for (auto [u, v] : g.edgeList())
        out += "  " + std::to_string(u) + " -- " + std::to_string(v) + ";\n";
    out += "}\n";
    return out;
}

}  // namespace pursuit
