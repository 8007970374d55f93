#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pursuit/construct.hpp"
#include "pursuit/gee.hpp"
#include "pursuit/graph.hpp"
#include "pursuit/hgraph.hpp"
#include "pursuit/oracle.hpp"
#include "pursuit/util.hpp"

namespace pursuit {

/// Family descriptor string: `name` or `name?key=value&key=value`. Values
/// containing the delimiter characters are wrapped in one layer of braces,
/// which is how nested family specs are passed as parameters.
struct FamilySpec {
    std::string name;
    std::map<std::string, std::string> params;

    static FamilySpec parse(const std::string& s) {
        FamilySpec out;
        std::size_t q = s.find('?');
        out.name = s.substr(0, q);
        if (out.name.empty()) throw std::invalid_argument("family spec: empty name in '" + s + "'");
        for (char c : out.name)
            if (!(std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_' ||
                  c == '-'))
                throw std::invalid_argument("family spec: bad name '" + out.name + "'");
        if (q == std::string::npos) return out;
        std::string rest = s.substr(q + 1);
        std::vector<std::string> segs;
        int depth = 0;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= rest.size(); ++i) {
            if (i == rest.size() || (rest[i] == '&' && depth == 0)) {
                segs.push_back(rest.substr(start, i - start));
                start = i + 1;
            } else if (rest[i] == '{') {
                ++depth;
            } else if (rest[i] == '}') {
                if (--depth < 0) throw std::invalid_argument("family spec: unbalanced braces in '" + s + "'");
            }
        }
        if (depth != 0) throw std::invalid_argument("family spec: unbalanced braces in '" + s + "'");
        for (const std::string& seg : segs) {
            std::size_t eq = std::string::npos;
            int d = 0;
            for (std::size_t i = 0; i < seg.size(); ++i) {
                if (seg[i] == '{') ++d;
                else if (seg[i] == '}') --d;
                else if (seg[i] == '=' && d == 0) {
                    eq = i;
                    break;
                }
            }
            if (eq == std::string::npos || eq == 0)
                throw std::invalid_argument("family spec: expected key=value, got '" + seg + "'");
            std::string key = seg.substr(0, eq);
            std::string value = seg.substr(eq + 1);
            if (value.size() >= 2 && value.front() == '{' && value.back() == '}') {
                int vd = 0;
                bool whole = true;
                for (std::size_t i = 0; i < value.size(); ++i) {
                    if (value[i] == '{') ++vd;
                    else if (value[i] == '}') --vd;
                    if (vd == 0 && i + 1 < value.size()) whole = false;
                }
                if (whole) value = value.substr(1, value.size() - 2);
            }
            if (!out.params.emplace(key, value).second)
                throw std::invalid_argument("family spec: duplicate key '" + key + "'");
        }
        return out;
    }

    std::string canonical() const {
        std::string s = name;
        char sep = '?';
        for (const auto& [k, v] : params) {
            s += sep;
            sep = '&';
            s += k;
            s += '=';
            if (v.find_first_of("&=?{}") != std::string::npos)
                s += "{" + v + "}";
            else
                s += v;
        }
        return s;
    }

    bool has(const std::string& key) const { return params.count(key) > 0; }

    int getInt(const std::string& key, std::optional<int> def = std::nullopt) const {
        auto it = params.find(key);
        if (it == params.end()) {
            if (def) return *def;
            throw std::invalid_argument("family '" + name + "': missing parameter '" + key + "'");
        }
        try {
            std::size_t used = 0;
            int v = std::stoi(it->second, &used);
            if (used != it->second.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw std::invalid_argument("family '" + name + "': parameter '" + key + "' is not an integer");
        }
    }

    bool getBool(const std::string& key, bool def) const {
        auto it = params.find(key);
        if (it == params.end()) return def;
        if (it->second == "1" || it->second == "true") return true;
        if (it->second == "0" || it->second == "false") return false;
        throw std::invalid_argument("family '" + name + "': parameter '" + key + "' is not a boolean");
    }

    std::string getString(const std::string& key, std::optional<std::string> def = std::nullopt) const {
        auto it = params.find(key);
        if (it != params.end()) return it->second;
        if (def) return *def;
        throw std::invalid_argument("family '" + name + "': missing parameter '" + key + "'");
    }

    void expectKeys(std::initializer_list<const char*> allowed) const {
        for (const auto& [k, v] : params) {
            bool ok = false;
            for (const char* a : allowed)
                if (k == a) ok = true;
            if (!ok) throw std::invalid_argument("family '" + name + "': unknown parameter '" + k + "'");
        }
    }
};

/// A finite family member: the graph plus naming metadata. Aliases map
/// merged or conventional names onto labels; boundary lists vertices whose
/// neighborhoods continue outside the truncation when the family is infinite.
struct FamilyGraph {
    FiniteGraph graph;
    std::string spec;
    std::map<std::string, Vertex> aliases;
    std::map<std::string, std::vector<Vertex>> groups;
    std::vector<Vertex> boundary;

    Vertex lookup(const std::string& nameOrAlias) const {
        if (auto v = graph.byLabel(nameOrAlias)) return *v;
        auto it = aliases.find(nameOrAlias);
        if (it != aliases.end()) return it->second;
        throw std::invalid_argument("no vertex named '" + nameOrAlias + "'");
    }
};

namespace detail {

class LabelGraphBuilder {
public:
    Vertex vertex(const std::string& label) {
        auto it = ids_.find(label);
        if (it != ids_.end()) return it->second;
        Vertex v = static_cast<Vertex>(labels_.size());
        ids_.emplace(label, v);
        labels_.push_back(label);
        return v;
    }

    void edge(const std::string& a, const std::string& b) {
        Vertex u = vertex(a), v = vertex(b);
        if (u > v) std::swap(u, v);
        edges_.emplace_back(u, v);
    }

    FiniteGraph build() {
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
        return FiniteGraph(static_cast<int>(labels_.size()), edges_, labels_);
    }

private:
    std::vector<std::string> labels_;
    std::map<std::string, Vertex> ids_;
    std::vector<Edge> edges_;
};

inline constexpr const char* kBlockRoles[7] = {"x", "y", "z", "zp", "t", "tp", "w"};

inline constexpr std::pair<const char*, const char*> kBlockEdges[14] = {
    {"y", "x"}, {"y", "z"}, {"y", "zp"}, {"y", "t"}, {"y", "tp"}, {"x", "t"}, {"x", "tp"},
    {"w", "t"}, {"w", "z"}, {"w", "tp"}, {"w", "zp"}, {"z", "t"}, {"zp", "tp"}, {"z", "zp"},
};

/// Adds one valve block; nameOf maps role names to concrete labels, which is
/// how blocks share joints when chained.
inline void addBlock(LabelGraphBuilder& b, const std::function<std::string(const std::string&)>& nameOf) {
    for (const char* role : kBlockRoles) b.vertex(nameOf(role));
    for (const auto& [u, v] : kBlockEdges) b.edge(nameOf(u), nameOf(v));
}

}  // namespace detail

FamilyGraph makeFiniteFamily(const std::string& specString);

namespace families {

inline FamilyGraph makeK(const FamilySpec& spec) {
    spec.expectKeys({});
    detail::LabelGraphBuilder b;
    detail::addBlock(b, [](const std::string& r) { return r; });
    return {b.build(), spec.canonical(), {}, {}, {}};
}

inline FamilyGraph makeTwoK(const FamilySpec& spec) {
    spec.expectKeys({});
    detail::LabelGraphBuilder b;
    detail::addBlock(b, [](const std::string& r) { return r + "1"; });
    detail::addBlock(b, [](const std::string& r) { return r == "y" ? "x1" : r + "2"; });
    FamilyGraph out{b.build(), spec.canonical(), {}, {}, {}};
    out.aliases.emplace("y2", out.graph.requireLabel("x1"));
    for (int i = 1; i <= 2; ++i) {
        std::vector<Vertex> blk;
        for (const char* role : detail::kBlockRoles) {
            std::string lbl = std::string(role) + std::to_string(i);
            if (i == 2 && std::string(role) == "y") lbl = "x1";
            blk.push_back(out.graph.requireLabel(lbl));
        }
        std::sort(blk.begin(), blk.end());
        out.groups.emplace("block" + std::to_string(i), std::move(blk));
    }
    return out;
}

inline FamilyGraph makeKChain(const FamilySpec& spec) {
    spec.expectKeys({"blocks", "hub", "direction"});
    int blocks = spec.getInt("blocks");
    bool hub = spec.getBool("hub", false);
    std::string direction = spec.getString("direction", "one");
    if (direction != "one" && direction != "two")
        throw std::invalid_argument("kchain: direction must be one or two");
    if (blocks < 1) throw std::invalid_argument("kchain: blocks must be >= 1");
    detail::LabelGraphBuilder b;
    for (int i = 1; i <= blocks + 1; ++i) b.vertex("x" + std::to_string(i));
    for (int i = 1; i <= blocks; ++i) {
        std::string si = std::to_string(i);
        detail::addBlock(b, [&](const std::string& r) {
            if (r == "x") return "x" + si;
            if (r == "y") return "x" + std::to_string(i + 1);
            return r + si;
        });
    }
    if (hub)
        for (int i = 1; i <= blocks + 1; ++i) b.edge("hub", "x" + std::to_string(i));
    FamilyGraph out{b.build(), spec.canonical(), {}, {}, {}};
    std::vector<Vertex> joints;
    for (int i = 1; i <= blocks + 1; ++i) joints.push_back(out.graph.requireLabel("x" + std::to_string(i)));
    for (int i = 1; i <= blocks; ++i) out.aliases.emplace("y" + std::to_string(i), joints[static_cast<std::size_t>(i)]);
    out.groups.emplace("joints", joints);
    for (int i = 1; i <= blocks; ++i) {
        std::vector<Vertex> blk{joints[static_cast<std::size_t>(i - 1)], joints[static_cast<std::size_t>(i)]};
        for (const char* role : {"z", "zp", "t", "tp", "w"})
            blk.push_back(out.graph.requireLabel(std::string(role) + std::to_string(i)));
        std::sort(blk.begin(), blk.end());
        out.groups.emplace("block" + std::to_string(i), std::move(blk));
    }
    out.boundary.push_back(joints.back());
    if (direction == "two") out.boundary.insert(out.boundary.begin(), joints.front());
    return out;
}

inline FamilyGraph makeOmega1(const FamilySpec& spec) {
    spec.expectKeys({"blocks"});
    int blocks = spec.getInt("blocks", 2);
    if (blocks < 1) throw std::invalid_argument("omega1: blocks must be >= 1");
    detail::LabelGraphBuilder b;
    b.vertex("A");
    b.vertex("B");
    for (int i = 1; i <= blocks; ++i) {
        std::string si = std::to_string(i);
        detail::addBlock(b, [&](const std::string& r) { return r + si; });
        b.edge("A", "x" + si);
        b.edge("A", "y" + si);
        b.edge("B", "x" + si);
    }
    b.edge("A", "B");
    FamilyGraph out{b.build(), spec.canonical(), {}, {}, {}};
    for (int i = 1; i <= blocks; ++i) {
        std::vector<Vertex> blk;
        for (const char* role : detail::kBlockRoles)
            blk.push_back(out.graph.requireLabel(std::string(role) + std::to_string(i)));
        std::sort(blk.begin(), blk.end());
        out.groups.emplace("block" + std::to_string(i), std::move(blk));
    }
    out.boundary = {out.graph.requireLabel("A"), out.graph.requireLabel("B")};
    return out;
}

inline std::string layeredLabel(const std::string& base, int layer) {
    return "(" + base + "," + std::to_string(layer) + ")";
}

inline FamilyGraph makePPath(const FamilySpec& spec) {
    spec.expectKeys({"base", "n"});
    FamilyGraph base = makeFiniteFamily(spec.getString("base"));
    int n = spec.getInt("n");
    if (n < 1) throw std::invalid_argument("ppath: n must be >= 1");
    const FiniteGraph& g = base.graph;
    detail::LabelGraphBuilder b;
    for (int j = 0; j <= n; ++j)
        for (Vertex v = 0; v < g.size(); ++v) b.vertex(layeredLabel(g.label(v), j));
    for (int j = 0; j <= n; ++j)
        for (int j2 = j; j2 <= std::min(n, j + 1); ++j2)
            for (Vertex u = 0; u < g.size(); ++u)
                for (Vertex v = 0; v < g.size(); ++v) {
                    if (j == j2 && u >= v) continue;
                    bool core = g.adjacentOrEqual(u, v) && !(j == j2 && u == v);
                    bool topClique = (j == n && j2 == n && u != v);
                    if (core || topClique) b.edge(layeredLabel(g.label(u), j), layeredLabel(g.label(v), j2));
                }
    FamilyGraph out{b.build(), spec.canonical(), {}, {}, {}};
    for (int j = 0; j <= n; ++j) {
        std::vector<Vertex> layer;
        for (Vertex v = 0; v < g.size(); ++v) layer.push_back(out.graph.requireLabel(layeredLabel(g.label(v), j)));
        std::sort(layer.begin(), layer.end());
        out.groups.emplace("layer" + std::to_string(j), std::move(layer));
    }
    return out;
}

inline FamilyGraph makeC4Dot(const FamilySpec& spec) {
    spec.expectKeys({"base"});
    FamilyGraph base = makeFiniteFamily(spec.getString("base"));
    const FiniteGraph& g = base.graph;
    detail::LabelGraphBuilder b;
    for (Vertex v = 0; v < g.size(); ++v)
        for (int y = 0; y < 4; ++y) b.vertex(layeredLabel(g.label(v), y));
    for (Vertex v = 0; v < g.size(); ++v)
        for (int y = 0; y < 4; ++y) b.edge(layeredLabel(g.label(v), y), layeredLabel(g.label(v), (y + 1) % 4));
    for (const auto& [u, v] : g.edgeList()) b.edge(layeredLabel(g.label(u), 0), layeredLabel(g.label(v), 0));
    FamilyGraph out{b.build(), spec.canonical(), {}, {}, {}};
    std::vector<Vertex> core;
    for (Vertex v = 0; v < g.size(); ++v) core.push_back(out.graph.requireLabel(layeredLabel(g.label(v), 0)));
    std::sort(core.begin(), core.end());
    out.groups.emplace("core", std::move(core));
    return out;
}

inline FamilyGraph makePath(const FamilySpec& spec) {
    spec.expectKeys({"n"});
    int n = spec.getInt("n");
    if (n < 1) throw std::invalid_argument("path: n must be >= 1");
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return {FiniteGraph(n, edges), spec.canonical(), {}, {}, {}};
}

inline FamilyGraph makeCycle(const FamilySpec& spec) {
    spec.expectKeys({"n"});
    int n = spec.getInt("n");
    if (n < 3) throw std::invalid_argument("cycle: n must be >= 3");
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(0, n - 1);
    return {FiniteGraph(n, edges), spec.canonical(), {}, {}, {}};
}

inline FamilyGraph makeHive(const FamilySpec& spec) {
    spec.expectKeys({"base", "height"});
    FamilyGraph base = makeFiniteFamily(spec.getString("base"));
    int height = spec.getInt("height");
    if (height < 0) throw std::invalid_argument("hive: height must be >= 0");
    const FiniteGraph& g = base.graph;
    detail::LabelGraphBuilder b;
    for (int i = 0; i <= height; ++i)
        for (Vertex v = 0; v < g.size(); ++v) b.vertex(layeredLabel(g.label(v), i));
    b.vertex("hive");
    for (int i = 0; i <= height; ++i)
        for (int i2 = i; i2 <= std::min(height, i + 1); ++i2)
            for (Vertex u = 0; u < g.size(); ++u)
                for (Vertex v = 0; v < g.size(); ++v) {
                    if (i == i2 && u >= v) continue;
                    if (g.adjacentOrEqual(u, v) && !(i == i2 && u == v))
                        b.edge(layeredLabel(g.label(u), i), layeredLabel(g.label(v), i2));
                }
    for (Vertex v = 0; v < g.size(); ++v) b.edge("hive", layeredLabel(g.label(v), height));
    FamilyGraph out{b.build(), spec.canonical(), {}, {}, {}};
    for (int i = 0; i <= height; ++i) {
        std::vector<Vertex> layer;
        for (Vertex v = 0; v < g.size(); ++v) layer.push_back(out.graph.requireLabel(layeredLabel(g.label(v), i)));
        std::sort(layer.begin(), layer.end());
        out.groups.emplace("layer" + std::to_string(i), std::move(layer));
    }
    return out;
}

inline FamilyGraph makeGeeStage(const FamilySpec& spec) {
    int stage = spec.getInt("stage");
    FiniteGraph g = gee::buildStage(stage);
    FamilyGraph out{std::move(g), spec.canonical(), {}, {}, {}};
    out.aliases.emplace("origin", out.graph.requireLabel("[]"));
    // Every vertex keeps neighbors outside any finite window.
    for (Vertex v = 0; v < out.graph.size(); ++v) out.boundary.push_back(v);
    return out;
}

inline FamilyGraph makeHGraphTruncation(const FamilySpec& spec) {
    int levels = spec.getInt("levels");
    if (levels < 0) throw std::invalid_argument("hgraph: levels must be >= 0");
    hg::Truncation t = hg::buildTruncation(levels);
    FamilyGraph out{std::move(t.graph), spec.canonical(), {}, {}, {}};
    out.aliases.emplace("origin", out.graph.requireLabel("0:o"));
    std::vector<Vertex> spine;
    std::map<int, std::vector<Vertex>> perLevel;
    std::map<int, std::vector<Vertex>> perType;
    for (Vertex v = 0; v < out.graph.size(); ++v) {
        const hg::Addr& a = t.addrs[static_cast<std::size_t>(v)];
        if (hg::isSpine(a)) spine.push_back(v);
        perLevel[a.level].push_back(v);
        if (auto ord = hg::hiveTypeOrder(a)) perType[*ord].push_back(v);
        if (hg::isHiveVertex(a)) out.aliases.emplace("v" + std::to_string(a.level), v);
    }
    out.groups.emplace("spine", std::move(spine));
    for (auto& [lvl, vs] : perLevel) out.groups.emplace("level" + std::to_string(lvl), std::move(vs));
    for (auto& [ord, vs] : perType) out.groups.emplace("hivetype" + std::to_string(ord), std::move(vs));
    // Every vertex has a not-yet-built copy one stage up.
    for (Vertex v = 0; v < out.graph.size(); ++v) out.boundary.push_back(v);
    return out;
}

}  // namespace families

struct BlockExtension {
    FiniteGraph graph;
    Vertex attachA;  // kept from the input
    Vertex attachB;
    Vertex newX;     // entry vertex of the added block
};

/// Grows the graph across an edge (a, b): a fresh valve block is glued with
/// its hub role identified with b and its entry vertex joined to a. Adds 6
/// vertices and 15 edges (9 internal, 5 onto b, 1 onto a).
inline BlockExtension extendWithBlock(const FiniteGraph& g, Vertex a, Vertex b) {
    if (!g.adjacent(a, b)) throw std::invalid_argument("extendWithBlock: attachment vertices must be adjacent");
    int n = g.size();
    std::vector<std::string> labels;
    for (Vertex v = 0; v < n; ++v) labels.push_back(g.label(v));
    std::map<std::string, Vertex> roleIds;
    std::string suffix = "@" + std::to_string(n);
    for (const char* role : {"x", "z", "zp", "t", "tp", "w"}) {
        roleIds.emplace(role, static_cast<Vertex>(labels.size()));
        labels.push_back(std::string(role) + suffix);
    }
    auto idOf = [&](const std::string& role) { return role == "y" ? b : roleIds.at(role); };
    std::vector<Edge> edges = g.edgeList();
    for (const auto& [u, v] : detail::kBlockEdges) {
        Vertex p = idOf(u), q = idOf(v);
        if (p > q) std::swap(p, q);
        edges.emplace_back(p, q);
    }
    edges.emplace_back(std::min(a, roleIds.at("x")), std::max(a, roleIds.at("x")));
    return {FiniteGraph(static_cast<int>(labels.size()), edges, labels), a, b, roleIds.at("x")};
}

/// The unbounded valve chain: blocks indexed 1, 2, ... (or all integers for
/// the two-ended variant), joint i+1 shared between blocks i and i+1. The
/// optional hub is adjacent to every joint, hence has infinite degree.
class ChainOracle : public NeighborOracle {
public:
    ChainOracle(bool twoWay, bool hub, std::string specString)
        : twoWay_(twoWay), hub_(hub), spec_(std::move(specString)) {}

    std::string name() const override { return spec_; }
    bool locallyFinite() const override { return !hub_; }

    bool isVertex(const Key& k) const override { return parseKey(k).has_value(); }

    bool adjacent(const Key& a, const Key& b) const override {
        auto pa = parseKey(a), pb = parseKey(b);
        if (!pa || !pb) throw std::invalid_argument("chain: not a vertex");
        return adjacentParsed(*pa, *pb);
    }

    std::vector<Key> neighborsImpl(const Key& k, std::size_t budget) const override {
        auto p = parseKey(k);
        if (!p) throw std::invalid_argument("chain: not a vertex: " + k);
        if (p->role == Role::Hub) throw BudgetError("chain: the hub has infinite degree");
        std::vector<Key> out;
        for (const ChainVertex& v : closedNeighborsParsed(*p))
            if (!(v.role == p->role && v.idx == p->idx)) out.push_back(render(v));
        std::sort(out.begin(), out.end());
        if (out.size() > budget) throw BudgetError("chain: neighbor budget exceeded");
        return out;
    }

    std::vector<Key> moveMenu(const Key& k, std::size_t cap) const override {
        auto p = parseKey(k);
        if (!p) throw std::invalid_argument("chain: not a vertex: " + k);
        if (p->role != Role::Hub) return NeighborOracle::moveMenu(k, cap);
        // Window of joints around the chain start.
        std::vector<Key> out{k};
        for (long long step = 0; out.size() < cap && step < 2 * static_cast<long long>(cap); ++step) {
            long long i = twoWay_ ? (step % 2 ? -(step + 1) / 2 : step / 2) : step + 1;
            if (validJoint(i)) out.push_back("x" + std::to_string(i));
        }
        return out;
    }

    /// Rightward domination map; defined for the one-ended hubless chain,
    /// where adding blocks right-to-left realizes it as a construction.
    std::optional<Key> parent(const Key& k) const override {
        if (!hasParentMap()) return std::nullopt;
        auto p = parseKey(k);
        if (!p) throw std::invalid_argument("chain: not a vertex: " + k);
        switch (p->role) {
            case Role::X: return "x" + std::to_string(p->idx + 1);
            case Role::Z:
            case Role::Zp: return "x" + std::to_string(p->idx + 1);
            case Role::T: return "z" + std::to_string(p->idx);
            case Role::Tp: return "zp" + std::to_string(p->idx);
            case Role::W: return "z" + std::to_string(p->idx);
            default: return std::nullopt;
        }
    }

    bool hasParentMap() const override { return !hub_ && !twoWay_; }

    /// The trail climbs one block every at most two steps, so it provably
    /// escapes S once its block index passes the largest one in S.
    std::optional<int> trailHits(const Key& v, const std::vector<Key>& s) const override {
        if (!hasParentMap()) return std::nullopt;
        long long maxIdx = 0;
        std::set<Key> wanted;
        for (const Key& k : s) {
            auto p = parseKey(k);
            if (!p) throw std::invalid_argument("chain: not a vertex: " + k);
            maxIdx = std::max(maxIdx, p->idx);
            wanted.insert(k);
        }
        Key cur = v;
        for (int steps = 0;; ++steps) {
            if (wanted.count(cur)) return steps;
            auto p = parseKey(cur);
            if (p->idx > maxIdx) return std::nullopt;
            auto next = parent(cur);
            if (!next) return std::nullopt;
            cur = *next;
        }
    }

    double driftPotential(const Key& k) const override {
        auto p = parseKey(k);
        if (!p) throw std::invalid_argument("chain: not a vertex: " + k);
        return p->role == Role::Hub ? 0.0 : static_cast<double>(p->idx);
    }

    /// Block-index gap; the hub shortcut caps it at 2.
    double distanceEstimate(const Key& a, const Key& b) const override {
        auto pa = parseKey(a), pb = parseKey(b);
        if (!pa || !pb) throw std::invalid_argument("chain: not a vertex");
        if (pa->role == Role::Hub || pb->role == Role::Hub) return hub_ ? 1.0 : 0.0;
        double gap = static_cast<double>(pa->idx > pb->idx ? pa->idx - pb->idx : pb->idx - pa->idx);
        return hub_ ? std::min(gap, 2.0) : gap;
    }

    Key startVertex() const override { return "x1"; }

private:
    enum class Role { X, Z, Zp, T, Tp, W, Hub };
    struct ChainVertex {
        Role role;
        long long idx;
    };

    bool twoWay_;
    bool hub_;
    std::string spec_;

    bool validJoint(long long i) const { return twoWay_ || i >= 1; }
    bool validBlock(long long i) const { return twoWay_ || i >= 1; }

    std::optional<ChainVertex> parseKey(const Key& k) const {
        if (k == "hub") return hub_ ? std::optional<ChainVertex>({Role::Hub, 0}) : std::nullopt;
        static const std::vector<std::pair<std::string, Role>> prefixes = {
            {"zp", Role::Zp}, {"tp", Role::Tp}, {"x", Role::X}, {"z", Role::Z}, {"t", Role::T}, {"w", Role::W}};
        for (const auto& [pre, role] : prefixes) {
            if (k.size() <= pre.size() || k.compare(0, pre.size(), pre) != 0) continue;
            std::string num = k.substr(pre.size());
            if (num == "-" || (num[0] == '0' && num.size() > 1) || (num[0] == '-' && num.size() > 1 && num[1] == '0'))
                return std::nullopt;
            for (std::size_t i = (num[0] == '-' ? 1 : 0); i < num.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(num[i]))) return std::nullopt;
            if (num.size() > 12) return std::nullopt;
            long long idx = 0;
            try {
                idx = std::stoll(num);
            } catch (...) {
                return std::nullopt;
            }
            bool ok = role == Role::X ? validJoint(idx) : validBlock(idx);
            return ok ? std::optional<ChainVertex>({role, idx}) : std::nullopt;
        }
        return std::nullopt;
    }

    Key render(const ChainVertex& v) const {
        static const char* names[] = {"x", "z", "zp", "t", "tp", "w"};
        if (v.role == Role::Hub) return "hub";
        return std::string(names[static_cast<int>(v.role)]) + std::to_string(v.idx);
    }

    /// Closed neighborhood (may include the vertex itself plus invalid
    /// entries filtered by the caller through validity of indices).
    std::vector<ChainVertex> closedNeighborsParsed(const ChainVertex& v) const {
        std::vector<ChainVertex> out;
        auto push = [&](Role r, long long i) {
            bool ok = r == Role::Hub ? hub_ : (r == Role::X ? validJoint(i) : validBlock(i));
            if (ok) out.push_back({r, i});
        };
        switch (v.role) {
            case Role::X:
                push(Role::X, v.idx - 1);
                push(Role::X, v.idx + 1);
                push(Role::T, v.idx);
                push(Role::Tp, v.idx);
                push(Role::Z, v.idx - 1);
                push(Role::Zp, v.idx - 1);
                push(Role::T, v.idx - 1);
                push(Role::Tp, v.idx - 1);
                push(Role::Hub, 0);
                break;
            case Role::Z:
                push(Role::X, v.idx + 1);
                push(Role::W, v.idx);
                push(Role::T, v.idx);
                push(Role::Zp, v.idx);
                break;
            case Role::Zp:
                push(Role::X, v.idx + 1);
                push(Role::W, v.idx);
                push(Role::Tp, v.idx);
                push(Role::Z, v.idx);
                break;
            case Role::T:
                push(Role::X, v.idx);
                push(Role::X, v.idx + 1);
                push(Role::W, v.idx);
                push(Role::Z, v.idx);
                break;
            case Role::Tp:
                push(Role::X, v.idx);
                push(Role::X, v.idx + 1);
                push(Role::W, v.idx);
                push(Role::Zp, v.idx);
                break;
            case Role::W:
                push(Role::Z, v.idx);
                push(Role::Zp, v.idx);
                push(Role::T, v.idx);
                push(Role::Tp, v.idx);
                break;
            case Role::Hub:
                break;
        }
        return out;
    }

    bool adjacentParsed(const ChainVertex& a, const ChainVertex& b) const {
        if (a.role == Role::Hub && b.role == Role::Hub) return false;
        if (a.role == Role::Hub) return b.role == Role::X;
        if (b.role == Role::Hub) return a.role == Role::X;
        for (const ChainVertex& v : closedNeighborsParsed(a))
            if (v.role == b.role && v.idx == b.idx) return true;
        return false;
    }
};

struct FamilyInstance {
    std::optional<FamilyGraph> finite;
    std::shared_ptr<NeighborOracle> oracle;
    bool isFinite() const { return finite.has_value(); }
};

inline FamilyInstance makeFamily(const std::string& specString) {
    FamilySpec spec = FamilySpec::parse(specString);
    auto finite = [&](FamilyGraph g) { return FamilyInstance{std::move(g), nullptr}; };
    if (spec.name == "k") return finite(families::makeK(spec));
    if (spec.name == "two_k") return finite(families::makeTwoK(spec));
    if (spec.name == "kchain") {
        spec.expectKeys({"blocks", "hub", "direction"});
        if (spec.has("blocks")) return finite(families::makeKChain(spec));
        bool twoWay = spec.getString("direction", "one") == "two";
        return {std::nullopt, std::make_shared<ChainOracle>(twoWay, spec.getBool("hub", false), spec.canonical())};
    }
    if (spec.name == "omega1") return finite(families::makeOmega1(spec));
    if (spec.name == "ppath") return finite(families::makePPath(spec));
    if (spec.name == "c4dot") return finite(families::makeC4Dot(spec));
    if (spec.name == "path") return finite(families::makePath(spec));
    if (spec.name == "cycle") return finite(families::makeCycle(spec));
    if (spec.name == "hive") return finite(families::makeHive(spec));
    if (spec.name == "gee") {
        spec.expectKeys({"stage"});
        if (spec.has("stage")) return finite(families::makeGeeStage(spec));
        return {std::nullopt, std::make_shared<gee::GeeOracle>()};
    }
    if (spec.name == "hgraph") {
        spec.expectKeys({"levels"});
        if (spec.has("levels")) return finite(families::makeHGraphTruncation(spec));
        return {std::nullopt, std::make_shared<hg::HGraphOracle>()};
    }
    throw std::invalid_argument("unknown family '" + spec.name + "'");
}

inline FamilyGraph makeFiniteFamily(const std::string& specString) {
    FamilyInstance inst = makeFamily(specString);
    if (!inst.finite)
        throw std::invalid_argument("family spec '" + specString + "' names an infinite object; pass a truncation parameter");
    return std::move(*inst.finite);
}

/// Oracle view of any family; finite members are wrapped, with the parent
/// map taken from their construction order when one exists.
inline std::shared_ptr<NeighborOracle> makeOracle(const std::string& specString) {
    FamilyInstance inst = makeFamily(specString);
    if (inst.oracle) return inst.oracle;
    const FamilyGraph& fg = *inst.finite;
    std::optional<ConstructionCertificate> cert;
    if (connected(fg.graph)) {
        DismantleResult d = dismantle(fg.graph);
        if (d.constructible) cert = d.cert;
    }
    return std::make_shared<FiniteGraphOracle>(fg.graph, std::move(cert), fg.spec);
}

}  // namespace pursuit
