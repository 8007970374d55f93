#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pursuit/graph.hpp"
#include "pursuit/oracle.hpp"
#include "pursuit/util.hpp"

namespace pursuit::gee {

/// Vertices are finitely-supported coordinate sequences: odd positions range
/// over a 4-cycle (values 0..3), even positions over a 7-vertex path (values
/// 0..6). coords[i] holds position i+1; canonical form has no trailing zeros.
using Coords = std::vector<int>;

inline bool cyclePosition(int p) { return p % 2 == 1; }

inline int cycleDist4(int a, int b) {
    int d = std::abs(a - b);
    return std::min(d, 4 - d);
}

inline int at(const Coords& c, int p) {
    return p >= 1 && p <= static_cast<int>(c.size()) ? c[static_cast<std::size_t>(p - 1)] : 0;
}

inline void trim(Coords& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

inline Coords withValue(const Coords& c, int p, int value) {
    Coords out = c;
    if (static_cast<int>(out.size()) < p) out.resize(static_cast<std::size_t>(p), 0);
    out[static_cast<std::size_t>(p - 1)] = value;
    trim(out);
    return out;
}

/// Largest position with a nonzero coordinate; 0 for the all-zero vertex.
inline int support(const Coords& c) { return static_cast<int>(c.size()); }

inline bool validCoords(const Coords& c) {
    if (!c.empty() && c.back() == 0) return false;
    for (int p = 1; p <= static_cast<int>(c.size()); ++p) {
        int v = at(c, p);
        if (v < 0 || v > (cyclePosition(p) ? 3 : 6)) return false;
    }
    return true;
}

inline Key encodeKey(const Coords& c) {
    std::string s = "[";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(c[i]);
    }
    return s + "]";
}

inline std::optional<Coords> tryDecodeKey(const Key& k) {
    if (k.size() < 2 || k.front() != '[' || k.back() != ']') return std::nullopt;
    Coords c;
    std::size_t i = 1;
    if (k.size() > 2) {
        while (true) {
            std::size_t j = i;
            while (j < k.size() - 1 && k[j] >= '0' && k[j] <= '9') ++j;
            if (j == i || j - i > 2) return std::nullopt;
            c.push_back(std::stoi(k.substr(i, j - i)));
            if (j == k.size() - 1) break;
            if (k[j] != ',') return std::nullopt;
            i = j + 1;
        }
    }
    if (!validCoords(c)) return std::nullopt;
    return c;
}

inline Coords decodeKey(const Key& k) {
    auto c = tryDecodeKey(k);
    if (!c) throw std::invalid_argument("not a coordinate key: " + k);
    return *c;
}

/// Adjacency case analysis. For a pair (a, b), let m1 be the largest odd
/// position where the two are not both zero, and m2 the largest even position
/// where both sit at the path end (value 6); either is 0 when absent.
///   m1 > m2: equal below m1, cycle-distance <= 1 at m1, path coordinates
///            above m1 differ by <= 1 (odd positions above m1 are all zero).
///   otherwise: path coordinates above m2 differ by <= 1; everything below a
///            nonzero m2 is unconstrained. With m1 = m2 = 0 this degenerates
///            to: all odd coordinates zero, all even coordinates within 1.
inline bool adjacentCoords(const Coords& a, const Coords& b) {
    if (a == b) return false;
    int len = std::max(support(a), support(b));
    int m1 = 0, m2 = 0;
    for (int p = 1; p <= len; ++p) {
        if (cyclePosition(p)) {
            if (at(a, p) || at(b, p)) m1 = p;
        } else if (at(a, p) == 6 && at(b, p) == 6) {
            m2 = p;
        }
    }
    if (m1 > m2) {
        for (int p = 1; p < m1; ++p)
            if (at(a, p) != at(b, p)) return false;
        if (cycleDist4(at(a, m1), at(b, m1)) > 1) return false;
        for (int p = m1 + 1; p <= len; ++p)
            if (!cyclePosition(p) && std::abs(at(a, p) - at(b, p)) > 1) return false;
        return true;
    }
    for (int p = m2 + 1; p <= len; ++p)
        if (!cyclePosition(p) && std::abs(at(a, p) - at(b, p)) > 1) return false;
    return true;
}

namespace detail {

/// Expands a list of (position, allowed values) choice slots into concrete
/// coordinate vectors layered over a base, appending each canonical result.
inline void expandChoices(const Coords& base, const std::vector<std::pair<int, std::vector<int>>>& slots,
                          std::size_t budget, const Coords& self, std::vector<Coords>& out) {
    std::vector<std::size_t> pick(slots.size(), 0);
    while (true) {
        Coords c = base;
        for (std::size_t i = 0; i < slots.size(); ++i)
            c = withValue(c, slots[i].first, slots[i].second[pick[i]]);
        trim(c);
        if (c != self) {
            if (out.size() >= budget) throw BudgetError("gee neighbors: enumeration budget exceeded");
            out.push_back(std::move(c));
        }
        std::size_t i = 0;
        for (; i < slots.size(); ++i) {
            if (++pick[i] < slots[i].second.size()) break;
            pick[i] = 0;
        }
        if (i == slots.size()) break;
    }
}

/// Allowed values one step from v on the 7-path, excluding a shared endpoint
/// (value 6 pairs are enumerated separately as their own case).
inline std::vector<int> pathChoices(int v) {
    std::vector<int> s;
    for (int x = std::max(0, v - 1); x <= std::min(6, v + 1); ++x)
        if (!(x == 6 && v == 6)) s.push_back(x);
    return s;
}

}  // namespace detail

/// All neighbors of v whose support lies within the window [1, window].
/// Every vertex here has infinitely many neighbors (fresh coordinates can be
/// switched on at any position), so enumeration is necessarily windowed.
inline std::vector<Coords> neighborsWithin(const Coords& v, int window, std::size_t budget) {
    if (!validCoords(v)) throw std::invalid_argument("neighborsWithin: invalid coordinates");
    int sup = support(v);
    // The case loops index candidate top positions, which must reach v's own
    // support for the enumeration to be exhaustive within the window.
    if (window < sup) throw std::invalid_argument("neighborsWithin: window below vertex support");
    std::vector<Coords> out;

    // Case m1 > m2: the pair's top nonzero cycle position is q.
    for (int q = 1; q <= window; q += 2) {
        bool ok = true;
        for (int p = q + 1; p <= sup && ok; ++p) {
            if (cyclePosition(p) && at(v, p) != 0) ok = false;
            if (!cyclePosition(p) && p > window && at(v, p) > 1) ok = false;
        }
        if (!ok) continue;
        std::vector<int> cyc;
        for (int d = -1; d <= 1; ++d) {
            int x = ((at(v, q) + d) % 4 + 4) % 4;
            if (!(x == 0 && at(v, q) == 0) && (cyc.empty() || cyc.back() != x)) cyc.push_back(x);
        }
        std::sort(cyc.begin(), cyc.end());
        cyc.erase(std::unique(cyc.begin(), cyc.end()), cyc.end());
        std::vector<std::pair<int, std::vector<int>>> slots{{q, cyc}};
        for (int p = q + 1; p <= window; ++p)
            slots.emplace_back(p, cyclePosition(p) ? std::vector<int>{0} : detail::pathChoices(at(v, p)));
        Coords base;
        for (int p = 1; p < q; ++p) base.push_back(at(v, p));
        detail::expandChoices(base, slots, budget, v, out);
    }

    // Case m2 > m1: the pair shares a 6 at even position q; everything below
    // q is free, which is where the combinatorial growth comes from.
    for (int q = 2; q <= window; q += 2) {
        if (at(v, q) != 6) continue;
        bool ok = true;
        for (int p = q + 1; p <= sup && ok; ++p) {
            if (cyclePosition(p) && at(v, p) != 0) ok = false;
            if (!cyclePosition(p) && p > window && at(v, p) > 1) ok = false;
        }
        if (!ok) continue;
        std::vector<std::pair<int, std::vector<int>>> slots;
        for (int p = 1; p < q; ++p) {
            if (cyclePosition(p))
                slots.emplace_back(p, std::vector<int>{0, 1, 2, 3});
            else
                slots.emplace_back(p, std::vector<int>{0, 1, 2, 3, 4, 5, 6});
        }
        for (int p = q + 1; p <= window; ++p)
            slots.emplace_back(p, cyclePosition(p) ? std::vector<int>{0} : detail::pathChoices(at(v, p)));
        Coords base = withValue({}, q, 6);
        detail::expandChoices(base, slots, budget, v, out);
    }

    // Case m1 = m2 = 0: all cycle coordinates zero on both sides.
    bool cycFree = true;
    for (int p = 1; p <= sup; p += 2)
        if (at(v, p) != 0) cycFree = false;
    if (cycFree) {
        bool ok = true;
        for (int p = window + 1; p <= sup; ++p)
            if (!cyclePosition(p) && at(v, p) > 1) ok = false;
        if (ok) {
            std::vector<std::pair<int, std::vector<int>>> slots;
            for (int p = 2; p <= window; p += 2) slots.emplace_back(p, detail::pathChoices(at(v, p)));
            detail::expandChoices({}, slots, budget, v, out);
        }
    }

    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Finite snapshot: all vertices supported within positions 1..k, with the
/// full induced adjacency. Sizes follow the coordinate ranges: 4, 28, 112,
/// 784, ... (padded tuples are in bijection with canonical vertices).
inline FiniteGraph buildStage(int k) {
    if (k < 1 || k > 5) throw std::invalid_argument("buildStage: stage must be in 1..5");
    std::vector<Coords> verts{{}};
    for (int p = 1; p <= k; ++p) {
        std::vector<Coords> next;
        for (const Coords& c : verts)
            for (int x = 0; x <= (cyclePosition(p) ? 3 : 6); ++x) {
                Coords d = withValue(c, p, x);
                next.push_back(std::move(d));
            }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        verts = std::move(next);
    }
    std::vector<std::string> labels;
    for (const Coords& c : verts) labels.push_back(encodeKey(c));
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (adjacentCoords(verts[i], verts[j]))
                edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    return FiniteGraph(static_cast<int>(verts.size()), std::move(edges), labels);
}

class GeeOracle : public NeighborOracle {
public:
    std::string name() const override { return "gee"; }
    bool locallyFinite() const override { return false; }
    bool isVertex(const Key& k) const override { return tryDecodeKey(k).has_value(); }

    bool adjacent(const Key& a, const Key& b) const override {
        return adjacentCoords(decodeKey(a), decodeKey(b));
    }

    /// Windowed: neighbors supported within support(v) + 2.
    std::vector<Key> neighborsImpl(const Key& k, std::size_t budget) const override {
        Coords v = decodeKey(k);
        std::vector<Key> out;
        for (const Coords& w : neighborsWithin(v, support(v) + 2, budget)) out.push_back(encodeKey(w));
        return out;
    }

    /// Elementary moves only: single-coordinate steps within the window.
    /// A deterministic, sorted sublist of the true neighborhood, self first.
    std::vector<Key> moveMenu(const Key& k, std::size_t cap) const override {
        Coords v = decodeKey(k);
        std::vector<Coords> moves;
        for (int p = 1; p <= support(v) + 2; ++p) {
            if (cyclePosition(p)) {
                for (int d : {1, 3}) {
                    Coords w = withValue(v, p, (at(v, p) + d) & 3);
                    if (adjacentCoords(v, w)) moves.push_back(std::move(w));
                }
            } else {
                for (int d : {-1, 1}) {
                    int x = at(v, p) + d;
                    if (x < 0 || x > 6) continue;
                    Coords w = withValue(v, p, x);
                    if (adjacentCoords(v, w)) moves.push_back(std::move(w));
                }
            }
        }
        std::sort(moves.begin(), moves.end());
        moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
        std::vector<Key> out{k};
        for (const Coords& w : moves) out.push_back(encodeKey(w));
        if (out.size() > cap && cap >= 1) out.resize(cap);
        return out;
    }

    double driftPotential(const Key& k) const override { return support(decodeKey(k)); }

    /// Coordinate-wise gap sum: cheap, monotone enough for greedy chasing.
    double distanceEstimate(const Key& a, const Key& b) const override {
        Coords u = decodeKey(a), v = decodeKey(b);
        int top = std::max(support(u), support(v));
        double d = 0;
        for (int p = 1; p <= top; ++p)
            d += cyclePosition(p) ? cycleDist4(at(u, p), at(v, p)) : std::abs(at(u, p) - at(v, p));
        return d;
    }

    Key startVertex() const override { return "[]"; }
};

}  // namespace pursuit::gee
