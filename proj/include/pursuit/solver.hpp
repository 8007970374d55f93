#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "pursuit/graph.hpp"
#include "pursuit/util.hpp"

namespace pursuit {

inline constexpr std::uint32_t kInfValue = std::numeric_limits<std::uint32_t>::max();

/// Exact solution of the one-cop pursuit game: value[(c,r,mover)] is the
/// number of future cop moves needed to capture under optimal play (capture
/// happens when either player ends a move on the other's vertex), kInfValue
/// when the robber escapes forever. Both players may stay in place.
struct GameSolution {
    int n = 0;
    std::vector<Vertex> forbidden;       // cop may not place on or move to these
    bool copwin = false;
    int captureTime = -1;                // cop moves from optimal placement; -1 when robber wins
    Vertex copStart = -1;
    std::vector<std::uint32_t> value;    // (c*n+r)*2 + mover
    std::vector<Vertex> copPolicy;       // c*n+r -> cop move (mover = cop)
    std::vector<Vertex> robberPolicy;    // c*n+r -> robber move (mover = robber)
    std::vector<Vertex> robberPlace;     // per cop placement: value-maximizing robber reply

    std::uint32_t at(Vertex c, Vertex r, int mover) const {
        return value[(static_cast<std::size_t>(c) * static_cast<std::size_t>(n) + static_cast<std::size_t>(r)) * 2 +
                     static_cast<std::size_t>(mover)];
    }
};

/// Backward induction over the game graph with a bucket queue (cop moves
/// cost 1, robber replies cost 0). The forbidden set restricts cop placement
/// and movement only; a robber sitting on a forbidden vertex can never be
/// stepped on, so any nonempty forbidden set on a connected graph is a
/// robber win. That degenerate reading is intentional: it matches the
/// "cop may never visit these vertices" restriction the tests exercise.
inline GameSolution solve(const FiniteGraph& g, const std::vector<Vertex>& forbiddenCop = {}) {
    const int n = g.size();
    if (n == 0) throw std::invalid_argument("solve: empty graph");
    if (static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n) * 2 > 40'000'000ull)
        throw BudgetError("solve: state space exceeds budget");
    std::vector<char> forb(static_cast<std::size_t>(n), 0);
    for (Vertex v : forbiddenCop) {
        if (v < 0 || v >= n) throw std::invalid_argument("solve: forbidden vertex out of range");
        forb[static_cast<std::size_t>(v)] = 1;
    }
    int allowedCount = 0;
    for (int v = 0; v < n; ++v)
        if (!forb[static_cast<std::size_t>(v)]) ++allowedCount;
    if (allowedCount == 0) throw std::invalid_argument("solve: forbidden set covers all vertices");

    GameSolution sol;
    sol.n = n;
    sol.forbidden = forbiddenCop;
    std::sort(sol.forbidden.begin(), sol.forbidden.end());
    const std::size_t nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    sol.value.assign(nn * 2, kInfValue);
    auto idx = [n](Vertex c, Vertex r) {
        return static_cast<std::size_t>(c) * static_cast<std::size_t>(n) + static_cast<std::size_t>(r);
    };

    // Robber-to-move states count their pending successors; a state
    // finalizes at the value of its last successor (the max, since states
    // finalize in ascending value order).
    std::vector<std::int32_t> cnt(nn, 0);
    for (int c = 0; c < n; ++c) {
        if (forb[static_cast<std::size_t>(c)]) continue;
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            int options = 1;  // stay (always != c here)
            for (Vertex rp : g.neighbors(r))
                if (rp != c) ++options;
            cnt[idx(c, r)] = options;
        }
    }

    std::vector<std::vector<std::uint32_t>> buckets(2);
    auto pushBucket = [&buckets](std::uint32_t v, std::uint32_t state) {
        if (buckets.size() <= v) buckets.resize(static_cast<std::size_t>(v) + 1);
        buckets[v].push_back(state);
    };
    // Seed: cop adjacent to a catchable robber captures in one move.
    for (int c = 0; c < n; ++c) {
        if (forb[static_cast<std::size_t>(c)]) continue;
        for (Vertex r : g.neighbors(c)) {
            if (forb[static_cast<std::size_t>(r)]) continue;  // cannot step onto a forbidden vertex
            sol.value[idx(c, r) * 2 + 0] = 1;
            pushBucket(1, static_cast<std::uint32_t>(idx(c, r) * 2 + 0));
        }
    }

    for (std::uint32_t v = 1; v < buckets.size(); ++v) {
        for (std::size_t bi = 0; bi < buckets[v].size(); ++bi) {  // buckets grow while iterating
            std::uint32_t s = buckets[v][bi];
            if (sol.value[s] != v) continue;  // stale entry
            const int mover = static_cast<int>(s & 1);
            const int c = static_cast<int>((s >> 1) / static_cast<std::uint32_t>(n));
            const int r = static_cast<int>((s >> 1) % static_cast<std::uint32_t>(n));
            if (mover == 0) {
                // Predecessors: robber states (c, r0) that can move r0 -> r.
                auto relaxRobber = [&](int r0) {
                    if (r0 == c) return;
                    std::size_t p = idx(c, r0);
                    if (sol.value[p * 2 + 1] != kInfValue) return;
                    if (--cnt[p] == 0) {
                        sol.value[p * 2 + 1] = v;
                        pushBucket(v, static_cast<std::uint32_t>(p * 2 + 1));
                    }
                };
                relaxRobber(r);
                for (Vertex r0 : g.neighbors(r)) relaxRobber(r0);
            } else {
                // Predecessors: cop states (c0, r) that can move c0 -> c.
                auto relaxCop = [&](int c0) {
                    if (c0 == r || forb[static_cast<std::size_t>(c0)]) return;
                    std::size_t p = idx(c0, r);
                    if (sol.value[p * 2 + 0] == kInfValue) {
                        sol.value[p * 2 + 0] = v + 1;
                        pushBucket(v + 1, static_cast<std::uint32_t>(p * 2 + 0));
                    }
                };
                relaxCop(c);
                for (Vertex c0 : g.neighbors(c)) relaxCop(c0);
            }
        }
    }

    // Policies, with lowest-id tie-breaking. The robber policy prefers
    // escaping successors, so on a robber-win value it never gets caught
    // regardless of what the cop actually plays.
    sol.copPolicy.assign(nn, -1);
    sol.robberPolicy.assign(nn, -1);
    for (int c = 0; c < n; ++c) {
        if (forb[static_cast<std::size_t>(c)]) continue;
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            {
                std::uint32_t best = kInfValue;
                Vertex bestMove = c;  // stall when the position is not winning
                auto consider = [&](Vertex cp) {
                    if (forb[static_cast<std::size_t>(cp)]) return;
                    std::uint32_t val = cp == r ? 0 : sol.value[idx(cp, r) * 2 + 1];
                    if (val < best) {
                        best = val;
                        bestMove = cp;
                    }
                };
                for (Vertex cp : g.neighbors(c))
                    if (cp < c) consider(cp);
                consider(c);
                for (Vertex cp : g.neighbors(c))
                    if (cp > c) consider(cp);
                sol.copPolicy[idx(c, r)] = bestMove;
            }
            {
                std::uint32_t best = 0;
                Vertex bestMove = -1;
                auto consider = [&](Vertex rp) {
                    if (rp == c) return;
                    std::uint32_t val = sol.value[idx(c, rp) * 2 + 0];
                    if (bestMove == -1 || val > best) {
                        best = val;
                        bestMove = rp;
                    }
                };
                for (Vertex rp : g.neighbors(r))
                    if (rp < r) consider(rp);
                consider(r);
                for (Vertex rp : g.neighbors(r))
                    if (rp > r) consider(rp);
                sol.robberPolicy[idx(c, r)] = bestMove;
            }
        }
    }

    sol.robberPlace.assign(static_cast<std::size_t>(n), -1);
    std::uint32_t bestWorst = kInfValue;
    Vertex bestStart = -1;
    bool haveStart = false;
    for (int c0 = 0; c0 < n; ++c0) {
        if (forb[static_cast<std::size_t>(c0)]) continue;
        std::uint32_t worst = 0;
        Vertex reply = -1;
        for (int r0 = 0; r0 < n; ++r0) {
            if (r0 == c0) continue;
            std::uint32_t val = sol.value[idx(c0, r0) * 2 + 0];
            if (reply == -1 || val > worst) {
                worst = val;
                reply = r0;
            }
        }
        sol.robberPlace[static_cast<std::size_t>(c0)] = reply;
        if (!haveStart || worst < bestWorst) {
            haveStart = true;
            bestWorst = worst;
            bestStart = c0;
        }
    }
    sol.copStart = bestStart;
    sol.copwin = bestWorst != kInfValue;
    sol.captureTime = sol.copwin ? static_cast<int>(bestWorst) : -1;
    return sol;
}

inline nlohmann::json solutionToJson(const FiniteGraph& g, const GameSolution& sol, bool includeTables = false) {
    nlohmann::json j;
    j["copwin"] = sol.copwin;
    j["capture_time"] = sol.copwin ? nlohmann::json(sol.captureTime) : nlohmann::json(nullptr);
    j["cop_start"] = sol.copStart >= 0 && sol.copwin ? nlohmann::json(g.label(sol.copStart)) : nlohmann::json(nullptr);
    auto forb = nlohmann::json::array();
    for (Vertex v : sol.forbidden) forb.push_back(g.label(v));
    j["forbidden"] = std::move(forb);
    if (includeTables) {
        const int n = sol.n;
        auto values = nlohmann::json::array();
        auto copPol = nlohmann::json::array();
        auto robPol = nlohmann::json::array();
        for (int c = 0; c < n; ++c) {
            auto vRow = nlohmann::json::array();
            auto cRow = nlohmann::json::array();
            auto rRow = nlohmann::json::array();
            for (int r = 0; r < n; ++r) {
                std::uint32_t vc = sol.at(c, r, 0);
                std::uint32_t vr = sol.at(c, r, 1);
                vRow.push_back({vc == kInfValue ? nlohmann::json(nullptr) : nlohmann::json(vc),
                                vr == kInfValue ? nlohmann::json(nullptr) : nlohmann::json(vr)});
                Vertex cp = sol.copPolicy[static_cast<std::size_t>(c) * static_cast<std::size_t>(n) +
                                          static_cast<std::size_t>(r)];
                Vertex rp = sol.robberPolicy[static_cast<std::size_t>(c) * static_cast<std::size_t>(n) +
                                             static_cast<std::size_t>(r)];
                cRow.push_back(cp < 0 ? nlohmann::json(nullptr) : nlohmann::json(g.label(cp)));
                rRow.push_back(rp < 0 ? nlohmann::json(nullptr) : nlohmann::json(g.label(rp)));
            }
            values.push_back(std::move(vRow));
            copPol.push_back(std::move(cRow));
            robPol.push_back(std::move(rRow));
        }
        j["values"] = std::move(values);
        j["cop_policy"] = std::move(copPol);
        j["robber_policy"] = std::move(robPol);
    }
    return j;
}

/// The report fields of a serialized solution; policies and values are kept
/// as label matrices when the tables were included.
struct SolutionSummary {
    bool copwin = false;
    std::optional<int> captureTime;
    std::optional<std::string> copStart;
    std::vector<std::string> forbidden;
    bool hasTables = false;
    std::vector<std::vector<std::optional<std::string>>> copPolicy, robberPolicy;
};

inline SolutionSummary solutionSummaryFromJson(const nlohmann::json& j) {
    SolutionSummary s;
    if (!j.contains("copwin") || !j.contains("capture_time") || !j.contains("forbidden"))
        throw std::invalid_argument("solution json: missing report fields");
    s.copwin = j.at("copwin").get<bool>();
    if (!j.at("capture_time").is_null()) s.captureTime = j.at("capture_time").get<int>();
    if (j.contains("cop_start") && !j.at("cop_start").is_null()) s.copStart = j.at("cop_start").get<std::string>();
    for (const auto& v : j.at("forbidden")) s.forbidden.push_back(v.get<std::string>());
    if (j.contains("cop_policy")) {
        s.hasTables = true;
        for (const char* key : {"cop_policy", "robber_policy"}) {
            auto& out = std::string(key) == "cop_policy" ? s.copPolicy : s.robberPolicy;
            for (const auto& row : j.at(key)) {
                std::vector<std::optional<std::string>> r;
                for (const auto& cell : row)
                    r.push_back(cell.is_null() ? std::nullopt : std::optional(cell.get<std::string>()));
                out.push_back(std::move(r));
            }
        }
    }
    return s;
}

}  // namespace pursuit
