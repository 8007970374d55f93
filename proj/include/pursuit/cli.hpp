#pragma once

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pursuit/suite.hpp"

namespace pursuit {
namespace clidetail {

/// A graph argument: "family:<spec>" (or a bare spec) builds a family, any
/// other string is read as a graph JSON file.
struct LoadedGraph {
    FiniteGraph graph;
    std::string name;
    std::optional<FamilyGraph> family;
};

inline bool looksLikeSpec(const std::string& in) {
    if (in.rfind("family:", 0) == 0) return true;
    // Family names never contain '/', '.', or path separators.
    return in.find('/') == std::string::npos && in.find('.') == std::string::npos;
}

inline LoadedGraph loadGraph(const std::string& in) {
    if (looksLikeSpec(in)) {
        std::string spec = in.rfind("family:", 0) == 0 ? in.substr(7) : in;
        FamilyGraph f = makeFiniteFamily(spec);
        FiniteGraph g = f.graph;
        return {std::move(g), spec, std::move(f)};
    }
    std::ifstream is(in);
    if (!is) throw std::invalid_argument("cannot open graph file: " + in);
    nlohmann::json j;
    is >> j;
    NamedGraph ng = graphFromJson(j);
    return {std::move(ng.graph), ng.name.empty() ? in : ng.name, std::nullopt};
}

/// Labels, aliases, and (for families) group names, expanded to vertex ids.
inline std::vector<Vertex> resolveVertices(const LoadedGraph& lg, const std::vector<std::string>& names) {
    std::vector<Vertex> out;
    for (const std::string& s : names) {
        if (lg.family) {
            auto grp = lg.family->groups.find(s);
            if (grp != lg.family->groups.end()) {
                out.insert(out.end(), grp->second.begin(), grp->second.end());
                continue;
            }
            out.push_back(lg.family->lookup(s));
            continue;
        }
        out.push_back(lg.graph.requireLabel(s));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline void writeOut(const std::string& path, const std::string& text, std::ostream& fallback) {
    if (path.empty()) {
        fallback << text;
        if (!text.empty() && text.back() != '\n') fallback << '\n';
        return;
    }
    std::ofstream os(path);
    if (!os) throw std::invalid_argument("cannot write: " + path);
    os << text;
}

/// Vertex labels may contain commas and brackets, so list flags use ';'.
inline std::vector<std::string> splitList(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string part;
    while (std::getline(is, part, ';'))
        if (!part.empty()) out.push_back(part);
    return out;
}

inline std::string toDot(const FiniteGraph& g, const std::string& name) {
    std::ostringstream os;
    os << "graph \"" << name << "\" {\n";
    for (Vertex v = 0; v < g.size(); ++v) os << "  \"" << g.label(v) << "\";\n";
    for (Vertex v = 0; v < g.size(); ++v)
        for (Vertex w : g.neighbors(v))
            if (v < w) os << "  \"" << g.label(v) << "\" -- \"" << g.label(w) << "\";\n";
    os << "}\n";
    return os.str();
}

}  // namespace clidetail

/// Command-line front end. Exit codes: 0 success/yes, 1 mathematical no
/// (not constructible, robber wins, no homomorphism order, a failed suite,
/// an errored simulation), 2 usage error, 4 search budget exhausted.
inline int runCli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    namespace cd = clidetail;
    CLI::App app{"pursuit games on graphs: constructibility, exact solving, simulation"};
    app.require_subcommand(1);

    std::string graphIn, outPath, dotPath, copSpec, robberSpec, familySpec;
    std::string forbidArg, marksArg;
    bool policies = false, quick = false;
    int steps = 1000;
    std::uint64_t seed = 1, nodeCap = 50'000'000;
    long budgetMs = 60'000;

    CLI::App* check = app.add_subcommand("check", "decide constructibility; emit a certificate or the stuck core");
    check->add_option("--graph", graphIn, "graph json file, or family:<spec>")->required();
    check->add_option("--out", outPath, "write the json here instead of stdout");

    CLI::App* solveCmd = app.add_subcommand("solve", "exact cops-and-robbers solution");
    solveCmd->add_option("--graph", graphIn, "graph json file, or family:<spec>")->required();
    solveCmd->add_option("--forbid", forbidArg, "';'-separated labels or group names the cop may not use");
    solveCmd->add_flag("--policies", policies, "include value and policy tables");
    solveCmd->add_option("--out", outPath, "write the json here instead of stdout");

    CLI::App* sim = app.add_subcommand("simulate", "play two strategies and record the transcript");
    sim->add_option("--graph", graphIn, "family spec (replayable boards only)")->required();
    sim->add_option("--cop", copSpec, "cop strategy name")->required();
    sim->add_option("--robber", robberSpec, "robber strategy name")->required();
    sim->add_option("--steps", steps, "turn horizon")->required();
    sim->add_option("--seed", seed, "rng seed");
    sim->add_option("--marks", marksArg, "';'-separated vertices whose visits are tallied");
    sim->add_option("--out", outPath, "write transcript jsonl here; metrics then go to stdout");

    CLI::App* fam = app.add_subcommand("family", "materialize a finite family graph");
    fam->add_option("--spec", familySpec, "family spec, e.g. kchain?blocks=3&hub=1")->required();
    fam->add_option("--out", outPath, "write graph json here instead of stdout");
    fam->add_option("--dot", dotPath, "also write a graphviz rendering here");

    CLI::App* hom = app.add_subcommand("search-hom", "search for a construction order whose domination map is a homomorphism");
    hom->add_option("--graph", graphIn, "graph json file, or family:<spec>")->required();
    hom->add_option("--budget-ms", budgetMs, "wall-clock budget");
    hom->add_option("--node-cap", nodeCap, "search node budget");
    hom->add_option("--out", outPath, "write the json here instead of stdout");

    CLI::App* suite = app.add_subcommand("paper-suite", "run the acceptance criteria and print a pass/fail table");
    suite->add_flag("--quick", quick, "reduced seed counts and horizons");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (*check) {
            cd::LoadedGraph lg = cd::loadGraph(graphIn);
            DismantleResult r = dismantle(lg.graph);
            nlohmann::json j;
            if (r.constructible) {
                j = certToJson(lg.graph, r.cert);
            } else {
                j["constructible"] = false;
                auto core = nlohmann::json::array();
                for (Vertex v : r.core) core.push_back(lg.graph.label(v));
                j["core"] = std::move(core);
            }
            cd::writeOut(outPath, j.dump(2), out);
            return r.constructible ? 0 : 1;
        }
        if (*solveCmd) {
            cd::LoadedGraph lg = cd::loadGraph(graphIn);
            GameSolution sol = solve(lg.graph, cd::resolveVertices(lg, cd::splitList(forbidArg)));
            cd::writeOut(outPath, solutionToJson(lg.graph, sol, policies).dump(2), out);
            return sol.copwin ? 0 : 1;
        }
        if (*sim) {
            if (!cd::looksLikeSpec(graphIn)) throw std::invalid_argument("simulate needs a family spec, not a file");
            std::string spec = graphIn.rfind("family:", 0) == 0 ? graphIn.substr(7) : graphIn;
            TranscriptHeader h{spec, copSpec, robberSpec, seed, steps};
            PlayOptions po;
            std::vector<std::string> marks = cd::splitList(marksArg);
            po.marks = {marks.begin(), marks.end()};
            Transcript t = replay(h, po);
            std::string jsonl = transcriptToJsonl(t);
            if (outPath.empty()) {
                out << jsonl;
            } else {
                cd::writeOut(outPath, jsonl, out);
                nlohmann::json m;
                m["turns"] = t.outcome.turnsPlayed;
                m["captured"] = t.outcome.captured;
                m["max_drift"] = t.metrics.maxDrift;
                m["distinct_robber_vertices"] = t.metrics.distinctRobberVertices;
                m["cop_flagged"] = t.metrics.copFlagged;
                m["robber_flagged"] = t.metrics.robberFlagged;
                auto mj = nlohmann::json::object();
                for (const auto& [k, v] : t.metrics.marks) {
                    mj[k] = {{"visits", v.visits}, {"first", v.firstVisit}, {"last", v.lastVisit},
                             {"max_gap", v.maxGap}};
                }
                m["marks"] = std::move(mj);
                out << m.dump(2) << "\n";
            }
            return t.outcome.error.empty() ? 0 : 1;
        }
        if (*fam) {
            FamilyGraph f = makeFiniteFamily(familySpec);
            cd::writeOut(outPath, graphToJson(f.graph, familySpec).dump(2), out);
            if (!dotPath.empty()) cd::writeOut(dotPath, cd::toDot(f.graph, familySpec), out);
            return 0;
        }
        if (*hom) {
            cd::LoadedGraph lg = cd::loadGraph(graphIn);
            HomSearchResult r = searchHom(lg.graph, std::chrono::milliseconds(budgetMs), nodeCap);
            nlohmann::json j;
            j["nodes_explored"] = r.nodesExplored;
            if (r.status == HomSearchStatus::Witness) {
                j["result"] = "witness";
                j["certificate"] = certToJson(lg.graph, r.cert);
            } else {
                j["result"] = r.status == HomSearchStatus::None ? "none" : "budget-exceeded";
            }
            cd::writeOut(outPath, j.dump(2), out);
            if (r.status == HomSearchStatus::Witness) return 0;
            return r.status == HomSearchStatus::None ? 1 : 4;
        }
        if (*suite) {
            SuiteOptions opt;
            opt.quick = quick;
            bool all = true;
            for (const CriterionResult& r : runAcceptanceSuite(opt)) {
                all &= r.pass;
                out << (r.pass ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << ": "
                    << r.detail << "\n";
            }
            return all ? 0 : 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace pursuit
