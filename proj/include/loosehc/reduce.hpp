#pragma once

// The reduction end to end: coupled sample -> 2r perfect matchings ->
// colored multigraph G* on X -> rainbow Hamilton cycle -> loose Hamilton
// cycle of H, re-verified against H.

#include <algorithm>
#include <chrono>
#include <numeric>
#include <span>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "colorgraph.hpp"
#include "hypercore.hpp"
#include "rng.hpp"
#include "sample.hpp"
#include "solve.hpp"

namespace loosehc {

/// One edge (x, x') colored y per matched copy-triple ({x, x'}, (y, i));
/// matching j is read against block Y_j of the copy set.
inline ColoredMultigraph build_gstar(const std::vector<PerfectMatching>& matchings, const CopySet& copies) {
    if (!copies.valid()) throw std::invalid_argument("copy set is not a valid equipartition");
    if (matchings.size() != static_cast<std::size_t>(copies.block_count()))
        throw std::invalid_argument("expected " + std::to_string(copies.block_count()) + " matchings");
    const int m = copies.m;
    std::vector<ColoredEdge> edges;
    edges.reserve(static_cast<std::size_t>(2 * copies.r * m));
    for (std::size_t j = 0; j < matchings.size(); ++j) {
        const auto& triples = matchings[j].triples;
        if (triples.size() != static_cast<std::size_t>(m))
            throw std::invalid_argument("matching " + std::to_string(j + 1) + " does not have m triples");
        std::vector<char> vertex(static_cast<std::size_t>(2 * m) + 1, 0), slot(static_cast<std::size_t>(m), 0);
        for (const SlotTriple& t : triples) {
            if (t.x < 1 || t.y > 2 * m || t.x == t.y || t.slot < 0 || t.slot >= m)
                throw std::invalid_argument("matching " + std::to_string(j + 1) + " has a triple outside C(X,2) x Y");
            if (vertex[t.x] || vertex[t.y] || slot[static_cast<std::size_t>(t.slot)])
                throw std::invalid_argument("matching " + std::to_string(j + 1) + " is not a perfect matching");
            vertex[t.x] = vertex[t.y] = 1;
            slot[static_cast<std::size_t>(t.slot)] = 1;
            edges.emplace_back(t.x, t.y, copies.blocks[j][static_cast<std::size_t>(t.slot)].color);
        }
    }
    return ColoredMultigraph(2 * m, 2 * m, std::move(edges));
}

enum class SolverChoice { exact, heuristic };

inline const char* to_string(SolverChoice s) { return s == SolverChoice::exact ? "exact" : "heuristic"; }

struct PipelineOptions {
    SolverChoice solver = SolverChoice::exact;
    std::uint64_t matching_budget = 200'000;
    std::uint64_t rainbow_budget = 2'000'000;
    ExactMatchingOptions matching_caps{};
    ExactRainbowOptions rainbow_caps{};
};

struct StageRecord {
    std::string name;
    bool ok = false;
    std::uint64_t steps = 0;
    double seconds = 0.0;
    std::string note;
};

struct PipelineReport {
    int n = 0;
    double p = 0.0;
    int r = 0;
    std::uint64_t seed = 0;
    SolverChoice solver = SolverChoice::exact;

    std::vector<StageRecord> stages;  ///< in execution order; stops at the first failure
    bool success = false;
    std::string failed_stage;  ///< empty on success
    int matchings_found = 0;

    CoupledSample sample;
    std::vector<PerfectMatching> matchings;
    std::optional<ColoredMultigraph> gstar;
    std::optional<RainbowCycleCert> cert;
    std::optional<LooseCycle> cycle;
};

namespace detail {

class StageClock {
public:
    StageClock() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

/// Solves `ts` under a uniformly random relabelling of X and of the slots and
/// maps the answer back. Any engine then returns a matching whose law is
/// invariant under relabelling; a fixed engine alone would hand back the same
/// matching for every dense system and collapse G* onto a few vertex pairs.
template <typename Solve>
std::optional<PerfectMatching> relabelled_matching(const TripleSystem& ts, Rng& rng, Solve&& solve) {
    const int m = ts.m();
    std::vector<Vertex> vertex(static_cast<std::size_t>(2 * m) + 1);
    std::vector<int> slot(static_cast<std::size_t>(m));
    std::iota(vertex.begin(), vertex.end(), 0);
    std::iota(slot.begin(), slot.end(), 0);
    rng.shuffle(std::span<Vertex>(vertex).subspan(1));
    rng.shuffle(std::span<int>(slot));
    std::vector<SlotTriple> moved;
    moved.reserve(ts.present().size());
    for (const SlotTriple& t : ts.present()) moved.emplace_back(vertex[t.x], vertex[t.y], slot[static_cast<std::size_t>(t.slot)]);
    auto pm = solve(TripleSystem(m, ts.slots(), std::move(moved)));
    if (!pm) return pm;
    std::vector<Vertex> vertex_back(vertex.size());
    std::vector<int> slot_back(slot.size());
    for (std::size_t i = 0; i < vertex.size(); ++i) vertex_back[static_cast<std::size_t>(vertex[i])] = static_cast<Vertex>(i);
    for (std::size_t i = 0; i < slot.size(); ++i) slot_back[static_cast<std::size_t>(slot[i])] = static_cast<int>(i);
    for (SlotTriple& t : pm->triples) t = SlotTriple(vertex_back[t.x], vertex_back[t.y], slot_back[static_cast<std::size_t>(t.slot)]);
    std::sort(pm->triples.begin(), pm->triples.end());
    if (!verify_matching(ts, *pm)) throw std::logic_error("relabelled matching does not map back");
    return pm;
}

}  // namespace detail

/// Runs every stage in order and aborts at the first failure. A successful
/// report always carries a loose cycle that verified against the sampled H.
/// Size-cap refusals of the exact engines propagate as std::length_error.
inline PipelineReport run_pipeline(int n, double p, int r, Rng& rng, const PipelineOptions& opt = {}) {
    if (n % 4 != 0) throw std::invalid_argument("pipeline needs n divisible by 4");
    PipelineReport rep;
    rep.n = n;
    rep.p = p;
    rep.r = r;
    rep.solver = opt.solver;
    auto stage = [&](std::string name, bool ok, std::uint64_t steps, double secs, std::string note = {}) {
        rep.stages.push_back({name, ok, steps, secs, std::move(note)});
        if (!ok) rep.failed_stage = std::move(name);
        return ok;
    };

    if (opt.solver == SolverChoice::exact) {
        if (n / 4 > opt.matching_caps.max_m)
            throw std::length_error("m=" + std::to_string(n / 4) + " exceeds exact matching cap");
        if (n / 2 > std::min(opt.rainbow_caps.cap, detail::kRainbowHardCap))
            throw std::length_error("2m=" + std::to_string(n / 2) + " exceeds exact rainbow cap");
    }

    {
        detail::StageClock clock;
        rep.sample = sample_coupled(n, p, r, rng);
        std::size_t bad = 0;
        for (std::size_t j = 0; j < rep.sample.systems.size(); ++j)
            for (const SlotTriple& t : rep.sample.systems[j].present())
                if (!rep.sample.h.has_edge(rep.sample.project(j, t))) ++bad;
        if (!stage("coupling", bad == 0, 0, clock.seconds(), bad ? std::to_string(bad) + " copy-triples not in H" : ""))
            return rep;
    }

    {
        detail::StageClock clock;
        std::uint64_t total_steps = 0;
        Rng solver_rng = rng.split();
        for (const TripleSystem& ts : rep.sample.systems) {
            std::uint64_t steps = 0;
            std::optional<PerfectMatching> pm = detail::relabelled_matching(ts, solver_rng, [&](const TripleSystem& moved) {
                return opt.solver == SolverChoice::exact ? exact_matching(moved, opt.matching_caps, &steps)
                                                         : heuristic_matching(moved, opt.matching_budget, solver_rng, &steps);
            });
            total_steps += steps;
            if (!pm) break;
            rep.matchings.push_back(std::move(*pm));
        }
        rep.matchings_found = static_cast<int>(rep.matchings.size());
        if (!stage("matching", rep.matchings.size() == rep.sample.systems.size(), total_steps, clock.seconds(),
                   std::to_string(rep.matchings_found) + "/" + std::to_string(rep.sample.systems.size()) + " systems matched"))
            return rep;
    }

    {
        detail::StageClock clock;
        rep.gstar = build_gstar(rep.matchings, rep.sample.copies);
        const ColoredMultigraph& g = *rep.gstar;
        const int m = rep.sample.m();
        bool ok = g.edge_count() == static_cast<std::size_t>(2 * r * m) && g.is_regular(2 * r) && is_equitable(g, r);
        std::size_t stray = 0;
        for (const ColoredEdge& e : g.edges())
            if (!rep.sample.h.has_edge(e.u, e.color, e.v)) ++stray;
        ok = ok && stray == 0;
        if (!stage("gstar", ok, 0, clock.seconds(), stray ? std::to_string(stray) + " edges without a triple in H" : ""))
            return rep;
    }

    {
        detail::StageClock clock;
        std::uint64_t steps = 0;
        Rng solver_rng = rng.split();
        rep.cert = opt.solver == SolverChoice::exact ? exact_rainbow_hamilton(*rep.gstar, opt.rainbow_caps, &steps)
                                                     : heuristic_rainbow_hamilton(*rep.gstar, opt.rainbow_budget, solver_rng, &steps);
        if (!stage("rainbow", rep.cert.has_value(), steps, clock.seconds())) return rep;
    }

    {
        detail::StageClock clock;
        rep.cycle = lift_to_loose(*rep.cert);
        stage("lift", true, 0, clock.seconds());
    }

    {
        detail::StageClock clock;
        const LooseVerdict v = verify_loose_hamilton(rep.sample.h, *rep.cycle);
        if (!stage("verify", v.ok, 0, clock.seconds(), v.detail)) return rep;
    }
    rep.success = true;
    return rep;
}

/// Seeded entry point: the report records `seed`.
inline PipelineReport run_pipeline(int n, double p, int r, std::uint64_t seed, const PipelineOptions& opt = {}) {
    Rng rng(seed);
    PipelineReport rep = run_pipeline(n, p, r, rng, opt);
    rep.seed = seed;
    return rep;
}

inline nlohmann::json to_json(const PipelineReport& rep, bool include_timing = true) {
    using nlohmann::json;
    json stages = json::array();
    for (const StageRecord& s : rep.stages) {
        json js = {{"stage", s.name}, {"ok", s.ok}, {"steps", s.steps}};
        if (!s.note.empty()) js["note"] = s.note;
        if (include_timing) js["seconds"] = s.seconds;
        stages.push_back(std::move(js));
    }
    json out = {
        {"n", rep.n},
        {"p", rep.p},
        {"r", rep.r},
        {"seed", rep.seed},
        {"solver", to_string(rep.solver)},
        {"success", rep.success},
        {"failed_stage", rep.failed_stage.empty() ? json(nullptr) : json(rep.failed_stage)},
        {"hypergraph_edges", rep.sample.h.edge_count()},
        {"matchings_found", rep.matchings_found},
        {"stages", std::move(stages)},
    };
    if (rep.cert) out["rainbow_cycle"] = {{"order", rep.cert->order}, {"colors", rep.cert->colors}};
    if (rep.cycle) out["loose_cycle"] = {{"links", rep.cycle->links}, {"middles", rep.cycle->middles}};
    return out;
}

inline std::string to_text(const PipelineReport& rep) {
    std::string out = "pipeline n=" + std::to_string(rep.n) + " p=" + nlohmann::json(rep.p).dump() + " r=" +
                      std::to_string(rep.r) + " seed=" + std::to_string(rep.seed) + " solver=" + to_string(rep.solver) + "\n";
    out += "hypergraph edges: " + std::to_string(rep.sample.h.edge_count()) + "\n";
    for (const StageRecord& s : rep.stages) {
        out += "  " + s.name + ": " + (s.ok ? "ok" : "FAILED") + " (steps " + std::to_string(s.steps) + ")";
        if (!s.note.empty()) out += " " + s.note;
        out += "\n";
    }
    if (rep.cycle) {
        out += "loose cycle links:";
        for (Vertex v : rep.cycle->links) out += " " + std::to_string(v);
        out += "\nloose cycle middles:";
        for (Vertex v : rep.cycle->middles) out += " " + std::to_string(v);
        out += "\n";
    }
    out += rep.success ? "result: success\n" : "result: failed at " + rep.failed_stage + "\n";
    return out;
}

struct OracleComparison {
    int n = 0;
    double p = 0.0;
    int r = 0;
    int trials = 0;
    int both_yes = 0;
    int pipeline_only = 0;  ///< unsound successes; always 0 for a correct build
    int oracle_only = 0;    ///< losses of the reduction
    int both_no = 0;

    bool sound() const { return pipeline_only == 0; }
    double loss_rate() const {
        const int yes = both_yes + oracle_only;
        return yes == 0 ? 0.0 : static_cast<double>(oracle_only) / yes;
    }
};

/// Pipeline verdict against the exact loose-cycle oracle on the same H.
inline OracleComparison pipeline_vs_oracle(int n, double p, int r, int trials, std::uint64_t seed,
                                           const PipelineOptions& opt = {}, const ExactLooseOptions& oracle = {}) {
    if (n > std::min(oracle.cap, detail::kLooseHardCap)) throw std::length_error("n exceeds the exact oracle cap");
    OracleComparison cmp{n, p, r, trials};
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(t));
        const PipelineReport rep = run_pipeline(n, p, r, rng, opt);
        const bool pipe = rep.success;
        const bool exact = exact_loose_hamilton(rep.sample.h, oracle).has_value();
        if (pipe && exact) ++cmp.both_yes;
        else if (pipe) ++cmp.pipeline_only;
        else if (exact) ++cmp.oracle_only;
        else ++cmp.both_no;
    }
    return cmp;
}

/// G* with every layer M*_j re-colored by a uniform bijection from block Y_j of
/// a fresh copy-set partition. Layers are read off the matchings' order.
inline ColoredMultigraph recolor_by_bijections(const std::vector<PerfectMatching>& matchings, int m, int r, Rng& rng) {
    const CopySet fresh = sample_copyset_partition(m, r, rng);
    if (matchings.size() != static_cast<std::size_t>(2 * r)) throw std::invalid_argument("expected 2r matchings");
    std::vector<ColoredEdge> edges;
    for (std::size_t j = 0; j < matchings.size(); ++j) {
        std::vector<CopyColor> block = fresh.blocks[j];
        rng.shuffle(std::span<CopyColor>(block));
        const auto& triples = matchings[j].triples;
        if (triples.size() != block.size()) throw std::invalid_argument("matching size differs from m");
        for (std::size_t k = 0; k < triples.size(); ++k) edges.emplace_back(triples[k].x, triples[k].y, block[k].color);
    }
    return ColoredMultigraph(2 * m, 2 * m, std::move(edges));
}

struct RecolorComparison {
    int trials = 0;
    int matched = 0;            ///< trials whose 2r systems all had perfect matchings
    int rainbow_original = 0;   ///< matching-induced colors admit a rainbow cycle
    int rainbow_recolored = 0;  ///< bijection colors admit a rainbow cycle
};

/// Rainbow success on matching-induced colors versus re-colored layers (exact engines).
inline RecolorComparison recolor_experiment(int n, double p, int r, int trials, std::uint64_t seed) {
    RecolorComparison out;
    out.trials = trials;
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(t));
        const PipelineReport rep = run_pipeline(n, p, r, rng);
        if (!rep.gstar) continue;
        ++out.matched;
        if (rep.cert) ++out.rainbow_original;
        const ColoredMultigraph alt = recolor_by_bijections(rep.matchings, n / 4, r, rng);
        if (exact_rainbow_hamilton(alt)) ++out.rainbow_recolored;
    }
    return out;
}

}  // namespace loosehc
