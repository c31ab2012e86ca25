#include <gtest/gtest.h>

#include <map>

#include "loosehc/loosehc.hpp"
#include "oracles.hpp"

using namespace loosehc;

TEST(BuildGstar, SmallestCase) {
    // m=1, r=1: two blocks of one copy each, one triple per matching
    CopySet cs{1, 1, {{{3, 1}}, {{4, 1}}}};
    ASSERT_TRUE(cs.valid());
    const std::vector<PerfectMatching> ms = {{{SlotTriple(1, 2, 0)}}, {{SlotTriple(1, 2, 0)}}};
    const ColoredMultigraph g = build_gstar(ms, cs);
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_EQ(g.multiplicity(1, 2), 2u);
    EXPECT_TRUE(g.has_edge(1, 2, 3));
    EXPECT_TRUE(g.has_edge(1, 2, 4));
    EXPECT_TRUE(is_equitable(g, 1));
}

TEST(BuildGstar, RejectsInconsistentInput) {
    CopySet cs{1, 1, {{{3, 1}}, {{4, 1}}}};
    EXPECT_THROW(build_gstar({{{SlotTriple(1, 2, 0)}}}, cs), std::invalid_argument);
    EXPECT_THROW(build_gstar({{{SlotTriple(1, 2, 0)}}, {{}}}, cs), std::invalid_argument);
    CopySet bad{1, 1, {{{3, 1}}, {{3, 1}}}};
    EXPECT_THROW(build_gstar({{{SlotTriple(1, 2, 0)}}, {{SlotTriple(1, 2, 0)}}}, bad), std::invalid_argument);
}

TEST(Relabelled, DeterministicEngineYieldsUniformMatching) {
    // complete m=2 system: 3 pair partitions x 2 slot orders = 6 perfect matchings
    std::vector<SlotTriple> all;
    for (int a = 1; a <= 4; ++a)
        for (int b = a + 1; b <= 4; ++b)
            for (int s = 0; s < 2; ++s) all.emplace_back(a, b, s);
    const TripleSystem ts = TripleSystem::with_plain_slots(2, all);
    Rng rng(14);
    const int draws = 12'000;
    std::map<std::vector<SlotTriple>, int> seen;
    for (int i = 0; i < draws; ++i) {
        const auto pm = detail::relabelled_matching(ts, rng, [](const TripleSystem& t) { return exact_matching(t); });
        ASSERT_TRUE(pm.has_value());
        ++seen[pm->triples];
    }
    EXPECT_EQ(seen.size(), 6u);
    for (const auto& [triples, k] : seen) EXPECT_TRUE(oracle::within_3_sigma(k / double(draws), 1.0 / 6.0, draws)) << k;
}

TEST(Pipeline, SucceedsOnCompleteHypergraph) {
    for (int n : {8, 12, 16})
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const PipelineReport rep = run_pipeline(n, 1.0, 4, seed);
            ASSERT_TRUE(rep.success) << to_text(rep);
            EXPECT_EQ(rep.matchings_found, 8);
            ASSERT_TRUE(rep.cycle.has_value());
            EXPECT_TRUE(verify_loose_hamilton(rep.sample.h, *rep.cycle).ok);
            EXPECT_EQ(rep.stages.size(), 6u);
        }
}

TEST(Pipeline, FailsAtMatchingOnEmptyHypergraph) {
    const PipelineReport rep = run_pipeline(8, 0.0, 4, std::uint64_t{1});
    EXPECT_FALSE(rep.success);
    EXPECT_EQ(rep.failed_stage, "matching");
    EXPECT_EQ(rep.matchings_found, 0);
    EXPECT_FALSE(rep.cycle.has_value());
}

TEST(Pipeline, RejectsUnsupportedSizes) {
    EXPECT_THROW(run_pipeline(10, 0.5, 4, std::uint64_t{1}), std::invalid_argument);
    EXPECT_THROW(run_pipeline(64, 0.5, 4, std::uint64_t{1}), std::length_error);
}

TEST(Pipeline, SuccessesAreSoundAndConfirmedByOracle) {
    // at n=8 all 8 systems rarely match, so n=16 keeps the check non-vacuous
    int successes = 0;
    for (int n : {8, 16})
        for (std::uint64_t t = 0; t < 200; ++t) {
            Rng rng = Rng::derive(5, static_cast<std::uint64_t>(n), t);
            const PipelineReport rep = run_pipeline(n, 0.9, 4, rng);
            if (!rep.success) continue;
            ++successes;
            ASSERT_TRUE(verify_loose_hamilton(rep.sample.h, *rep.cycle).ok);
            ASSERT_TRUE(exact_loose_hamilton(rep.sample.h).has_value());
            ASSERT_TRUE(is_equitable(*rep.gstar, 4));
            ASSERT_TRUE(rep.gstar->is_regular(8));
        }
    EXPECT_GT(successes, 50);
}

TEST(Pipeline, HeuristicSolverIsSound) {
    PipelineOptions opt;
    opt.solver = SolverChoice::heuristic;
    int successes = 0;
    for (std::uint64_t t = 0; t < 50; ++t) {
        Rng rng = Rng::derive(6, t);
        const PipelineReport rep = run_pipeline(16, 0.9, 4, rng, opt);
        if (!rep.success) continue;
        ++successes;
        ASSERT_TRUE(verify_loose_hamilton(rep.sample.h, *rep.cycle).ok);
    }
    EXPECT_GT(successes, 0);
}

TEST(Pipeline, OracleComparisonGrid) {
    for (double p : {0.3, 0.6, 0.9}) {
        const OracleComparison cmp = pipeline_vs_oracle(8, p, 4, 200, 7);
        EXPECT_TRUE(cmp.sound()) << "p=" << p;
        EXPECT_EQ(cmp.both_yes + cmp.oracle_only + cmp.pipeline_only + cmp.both_no, 200);
        EXPECT_GE(cmp.loss_rate(), 0.0);
        EXPECT_LE(cmp.loss_rate(), 1.0);
    }
}

TEST(Pipeline, DeterministicIgnoringTiming) {
    const PipelineReport a = run_pipeline(16, 0.7, 4, std::uint64_t{11});
    const PipelineReport b = run_pipeline(16, 0.7, 4, std::uint64_t{11});
    EXPECT_EQ(to_json(a, false), to_json(b, false));
    EXPECT_EQ(a.sample.h, b.sample.h);
}

TEST(Pipeline, JsonCarriesRequiredFields) {
    const PipelineReport rep = run_pipeline(8, 1.0, 4, std::uint64_t{3});
    const nlohmann::json j = to_json(rep);
    for (const char* key : {"n", "p", "r", "seed", "solver", "success", "failed_stage", "stages", "loose_cycle"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["seed"], 3);
    EXPECT_TRUE(j["failed_stage"].is_null());
    EXPECT_TRUE(j["stages"][0].contains("seconds"));
    EXPECT_FALSE(to_json(rep, false)["stages"][0].contains("seconds"));
}

TEST(Recolor, KeepsStructure) {
    Rng rng(12);
    const PipelineReport rep = run_pipeline(16, 0.9, 4, rng);
    ASSERT_TRUE(rep.gstar.has_value());
    const ColoredMultigraph alt = recolor_by_bijections(rep.matchings, 4, 4, rng);
    EXPECT_TRUE(alt.is_regular(8));
    EXPECT_TRUE(is_equitable(alt, 4));
    const RecolorComparison cmp = recolor_experiment(8, 0.9, 4, 30, 13);
    EXPECT_EQ(cmp.trials, 30);
    EXPECT_LE(cmp.rainbow_original, cmp.matched);
    EXPECT_LE(cmp.rainbow_recolored, cmp.matched);
}
