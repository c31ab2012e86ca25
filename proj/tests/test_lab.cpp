#include <gtest/gtest.h>

#include <cmath>

#include "loosehc/loosehc.hpp"
#include "oracles.hpp"

using namespace loosehc;

TEST(PFromC, Formula) {
    EXPECT_DOUBLE_EQ(p_from_c(16, 0.5), 0.5 * std::log(16.0) / 256.0);
    EXPECT_EQ(p_from_c(8, 1e6), 1.0);
}

TEST(Wilson, EdgeCases) {
    const Interval zero = wilson_interval(0, 200);
    EXPECT_EQ(zero.low, 0.0);
    EXPECT_GT(zero.high, 0.0);
    EXPECT_LT(zero.high, 0.05);
    const Interval all = wilson_interval(200, 200);
    EXPECT_EQ(all.high, 1.0);
    EXPECT_LT(all.low, 1.0);
    // 50/100 at 95%: centre 0.5, half width 1.959964 * 0.05 / (1 + 1.959964^2/100)... evaluated by hand
    const Interval half = wilson_interval(50, 100);
    EXPECT_NEAR(half.low, 0.403831, 1e-6);
    EXPECT_NEAR(half.high, 0.596169, 1e-6);
    EXPECT_THROW(wilson_interval(3, 2), std::invalid_argument);
    EXPECT_THROW(wilson_interval(1, 2, 1.0), std::invalid_argument);
    const Interval none = wilson_interval(0, 0);
    EXPECT_EQ(none.low, 0.0);
    EXPECT_EQ(none.high, 1.0);
}

TEST(Sweep, ExtremesOfC) {
    SweepSpec spec;
    spec.ns = {8};
    spec.cs = {1e-6, 1e6};
    spec.trials = 50;
    const SweepResult res = run_sweep(spec);
    ASSERT_EQ(res.cells.size(), 2u);
    EXPECT_EQ(res.at(8, 1e-6).successes, 0);
    EXPECT_EQ(res.at(8, 1e6).successes, 50);
    EXPECT_EQ(res.at(8, 1e6).p, 1.0);
    // linear interpolation between freq 0 and freq 1
    EXPECT_NEAR(crossing_c(res, 8), 0.5 * (1e-6 + 1e6), 1e-6);
}

TEST(Sweep, CsvShapeAndWorkerIndependence) {
    SweepSpec spec;
    spec.ns = {8, 12};
    spec.cs = {2, 8, 16};
    spec.trials = 40;
    spec.seed = 17;
    const std::string one = to_csv(run_sweep(spec));
    spec.workers = 3;
    const std::string three = to_csv(run_sweep(spec));
    EXPECT_EQ(one, three);
    EXPECT_EQ(one.rfind(kSweepCsvHeader, 0), 0u);
    EXPECT_EQ(std::count(one.begin(), one.end(), '\n'), 1 + 6);
    spec.seed = 18;
    EXPECT_NE(to_csv(run_sweep(spec)), one);
}

TEST(Sweep, PipelineMethodNeverBeatsOracle) {
    SweepSpec spec;
    spec.ns = {8};
    spec.cs = {16, 64};
    spec.trials = 60;
    const SweepResult exact = run_sweep(spec);
    spec.method = SweepMethod::pipeline;
    const SweepResult pipe = run_sweep(spec);
    EXPECT_EQ(pipe.cells[0].method, SweepMethod::pipeline);
    // same seed, different streams: compare only loosely
    for (std::size_t i = 0; i < 2; ++i) EXPECT_LE(pipe.cells[i].ci_low, exact.cells[i].ci_high);
}

TEST(Sweep, ValidateRejectsBadSpecs) {
    SweepSpec spec;
    spec.ns = {10};
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    spec.ns = {20};
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    spec.ns = {8};
    spec.cs = {0.0};
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    spec.cs = {1};
    spec.trials = 0;
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    spec.trials = 1;
    spec.workers = 0;
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    spec.workers = 1;
    EXPECT_NO_THROW(spec.validate());
}

TEST(Isolated, ExtremesAndSmallGrid) {
    const auto empty = isolated_experiment({8}, {0.0}, 10, 1);
    EXPECT_EQ(empty[0].mean, 8.0);
    EXPECT_EQ(empty[0].z, 0.0);
    const auto full = isolated_experiment({8}, {1e6}, 10, 1);
    EXPECT_EQ(full[0].mean, 0.0);
    const auto rows = isolated_experiment({16}, {0.5}, 10'000, 2, 2);
    EXPECT_LE(std::abs(rows[0].z), 3.0) << rows[0].mean << " vs " << rows[0].expected;
    EXPECT_EQ(isolated_experiment({16}, {0.5}, 500, 2, 1)[0].mean, isolated_experiment({16}, {0.5}, 500, 2, 4)[0].mean);
}

TEST(Contiguity, FourVerticesOneLayerPair) {
    const int trials = 20'000;
    const ContiguityReport rep = contiguity_probe(4, 1, trials, 3);
    EXPECT_TRUE(rep.union_of_matchings.all_regular);
    EXPECT_TRUE(rep.pairing.all_regular);
    // two uniform matchings of K4 coincide with probability 1/3
    const auto& hist = rep.union_of_matchings.parallel_histogram;
    ASSERT_EQ(hist.size(), 3u);
    EXPECT_EQ(hist[1], 0u);
    EXPECT_TRUE(oracle::within_3_sigma(static_cast<double>(hist[2]) / trials, 1.0 / 3.0, trials));
    EXPECT_TRUE(oracle::within_3_sigma(rep.union_of_matchings.hamiltonian_freq, 2.0 / 3.0, trials));
    EXPECT_TRUE(oracle::within_3_sigma(rep.pairing.hamiltonian_freq, 0.8, trials));
}

TEST(Contiguity, LargerReportsAreRegular) {
    const ContiguityReport rep = contiguity_probe(8, 4, 1000, 4);
    EXPECT_TRUE(rep.union_of_matchings.all_regular);
    EXPECT_TRUE(rep.pairing.all_regular);
    EXPECT_FALSE(std::isnan(rep.pairing.hamiltonian_freq));
    EXPECT_FALSE(to_text(rep).empty());
    EXPECT_THROW(contiguity_probe(5, 1, 10, 1), std::invalid_argument);
}
