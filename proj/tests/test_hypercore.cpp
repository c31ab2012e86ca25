#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "loosehc/loosehc.hpp"
#include "oracles.hpp"

using namespace loosehc;

namespace {

Hypergraph3 random_hypergraph(int n, std::size_t max_edges, Rng& rng) {
    const auto total = binomial(static_cast<std::uint64_t>(n), 3);
    const auto k = std::min<std::size_t>(total, static_cast<std::size_t>(rng.below(max_edges + 1)));
    std::vector<std::uint64_t> ranks(total);
    std::iota(ranks.begin(), ranks.end(), 0);
    rng.shuffle(std::span<std::uint64_t>(ranks));
    std::vector<Triple> edges;
    for (std::size_t i = 0; i < k; ++i) {
        const auto [a, b, c] = detail::unrank_triple(ranks[i]);
        edges.emplace_back(a + 1, b + 1, c + 1);
    }
    return Hypergraph3(n, edges);
}

}  // namespace

TEST(Triple, StoresSortedAndRejectsRepeats) {
    Triple t(5, 1, 3);
    EXPECT_EQ(t.a(), 1);
    EXPECT_EQ(t.b(), 3);
    EXPECT_EQ(t.c(), 5);
    EXPECT_THROW(Triple(2, 2, 3), std::invalid_argument);
}

TEST(Hypergraph3, RejectsDuplicateAndOutOfRange) {
    EXPECT_THROW(Hypergraph3(4, {Triple(1, 2, 3), Triple(3, 2, 1)}), std::invalid_argument);
    EXPECT_THROW(Hypergraph3(4, {Triple(1, 2, 5)}), std::invalid_argument);
    Hypergraph3 h(5, {Triple(1, 2, 3), Triple(2, 4, 5)});
    EXPECT_EQ(h.degree(2), 2u);
    EXPECT_EQ(h.degree(1), 1u);
    EXPECT_TRUE(h.has_edge(3, 1, 2));
    EXPECT_FALSE(h.has_edge(1, 2, 4));
}

TEST(VerifyLoose, SmallestCycle) {
    Hypergraph3 h(4, {Triple(1, 3, 2), Triple(2, 4, 1)});
    EXPECT_TRUE(verify_loose_hamilton(h, {{1, 2}, {3, 4}}).ok);
}

TEST(VerifyLoose, EightVertexCycle) {
    Hypergraph3 h(8, {Triple(1, 5, 2), Triple(2, 6, 3), Triple(3, 7, 4), Triple(4, 8, 1)});
    EXPECT_TRUE(verify_loose_hamilton(h, {{1, 2, 3, 4}, {5, 6, 7, 8}}).ok);
}

TEST(VerifyLoose, MissingSecondWindow) {
    Hypergraph3 h(4, {Triple(1, 3, 2)});
    const LooseVerdict v = verify_loose_hamilton(h, {{1, 2}, {3, 4}});
    EXPECT_FALSE(v.ok);
    EXPECT_EQ(v.violation, LooseViolation::missing_edge);
    EXPECT_EQ(v.index, 2u);
}

TEST(VerifyLoose, RejectsOddOrTinyN) {
    EXPECT_THROW(verify_loose_hamilton(Hypergraph3(5, {}), {}), std::invalid_argument);
    EXPECT_THROW(verify_loose_hamilton(Hypergraph3(2, {}), {}), std::invalid_argument);
}

TEST(VerifyLoose, ReportsStructuralViolations) {
    const Hypergraph3 h = Hypergraph3::complete(6);
    EXPECT_EQ(verify_loose_hamilton(h, {{1, 2}, {3, 4}}).violation, LooseViolation::wrong_length);
    EXPECT_EQ(verify_loose_hamilton(h, {{1, 2, 3}, {4, 5, 1}}).violation, LooseViolation::repeated);
    EXPECT_EQ(verify_loose_hamilton(h, {{1, 2, 3}, {4, 5, 7}}).violation, LooseViolation::out_of_range);
    EXPECT_TRUE(verify_loose_hamilton(h, {{1, 2, 3}, {4, 5, 6}}).ok);
}

TEST(VerifyLoose, AgreesWithNaiveRecheck) {
    Rng rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        const int n = 4 + 2 * static_cast<int>(rng.below(3));
        const Hypergraph3 h = random_hypergraph(n, 12, rng);
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 1);
        rng.shuffle(std::span<int>(perm));
        LooseCycle c;
        for (int i = 0; i < n; i += 2) {
            c.links.push_back(perm[static_cast<std::size_t>(i)]);
            c.middles.push_back(perm[static_cast<std::size_t>(i) + 1]);
        }
        EXPECT_EQ(verify_loose_hamilton(h, c).ok, oracle::naive_loose_check(h, c));
    }
}

TEST(LooseCycle, CanonicalFormIdentifiesRotationsAndReversal) {
    const LooseCycle c{{3, 1, 4, 2}, {5, 6, 7, 8}};
    const LooseCycle canon = c.canonical();
    EXPECT_EQ(canon.links.front(), 1);
    EXPECT_LT(canon.links[1], canon.links.back());
    EXPECT_EQ(canon.edge_set(), c.edge_set());
    // reversal: x1, xk, ..., x2 with middles reversed
    const LooseCycle rev{{3, 2, 4, 1}, {8, 7, 6, 5}};
    EXPECT_EQ(rev.canonical(), canon);
    EXPECT_EQ((LooseCycle{{2, 1}, {4, 3}}).canonical(), (LooseCycle{{1, 2}, {3, 4}}));
}

TEST(ExactLoose, CompleteHypergraphHasCycle) {
    const Hypergraph3 h = Hypergraph3::complete(8);
    const auto c = exact_loose_hamilton(h);
    ASSERT_TRUE(c.has_value());
    EXPECT_TRUE(verify_loose_hamilton(h, *c).ok);
    EXPECT_EQ(*c, c->canonical());
}

TEST(ExactLoose, IsolatedVertexMeansNoCycle) {
    const Hypergraph3 k8 = Hypergraph3::complete(8);
    std::vector<Triple> edges;
    for (const Triple& t : k8.edges())
        if (!t.contains(8)) edges.push_back(t);
    EXPECT_FALSE(exact_loose_hamilton(Hypergraph3(8, edges)).has_value());
}

TEST(ExactLoose, CountInCompleteEightVertexHypergraph) {
    const Hypergraph3 h = Hypergraph3::complete(8);
    const auto enumerated = enumerate_loose_hamilton(h);
    const auto brute = oracle::loose_cycle_edge_sets(h);
    EXPECT_EQ(brute.size(), 5040u);
    EXPECT_EQ(enumerated.size(), 5040u);
    std::set<std::vector<Triple>> from_solver;
    for (const LooseCycle& c : enumerated) from_solver.insert(c.edge_set());
    EXPECT_EQ(from_solver, brute);
}

TEST(ExactLoose, AgreesWithExhaustiveSearchOnSixVertices) {
    Rng rng(2024);
    int positives = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const Hypergraph3 h = random_hypergraph(6, 6, rng);
        const auto c = exact_loose_hamilton(h);
        ASSERT_EQ(c.has_value(), oracle::loose_cycle_exists(h)) << "trial " << trial;
        if (c) {
            ++positives;
            EXPECT_TRUE(verify_loose_hamilton(h, *c).ok);
        }
        if (!isolated_vertices(h).empty()) {
            EXPECT_FALSE(c.has_value());
        }
    }
    EXPECT_GT(positives, 0);
}

TEST(ExactLoose, MonotoneUnderAddingEdges) {
    Rng rng(99);
    const Hypergraph3 k8 = Hypergraph3::complete(8);
    for (int trial = 0; trial < 300; ++trial) {
        const Hypergraph3 base = random_hypergraph(8, 14, rng);
        std::vector<Triple> more = base.edges();
        for (const Triple& t : k8.edges())
            if (!base.has_edge(t) && rng.below(4) == 0) more.push_back(t);
        const Hypergraph3 super(8, more);
        if (exact_loose_hamilton(base)) {
            EXPECT_TRUE(exact_loose_hamilton(super).has_value());
        }
    }
}

TEST(ExactLoose, RespectsCap) {
    EXPECT_THROW(exact_loose_hamilton(Hypergraph3(18, {})), std::length_error);
    EXPECT_NO_THROW(exact_loose_hamilton(Hypergraph3(18, {}), ExactLooseOptions{18}));
    EXPECT_THROW(exact_loose_hamilton(Hypergraph3(7, {})), std::invalid_argument);
}

TEST(Isolated, Examples) {
    EXPECT_EQ(isolated_vertices(Hypergraph3(4, {})), (std::vector<Vertex>{1, 2, 3, 4}));
    EXPECT_EQ(isolated_vertices(Hypergraph3(4, {Triple(1, 2, 3)})), (std::vector<Vertex>{4}));
}

TEST(Isolated, ExpectationClosedForm) {
    EXPECT_DOUBLE_EQ(expected_isolated(12, 0.0), 12.0);
    EXPECT_DOUBLE_EQ(expected_isolated(12, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(expected_isolated(3, 1.0), 0.0);
    // 8 * 0.9^21
    EXPECT_NEAR(expected_isolated(8, 0.1), 0.875351913052098873672, 1e-14);
}

TEST(Isolated, MonteCarloMatchesExpectation) {
    Rng rng(11);
    const int samples = 100'000;
    double sum = 0, sum2 = 0;
    for (int i = 0; i < samples; ++i) {
        const double k = static_cast<double>(isolated_vertices(sample_h3(8, 0.1, rng)).size());
        sum += k;
        sum2 += k * k;
    }
    const double mean = sum / samples;
    const double sd = std::sqrt(sum2 / samples - mean * mean);
    EXPECT_LE(std::abs(mean - expected_isolated(8, 0.1)), 3.0 * sd / std::sqrt(samples));
    EXPECT_NEAR(variance_isolated(8, 0.1), sd * sd, 0.02);
}

TEST(HypergraphFile, RoundTrip) {
    Rng rng(3);
    const Hypergraph3 h = sample_h3(10, 0.2, rng);
    std::stringstream ss;
    write_hypergraph(ss, h);
    EXPECT_EQ(read_hypergraph(ss), h);
}

TEST(HypergraphFile, RejectsMalformedInput) {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_hypergraph(in);
    };
    auto line_of = [&](const std::string& text) -> std::size_t {
        try {
            parse(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("4 1\n1 2 5\n"), 2u);
    EXPECT_EQ(line_of("4 2\n1 2 3\n1 2 3\n"), 3u);
    EXPECT_EQ(line_of("4 1\n2 1 3\n"), 2u);
    EXPECT_EQ(line_of("4 2\n1 2 3\n"), 2u);
    EXPECT_EQ(line_of("4 1\n1 2 x\n"), 2u);
    EXPECT_EQ(line_of("4\n"), 1u);
    EXPECT_THROW(parse(""), ParseError);
    EXPECT_EQ(parse("# comment\n4 1\n\n1 2 3\n").edge_count(), 1u);
}
