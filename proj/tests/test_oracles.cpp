#include <gtest/gtest.h>

#include <cmath>

#include "gapred/oracles.hpp"
#include "support.hpp"

using namespace gapred;

TEST(OptKMaxCov, Examples) {
    SetSystem ss{4, {{0, 1}, {2, 3}, {0, 2}}};
    auto r = opt_kmaxcov(ss, 2);
    EXPECT_EQ(r.value, Rational(1));
    EXPECT_EQ(r.witness, (std::vector<int>{0, 1}));
    EXPECT_EQ(opt_kmaxcov(SetSystem{3, {{0, 1, 2}}}, 1).value, Rational(1));
    EXPECT_EQ(opt_kmaxcov(SetSystem{3, {{}, {}}}, 2).value, Rational(0));
}

TEST(OptKMaxCov, LexSmallestWitnessOnTies) {
    SetSystem ss{3, {{0}, {1}, {0}, {1}}};
    EXPECT_EQ(opt_kmaxcov(ss, 2).witness, (std::vector<int>{0, 1}));
    ColoredSetSystem cs{SetSystem{2, {{0}, {0}, {1}, {1}}}, {1, 0, 1, 0}, 2};
    // One set per color, listed by color: color 0 then color 1. Sets 1+2 and 3+0 tie.
    auto r = opt_kmaxcov(cs, 2);
    EXPECT_EQ(r.count, 2);
    EXPECT_EQ(r.witness, (std::vector<int>{1, 2}));
}

TEST(OptKMaxCov, RejectsBadK) {
    SetSystem ss{2, {{0}}};
    EXPECT_THROW(opt_kmaxcov(ss, 0), ParameterError);
    EXPECT_THROW(opt_kmaxcov(ss, 2), ParameterError);
}

TEST(OptKMaxCov, RefusesBeyondBudget) {
    SetSystem ss{4, std::vector<std::vector<int>>(30, std::vector<int>{0})};
    OracleOptions o;
    o.budget = 100;
    EXPECT_THROW(opt_kmaxcov(ss, 3, o), RefusalError);
}

TEST(OptKMaxCov, MatchesNaiveOracle) {
    Rng rng(1);
    for (int it = 0; it < 300; ++it) {
        int k = static_cast<int>(rng.range(1, 3));
        bool colored = it % 2 == 1;
        auto any = ref::random_system(rng, 10, 6, k, colored);
        auto r = opt_kmaxcov(any, k);
        EXPECT_EQ(r.count, ref::maxcov(any, k));
        EXPECT_EQ(coverage_count(plain(any), r.witness), r.count);
    }
}

TEST(OptKMaxCov, DynamicMaskPathAgreesAboveOneHundredTwentyEightElements) {
    Rng rng(2);
    for (int it = 0; it < 10; ++it) {
        SetSystem ss;
        ss.universe_size = 200;
        for (int s = 0; s < 5; ++s) ss.sets.push_back(rng.sample(200, static_cast<int>(rng.range(0, 80))));
        EXPECT_EQ(opt_kmaxcov(ss, 2).count, ref::maxcov(ss, 2));
    }
}

TEST(Greedy, Examples) {
    SetSystem ss{4, {{0, 1}, {2, 3}, {0, 2}}};
    EXPECT_EQ(greedy_kmaxcov(ss, 2).value, Rational(1));
    SetSystem disjoint{6, {{0}, {1, 2}, {3, 4, 5}}};
    EXPECT_EQ(greedy_kmaxcov(disjoint, 2).count, opt_kmaxcov(disjoint, 2).count);
    EXPECT_EQ(greedy_kmaxcov(disjoint, 3).count, 6);
}

TEST(Greedy, ReachesSeventyNineOverOneTwentyFiveOfOptimum) {
    Rng rng(3);
    for (int it = 0; it < 300; ++it) {
        int k = static_cast<int>(rng.range(1, 3));
        auto any = ref::random_system(rng, 10, 6, k, false);
        auto g = greedy_kmaxcov(any, k);
        auto o = opt_kmaxcov(any, k);
        EXPECT_GE(Rational(g.count) * Rational(125), Rational(o.count) * Rational(79));
        EXPECT_EQ(coverage_count(plain(any), g.witness), g.count);
    }
}

TEST(Greedy, ColoredPicksOneSetPerColorAndReachesHalf) {
    Rng rng(4);
    for (int it = 0; it < 200; ++it) {
        int k = static_cast<int>(rng.range(1, 3));
        auto any = ref::random_system(rng, 10, 6, k, true);
        const auto& cs = std::get<ColoredSetSystem>(any);
        auto g = greedy_kmaxcov(any, k);
        std::set<int> colors;
        for (int s : g.witness) colors.insert(cs.color_of[s]);
        EXPECT_EQ(static_cast<int>(colors.size()), k);
        EXPECT_GE(2 * g.count, opt_kmaxcov(any, k).count);
    }
}

TEST(ValCsp, Examples) {
    ValuedTwoCsp one{{{"a", 1}, {"b", 1}}, {{0, 1, {{Rational(1)}}}}};
    EXPECT_EQ(val_vcsp(one).value, Rational(1));
    WeightedTwoCsp none{{{"a", 2}, {"b", 2}}, {{0, 1, 1, {}}}};
    EXPECT_EQ(val_csp(none).value, Rational(0));
    // Two edges between x and y with alphabets {2,2}; best is (1,0): (1 + 1/2)/2.
    ValuedTwoCsp two{{{"x", 2}, {"y", 2}},
                     {{0, 1, {{Rational(0), Rational(1, 4)}, {Rational(1), Rational(0)}}},
                      {1, 0, {{Rational(1, 2), Rational(1, 2)}, {Rational(0), Rational(1)}}}}};
    auto r = val_vcsp(two);
    EXPECT_EQ(r.value, Rational(3, 4));
    EXPECT_EQ(r.witness, (Assignment{1, 0}));
    EXPECT_EQ(vcsp_assignment_value(two, r.witness), r.value);
}

TEST(ValCsp, MatchesNaiveOracle) {
    Rng rng(5);
    for (int it = 0; it < 200; ++it) {
        int vars = static_cast<int>(rng.range(2, 4));
        int edges = static_cast<int>(rng.range(1, vars * (vars - 1) / 2));
        auto vcsp = gen_valued_csp({vars, 3, edges, static_cast<int>(rng.range(1, 9)), rng.next()});
        auto r = val_vcsp(vcsp);
        EXPECT_EQ(r.value, ref::val_vcsp(vcsp));
        EXPECT_EQ(vcsp_assignment_value(vcsp, r.witness), r.value);

        WeightedTwoCsp csp;
        csp.variables = vcsp.variables;
        for (const auto& e : vcsp.edges) {
            WeightedEdge we{e.u, e.v, rng.range(1, 4), {}};
            for (int a = 0; a < vcsp.variables[e.u].alphabet_size; ++a) {
                for (int b = 0; b < vcsp.variables[e.v].alphabet_size; ++b) {
                    if (rng.chance(Rational(1, 2))) we.allowed.emplace_back(a, b);
                }
            }
            csp.edges.push_back(std::move(we));
        }
        auto c = val_csp(csp);
        EXPECT_EQ(c.value, ref::val_csp(csp));
        EXPECT_EQ(csp_assignment_value(csp, c.witness), c.value);
    }
}

TEST(ValCsp, WitnessIsLexSmallestMaximizer) {
    Rng rng(6);
    for (int it = 0; it < 100; ++it) {
        auto vcsp = gen_valued_csp({3, 3, 2, 2, rng.next()});
        auto r = val_vcsp(vcsp);
        std::optional<Assignment> first;
        ref::for_each_assignment(vcsp.variables, [&](const Assignment& a) {
            if (vcsp_assignment_value(vcsp, a) == r.value && (!first || a < *first)) first = a;
        });
        EXPECT_EQ(r.witness, *first);
    }
}

TEST(KMedian, LineExample) {
    // a=0, b=2, c=3; clients {a,b}; facilities {b,c}.
    auto m = line_metric({0, 2, 3}, {0, 1}, {1, 2});
    EXPECT_EQ(kmedian_cost(m, {1}), 2);
    EXPECT_EQ(kmedian_cost(m, {1}, true), 4);
    auto own = line_metric({0, 2}, {0, 1}, {0, 1});
    EXPECT_EQ(kmedian_cost(own, {0, 1}), 0);
    auto r = opt_kmedian(m, 1);
    EXPECT_EQ(r.count, 2);
    EXPECT_EQ(r.witness, (std::vector<int>{1}));
}

TEST(KMedian, MatchesNaiveOracle) {
    Rng rng(7);
    for (int it = 0; it < 150; ++it) {
        int n = static_cast<int>(rng.range(2, 9));
        int nf = static_cast<int>(rng.range(1, n));
        auto m = ref::random_metric(rng, n, nf, 25);
        int k = static_cast<int>(rng.range(1, std::min(3, nf)));
        for (bool sq : {false, true}) {
            auto r = opt_kmedian(m, k, sq);
            EXPECT_EQ(r.count, ref::kmedian(m, k, sq));
            EXPECT_EQ(kmedian_cost(m, r.witness, sq), r.count);
        }
    }
}

TEST(MaxCover, Examples) {
    MaxCoverInstance single{{{0, 1}}, {{0}, {1}}, {{0, 0}, {0, 1}}};
    EXPECT_EQ(maxcover_value(single).value, Rational(1));
    MaxCoverInstance isolated{{{0}}, {{0}, {1}}, {{0, 0}}};
    EXPECT_EQ(maxcover_value(isolated).value, Rational(1, 2));
    Rng rng(8);
    for (int it = 0; it < 100; ++it) {
        auto inst = gen_maxcover({2, 2, 2, 2, Rational(1, 2), rng.next(), false});
        EXPECT_EQ(maxcover_value(inst).count, ref::maxcover(inst));
    }
}

TEST(Chernoff, Examples) {
    EXPECT_NEAR(chernoff_bound(Rational(1, 2), Rational(1, 2), 24), std::exp(-1.0), 1e-12);
    EXPECT_EQ(chernoff_bound(Rational(1, 2), Rational(1, 2), 0), 1.0);
    EXPECT_NEAR(chernoff_bound(Rational(1, 1000000), Rational(1, 2), 24), 1.0, 1e-9);
}
