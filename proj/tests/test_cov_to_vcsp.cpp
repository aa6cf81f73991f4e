#include <gtest/gtest.h>

#include "gapred/cov_to_vcsp.hpp"
#include "support.hpp"

using namespace gapred;

TEST(BlockCount, Examples) {
    // 3^M >= 2^4 first at M = 3; 4^M >= 2^4 at M = 2.
    EXPECT_EQ(block_count(4, 2, 3), 3);
    EXPECT_EQ(block_count(4, 2, 4), 2);
    EXPECT_EQ(block_count(10, 1, 5), 1);
    EXPECT_EQ(block_count(64, 2, 4), 32);
}

TEST(BlockCount, MatchesFloatingCeilingAwayFromIntegers) {
    for (int m = 1; m <= 40; ++m) {
        for (int k = 2; k <= 4; ++k) {
            for (int n = 2; n <= 9; ++n) {
                long double x = m * std::log(static_cast<long double>(k)) / std::log(static_cast<long double>(n));
                if (std::fabs(x - std::round(x)) < 1e-9) continue;
                EXPECT_EQ(block_count(m, k, n), std::max<int>(1, static_cast<int>(std::ceil(x))));
            }
        }
    }
}

TEST(BlockFunction, CodecRoundTrip) {
    for (int k = 1; k <= 3; ++k) {
        for (std::uint64_t code = 0; code < 64; ++code) {
            auto g = decode_block_function(code, 3, k);
            std::uint64_t limit = (k + 1) * (k + 1) * (k + 1);
            if (code < limit) EXPECT_EQ(encode_block_function(g, k), code);
        }
    }
}

TEST(CovToVcsp, RunningExample) {
    SetSystem ss{4, {{0, 1}, {2, 3}, {0, 2}}};
    auto art = cov_to_vcsp(ss, 2, Rational(1));
    EXPECT_EQ(art.M, 3);
    EXPECT_EQ(art.c, Rational(1, 6));
    EXPECT_EQ(art.vcsp.edges.size(), 6u);
    EXPECT_EQ(val_vcsp(art.vcsp).value, Rational(1, 6));
    EXPECT_EQ(ref::val_vcsp(art.vcsp), Rational(1, 6));
    EXPECT_EQ(cov_to_vcsp(SetSystem{4, {{0}, {1}, {2}, {3}}}, 2, Rational(1)).M, 2);
}

TEST(CovToVcsp, AllSetsEmptyGivesZeroEverywhere) {
    SetSystem ss{5, {{}, {}, {}}};
    auto art = cov_to_vcsp(ss, 2, Rational(1));
    ref::for_each_assignment(art.vcsp.variables, [&](const Assignment& a) {
        EXPECT_EQ(vcsp_assignment_value(art.vcsp, a), Rational(0));
    });
}

TEST(CovToVcsp, ShapeAndTableValues) {
    SetSystem ss{5, {{0, 1, 4}, {2}, {3, 4}}};
    const int k = 2;
    auto art = cov_to_vcsp(ss, k, Rational(1, 2));
    EXPECT_TRUE(validate(art.vcsp).ok());
    ASSERT_EQ(static_cast<int>(art.vcsp.variables.size()), k + art.M);
    int covered = 0;
    for (const auto& b : art.partition) covered += static_cast<int>(b.size());
    EXPECT_EQ(covered, 5);
    // Table entry: |g^{-1}(i)| / m when that preimage lies in the set, else 0.
    for (const auto& e : art.vcsp.edges) {
        const int i = e.u;
        const auto& block = art.partition[e.v - k];
        for (std::size_t a = 0; a < e.table.size(); ++a) {
            for (std::size_t code = 0; code < e.table[a].size(); ++code) {
                auto g = decode_block_function(code, static_cast<int>(block.size()), k);
                int pre = 0;
                bool inside = true;
                for (std::size_t t = 0; t < block.size(); ++t) {
                    if (g[t] != i + 1) continue;
                    ++pre;
                    const auto& s = ss.sets[a];
                    inside = inside && std::find(s.begin(), s.end(), block[t]) != s.end();
                }
                EXPECT_EQ(e.table[a][code], inside ? Rational(pre, 5) : Rational(0));
            }
        }
    }
}

TEST(CovToVcsp, ValueIdentityOnRandomSystems) {
    Rng rng(17);
    int checked = 0;
    for (int it = 0; it < 240; ++it) {
        int k = static_cast<int>(rng.range(1, 3));
        bool colored = it % 2 == 1;
        auto any = ref::random_system(rng, 10, 6, k, colored);
        if (plain(any).universe_size == 0) continue;
        auto art = cov_to_vcsp(any, k, Rational(1));
        std::int64_t opt = ref::maxcov(any, k);
        Rational expect = Rational(opt, plain(any).universe_size) / Rational(static_cast<std::int64_t>(k) * art.M);
        EXPECT_EQ(val_vcsp(art.vcsp).value, expect) << "iteration " << it;
        ++checked;
    }
    EXPECT_GE(checked, 200);
}

TEST(CovToVcsp, CompletenessAssignmentAchievesCoverageValue) {
    Rng rng(19);
    for (int it = 0; it < 100; ++it) {
        auto any = ref::random_system(rng, 8, 5, 2, false);
        const auto& ss = plain(any);
        if (ss.universe_size == 0) continue;
        auto art = cov_to_vcsp(ss, 2, Rational(1));
        auto best = opt_kmaxcov(ss, 2);
        auto psi = completeness_assignment(art, ss, best.witness, best.witness);
        EXPECT_EQ(vcsp_assignment_value(art.vcsp, psi), best.value / Rational(2 * art.M));
    }
}

TEST(CovToVcsp, ColoredRestrictsXAlphabetsToClasses) {
    ColoredSetSystem cs{SetSystem{3, {{0}, {1}, {2}, {0, 1, 2}}}, {0, 0, 1, 1}, 2};
    auto art = cov_to_vcsp(cs, 2, Rational(1));
    EXPECT_EQ(art.vcsp.variables[0].alphabet_size, 2);
    EXPECT_EQ(art.vcsp.variables[1].alphabet_size, 2);
    // Best colored pair covers everything ({0} or {1} with {0,1,2}).
    EXPECT_EQ(val_vcsp(art.vcsp).value, Rational(1) / Rational(2 * art.M));
    EXPECT_THROW(cov_to_vcsp(cs, 3, Rational(1)), ParameterError);
}

TEST(CovToVcsp, RefusesHugeBlockAlphabet) {
    SetSystem ss{40, {{0}, {1}}};
    CovToVcspOptions o;
    o.alphabet_cap = 1000;
    // n = 2 gives M = 40 blocks of one element, alphabet 3.
    EXPECT_NO_THROW(cov_to_vcsp(ss, 2, Rational(1), o));
    SetSystem wide{40, {{0}, {1}, {2}, {3}, {4}, {5}, {6}, {7}, {8}, {9}, {10}, {11}, {12}, {13}, {14}, {15}}};
    // n = 16 gives M = 10 blocks of 4 elements, alphabet 3^4 = 81.
    o.alphabet_cap = 50;
    EXPECT_THROW(cov_to_vcsp(wide, 2, Rational(1), o), RefusalError);
}

TEST(CovToVcsp, DeterministicBytes) {
    SetSystem ss{6, {{0, 1}, {2, 3}, {4, 5}}};
    EXPECT_EQ(serialize(cov_to_vcsp(ss, 2, Rational(1, 2)).vcsp), serialize(cov_to_vcsp(ss, 2, Rational(1, 2)).vcsp));
}
