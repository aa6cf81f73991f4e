#include <gtest/gtest.h>

#include <cmath>

#include "gapred/maxcover_reduction.hpp"
#include "support.hpp"

using namespace gapred;

TEST(MaxCoverToCov, UniverseSize) {
    MaxCoverInstance inst{{{0}, {1}}, {{0, 1}, {2, 3}}, {}};
    auto art = maxcover_to_kmaxcov(inst, 1);
    EXPECT_EQ(art.ss.universe_size, 8);
    EXPECT_EQ(art.ss.sets.size(), 2u);
    auto art3 = maxcover_to_kmaxcov(inst, 3);
    EXPECT_EQ(art3.ss.universe_size, 24);
    EXPECT_EQ(art3.ss.sets.size(), 6u);
}

TEST(MaxCoverToCov, MembershipOfTheFirstSet) {
    // V1={v}, V2={v'}, W1={w1,w2}, edges (v,w1), (v',w1).
    const int v = 0, vp = 1, w1 = 0, w2 = 1;
    MaxCoverInstance inst{{{v}, {vp}}, {{w1, w2}}, {{v, w1}, {vp, w1}}};
    auto art = maxcover_to_kmaxcov(inst, 1);
    int s = art.encode_set({0, 1, v});
    std::vector<std::vector<int>> members;
    for (int e : art.ss.sets[s]) members.push_back(art.decode_element(e).f);
    // Exactly the functions with f(w1) = 1.
    EXPECT_EQ(members, (std::vector<std::vector<int>>{{1, 1}, {1, 2}}));
}

TEST(MaxCoverToCov, CodecsAreBijections) {
    Rng rng(1);
    for (int it = 0; it < 20; ++it) {
        auto inst = gen_maxcover({static_cast<int>(rng.range(1, 3)), static_cast<int>(rng.range(1, 3)),
                                  static_cast<int>(rng.range(1, 2)), static_cast<int>(rng.range(1, 3)),
                                  Rational(1, 2), rng.next(), false});
        int T = static_cast<int>(rng.range(1, 2));
        auto art = maxcover_to_kmaxcov(inst, T);
        std::int64_t expect_u = 0;
        for (const auto& W : inst.right_groups) expect_u += static_cast<std::int64_t>(std::pow(art.k, W.size()));
        EXPECT_EQ(art.ss.universe_size, T * expect_u);
        std::int64_t expect_s = 0;
        for (const auto& V : inst.left_groups) expect_s += V.size();
        EXPECT_EQ(static_cast<std::int64_t>(art.ss.sets.size()), T * expect_s);
        for (int e = 0; e < art.ss.universe_size; ++e) EXPECT_EQ(art.encode_element(art.decode_element(e)), e);
        for (int s = 0; s < static_cast<int>(art.ss.sets.size()); ++s) EXPECT_EQ(art.encode_set(art.decode_set(s)), s);
    }
}

TEST(MaxCoverToCov, MembershipRuleAgainstDefinition) {
    Rng rng(2);
    for (int it = 0; it < 20; ++it) {
        auto inst = gen_maxcover({2, 2, 2, 2, Rational(1, 2), rng.next(), false});
        auto art = maxcover_to_kmaxcov(inst, 2);
        std::set<std::pair<int, int>> adj(inst.edges.begin(), inst.edges.end());
        for (int s = 0; s < static_cast<int>(art.ss.sets.size()); ++s) {
            auto st = art.decode_set(s);
            const auto& set = art.ss.sets[s];
            for (int e = 0; e < art.ss.universe_size; ++e) {
                auto x = art.decode_element(e);
                bool in = false;
                if (x.t == st.t) {
                    const auto& W = art.sorted_right[x.i];
                    for (std::size_t p = 0; p < W.size(); ++p) in = in || (x.f[p] == st.j && adj.count({st.v, W[p]}));
                }
                EXPECT_EQ(std::binary_search(set.begin(), set.end(), e), in);
            }
        }
    }
}

TEST(MaxCoverToCov, PlantedCompleteToyIsCoveredByCanonicalSets) {
    Rng rng(3);
    for (int it = 0; it < 30; ++it) {
        auto inst = gen_maxcover({2, 2, 2, 2, Rational(1, 3), rng.next(), true});
        auto sol = maxcover_value(inst);
        ASSERT_EQ(sol.value, Rational(1));
        for (int T : {1, 2}) {
            auto art = maxcover_to_kmaxcov(inst, T);
            auto canon = art.canonical_solution(sol.witness);
            EXPECT_EQ(soundness_deficiency(art, canon), 0);
        }
    }
}

TEST(MaxCoverToCov, UntouchedSliceLeavesConstantFunctionsUncovered) {
    auto inst = gen_maxcover({2, 2, 2, 2, Rational(1, 2), 9, false});
    auto art = maxcover_to_kmaxcov(inst, 1);
    // Both chosen sets come from t = 0, j = 1; nothing from j = 2.
    std::vector<int> chosen{art.encode_set({0, 1, inst.left_groups[0][0]}),
                            art.encode_set({0, 1, inst.left_groups[0][1]})};
    auto covered = [&](int e) {
        for (int s : chosen) {
            if (std::binary_search(art.ss.sets[s].begin(), art.ss.sets[s].end(), e)) return true;
        }
        return false;
    };
    for (int i = 0; i < 2; ++i) {
        int e = art.encode_element({0, i, std::vector<int>(art.sorted_right[i].size(), 2)});
        EXPECT_FALSE(covered(e));
    }
    EXPECT_GE(soundness_deficiency(art, chosen), 2);
}

TEST(MaxCoverToCov, HalfValueToyLeavesAtLeastHalfEllT) {
    Rng rng(4);
    int found = 0;
    for (int it = 0; it < 200 && found < 10; ++it) {
        auto inst = gen_maxcover({2, 2, 2, 2, Rational(1, 2), rng.next(), false});
        if (maxcover_value(inst).value > Rational(1, 2)) continue;
        ++found;
        auto art = maxcover_to_kmaxcov(inst, 1);
        // At least l T / 2 = 1 element stays uncovered.
        EXPECT_GE(min_deficiency(art), 1);
    }
    EXPECT_GT(found, 0);
}

TEST(MaxCoverToCov, DeficiencyArgumentChecks) {
    auto inst = gen_maxcover({2, 1, 2, 2, Rational(1, 2), 1, false});
    auto art = maxcover_to_kmaxcov(inst, 1);
    EXPECT_THROW(soundness_deficiency(art, {0}), ParameterError);
    EXPECT_THROW(soundness_deficiency(art, {0, 99}), ParameterError);
}

TEST(MaxCoverToCov, RefusesHugeUniverse) {
    MaxCoverInstance inst{{{0}, {1}, {2}}, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}}, {}};
    EXPECT_THROW(maxcover_to_kmaxcov(inst, 1, 1 << 20), RefusalError);
}

TEST(ChooseT, Examples) {
    EXPECT_EQ(choose_T(2, 2, [](std::int64_t x) { return x; }), 4);
    EXPECT_THROW(choose_T(2, 2, [](std::int64_t) { return std::int64_t{1}; }), RefusalError);
    auto log2 = [](std::int64_t x) {
        std::int64_t r = 0;
        while (x > 1) {
            x >>= 1;
            ++r;
        }
        return r;
    };
    EXPECT_EQ(choose_T(2, 1, log2), 8);
}

TEST(ChooseT, MinimalOnRandomMonotoneFunctions) {
    Rng rng(5);
    for (int it = 0; it < 50; ++it) {
        int k = static_cast<int>(rng.range(1, 4));
        int A = static_cast<int>(rng.range(0, 3));
        std::int64_t slope = rng.range(1, 5);
        auto rho = [&](std::int64_t x) { return slope * x / 3; };
        std::int64_t target = 2;
        for (int a = 0; a < A; ++a) target *= k;
        std::int64_t T = choose_T(k, A, rho);
        EXPECT_GE(rho(T * k), target);
        if (T > 1) EXPECT_LT(rho((T - 1) * k), target);
    }
}
