#include <gtest/gtest.h>

#include "gapred/certify.hpp"
#include "support.hpp"

using namespace gapred;

TEST(PlantedCover, YesPairCoversUniverse) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        PlantedCoverParams p{3, 4, 2, Rational(1), Rational(1, 2), seed, PlantedKind::yes};
        auto pc = gen_planted_cover(p);
        EXPECT_EQ(coverage_count(plain(pc.system), pc.certificate.witness), 4);
        EXPECT_TRUE(verify_certificate(pc.system, pc.certificate));
    }
}

TEST(PlantedCover, YesUnionHasExactlyCeilTauM) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        PlantedCoverParams p{5, 7, 3, Rational(1, 2), Rational(1, 2), seed, PlantedKind::yes};
        p.colored = seed % 2 == 1;
        auto pc = gen_planted_cover(p);
        EXPECT_EQ(coverage_count(plain(pc.system), pc.certificate.witness), 4);
        EXPECT_TRUE(verify_certificate(pc.system, pc.certificate));
        // No other k sets reach further than the planted union.
        EXPECT_EQ(opt_kmaxcov(pc.system, 3).count, 4);
    }
}

TEST(PlantedCover, NoCertificateBelowThreshold) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        PlantedCoverParams p{4, 6, 2, Rational(1), Rational(1, 2), seed, PlantedKind::no};
        p.colored = seed % 2 == 1;
        auto pc = gen_planted_cover(p);
        EXPECT_LT(pc.certificate.oracle_value, Rational(1, 2));
        EXPECT_EQ(pc.certificate.oracle_value, opt_kmaxcov(pc.system, 2).value);
        EXPECT_TRUE(verify_certificate(pc.system, pc.certificate));
    }
}

TEST(PlantedCover, SameSeedSameBytes) {
    PlantedCoverParams p{4, 6, 2, Rational(1), Rational(1, 2), 42, PlantedKind::no};
    auto a = gen_planted_cover(p);
    auto b = gen_planted_cover(p);
    auto text = [](const PlantedCover& pc) {
        return std::visit([](const auto& x) { return serialize(x); }, pc.system) +
               dump_canonical(certificate_json(pc.certificate));
    };
    EXPECT_EQ(text(a), text(b));
    p.seed = 43;
    EXPECT_NE(text(gen_planted_cover(p)), text(a));
}

TEST(PlantedCover, CertificateJsonRoundTrip) {
    for (auto kind : {PlantedKind::yes, PlantedKind::no}) {
        auto pc = gen_planted_cover({4, 6, 2, Rational(1), Rational(1, 2), 3, kind});
        auto back = certificate_from_json(certificate_json(pc.certificate));
        EXPECT_EQ(dump_canonical(certificate_json(back)), dump_canonical(certificate_json(pc.certificate)));
    }
}

TEST(PlantedCover, RefusesWhenNoInstanceIsFound) {
    PlantedCoverParams p{2, 2, 2, Rational(1), Rational(1, 10), 0, PlantedKind::no};
    p.max_attempts = 5;
    // Sets may hold one element, so two sets often cover 1 = tau; five tries can fail.
    try {
        gen_planted_cover(p);
    } catch (const RefusalError& e) {
        EXPECT_NE(std::string(e.what()).find("5 attempts"), std::string::npos);
    }
    PlantedCoverParams hopeless{2, 2, 1, Rational(3, 2), Rational(1, 2), 0, PlantedKind::no};
    EXPECT_THROW(gen_planted_cover(hopeless), ParameterError);
}

TEST(GenMetric, LineRunningExample) {
    auto m = line_metric({0, 2, 3}, {0, 1}, {1, 2});
    EXPECT_TRUE(validate(m).ok());
}

TEST(GenMetric, EveryShapeValidates) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        for (auto shape : {MetricShape::line, MetricShape::grid, MetricShape::random}) {
            MetricParams p;
            p.n = 2 + static_cast<int>(seed % 9);
            p.shape = shape;
            p.d_max = 25;
            p.seed = seed;
            auto m = gen_metric(p);
            EXPECT_TRUE(validate(m).ok()) << validate(m).joined();
        }
    }
}

TEST(GenMaxCover, PlantedHasValueOne) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto inst = gen_maxcover({2, 3, 2, 2, Rational(1, 4), seed, true});
        EXPECT_EQ(maxcover_value(inst).value, Rational(1));
    }
}

TEST(CertifyKMedian, LineExampleCompleteness) {
    ClusteringParams p;
    p.k = 1;
    p.tau = 2;
    p.alpha = Rational(1);
    p.delta = Rational(1, 2);
    auto rep = certify_kmedian(line_metric({0, 2, 3}, {0, 1}, {1, 2}), p);
    EXPECT_EQ(rep.opt, 2);
    EXPECT_TRUE(rep.completeness_case);
    ASSERT_TRUE(rep.completeness.has_value());
    EXPECT_TRUE(*rep.completeness);
    ASSERT_TRUE(rep.witness_guess.has_value());
    const auto& g = rep.guesses[*rep.witness_guess].guess;
    EXPECT_TRUE(g == (Guess{{0}, {2}}) || g == (Guess{{1}, {0}}));
    EXPECT_TRUE(rep.literal_full_cover);
    EXPECT_EQ(rep.min_residual, 2);
    EXPECT_TRUE(rep.verdict);
}

TEST(CertifyKMedian, LineExampleSoundness) {
    ClusteringParams p;
    p.k = 1;
    p.tau = 1;
    p.alpha = Rational(1, 2);
    p.delta = Rational(1, 2);
    auto rep = certify_kmedian(line_metric({0, 2, 3}, {0, 1}, {1, 2}), p);
    EXPECT_FALSE(rep.completeness_case);
    EXPECT_TRUE(rep.soundness_case);
    ASSERT_TRUE(rep.soundness.has_value());
    EXPECT_TRUE(*rep.soundness);
    EXPECT_TRUE(rep.verdict);
}

TEST(CertifyKMedian, KMeansVariant) {
    ClusteringParams p;
    p.k = 1;
    p.tau = 4;
    p.alpha = Rational(1);
    p.delta = Rational(1, 2);
    p.squared = true;
    auto rep = certify_kmedian(line_metric({0, 2, 3}, {0, 1}, {1, 2}), p);
    EXPECT_EQ(rep.opt, 4);
    EXPECT_TRUE(rep.completeness.value_or(false));
    p.tau = 1;
    p.alpha = Rational(1, 2);
    auto sound = certify_kmedian(line_metric({0, 2, 3}, {0, 1}, {1, 2}), p);
    EXPECT_TRUE(sound.soundness.value_or(false));
    EXPECT_EQ(report_json(sound)["soundness_factor"], "15/16");
}

TEST(CertifyKMedian, RandomInstancesPassBothDirections) {
    Rng rng(10);
    for (int it = 0; it < 30; ++it) {
        int n = static_cast<int>(rng.range(2, 6));
        auto m = ref::random_metric(rng, n, static_cast<int>(rng.range(1, std::min(n, 4))), 10);
        int k = static_cast<int>(rng.range(1, std::min<int>(2, m.facilities.size())));
        for (bool sq : {false, true}) {
            std::int64_t opt = ref::kmedian(m, k, sq);
            ClusteringParams p;
            p.k = k;
            p.alpha = Rational(1, 2);
            p.delta = Rational(1, 4);
            p.squared = sq;
            p.tau = opt;
            auto yes = certify_kmedian(m, p);
            EXPECT_TRUE(yes.verdict) << dump_canonical(report_json(yes));
            if (opt >= 2) {
                p.tau = (Rational(opt) / Rational(7, 4)).floor();
                if (p.tau < 1) continue;
                auto no = certify_kmedian(m, p);
                EXPECT_TRUE(no.soundness_case);
                EXPECT_TRUE(no.verdict) << dump_canonical(report_json(no));
            }
        }
    }
}

TEST(CertifyKMedian, VerdictsRecomputeFromRecordedValues) {
    ClusteringParams p;
    p.k = 1;
    p.tau = 10;
    p.alpha = Rational(1);
    p.delta = Rational(1, 2);
    auto rep = certify_kmedian(line_metric({0, 10}, {0, 1}, {0, 1}), p);
    EXPECT_TRUE(rep.verdict);
    EXPECT_FALSE(rep.literal_full_cover);
    auto copy = rep;
    recompute_verdicts(copy);
    EXPECT_EQ(dump_canonical(report_json(copy)), dump_canonical(report_json(rep)));
    // Tampering with a recorded value changes the recomputed verdict.
    for (auto& g : copy.guesses) g.colored_opt = -1;
    recompute_verdicts(copy);
    EXPECT_FALSE(copy.verdict);
}

TEST(CertifyPipeline, PlantedYesSmallRun) {
    auto pc = gen_planted_cover({4, 6, 2, Rational(1), Rational(1, 2), 1, PlantedKind::yes});
    CertifyPipelineParams cp;
    cp.k = 2;
    cp.m_override = 64;
    cp.trials = 10;
    cp.base_seed = 500;
    auto rep = certify_pipeline(pc.system, pc.certificate, cp);
    EXPECT_EQ(rep.trials.size(), 10u);
    EXPECT_EQ(rep.soundness, Rational(14, 15));
    EXPECT_EQ(rep.parameters["tau_prime"], "5/16");
    EXPECT_EQ(rep.parameters["M"], 32);
    for (const auto& t : rep.trials) {
        EXPECT_EQ(t.seed, 500 + static_cast<std::uint64_t>(t.trial));
        // A fully satisfiable instance implies the subsampled system met the sub-gap.
        if (t.satisfiable_found) EXPECT_TRUE(t.subgap_held);
    }
    auto copy = rep;
    recompute_verdicts(copy);
    EXPECT_EQ(dump_canonical(report_json(copy)), dump_canonical(report_json(rep)));
    EXPECT_EQ(dump_canonical(report_json(certify_pipeline(pc.system, pc.certificate, cp))),
              dump_canonical(report_json(rep)));
}

TEST(CertifyPipeline, CertifiedNoSmallRun) {
    auto pc = gen_planted_cover({4, 6, 2, Rational(1), Rational(1, 2), 2, PlantedKind::no});
    CertifyPipelineParams cp;
    cp.k = 2;
    cp.m_override = 64;
    cp.trials = 10;
    auto rep = certify_pipeline(pc.system, pc.certificate, cp);
    EXPECT_TRUE(rep.verdict) << dump_canonical(report_json(rep));
    for (const auto& t : rep.trials) {
        if (t.subgap_held) EXPECT_LE(t.emitted_value, Rational(14, 15));
    }
}

TEST(CertifyPipeline, DeterministicStagesAreTrialIndependent) {
    auto yes = gen_planted_cover({4, 4, 2, Rational(1), Rational(1, 2), 3, PlantedKind::yes});
    CertifyPipelineParams cp;
    cp.k = 2;
    cp.trials = 3;
    cp.deterministic = true;
    auto rep = certify_pipeline(yes.system, yes.certificate, cp);
    EXPECT_TRUE(rep.verdict);
    for (const auto& t : rep.trials) {
        EXPECT_EQ(t.satisfiable_found, rep.trials[0].satisfiable_found);
        EXPECT_EQ(t.theta, rep.trials[0].theta);
        EXPECT_EQ(t.vcsp_value, rep.trials[0].vcsp_value);
    }
    auto no = gen_planted_cover({4, 4, 2, Rational(1), Rational(1, 2), 3, PlantedKind::no});
    auto nrep = certify_pipeline(no.system, no.certificate, cp);
    EXPECT_TRUE(nrep.verdict) << dump_canonical(report_json(nrep));
    for (const auto& t : nrep.trials) EXPECT_EQ(t.emitted_value, nrep.trials[0].emitted_value);
}

TEST(CertifyPipeline, RefusalsAreRecordedPerTrial) {
    auto pc = gen_planted_cover({4, 6, 2, Rational(1), Rational(1, 2), 1, PlantedKind::yes});
    CertifyPipelineParams cp;
    cp.k = 2;
    cp.m_override = 64;
    cp.trials = 2;
    cp.oracle.budget = 4;
    auto rep = certify_pipeline(pc.system, pc.certificate, cp);
    EXPECT_EQ(rep.refusals, 2);
    EXPECT_FALSE(rep.verdict);
    EXPECT_TRUE(report_json(rep)["trials"][0].contains("refusal"));
}
