#pragma once

// Composition: coverage gap (tau, (1-delta) tau) -> subsampled universe with
// gap (tau', (1 - delta^2/2) tau') -> valued 2-CSP with c = tau'/(kM) ->
// stream of weighted 2-CSPs with soundness 1 - delta^2/(4 - delta^2).

#include <cstdint>
#include <optional>
#include <string>

#include "gapred/cov_to_vcsp.hpp"
#include "gapred/serialize.hpp"
#include "gapred/universe_reduction.hpp"
#include "gapred/vcsp_to_csp.hpp"

namespace gapred {

struct PipelineParams {
    int k = 1;
    Rational tau{1};
    Rational delta{1, 2};
    std::uint64_t seed = 0;
    std::optional<std::int64_t> m_override;
    std::int64_t m_cap = std::int64_t{1} << 24;
    CovToVcspOptions cov;
    ThetaOptions theta;
};

/// tau' = delta (1 - delta) (1 + delta^2).
inline Rational reduced_tau(const Rational& delta) {
    return delta * (Rational(1) - delta) * (Rational(1) + delta * delta);
}

/// 1 - delta^2 / 2, the gap factor after subsampling.
inline Rational subgap_factor(const Rational& delta) { return Rational(1) - delta * delta / Rational(2); }

/// 1 - delta^2 / (4 - delta^2).
inline Rational final_soundness(const Rational& delta) {
    Rational d2 = delta * delta;
    return Rational(1) - d2 / (Rational(4) - d2);
}

struct PipelineResult {
    /// Subsampled system; equal to the input when the subsampling stage is skipped.
    AnySetSystem reduced;
    std::int64_t m = 0;
    Rational p;
    Rational tau_prime;
    VcspReductionArtifact vcsp;
    ThetaStream stream;
    Rational soundness;
    bool subsampled = true;
};

/// Runs all three stages. The theta stream is lazy; nothing is enumerated here.
inline PipelineResult pipeline(const AnySetSystem& ss, const PipelineParams& prm) {
    require_valid(ss, "input set system");
    UniverseReductionParams up{prm.k, prm.tau, prm.delta, prm.seed, prm.m_override, prm.m_cap};
    auto uni = universe_reduce(ss, up);
    Rational tau_prime = reduced_tau(prm.delta);
    auto art = cov_to_vcsp(uni.system, prm.k, tau_prime, prm.cov);
    Rational s = art.c * subgap_factor(prm.delta);
    ThetaStream stream(art.vcsp, art.c, s, prm.theta);
    return PipelineResult{std::move(uni.system), uni.m,  uni.p, tau_prime, std::move(art), std::move(stream),
                          final_soundness(prm.delta), true};
}

/// Stages two and three only, applied to the input with its own gap
/// (tau, (1-delta) tau): c = tau/(kM), s = c (1 - delta). No randomness.
inline PipelineResult pipeline_deterministic(const AnySetSystem& ss, const PipelineParams& prm) {
    require_valid(ss, "input set system");
    if (prm.delta <= Rational(0) || prm.delta >= Rational(1)) throw ParameterError("delta must lie in (0,1)");
    auto art = cov_to_vcsp(ss, prm.k, prm.tau, prm.cov);
    Rational s = art.c * (Rational(1) - prm.delta);
    ThetaStream stream(art.vcsp, art.c, s, prm.theta);
    Rational soundness = Rational(1) - stream.params().epsilon;
    return PipelineResult{ss,         plain(ss).universe_size, Rational(1), prm.tau, std::move(art), std::move(stream),
                          soundness, false};
}

/// Every derived parameter of a pipeline run.
inline Json pipeline_report(const PipelineResult& r, const PipelineParams& prm) {
    const ThetaParams& tp = r.stream.params();
    Json j;
    j["k"] = prm.k;
    j["tau"] = prm.tau.str();
    j["delta"] = prm.delta.str();
    j["seed"] = prm.seed;
    j["subsampled"] = r.subsampled;
    j["m"] = r.m;
    j["p"] = r.p.str();
    j["tau_prime"] = r.tau_prime.str();
    j["M"] = r.vcsp.M;
    j["c"] = tp.c.str();
    j["s"] = tp.s.str();
    j["epsilon"] = tp.epsilon.str();
    j["gamma"] = tp.gamma.str();
    j["B"] = tp.B;
    j["edges"] = tp.ell;
    j["filter_total"] = tp.filter_total.str();
    j["short_circuit"] = r.stream.short_circuit();
    j["grid_size"] = r.stream.grid_size().str();
    j["instance_count"] = r.stream.size().str();
    j["final_soundness"] = r.soundness.str();
    return j;
}

}  // namespace gapred
