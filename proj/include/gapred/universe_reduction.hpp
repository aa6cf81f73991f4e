#pragma once

// Randomized universe subsampling for k-MaxCoverage.
//
// Every original element u is hashed into each new element j independently
// with probability p = delta / (tau * |U|); a new set contains j whenever one
// of its original elements was hashed there. Draws are keyed by
// (seed, u, j), so the output only depends on the inputs and the seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gapred/detail/keyed_rng.hpp"
#include "gapred/error.hpp"
#include "gapred/instances.hpp"
#include "gapred/rational.hpp"

namespace gapred {

struct UniverseReductionParams {
    int k = 1;
    Rational tau{1};
    Rational delta{1, 2};
    std::uint64_t seed = 0;
    std::optional<std::int64_t> m_override;
    /// Largest new universe the reduction agrees to build.
    std::int64_t m_cap = std::int64_t{1} << 24;
};

template <class System>
struct UniverseReduction {
    System system;
    std::int64_t m = 0;
    Rational p;
};

/// ceil(12 k delta^-9 ln n), the new universe size without override.
inline std::int64_t universe_size_formula(int k, const Rational& delta, std::int64_t n) {
    long double inv = 1.0L / delta.to_long_double();
    long double v = 12.0L * k * std::pow(inv, 9.0L) * std::log(static_cast<long double>(n));
    if (!(v < 9.0e18L)) throw OverflowError("new universe size does not fit in 64 bits");
    return static_cast<std::int64_t>(std::ceil(v));
}

/// p = delta / (tau * |U|).
inline Rational sampling_probability(const Rational& delta, const Rational& tau, std::int64_t universe_size) {
    return delta / (tau * Rational(universe_size));
}

/// Y_{u,j}: whether original element u is hashed into new element j.
inline bool universe_draw(std::uint64_t seed, std::int64_t u, std::int64_t j, const Rational& p) {
    return detail::keyed_bernoulli(seed, static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(j),
                                   static_cast<std::uint64_t>(p.num()), static_cast<std::uint64_t>(p.den()));
}

namespace detail {

inline void check_universe_params(const SetSystem& ss, const UniverseReductionParams& params) {
    const std::int64_t n = static_cast<std::int64_t>(ss.sets.size());
    if (n < 2) throw ParameterError("universe reduction needs at least 2 sets");
    if (ss.universe_size < 1) throw ParameterError("universe reduction needs a non-empty universe");
    if (params.k < 1) throw ParameterError("k must be positive");
    if (params.delta <= Rational(0) || params.delta > Rational(1, 2)) throw ParameterError("delta must lie in (0,1/2]");
    if (params.tau <= Rational(0) || params.tau > Rational(1)) throw ParameterError("tau must lie in (0,1]");
    if (params.tau * Rational(ss.universe_size) < Rational(1)) throw ParameterError("tau*|U| must be at least 1");
    if (params.m_override && *params.m_override < 1) throw ParameterError("m_override must be positive");
}

inline SetSystem subsample(const SetSystem& ss, const UniverseReductionParams& params, std::int64_t m,
                           const Rational& p) {
    // hits[u]: new elements that original element u is hashed into.
    std::vector<std::vector<int>> hits(ss.universe_size);
    for (int u = 0; u < ss.universe_size; ++u) {
        for (std::int64_t j = 0; j < m; ++j) {
            if (universe_draw(params.seed, u, j, p)) hits[u].push_back(static_cast<int>(j));
        }
    }
    SetSystem out;
    out.universe_size = static_cast<int>(m);
    out.sets.reserve(ss.sets.size());
    for (const auto& s : ss.sets) {
        std::vector<int> img;
        for (int u : s) img.insert(img.end(), hits[u].begin(), hits[u].end());
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        out.sets.push_back(std::move(img));
    }
    return out;
}

}  // namespace detail

inline UniverseReduction<SetSystem> universe_reduce(const SetSystem& ss, const UniverseReductionParams& params) {
    detail::check_universe_params(ss, params);
    UniverseReduction<SetSystem> out;
    out.p = sampling_probability(params.delta, params.tau, ss.universe_size);
    if (out.p > Rational(1)) throw ParameterError("sampling probability " + out.p.str() + " exceeds 1");
    out.m = params.m_override ? *params.m_override
                              : universe_size_formula(params.k, params.delta, static_cast<std::int64_t>(ss.sets.size()));
    if (out.m <= 0) throw ParameterError("new universe size is 0");
    if (out.m > params.m_cap || out.m > INT32_MAX) {
        throw RefusalError("new universe of size " + std::to_string(out.m) + " exceeds cap " +
                           std::to_string(params.m_cap));
    }
    out.system = detail::subsample(ss, params, out.m, out.p);
    return out;
}

/// Colored variant; the color partition of the sets is carried over unchanged.
inline UniverseReduction<ColoredSetSystem> universe_reduce(const ColoredSetSystem& cs,
                                                           const UniverseReductionParams& params) {
    auto base = universe_reduce(cs.base, params);
    return {ColoredSetSystem{std::move(base.system), cs.color_of, cs.k}, base.m, base.p};
}

inline UniverseReduction<AnySetSystem> universe_reduce(const AnySetSystem& ss, const UniverseReductionParams& params) {
    return std::visit(
        [&](const auto& s) -> UniverseReduction<AnySetSystem> {
            auto r = universe_reduce(s, params);
            return {AnySetSystem(std::move(r.system)), r.m, r.p};
        },
        ss);
}

}  // namespace gapred
