#pragma once

// Naive reference oracles and small-instance generators for the tests.
// These are written independently of the library code: plain recursion over
// std::set unions and full Cartesian products, no pruning, no bitmasks.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "gapred/gapred.hpp"

namespace ref {

using gapred::Rational;

/// Largest union size over k-subsets (colored: one set per color).
inline std::int64_t maxcov(const gapred::AnySetSystem& any, int k) {
    const auto& ss = gapred::plain(any);
    const auto* cs = std::get_if<gapred::ColoredSetSystem>(&any);
    const int n = static_cast<int>(ss.sets.size());
    std::int64_t best = 0;
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(pick.size()) == k) {
            if (cs) {
                std::set<int> colors;
                for (int s : pick) colors.insert(cs->color_of[s]);
                if (static_cast<int>(colors.size()) != k) return;
            }
            std::set<int> u;
            for (int s : pick) u.insert(ss.sets[s].begin(), ss.sets[s].end());
            best = std::max<std::int64_t>(best, u.size());
            return;
        }
        for (int i = start; i < n; ++i) {
            pick.push_back(i);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return best;
}

/// Calls fn on every assignment of the alphabet product.
inline void for_each_assignment(const std::vector<gapred::Variable>& vars,
                                const std::function<void(const gapred::Assignment&)>& fn) {
    gapred::Assignment a(vars.size(), 0);
    while (true) {
        fn(a);
        std::size_t i = 0;
        while (i < a.size() && ++a[i] == vars[i].alphabet_size) a[i++] = 0;
        if (i == a.size()) return;
    }
}

inline Rational val_vcsp(const gapred::ValuedTwoCsp& csp) {
    Rational best(0);
    for_each_assignment(csp.variables, [&](const gapred::Assignment& a) {
        Rational sum(0);
        for (const auto& e : csp.edges) sum += e.table[a[e.u]][a[e.v]];
        best = std::max(best, sum / Rational(static_cast<std::int64_t>(csp.edges.size())));
    });
    return best;
}

inline Rational val_csp(const gapred::WeightedTwoCsp& csp) {
    std::int64_t total = 0;
    for (const auto& e : csp.edges) total += e.weight;
    if (total == 0) return Rational(1);
    std::int64_t best = 0;
    for_each_assignment(csp.variables, [&](const gapred::Assignment& a) {
        std::int64_t sat = 0;
        for (const auto& e : csp.edges) {
            if (std::count(e.allowed.begin(), e.allowed.end(), std::make_pair(a[e.u], a[e.v]))) sat += e.weight;
        }
        best = std::max(best, sat);
    });
    return Rational(best, total);
}

inline std::int64_t cost(const gapred::MetricInstance& m, const std::vector<int>& F, bool squared) {
    std::int64_t total = 0;
    for (int c : m.clients) {
        std::int64_t d = INT64_MAX;
        for (int f : F) d = std::min(d, m.dist[c][f]);
        total += squared ? d * d : d;
    }
    return total;
}

inline std::int64_t kmedian(const gapred::MetricInstance& m, int k, bool squared) {
    std::int64_t best = INT64_MAX;
    const int nf = static_cast<int>(m.facilities.size());
    for (std::uint32_t mask = 1; mask < (1u << nf); ++mask) {
        if (__builtin_popcount(mask) != k) continue;
        std::vector<int> F;
        for (int i = 0; i < nf; ++i) {
            if (mask >> i & 1) F.push_back(m.facilities[i]);
        }
        best = std::min(best, cost(m, F, squared));
    }
    return best;
}

/// Number of covered right groups, maximized over labelings.
inline std::int64_t maxcover(const gapred::MaxCoverInstance& inst) {
    std::set<std::pair<int, int>> adj(inst.edges.begin(), inst.edges.end());
    std::int64_t best = 0;
    std::vector<int> lab;
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
        if (j == inst.left_groups.size()) {
            std::int64_t covered = 0;
            for (const auto& W : inst.right_groups) {
                bool hit = false;
                for (int w : W) {
                    bool all = true;
                    for (int v : lab) all = all && adj.count({v, w});
                    hit = hit || all;
                }
                covered += hit;
            }
            best = std::max(best, covered);
            return;
        }
        for (int v : inst.left_groups[j]) {
            lab.push_back(v);
            rec(j + 1);
            lab.pop_back();
        }
    };
    rec(0);
    return best;
}

/// Random set system with 1..max_sets sets over 0..max_m elements, optionally colored.
inline gapred::AnySetSystem random_system(gapred::Rng& rng, int max_m, int max_sets, int k, bool colored) {
    gapred::SetSystem ss;
    ss.universe_size = static_cast<int>(rng.range(0, max_m));
    const int n = static_cast<int>(rng.range(std::max(k, 2), max_sets));
    for (int s = 0; s < n; ++s) {
        std::vector<int> set;
        for (int e = 0; e < ss.universe_size; ++e) {
            if (rng.chance(Rational(2, 5))) set.push_back(e);
        }
        ss.sets.push_back(std::move(set));
    }
    if (!colored) return ss;
    auto colors = gapred::detail::random_colors(rng, n, k, {});
    return gapred::ColoredSetSystem{std::move(ss), std::move(colors), k};
}

/// Random integer metric on n points: shortest-path completion of random lengths.
inline gapred::MetricInstance random_metric(gapred::Rng& rng, int n, int n_fac, std::int64_t d_max) {
    gapred::MetricParams p;
    p.n = n;
    p.shape = static_cast<gapred::MetricShape>(rng.below(3));
    p.d_max = d_max;
    p.seed = rng.next();
    p.clients = static_cast<int>(rng.range(1, n));
    p.facilities = n_fac;
    return gapred::gen_metric(p);
}

}  // namespace ref
