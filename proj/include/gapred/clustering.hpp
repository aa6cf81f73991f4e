#pragma once

// k-median / k-means to multicolored k-MaxCoverage.
//
// A guess fixes k leaders (clients) and radii. Each guess adds fictitious
// facilities f'_i at distance R_i + d(l_i, x) from every point x, so every
// client has a baseline cost d(c, F'). The improvement cost(C, F') -
// cost(C, S + F') of opening real facilities S is realized exactly as a
// weighted coverage function: per client one element per distinct distance
// level strictly below the baseline, a facility covering the prefix of levels
// it reaches. Facilities within radius R_i of leader i form color class i.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gapred/error.hpp"
#include "gapred/instances.hpp"
#include "gapred/oracles.hpp"
#include "gapred/rational.hpp"
#include "gapred/serialize.hpp"

namespace gapred {

struct Guess {
    std::vector<int> leaders;
    std::vector<std::int64_t> radii;

    friend bool operator==(const Guess&, const Guess&) = default;
    friend auto operator<=>(const Guess&, const Guess&) = default;
};

enum class RadiusMode { exact, geometric };

struct GuessSpaceOptions {
    RadiusMode mode = RadiusMode::exact;
    /// Grid ratio 1 + eps in geometric mode.
    Rational eps{1};
};

/// Deterministic enumeration of (leaders, radii): leader tuples over C^k in
/// lexicographic order, and for each the radius tuples in lexicographic order.
class GuessSpace {
public:
    GuessSpace(const MetricInstance& metric, int k, GuessSpaceOptions opt = {}) : k_(k) {
        if (metric.clients.empty()) throw ParameterError("metric has no clients");
        if (k < 1) throw ParameterError("k must be positive");
        if (k > static_cast<int>(metric.facilities.size())) {
            throw ParameterError("k=" + std::to_string(k) + " exceeds the number of facilities");
        }
        clients_ = metric.clients;
        if (opt.mode == RadiusMode::geometric && opt.eps <= Rational(0)) throw ParameterError("eps must be positive");
        std::int64_t dmin = 0;
        std::int64_t dmax = 0;
        if (opt.mode == RadiusMode::geometric) {
            for (int a = 0; a < metric.n; ++a) {
                for (int b = 0; b < metric.n; ++b) {
                    std::int64_t d = metric.d(a, b);
                    dmax = std::max(dmax, d);
                    if (d > 0) dmin = dmin == 0 ? d : std::min(dmin, d);
                }
            }
            if (dmin == 0) throw ParameterError("degenerate metric: no positive distance");
        }
        for (int c : clients_) {
            std::vector<std::int64_t> dists;
            for (int f : metric.facilities) dists.push_back(metric.d(c, f));
            std::sort(dists.begin(), dists.end());
            dists.erase(std::unique(dists.begin(), dists.end()), dists.end());
            if (opt.mode == RadiusMode::exact) {
                radii_.push_back(dists);
                continue;
            }
            // Geometric grid ceil(dmin (1+eps)^j) up to dmax, then dmax itself,
            // plus 0 when a facility sits on the leader. Only radii reaching
            // some facility are kept.
            std::vector<std::int64_t> grid;
            if (dists.front() == 0) grid.push_back(0);
            Rational g(dmin);
            const Rational ratio = Rational(1) + opt.eps;
            while (g.ceil() <= dmax) {
                grid.push_back(g.ceil());
                g *= ratio;
            }
            grid.push_back(dmax);
            std::sort(grid.begin(), grid.end());
            grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
            std::vector<std::int64_t> kept;
            for (auto r : grid) {
                if (r >= dists.front()) kept.push_back(r);
            }
            radii_.push_back(kept);
        }
    }

    /// Candidate radii for the client at position `idx` of the client list.
    const std::vector<std::int64_t>& radii_for(std::size_t idx) const { return radii_.at(idx); }

    /// Total number of guesses (saturating).
    std::uint64_t size() const {
        std::uint64_t total = 0;
        std::vector<std::size_t> pos(k_, 0);
        while (true) {
            std::uint64_t prod = 1;
            for (int i = 0; i < k_; ++i) prod = detail::sat_mul(prod, radii_[pos[i]].size());
            total = total > std::numeric_limits<std::uint64_t>::max() - prod ? std::numeric_limits<std::uint64_t>::max()
                                                                             : total + prod;
            if (!advance(pos, clients_.size())) return total;
        }
    }

    bool contains(const Guess& g) const {
        if (static_cast<int>(g.leaders.size()) != k_ || static_cast<int>(g.radii.size()) != k_) return false;
        for (int i = 0; i < k_; ++i) {
            auto it = std::lower_bound(clients_.begin(), clients_.end(), g.leaders[i]);
            if (it == clients_.end() || *it != g.leaders[i]) return false;
            const auto& r = radii_[it - clients_.begin()];
            if (!std::binary_search(r.begin(), r.end(), g.radii[i])) return false;
        }
        return true;
    }

    /// Visits guesses in order until `fn` returns false.
    void for_each(const std::function<bool(const Guess&)>& fn) const {
        std::vector<std::size_t> lpos(k_, 0);
        while (true) {
            Guess g;
            for (int i = 0; i < k_; ++i) g.leaders.push_back(clients_[lpos[i]]);
            std::vector<std::size_t> rpos(k_, 0);
            std::vector<std::size_t> rsize(k_);
            for (int i = 0; i < k_; ++i) rsize[i] = radii_[lpos[i]].size();
            bool empty = std::any_of(rsize.begin(), rsize.end(), [](std::size_t s) { return s == 0; });
            while (!empty) {
                g.radii.clear();
                for (int i = 0; i < k_; ++i) g.radii.push_back(radii_[lpos[i]][rpos[i]]);
                if (!fn(g)) return;
                if (!advance(rpos, rsize)) break;
            }
            if (!advance(lpos, clients_.size())) return;
        }
    }

private:
    static bool advance(std::vector<std::size_t>& pos, std::size_t bound) {
        for (int i = static_cast<int>(pos.size()) - 1; i >= 0; --i) {
            if (++pos[i] < bound) return true;
            pos[i] = 0;
        }
        return false;
    }
    static bool advance(std::vector<std::size_t>& pos, const std::vector<std::size_t>& bound) {
        for (int i = static_cast<int>(pos.size()) - 1; i >= 0; --i) {
            if (++pos[i] < bound[i]) return true;
            pos[i] = 0;
        }
        return false;
    }

    int k_;
    std::vector<int> clients_;
    std::vector<std::vector<std::int64_t>> radii_;
};

/// The guess an optimal solution induces: leader i is the client closest to
/// facility F*_i among the clients it serves (smallest id on ties), R_i their distance.
/// Facilities serving nobody are paired with the client closest to them overall.
inline Guess induced_guess(const MetricInstance& m, const std::vector<int>& optimal) {
    Guess g;
    for (std::size_t i = 0; i < optimal.size(); ++i) {
        int best = -1;
        for (int c : m.clients) {
            std::int64_t own = m.d(c, optimal[i]);
            bool served = std::all_of(optimal.begin(), optimal.end(), [&](int f) { return m.d(c, f) >= own; });
            if (!served) continue;
            if (best < 0 || own < m.d(best, optimal[i])) best = c;
        }
        if (best < 0) {
            for (int c : m.clients) {
                if (best < 0 || m.d(c, optimal[i]) < m.d(best, optimal[i])) best = c;
            }
        }
        g.leaders.push_back(best);
        g.radii.push_back(m.d(best, optimal[i]));
    }
    return g;
}

/// Metric extended by one fictitious facility per leader.
struct ExtendedMetric {
    MetricInstance base;
    /// n + k points; facilities are the real ones plus the fictitious ids n..n+k-1.
    MetricInstance metric;
    Guess guess;
    std::vector<int> fictitious;
    /// classes[i] = F_i, real facility ids within R_i of leader i, ascending.
    std::vector<std::vector<int>> classes;
    /// One entry per copy: (original facility, color). Copies are ordered by color, then id.
    std::vector<std::pair<int, int>> facility_copies;
};

inline ExtendedMetric build_extended(const MetricInstance& metric, const Guess& guess) {
    const int k = static_cast<int>(guess.leaders.size());
    if (k < 1 || guess.radii.size() != guess.leaders.size()) throw ParameterError("malformed guess");
    ExtendedMetric ext;
    ext.base = metric;
    ext.guess = guess;
    for (int i = 0; i < k; ++i) {
        int l = guess.leaders[i];
        if (!std::binary_search(metric.clients.begin(), metric.clients.end(), l)) {
            throw ParameterError("guess rejected: leader " + std::to_string(l) + " is not a client");
        }
        if (guess.radii[i] < 0) throw ParameterError("guess rejected: negative radius");
        std::vector<int> cls;
        for (int f : metric.facilities) {
            if (metric.d(f, l) <= guess.radii[i]) cls.push_back(f);
        }
        if (cls.empty()) {
            throw ParameterError("guess rejected: F_" + std::to_string(i + 1) + " is empty (leader " +
                                 std::to_string(l) + ", radius " + std::to_string(guess.radii[i]) + ")");
        }
        for (int f : cls) ext.facility_copies.emplace_back(f, i);
        ext.classes.push_back(std::move(cls));
    }
    const int n = metric.n;
    MetricInstance& m = ext.metric;
    m.n = n + k;
    m.dist.assign(m.n, std::vector<std::int64_t>(m.n, 0));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) m.dist[a][b] = metric.d(a, b);
    }
    for (int i = 0; i < k; ++i) {
        const int fi = n + i;
        const int li = guess.leaders[i];
        for (int x = 0; x < n; ++x) m.dist[fi][x] = m.dist[x][fi] = guess.radii[i] + metric.d(li, x);
        for (int j = 0; j < k; ++j) {
            if (i != j) m.dist[fi][n + j] = guess.radii[i] + metric.d(li, guess.leaders[j]) + guess.radii[j];
        }
        ext.fictitious.push_back(fi);
    }
    m.clients = metric.clients;
    m.facilities = metric.facilities;
    m.facilities.insert(m.facilities.end(), ext.fictitious.begin(), ext.fictitious.end());
    return ext;
}

/// cost(C, F') - cost(C, S + F'); S must consist of real facilities.
inline std::int64_t improv_eval(const ExtendedMetric& ext, const std::vector<int>& S, bool squared = false) {
    for (int f : S) {
        if (!std::binary_search(ext.base.facilities.begin(), ext.base.facilities.end(), f)) {
            throw ParameterError("improv argument " + std::to_string(f) + " is not a real facility");
        }
    }
    std::vector<int> with = ext.fictitious;
    with.insert(with.end(), S.begin(), S.end());
    return kmedian_cost(ext.metric, ext.fictitious, squared) - kmedian_cost(ext.metric, with, squared);
}

/// The improvement function as a weighted coverage function.
struct ImprovCoverage {
    /// Colored weighted system over facility copies (set q is facility_copies[q]).
    WeightedSetSystem wss;
    /// S_f for every real facility, indexed like base.facilities.
    std::vector<std::vector<int>> facility_sets;
    /// element -> (client, level rank starting at 1).
    std::vector<std::pair<int, int>> element_origin;
    std::int64_t total_weight = 0;
};

inline ImprovCoverage improv_coverage(const ExtendedMetric& ext, bool squared = false) {
    const MetricInstance& m = ext.metric;
    auto cost = [&](std::int64_t d) { return squared ? d * d : d; };
    const auto& facs = ext.base.facilities;
    ImprovCoverage out;
    out.facility_sets.assign(facs.size(), {});
    std::vector<std::int64_t> weights;
    for (int c : m.clients) {
        std::int64_t dc = std::numeric_limits<std::int64_t>::max();
        for (int f : ext.fictitious) dc = std::min(dc, cost(m.d(c, f)));
        // Distinct levels strictly below the baseline, decreasing.
        std::vector<std::int64_t> levels;
        for (int f : facs) {
            if (cost(m.d(c, f)) < dc) levels.push_back(cost(m.d(c, f)));
        }
        std::sort(levels.begin(), levels.end(), std::greater<>());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        const int first = static_cast<int>(weights.size());
        std::int64_t prev = dc;
        for (std::size_t j = 0; j < levels.size(); ++j) {
            weights.push_back(prev - levels[j]);
            out.element_origin.emplace_back(c, static_cast<int>(j) + 1);
            prev = levels[j];
        }
        for (std::size_t fi = 0; fi < facs.size(); ++fi) {
            std::int64_t v = cost(m.d(c, facs[fi]));
            if (v >= dc) continue;
            auto rank = std::find(levels.begin(), levels.end(), v) - levels.begin();
            for (int j = 0; j <= rank; ++j) out.facility_sets[fi].push_back(first + j);
        }
    }
    for (auto w : weights) out.total_weight += w;

    ColoredSetSystem cs;
    cs.base.universe_size = static_cast<int>(weights.size());
    cs.k = static_cast<int>(ext.classes.size());
    for (auto [f, color] : ext.facility_copies) {
        auto fi = std::lower_bound(facs.begin(), facs.end(), f) - facs.begin();
        cs.base.sets.push_back(out.facility_sets[fi]);
        cs.color_of.push_back(color);
    }
    out.wss = WeightedSetSystem{std::move(cs), std::move(weights)};
    return out;
}

/// Total weight of the union of S_f over the given real facilities.
inline std::int64_t improv_coverage_weight(const ExtendedMetric& ext, const ImprovCoverage& ic,
                                           const std::vector<int>& F) {
    std::vector<char> hit(ic.wss.element_weight.size(), 0);
    std::int64_t w = 0;
    for (int f : F) {
        auto fi = std::lower_bound(ext.base.facilities.begin(), ext.base.facilities.end(), f) -
                  ext.base.facilities.begin();
        for (int e : ic.facility_sets.at(fi)) {
            if (!hit[e]) {
                hit[e] = 1;
                w += ic.wss.element_weight[e];
            }
        }
    }
    return w;
}

/// Replaces every element of weight w by w unit copies that belong to the
/// same sets. Copies of element e get ids offset(e)..offset(e)+w-1, offsets
/// being prefix sums of the weights. The color partition is kept.
inline AnySetSystem weighted_to_unweighted(const WeightedSetSystem& wss,
                                           std::int64_t cap = std::int64_t{1} << 22) {
    require_valid(wss, "weighted set system");
    std::vector<std::int64_t> offset(wss.element_weight.size() + 1, 0);
    for (std::size_t e = 0; e < wss.element_weight.size(); ++e) {
        offset[e + 1] = offset[e] + wss.element_weight[e];
        if (offset[e + 1] > cap) {
            std::int64_t total = offset[e + 1];
            for (std::size_t r = e + 1; r < wss.element_weight.size(); ++r) total += wss.element_weight[r];
            throw RefusalError("total weight " + std::to_string(total) + " exceeds duplication cap " +
                               std::to_string(cap));
        }
    }
    const SetSystem& src = plain(wss.base);
    SetSystem dup;
    dup.universe_size = static_cast<int>(offset.back());
    for (const auto& s : src.sets) {
        std::vector<int> out;
        for (int e : s) {
            for (std::int64_t t = offset[e]; t < offset[e + 1]; ++t) out.push_back(static_cast<int>(t));
        }
        dup.sets.push_back(std::move(out));
    }
    if (const auto* cs = std::get_if<ColoredSetSystem>(&wss.base)) {
        return ColoredSetSystem{std::move(dup), cs->color_of, cs->k};
    }
    return dup;
}

/// Original element of a duplicated copy.
inline int unweighted_origin(const WeightedSetSystem& wss, std::int64_t copy) {
    std::int64_t acc = 0;
    for (std::size_t e = 0; e < wss.element_weight.size(); ++e) {
        acc += wss.element_weight[e];
        if (copy < acc) return static_cast<int>(e);
    }
    throw ParameterError("copy id out of range");
}

struct ClusteringParams {
    int k = 1;
    /// Integer cost threshold.
    std::int64_t tau = 0;
    Rational alpha{1};
    Rational delta{1};
    bool squared = false;
    RadiusMode mode = RadiusMode::exact;
    std::int64_t weight_cap = std::int64_t{1} << 22;
};

/// Slack in the baseline bound: 2 delta / alpha (k-median) or 8 delta / alpha (k-means).
inline Rational baseline_slack(const ClusteringParams& p) {
    return Rational(p.squared ? 8 : 2) * p.delta / p.alpha;
}

/// Baseline bound (3 + slack) tau, or (9 + slack) tau for k-means.
inline Rational baseline_bound(const ClusteringParams& p) {
    return (Rational(p.squared ? 9 : 3) + baseline_slack(p)) * Rational(p.tau);
}

/// Coverage factor of the soundness case: 1 - alpha/2, or 1 - alpha/8 for k-means.
inline Rational soundness_factor(const ClusteringParams& p) {
    return Rational(1) - p.alpha / Rational(p.squared ? 8 : 2);
}

/// One guess of the reduction and, if emitted, its coverage instance.
struct GuessInstance {
    std::size_t index = 0;
    Guess guess;
    /// cost(C, F') (squared for k-means).
    std::int64_t baseline = 0;
    /// baseline <= baseline_bound; only these guesses yield an instance.
    bool emitted = false;
    /// Target coverage baseline - tau (in unit elements).
    std::int64_t threshold = 0;
    ColoredSetSystem system;
};

/// Lazy stream of coverage instances, one per guess in guess-space order.
class ClusteringReduction {
public:
    ClusteringReduction(MetricInstance metric, ClusteringParams p)
        : metric_(std::move(metric)), p_(p),
          space_(metric_, p.k,
                 GuessSpaceOptions{p.mode, p.mode == RadiusMode::geometric ? baseline_slack(p) : Rational(1)}) {
        require_valid(metric_, "metric");
        if (p.alpha <= Rational(0) || p.delta <= Rational(0)) throw ParameterError("alpha and delta must be positive");
        if (p.tau < 0) throw ParameterError("tau must be non-negative");
    }

    const GuessSpace& space() const noexcept { return space_; }
    const ClusteringParams& params() const noexcept { return p_; }
    const MetricInstance& metric() const noexcept { return metric_; }

    /// Builds the instance for one guess (the system is left empty when the guess is filtered).
    GuessInstance build(const Guess& g, std::size_t index = 0) const {
        GuessInstance gi;
        gi.index = index;
        gi.guess = g;
        ExtendedMetric ext = build_extended(metric_, g);
        gi.baseline = kmedian_cost(ext.metric, ext.fictitious, p_.squared);
        gi.emitted = Rational(gi.baseline) <= baseline_bound(p_);
        gi.threshold = gi.baseline - p_.tau;
        if (gi.emitted) {
            ImprovCoverage ic = improv_coverage(ext, p_.squared);
            gi.system = std::get<ColoredSetSystem>(weighted_to_unweighted(ic.wss, p_.weight_cap));
        }
        return gi;
    }

    /// Visits every guess (emitted or not) until `fn` returns false.
    void for_each(const std::function<bool(const GuessInstance&)>& fn) const {
        std::size_t index = 0;
        space_.for_each([&](const Guess& g) { return fn(build(g, index++)); });
    }

private:
    MetricInstance metric_;
    ClusteringParams p_;
    GuessSpace space_;
};

inline ClusteringReduction kmedian_to_multicov(const MetricInstance& metric, const ClusteringParams& p) {
    return ClusteringReduction(metric, p);
}

inline Json guess_json(const Guess& g) { return Json{{"leaders", g.leaders}, {"radii", g.radii}}; }

}  // namespace gapred
