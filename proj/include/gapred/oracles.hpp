#pragma once

// Exact brute-force solvers used as ground truth for every reduction, plus
// the greedy coverage baseline. All searches refuse (RefusalError) when the
// candidate space exceeds OracleOptions::budget, and break ties towards the
// lexicographically smallest witness.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "gapred/detail/max_sum.hpp"
#include "gapred/error.hpp"
#include "gapred/instances.hpp"
#include "gapred/rational.hpp"

namespace gapred {

struct OracleOptions {
    std::uint64_t budget = std::uint64_t{1} << 24;
};

/// Optimal value plus a witness that reproduces it.
///
/// witness holds set indices (coverage, ordered by color for colored
/// systems), an Assignment (CSPs), facility point ids (k-median) or left
/// vertex ids one per group (MaxCover).
struct SolveResult {
    Rational value;
    std::vector<int> witness;
    /// Raw integer objective behind `value` where one exists (covered element
    /// count, k-median cost, covered right groups).
    std::int64_t count = 0;
};

namespace detail {

/// Coverage bitmask for universes of at most 128 elements.
class FixedMask {
public:
    explicit FixedMask(int /*m*/ = 0) {}
    void set(int e) { w_[e >> 6] |= std::uint64_t{1} << (e & 63); }
    FixedMask operator|(const FixedMask& o) const {
        FixedMask r;
        r.w_[0] = w_[0] | o.w_[0];
        r.w_[1] = w_[1] | o.w_[1];
        return r;
    }
    int count() const { return std::popcount(w_[0]) + std::popcount(w_[1]); }

private:
    std::array<std::uint64_t, 2> w_{};
};

/// Coverage bitmask for arbitrary universes.
class DynamicMask {
public:
    explicit DynamicMask(int m = 0) : w_((m + 63) / 64, 0) {}
    void set(int e) { w_[e >> 6] |= std::uint64_t{1} << (e & 63); }
    DynamicMask operator|(const DynamicMask& o) const {
        DynamicMask r = *this;
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] |= o.w_[i];
        return r;
    }
    int count() const {
        int c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }

private:
    std::vector<std::uint64_t> w_;
};

template <class Mask>
std::vector<Mask> masks_of(const SetSystem& ss) {
    std::vector<Mask> out;
    out.reserve(ss.sets.size());
    for (const auto& s : ss.sets) {
        Mask m(ss.universe_size);
        for (int e : s) m.set(e);
        out.push_back(m);
    }
    return out;
}

inline Rational coverage_fraction(std::int64_t covered, int universe_size) {
    // The empty universe counts as fully covered.
    if (universe_size == 0) return Rational(1);
    return Rational(covered, universe_size);
}

/// Lexicographic DFS over k-subsets of `candidates` (uncolored) or over the
/// product of `classes` (colored). Keeps the first strictly better tuple.
template <class Mask>
void best_cover_subsets(const std::vector<Mask>& masks, int n, int k, int universe_size, SolveResult& out) {
    std::vector<int> pick;
    std::vector<Mask> stack{Mask(universe_size)};
    int best = -1;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(pick.size()) == k) {
            int c = stack.back().count();
            if (c > best) {
                best = c;
                out.witness = pick;
            }
            return;
        }
        int need = k - static_cast<int>(pick.size());
        for (int s = start; s <= n - need; ++s) {
            pick.push_back(s);
            stack.push_back(stack.back() | masks[s]);
            self(self, s + 1);
            stack.pop_back();
            pick.pop_back();
        }
    };
    rec(rec, 0);
    out.count = best;
}

template <class Mask>
void best_cover_product(const std::vector<Mask>& masks, const std::vector<std::vector<int>>& classes,
                        int universe_size, SolveResult& out) {
    std::vector<int> pick;
    std::vector<Mask> stack{Mask(universe_size)};
    int best = -1;
    const int k = static_cast<int>(classes.size());
    auto rec = [&](auto&& self, int color) -> void {
        if (color == k) {
            int c = stack.back().count();
            if (c > best) {
                best = c;
                out.witness = pick;
            }
            return;
        }
        for (int s : classes[color]) {
            pick.push_back(s);
            stack.push_back(stack.back() | masks[s]);
            self(self, color + 1);
            stack.pop_back();
            pick.pop_back();
        }
    };
    rec(rec, 0);
    out.count = best;
}

inline std::vector<std::vector<int>> color_classes(const ColoredSetSystem& cs) {
    std::vector<std::vector<int>> classes(cs.k);
    for (int s = 0; s < static_cast<int>(cs.color_of.size()); ++s) classes[cs.color_of[s]].push_back(s);
    return classes;
}

}  // namespace detail

/// |union of the chosen sets|.
inline std::int64_t coverage_count(const SetSystem& ss, const std::vector<int>& chosen) {
    std::vector<char> hit(ss.universe_size, 0);
    std::int64_t c = 0;
    for (int s : chosen) {
        for (int e : ss.sets.at(s)) {
            if (!hit[e]) {
                hit[e] = 1;
                ++c;
            }
        }
    }
    return c;
}

/// Total weight of the union of the chosen sets.
inline std::int64_t weighted_coverage(const WeightedSetSystem& ws, const std::vector<int>& chosen) {
    const SetSystem& ss = plain(ws.base);
    std::vector<char> hit(ss.universe_size, 0);
    std::int64_t w = 0;
    for (int s : chosen) {
        for (int e : ss.sets.at(s)) {
            if (!hit[e]) {
                hit[e] = 1;
                w += ws.element_weight[e];
            }
        }
    }
    return w;
}

/// Exact k-MaxCoverage over all k-subsets of sets.
inline SolveResult opt_kmaxcov(const SetSystem& ss, int k, const OracleOptions& opt = {}) {
    const int n = static_cast<int>(ss.sets.size());
    if (k < 1 || k > n) {
        throw ParameterError("k=" + std::to_string(k) + " outside [1," + std::to_string(n) + "]");
    }
    std::uint64_t space = detail::sat_binomial(n, k);
    if (space > opt.budget) {
        throw RefusalError("k-subset enumeration of " + detail::size_str(space) + " candidates exceeds budget " +
                           std::to_string(opt.budget));
    }
    SolveResult out;
    if (ss.universe_size <= 128) {
        detail::best_cover_subsets(detail::masks_of<detail::FixedMask>(ss), n, k, ss.universe_size, out);
    } else {
        detail::best_cover_subsets(detail::masks_of<detail::DynamicMask>(ss), n, k, ss.universe_size, out);
    }
    out.value = detail::coverage_fraction(out.count, ss.universe_size);
    return out;
}

/// Exact multicolored k-MaxCoverage: one set per color class; k must equal
/// the number of classes. Witness lists the chosen set per color in order.
inline SolveResult opt_kmaxcov(const ColoredSetSystem& cs, int k, const OracleOptions& opt = {}) {
    if (k != cs.k) {
        throw ParameterError("colored k=" + std::to_string(k) + " differs from " + std::to_string(cs.k) +
                             " color classes");
    }
    auto classes = detail::color_classes(cs);
    std::uint64_t space = 1;
    for (const auto& c : classes) space = detail::sat_mul(space, c.size());
    if (space == 0) throw ParameterError("empty color class");
    if (space > opt.budget) {
        throw RefusalError("color product enumeration of " + detail::size_str(space) + " candidates exceeds budget " +
                           std::to_string(opt.budget));
    }
    SolveResult out;
    if (cs.base.universe_size <= 128) {
        detail::best_cover_product(detail::masks_of<detail::FixedMask>(cs.base), classes, cs.base.universe_size, out);
    } else {
        detail::best_cover_product(detail::masks_of<detail::DynamicMask>(cs.base), classes, cs.base.universe_size,
                                   out);
    }
    out.value = detail::coverage_fraction(out.count, cs.base.universe_size);
    return out;
}

inline SolveResult opt_kmaxcov(const AnySetSystem& ss, int k, const OracleOptions& opt = {}) {
    return std::visit([&](const auto& s) { return opt_kmaxcov(s, k, opt); }, ss);
}

/// Greedy max-marginal coverage, ties to the smallest set index. For colored
/// systems each round only considers sets of colors not yet used.
inline SolveResult greedy_kmaxcov(const AnySetSystem& any, int k) {
    const SetSystem& ss = plain(any);
    const int n = static_cast<int>(ss.sets.size());
    const ColoredSetSystem* cs = std::get_if<ColoredSetSystem>(&any);
    if (cs != nullptr) {
        if (k != cs->k) throw ParameterError("colored k must equal the number of color classes");
    } else if (k < 1 || k > n) {
        throw ParameterError("k=" + std::to_string(k) + " outside [1," + std::to_string(n) + "]");
    }
    std::vector<char> covered(ss.universe_size, 0);
    std::vector<char> used_set(n, 0);
    std::vector<char> used_color(cs ? cs->k : 0, 0);
    std::vector<int> picked;
    std::int64_t total = 0;
    for (int round = 0; round < k; ++round) {
        int best = -1;
        std::int64_t best_gain = -1;
        for (int s = 0; s < n; ++s) {
            if (used_set[s] || (cs && used_color[cs->color_of[s]])) continue;
            std::int64_t gain = 0;
            for (int e : ss.sets[s]) gain += covered[e] ? 0 : 1;
            if (gain > best_gain) {
                best_gain = gain;
                best = s;
            }
        }
        if (best < 0) throw ParameterError("greedy ran out of eligible sets");
        used_set[best] = 1;
        if (cs) used_color[cs->color_of[best]] = 1;
        for (int e : ss.sets[best]) covered[e] = 1;
        total += best_gain;
        picked.push_back(best);
    }
    SolveResult out;
    if (cs) {
        out.witness.assign(cs->k, -1);
        for (int s : picked) out.witness[cs->color_of[s]] = s;
    } else {
        std::sort(picked.begin(), picked.end());
        out.witness = picked;
    }
    out.count = total;
    out.value = detail::coverage_fraction(total, ss.universe_size);
    return out;
}

/// Mean of f_e(psi_u, psi_v) over the edges.
inline Rational vcsp_assignment_value(const ValuedTwoCsp& csp, const Assignment& psi) {
    if (csp.edges.empty()) throw ParameterError("valued 2-CSP has no edges");
    Rational sum(0);
    for (const auto& e : csp.edges) sum += e.table.at(psi.at(e.u)).at(psi.at(e.v));
    return sum / Rational(static_cast<std::int64_t>(csp.edges.size()));
}

/// Weighted fraction of satisfied constraints.
inline Rational csp_assignment_value(const WeightedTwoCsp& csp, const Assignment& psi) {
    std::int64_t total = 0;
    std::int64_t sat = 0;
    for (const auto& e : csp.edges) {
        total += e.weight;
        std::pair<int, int> p{psi.at(e.u), psi.at(e.v)};
        if (std::binary_search(e.allowed.begin(), e.allowed.end(), p)) sat += e.weight;
    }
    if (total == 0) throw ParameterError("2-CSP has zero total weight");
    return Rational(sat, total);
}

namespace detail {

inline std::vector<int> alphabets(const std::vector<Variable>& vars) {
    std::vector<int> out;
    for (const auto& v : vars) out.push_back(v.alphabet_size);
    return out;
}

}  // namespace detail

/// Exact val of a valued 2-CSP: max over assignments of the mean edge value.
inline SolveResult val_vcsp(const ValuedTwoCsp& csp, const OracleOptions& opt = {}) {
    if (csp.edges.empty()) throw ParameterError("valued 2-CSP has no edges");
    // Scale every table to a common denominator so the search runs on integers.
    std::int64_t lcm = 1;
    for (const auto& e : csp.edges) {
        for (const auto& row : e.table) {
            for (const auto& x : row) {
                std::int64_t g = std::gcd(lcm, x.den());
                lcm = detail::narrow_checked(detail::i128(lcm / g) * x.den(), "common denominator");
            }
        }
    }
    std::vector<detail::ScoreEdge> scored;
    for (const auto& e : csp.edges) {
        detail::ScoreEdge s{e.u, e.v, {}};
        for (const auto& row : e.table) {
            for (const auto& x : row) {
                s.table.push_back(detail::narrow_checked(detail::i128(x.num()) * (lcm / x.den()), "scaled value"));
            }
        }
        scored.push_back(std::move(s));
    }
    auto r = detail::max_sum(detail::alphabets(csp.variables), scored, opt.budget);
    SolveResult out;
    out.value = Rational::from_i128(r.best, detail::i128(lcm) * static_cast<std::int64_t>(csp.edges.size()));
    out.witness = std::move(r.witness);
    return out;
}

/// Exact val of a weighted 2-CSP: max weighted fraction of satisfied edges.
inline SolveResult val_csp(const WeightedTwoCsp& csp, const OracleOptions& opt = {}) {
    std::int64_t total = 0;
    std::vector<detail::ScoreEdge> scored;
    for (const auto& e : csp.edges) {
        total += e.weight;
        const int cols = csp.variables[e.v].alphabet_size;
        detail::ScoreEdge s{e.u, e.v,
                            std::vector<std::int64_t>(
                                static_cast<std::size_t>(csp.variables[e.u].alphabet_size) * cols, 0)};
        for (auto [a, b] : e.allowed) s.table[static_cast<std::size_t>(a) * cols + b] = e.weight;
        scored.push_back(std::move(s));
    }
    if (total == 0) throw ParameterError("2-CSP has zero total weight");
    auto r = detail::max_sum(detail::alphabets(csp.variables), scored, opt.budget);
    SolveResult out;
    out.count = r.best;
    out.value = Rational(r.best, total);
    out.witness = std::move(r.witness);
    return out;
}

/// sum over clients of the distance (or squared distance) to the nearest
/// point of F. F may contain any facility of the metric.
inline std::int64_t kmedian_cost(const MetricInstance& m, const std::vector<int>& F, bool squared = false) {
    if (F.empty()) throw ParameterError("empty facility set");
    for (int f : F) {
        if (!std::binary_search(m.facilities.begin(), m.facilities.end(), f)) {
            throw ParameterError("point " + std::to_string(f) + " is not a facility");
        }
    }
    std::int64_t cost = 0;
    for (int c : m.clients) {
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        for (int f : F) best = std::min(best, m.dist[c][f]);
        cost += squared ? best * best : best;
    }
    return cost;
}

/// Exact k-median (k-means when squared) over all k-subsets of facilities.
inline SolveResult opt_kmedian(const MetricInstance& m, int k, bool squared = false, const OracleOptions& opt = {}) {
    const int nf = static_cast<int>(m.facilities.size());
    if (k < 1 || k > nf) throw ParameterError("k=" + std::to_string(k) + " outside [1," + std::to_string(nf) + "]");
    std::uint64_t space = detail::sat_binomial(nf, k);
    if (space > opt.budget) {
        throw RefusalError("facility subset enumeration of " + detail::size_str(space) +
                           " candidates exceeds budget " + std::to_string(opt.budget));
    }
    const int nc = static_cast<int>(m.clients.size());
    std::vector<int> pick;
    // nearest[depth][c]: distance from client c to the nearest picked facility so far.
    std::vector<std::vector<std::int64_t>> nearest(
        k + 1, std::vector<std::int64_t>(nc, std::numeric_limits<std::int64_t>::max()));
    SolveResult out;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    auto rec = [&](auto&& self, int start) -> void {
        int depth = static_cast<int>(pick.size());
        if (depth == k) {
            std::int64_t cost = 0;
            for (int c = 0; c < nc; ++c) {
                std::int64_t d = nearest[depth][c];
                cost += squared ? d * d : d;
            }
            if (cost < best) {
                best = cost;
                out.witness = pick;
            }
            return;
        }
        for (int i = start; i <= nf - (k - depth); ++i) {
            int f = m.facilities[i];
            for (int c = 0; c < nc; ++c) nearest[depth + 1][c] = std::min(nearest[depth][c], m.dist[m.clients[c]][f]);
            pick.push_back(f);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    out.count = best;
    out.value = Rational(best);
    return out;
}

namespace detail {

inline std::int64_t covered_groups(const MaxCoverInstance& inst, const std::set<std::pair<int, int>>& adj,
                                   const std::vector<int>& labeling) {
    std::int64_t covered = 0;
    for (const auto& group : inst.right_groups) {
        bool hit = std::any_of(group.begin(), group.end(), [&](int w) {
            return std::all_of(labeling.begin(), labeling.end(), [&](int v) { return adj.count({v, w}) > 0; });
        });
        covered += hit ? 1 : 0;
    }
    return covered;
}

}  // namespace detail

/// Number of right groups holding a joint neighbour of the labeling (one left vertex per group).
inline std::int64_t maxcover_covered(const MaxCoverInstance& inst, const std::vector<int>& labeling) {
    std::set<std::pair<int, int>> adj(inst.edges.begin(), inst.edges.end());
    return detail::covered_groups(inst, adj, labeling);
}

/// Exact MaxCover value: max over labelings of the covered fraction of right groups.
inline SolveResult maxcover_value(const MaxCoverInstance& inst, const OracleOptions& opt = {}) {
    const int k = static_cast<int>(inst.left_groups.size());
    const int l = static_cast<int>(inst.right_groups.size());
    if (k < 1 || l < 1) throw ParameterError("MaxCover needs at least one left and one right group");
    std::uint64_t space = 1;
    for (const auto& g : inst.left_groups) {
        if (g.empty()) throw ParameterError("empty left group");
        space = detail::sat_mul(space, g.size());
    }
    if (space > opt.budget) {
        throw RefusalError("labeling enumeration of " + detail::size_str(space) + " candidates exceeds budget " +
                           std::to_string(opt.budget));
    }
    std::set<std::pair<int, int>> adj(inst.edges.begin(), inst.edges.end());
    std::vector<int> pos(k, 0);
    std::vector<int> labeling(k);
    SolveResult out;
    std::int64_t best = -1;
    while (true) {
        for (int j = 0; j < k; ++j) labeling[j] = inst.left_groups[j][pos[j]];
        std::int64_t covered = detail::covered_groups(inst, adj, labeling);
        if (covered > best) {
            best = covered;
            out.witness = labeling;
        }
        int j = k - 1;
        while (j >= 0 && ++pos[j] == static_cast<int>(inst.left_groups[j].size())) {
            pos[j] = 0;
            --j;
        }
        if (j < 0) break;
    }
    out.count = best;
    out.value = Rational(best, l);
    return out;
}

/// Multiplicative Chernoff tail exp(-zeta^2 q m / 3). Report-only annotation.
inline double chernoff_bound(const Rational& zeta, const Rational& q, std::int64_t m) {
    if (zeta <= Rational(0) || zeta >= Rational(1)) throw ParameterError("zeta must lie in (0,1)");
    if (q < Rational(0) || q > Rational(1)) throw ParameterError("q must lie in [0,1]");
    if (m < 0) throw ParameterError("negative sample count");
    long double z = zeta.to_long_double();
    return static_cast<double>(std::exp(-z * z * q.to_long_double() * static_cast<long double>(m) / 3.0L));
}

}  // namespace gapred
