#pragma once

// MaxCover to k-MaxCoverage.
//
// The universe has one element (t, i, f) per copy t < T, right group i and
// function f: W_i -> {1..k}; the sets are S_(t, j, v) for v in left group j.
// (t, i, f) lies in S_(t, j, v) iff some w in W_i has f(w) = j and (v, w) is
// an edge. Copies t and t' never share elements or sets.
//
// Codec conventions: t and i are 0-based, the color j and function values
// are 1-based. f is stored as base-k digits f(w) - 1 over W_i sorted by id.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "gapred/detail/max_sum.hpp"
#include "gapred/error.hpp"
#include "gapred/instances.hpp"
#include "gapred/oracles.hpp"

namespace gapred {

struct ElementTriple {
    int t = 0;
    int i = 0;
    /// f(w) for the vertices of W_i in ascending id order, values in 1..k.
    std::vector<int> f;

    friend bool operator==(const ElementTriple&, const ElementTriple&) = default;
};

struct SetTriple {
    int t = 0;
    /// Left group, 1..k.
    int j = 1;
    int v = 0;

    friend bool operator==(const SetTriple&, const SetTriple&) = default;
};

struct MaxCovReductionArtifact {
    SetSystem ss;
    int T = 1;
    int k = 1;
    /// Right groups with members sorted ascending.
    std::vector<std::vector<int>> sorted_right;
    std::vector<std::vector<int>> left_groups;
    /// element_offset[i]: first code of group i inside one copy; back() is the copy size.
    std::vector<std::int64_t> element_offset;
    /// set_offset[j]: first set of left group j inside one copy; back() is the copy size.
    std::vector<std::int64_t> set_offset;

    std::int64_t copy_elements() const { return element_offset.back(); }
    std::int64_t copy_sets() const { return set_offset.back(); }

    int encode_element(const ElementTriple& x) const {
        const auto& W = sorted_right.at(x.i);
        if (x.f.size() != W.size()) throw ParameterError("function size does not match |W_i|");
        std::int64_t code = 0;
        for (auto it = x.f.rbegin(); it != x.f.rend(); ++it) {
            if (*it < 1 || *it > k) throw ParameterError("function value outside 1..k");
            code = code * k + (*it - 1);
        }
        return static_cast<int>(x.t * copy_elements() + element_offset[x.i] + code);
    }

    ElementTriple decode_element(int id) const {
        if (id < 0 || id >= ss.universe_size) throw ParameterError("element id out of range");
        ElementTriple x;
        x.t = static_cast<int>(id / copy_elements());
        std::int64_t rest = id % copy_elements();
        x.i = static_cast<int>(std::upper_bound(element_offset.begin(), element_offset.end(), rest) -
                               element_offset.begin() - 1);
        std::int64_t code = rest - element_offset[x.i];
        for (std::size_t p = 0; p < sorted_right[x.i].size(); ++p) {
            x.f.push_back(static_cast<int>(code % k) + 1);
            code /= k;
        }
        return x;
    }

    int encode_set(const SetTriple& s) const {
        const auto& g = left_groups.at(s.j - 1);
        auto pos = std::find(g.begin(), g.end(), s.v) - g.begin();
        if (pos == static_cast<std::ptrdiff_t>(g.size())) throw ParameterError("vertex not in left group");
        return static_cast<int>(s.t * copy_sets() + set_offset[s.j - 1] + pos);
    }

    SetTriple decode_set(int id) const {
        if (id < 0 || id >= static_cast<int>(ss.sets.size())) throw ParameterError("set id out of range");
        SetTriple s;
        s.t = static_cast<int>(id / copy_sets());
        std::int64_t rest = id % copy_sets();
        int j = static_cast<int>(std::upper_bound(set_offset.begin(), set_offset.end(), rest) - set_offset.begin() - 1);
        s.j = j + 1;
        s.v = left_groups[j][rest - set_offset[j]];
        return s;
    }

    /// {S_(t, j, v_j)} over all copies t and groups j; `labeling` holds v_1..v_k.
    std::vector<int> canonical_solution(const std::vector<int>& labeling) const {
        if (static_cast<int>(labeling.size()) != k) throw ParameterError("labeling must pick one vertex per group");
        std::vector<int> out;
        for (int t = 0; t < T; ++t) {
            for (int j = 0; j < k; ++j) out.push_back(encode_set({t, j + 1, labeling[j]}));
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

inline MaxCovReductionArtifact maxcover_to_kmaxcov(const MaxCoverInstance& inst, int T,
                                                   std::int64_t universe_cap = std::int64_t{1} << 22) {
    require_valid(inst, "maxcover instance");
    const int k = static_cast<int>(inst.left_groups.size());
    const int l = static_cast<int>(inst.right_groups.size());
    if (k < 1 || l < 1) throw ParameterError("MaxCover needs k >= 1 and l >= 1");
    if (T < 1) throw ParameterError("T must be positive");

    MaxCovReductionArtifact art;
    art.T = T;
    art.k = k;
    art.left_groups = inst.left_groups;
    art.element_offset.push_back(0);
    for (const auto& g : inst.right_groups) {
        auto sorted = g;
        std::sort(sorted.begin(), sorted.end());
        std::uint64_t size = 1;
        for (std::size_t p = 0; p < sorted.size(); ++p) size = detail::sat_mul(size, k);
        std::uint64_t next = static_cast<std::uint64_t>(art.element_offset.back()) + size;
        if (size > static_cast<std::uint64_t>(universe_cap) || next > static_cast<std::uint64_t>(universe_cap)) {
            throw RefusalError("universe T*sum k^|W_i| exceeds cap " + std::to_string(universe_cap));
        }
        art.element_offset.push_back(static_cast<std::int64_t>(next));
        art.sorted_right.push_back(std::move(sorted));
    }
    const std::int64_t total = static_cast<std::int64_t>(T) * art.copy_elements();
    if (total > universe_cap) {
        throw RefusalError("universe T*sum k^|W_i| = " + std::to_string(total) + " exceeds cap " +
                           std::to_string(universe_cap));
    }
    art.set_offset.push_back(0);
    for (const auto& g : inst.left_groups) art.set_offset.push_back(art.set_offset.back() + g.size());

    std::set<std::pair<int, int>> adj(inst.edges.begin(), inst.edges.end());
    // Sets of one copy, with element codes relative to the copy.
    std::vector<std::vector<int>> copy_sets;
    for (int j = 0; j < k; ++j) {
        for (int v : inst.left_groups[j]) {
            std::vector<int> members;
            for (int i = 0; i < l; ++i) {
                const auto& W = art.sorted_right[i];
                const std::int64_t count = art.element_offset[i + 1] - art.element_offset[i];
                for (std::int64_t code = 0; code < count; ++code) {
                    std::int64_t c = code;
                    bool in = false;
                    for (int w : W) {
                        if (c % k == j && adj.count({v, w})) in = true;
                        c /= k;
                    }
                    if (in) members.push_back(static_cast<int>(art.element_offset[i] + code));
                }
            }
            copy_sets.push_back(std::move(members));
        }
    }
    art.ss.universe_size = static_cast<int>(total);
    for (int t = 0; t < T; ++t) {
        for (const auto& members : copy_sets) {
            std::vector<int> s;
            s.reserve(members.size());
            for (int e : members) s.push_back(static_cast<int>(t * art.copy_elements() + e));
            art.ss.sets.push_back(std::move(s));
        }
    }
    return art;
}

/// Number of universe elements left uncovered by exactly T*k chosen sets.
inline std::int64_t soundness_deficiency(const MaxCovReductionArtifact& art, const std::vector<int>& chosen) {
    if (static_cast<std::int64_t>(chosen.size()) != static_cast<std::int64_t>(art.T) * art.k) {
        throw ParameterError("expected " + std::to_string(art.T * art.k) + " sets, got " +
                             std::to_string(chosen.size()));
    }
    for (int s : chosen) {
        if (s < 0 || s >= static_cast<int>(art.ss.sets.size())) throw ParameterError("set id out of range");
    }
    return art.ss.universe_size - coverage_count(art.ss, chosen);
}

/// Minimum over all (T*k)-subsets of the uncovered count, by exhaustive search.
inline std::int64_t min_deficiency(const MaxCovReductionArtifact& art, const OracleOptions& opt = {}) {
    auto best = opt_kmaxcov(art.ss, art.T * art.k, opt);
    return art.ss.universe_size - best.count;
}

/// Smallest T with rho(T k) >= 2 k^A, by doubling then binary search.
/// rho must be monotone; refuses when the target is not reached within
/// `query_budget` evaluations.
inline std::int64_t choose_T(int k, int A, const std::function<std::int64_t(std::int64_t)>& rho,
                             int query_budget = 64) {
    if (k < 1 || A < 0) throw ParameterError("choose_T needs k >= 1 and A >= 0");
    std::uint64_t target = 2;
    for (int a = 0; a < A; ++a) target = detail::sat_mul(target, k);
    if (target > static_cast<std::uint64_t>(INT64_MAX)) throw RefusalError("target 2*k^A does not fit in 64 bits");
    const auto goal = static_cast<std::int64_t>(target);
    int queries = 0;
    auto reaches = [&](std::int64_t T) {
        if (++queries > query_budget) {
            throw RefusalError("rho did not reach 2*k^A = " + std::to_string(goal) + " within " +
                               std::to_string(query_budget) + " queries");
        }
        return rho(T * k) >= goal;
    };
    std::int64_t hi = 1;
    while (!reaches(hi)) {
        if (hi > INT64_MAX / (2 * static_cast<std::int64_t>(k))) throw RefusalError("T search left the 64-bit range");
        hi *= 2;
    }
    std::int64_t lo = hi / 2;  // rho(lo k) < goal, or lo = 0
    while (hi - lo > 1) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (reaches(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

}  // namespace gapred
