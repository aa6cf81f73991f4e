#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "gapred/error.hpp"

namespace gapred::detail {

/// Saturating product used for search-space sizes.
inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > std::numeric_limits<std::uint64_t>::max() / b) return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

/// Saturating binomial coefficient C(n, k).
inline std::uint64_t sat_binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(r);
}

inline std::string size_str(std::uint64_t v) {
    if (v == std::numeric_limits<std::uint64_t>::max()) return ">=2^64";
    return std::to_string(v);
}

/// Edge with an integer score table, row-major over (symbol of u, symbol of v).
struct ScoreEdge {
    int u = 0;
    int v = 0;
    std::vector<std::int64_t> table;
};

struct MaxSumResult {
    std::int64_t best = 0;
    std::vector<int> witness;
    std::uint64_t enumerated = 0;
};

/// Exact maximum of sum_e table_e(a_u, a_v) over all assignments, returning
/// the lexicographically smallest maximiser.
///
/// Variables 0..p-1 are enumerated exhaustively, where p is the shortest
/// prefix whose complement spans no edge. Every remaining variable only
/// touches prefix variables, so once the prefix is fixed each of them is
/// maximised on its own (smallest symbol on ties). `budget` caps the number of
/// prefix assignments.
inline MaxSumResult max_sum(const std::vector<int>& alphabet, const std::vector<ScoreEdge>& edges,
                            std::uint64_t budget) {
    const int n = static_cast<int>(alphabet.size());
    int prefix = 0;
    for (const auto& e : edges) prefix = std::max(prefix, std::min(e.u, e.v) + 1);

    std::uint64_t space = 1;
    for (int v = 0; v < prefix; ++v) space = sat_mul(space, static_cast<std::uint64_t>(alphabet[v]));
    if (space > budget) {
        throw RefusalError("assignment enumeration of " + size_str(space) + " prefix candidates exceeds budget " +
                           std::to_string(budget));
    }

    struct Incident {
        const ScoreEdge* edge;
        bool free_is_u;
    };
    std::vector<const ScoreEdge*> inner;
    std::vector<std::vector<Incident>> incident(n);
    for (const auto& e : edges) {
        if (e.u < prefix && e.v < prefix) {
            inner.push_back(&e);
        } else if (e.u >= prefix) {
            incident[e.u].push_back({&e, true});
        } else {
            incident[e.v].push_back({&e, false});
        }
    }

    MaxSumResult out;
    out.best = std::numeric_limits<std::int64_t>::min();
    std::vector<int> cur(n, 0);
    std::vector<int> free_choice(n, 0);
    while (true) {
        ++out.enumerated;
        std::int64_t total = 0;
        for (const ScoreEdge* e : inner) total += e->table[cur[e->u] * alphabet[e->v] + cur[e->v]];
        for (int f = prefix; f < n; ++f) {
            std::int64_t best_f = std::numeric_limits<std::int64_t>::min();
            int arg = 0;
            for (int b = 0; b < alphabet[f]; ++b) {
                std::int64_t s = 0;
                for (const auto& inc : incident[f]) {
                    const ScoreEdge& e = *inc.edge;
                    s += inc.free_is_u ? e.table[b * alphabet[e.v] + cur[e.v]]
                                       : e.table[cur[e.u] * alphabet[e.v] + b];
                }
                if (s > best_f) {
                    best_f = s;
                    arg = b;
                }
            }
            free_choice[f] = arg;
            total += best_f;
        }
        if (total > out.best) {
            out.best = total;
            out.witness.assign(cur.begin(), cur.begin() + prefix);
            out.witness.insert(out.witness.end(), free_choice.begin() + prefix, free_choice.end());
        }
        int pos = prefix - 1;
        while (pos >= 0 && ++cur[pos] == alphabet[pos]) {
            cur[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return out;
}

}  // namespace gapred::detail
