#pragma once

// k-MaxCoverage to valued 2-CSP.
//
// Variables x_1..x_k pick the sets; the universe is cut into M consecutive
// blocks and y_j guesses, for every element of block j, which chosen set (or
// none, 0) covers it. Edge (x_i, y_j) pays |g^{-1}(i)| / |U| when every
// element that g attributes to i really lies in the set picked by x_i.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gapred/detail/max_sum.hpp"
#include "gapred/error.hpp"
#include "gapred/instances.hpp"
#include "gapred/rational.hpp"

namespace gapred {

struct VcspReductionArtifact {
    ValuedTwoCsp vcsp;
    Rational c;
    int M = 1;
    /// partition[j]: the element ids of block j, ascending.
    std::vector<std::vector<int>> partition;
    int k = 1;
};

struct CovToVcspOptions {
    /// Largest alphabet (k+1)^{|U_j|} a y-variable may have.
    std::uint64_t alphabet_cap = std::uint64_t{1} << 20;
};

/// Smallest M >= 1 with M * ln n >= m * ln k, i.e. n^M >= k^m; exact in big integers.
inline int block_count(int universe_size, int k, std::int64_t n) {
    if (n < 2) throw ParameterError("block count needs at least 2 sets");
    if (k <= 1 || universe_size == 0) return 1;
    using boost::multiprecision::cpp_int;
    cpp_int target = boost::multiprecision::pow(cpp_int(k), static_cast<unsigned>(universe_size));
    cpp_int acc = n;
    int M = 1;
    while (acc < target) {
        acc *= n;
        ++M;
    }
    return M;
}

/// Splits 0..m-1 into M consecutive blocks; the first m mod M blocks get one extra element.
inline std::vector<std::vector<int>> consecutive_blocks(int universe_size, int M) {
    std::vector<std::vector<int>> out(M);
    int base = universe_size / M;
    int extra = universe_size % M;
    int next = 0;
    for (int j = 0; j < M; ++j) {
        int size = base + (j < extra ? 1 : 0);
        for (int t = 0; t < size; ++t) out[j].push_back(next++);
    }
    return out;
}

/// Decodes symbol `code` of a y-variable into the function on its block:
/// digit t (base k+1) is the value on the t-th smallest element.
inline std::vector<int> decode_block_function(std::uint64_t code, int block_size, int k) {
    std::vector<int> g(block_size);
    for (int t = 0; t < block_size; ++t) {
        g[t] = static_cast<int>(code % static_cast<std::uint64_t>(k + 1));
        code /= static_cast<std::uint64_t>(k + 1);
    }
    return g;
}

inline std::uint64_t encode_block_function(const std::vector<int>& g, int k) {
    std::uint64_t code = 0;
    for (auto it = g.rbegin(); it != g.rend(); ++it) code = code * static_cast<std::uint64_t>(k + 1) + *it;
    return code;
}

namespace detail {

inline VcspReductionArtifact cov_to_vcsp_impl(const SetSystem& ss, const std::vector<std::vector<int>>& x_alphabets,
                                              int k, const Rational& tau, const CovToVcspOptions& opt) {
    const int m = ss.universe_size;
    const std::int64_t n = static_cast<std::int64_t>(ss.sets.size());
    if (n < 2) throw ParameterError("coverage to valued CSP needs at least 2 sets");
    if (k < 1) throw ParameterError("k must be positive");
    if (m < 1) throw ParameterError("coverage to valued CSP needs a non-empty universe");

    VcspReductionArtifact out;
    out.k = k;
    out.M = block_count(m, k, n);
    out.partition = consecutive_blocks(m, out.M);
    out.c = tau / Rational(static_cast<std::int64_t>(k) * out.M);

    std::vector<std::vector<char>> member(n, std::vector<char>(m, 0));
    for (std::int64_t s = 0; s < n; ++s) {
        for (int e : ss.sets[s]) member[s][e] = 1;
    }

    auto& csp = out.vcsp;
    for (int i = 0; i < k; ++i) {
        csp.variables.push_back({"x" + std::to_string(i + 1), static_cast<int>(x_alphabets[i].size())});
    }
    std::vector<std::uint64_t> y_alphabet(out.M);
    for (int j = 0; j < out.M; ++j) {
        std::uint64_t size = 1;
        for (std::size_t t = 0; t < out.partition[j].size(); ++t) size = sat_mul(size, k + 1);
        if (size > opt.alphabet_cap) {
            throw RefusalError("block alphabet of size " + size_str(size) + " exceeds cap " +
                               std::to_string(opt.alphabet_cap));
        }
        y_alphabet[j] = size;
        csp.variables.push_back({"y" + std::to_string(j + 1), static_cast<int>(size)});
    }

    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < out.M; ++j) {
            const auto& block = out.partition[j];
            const int bs = static_cast<int>(block.size());
            ValuedEdge edge;
            edge.u = i;
            edge.v = k + j;
            edge.table.assign(x_alphabets[i].size(), std::vector<Rational>(y_alphabet[j], Rational(0)));
            for (std::uint64_t code = 0; code < y_alphabet[j]; ++code) {
                std::vector<int> g = decode_block_function(code, bs, k);
                std::int64_t preimage = 0;
                for (int t = 0; t < bs; ++t) preimage += g[t] == i + 1 ? 1 : 0;
                for (std::size_t a = 0; a < x_alphabets[i].size(); ++a) {
                    const int set = x_alphabets[i][a];
                    bool inside = true;
                    for (int t = 0; t < bs && inside; ++t) {
                        if (g[t] == i + 1 && !member[set][block[t]]) inside = false;
                    }
                    if (inside && preimage > 0) edge.table[a][code] = Rational(preimage, m);
                }
            }
            csp.edges.push_back(std::move(edge));
        }
    }
    return out;
}

}  // namespace detail

/// Uncolored reduction: every x_i ranges over all set indices.
inline VcspReductionArtifact cov_to_vcsp(const SetSystem& ss, int k, const Rational& tau,
                                         const CovToVcspOptions& opt = {}) {
    std::vector<int> all(ss.sets.size());
    for (std::size_t s = 0; s < all.size(); ++s) all[s] = static_cast<int>(s);
    return detail::cov_to_vcsp_impl(ss, std::vector<std::vector<int>>(k > 0 ? k : 0, all), k, tau, opt);
}

/// Colored reduction: x_i ranges over the i-th color class, symbol a being
/// the a-th smallest set index of that class.
inline VcspReductionArtifact cov_to_vcsp(const ColoredSetSystem& cs, int k, const Rational& tau,
                                         const CovToVcspOptions& opt = {}) {
    if (k != cs.k) throw ParameterError("colored input must have exactly k color classes");
    std::vector<std::vector<int>> classes;
    for (int c = 0; c < cs.k; ++c) classes.push_back(cs.color_class(c));
    return detail::cov_to_vcsp_impl(cs.base, classes, k, tau, opt);
}

inline VcspReductionArtifact cov_to_vcsp(const AnySetSystem& ss, int k, const Rational& tau,
                                         const CovToVcspOptions& opt = {}) {
    return std::visit([&](const auto& s) { return cov_to_vcsp(s, k, tau, opt); }, ss);
}

/// The assignment the completeness argument builds from k chosen sets:
/// x_i takes the i-th set and each element is attributed to the smallest i
/// whose set contains it (0 when uncovered). `chosen_symbols[i]` is the
/// alphabet index of x_i's set.
inline Assignment completeness_assignment(const VcspReductionArtifact& art, const SetSystem& ss,
                                          const std::vector<int>& chosen_sets,
                                          const std::vector<int>& chosen_symbols) {
    const int k = art.k;
    Assignment psi(chosen_symbols.begin(), chosen_symbols.end());
    for (const auto& block : art.partition) {
        std::vector<int> g(block.size(), 0);
        for (std::size_t t = 0; t < block.size(); ++t) {
            for (int i = 0; i < k; ++i) {
                const auto& s = ss.sets[chosen_sets[i]];
                if (std::binary_search(s.begin(), s.end(), block[t])) {
                    g[t] = i + 1;
                    break;
                }
            }
        }
        psi.push_back(static_cast<int>(encode_block_function(g, k)));
    }
    return psi;
}

}  // namespace gapred
