#pragma once

#include <cstdint>

namespace gapred::detail {

/// SplitMix64 finalizer.
inline constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Stateless 64-bit hash of (seed, a, b); every key gets an independent word.
inline constexpr std::uint64_t keyed_word(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return mix64(mix64(mix64(seed) ^ a) ^ b);
}

/// Bernoulli(num/den) draw keyed by (seed, a, b). Requires 0 <= num <= den, den > 0.
inline constexpr bool keyed_bernoulli(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t num,
                                      std::uint64_t den) {
    // floor(w * den / 2^64) is uniform on [0, den) up to a bias of den / 2^64.
    unsigned __int128 scaled = static_cast<unsigned __int128>(keyed_word(seed, a, b)) * den;
    return static_cast<std::uint64_t>(scaled >> 64) < num;
}

}  // namespace gapred::detail
