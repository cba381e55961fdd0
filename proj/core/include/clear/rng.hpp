#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace clear {

// std::mt19937_64 produces a standard-specified sequence, but the
// <random> distributions do not, so every mapping from raw engine output
// to a draw is done here by hand. This keeps seeded runs byte-identical
// across compilers and platforms.

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one engine output.
inline double uniform_double01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform draw from [0, n). Unbiased via Lemire's multiply-shift with
/// rejection. n must be positive.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
    using u128 = unsigned __int128;
    std::uint64_t x = rng();
    u128 m = static_cast<u128>(x) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            x = rng();
            m = static_cast<u128>(x) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

/// Fisher-Yates shuffle driven by uniform_index, so the permutation is
/// seed-stable (std::shuffle is not).
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = uniform_index(rng, i);
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace clear
