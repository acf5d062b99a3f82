#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace censorlab::rng {

// std::mt19937_64 output is pinned by the standard, but the standard
// distributions are not; these helpers keep sampling bit-identical
// across platforms.

inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline uint64_t below(std::mt19937_64& gen, uint64_t bound) {
    // Rejection sampling keeps the draw unbiased and portable.
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
        x = gen();
    } while (x >= limit);
    return x % bound;
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& gen) {
    for (size_t i = v.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(below(gen, i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace censorlab::rng
