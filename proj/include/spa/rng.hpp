#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace spa {

using Rng = std::mt19937_64;

// splitmix64 finalizer, used to decorrelate derived seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t hash_tag(std::string_view tag) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Seed of a named substream of `master`. Distinct tags give independent
/// streams, so consuming one never shifts another.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                    std::uint64_t index = 0) noexcept {
    return mix_seed(mix_seed(master ^ hash_tag(tag)) + mix_seed(index));
}

inline Rng make_stream(std::uint64_t master, std::string_view tag, std::uint64_t index = 0) {
    return Rng{derive_seed(master, tag, index)};
}

/// Uniform real in [0, 1).
inline double uniform01(Rng& rng) {
    return std::generate_canonical<double, 53>(rng);
}

/// Uniform integer in [0, n). n must be positive.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>{0, n - 1}(rng);
}

}  // namespace spa
