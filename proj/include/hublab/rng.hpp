#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace hublab {

inline std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (std::uint8_t b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a64(std::string_view s) {
    return fnv1a64({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
}

inline std::uint64_t fnv1a64_mix(std::uint64_t h, std::uint64_t value) {
    std::uint8_t buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<std::uint8_t>(value >> (8 * i));
    return fnv1a64({buf, 8}, h);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Named substream so every source of randomness can hang off one user seed.
inline std::uint64_t substream_seed(std::uint64_t seed, std::string_view name) {
    return splitmix64(seed ^ fnv1a64(name));
}

inline std::mt19937_64 make_rng(std::uint64_t seed, std::string_view name) {
    return std::mt19937_64(substream_seed(seed, name));
}

}  // namespace hublab
