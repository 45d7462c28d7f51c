#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace unmac {

// SplitMix64 finalizer. Used both as the generator step and to derive
// independent stream seeds from (seed, index...) tuples.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives a stream key from a root seed and a list of stream indices, so that
// the draws of e.g. UAV k or pair (i, j) never depend on how many other
// streams exist or on the order in which they are consumed.
constexpr std::uint64_t stream_key(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t key = mix64(seed + 0x9e3779b97f4a7c15ULL);
    for (auto idx : path) {
        key = mix64(key ^ mix64(idx + 0x632be59bd9b4e019ULL));
    }
    return key;
}

// Small counter-style engine satisfying UniformRandomBitGenerator. Cheap to
// construct, so one instance per UAV / per pair is fine.
class StreamRng {
public:
    using result_type = std::uint64_t;

    explicit constexpr StreamRng(std::uint64_t key) noexcept : state_(key) {}
    constexpr StreamRng(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept
        : state_(stream_key(seed, path)) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace unmac
