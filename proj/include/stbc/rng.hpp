#pragma once

#include "stbc/complex_matrix.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace stbc {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based stream: the state depends only on (seed, stream index), so any
/// stream can be regenerated independently of the others.
class StreamRng {
public:
    using result_type = std::uint64_t;

    StreamRng(std::uint64_t seed, std::uint64_t stream) noexcept : state_(mix64(seed ^ mix64(stream))) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Circularly symmetric complex Gaussian with E|z|^2 = 1.
    Complex complex_gaussian() {
        return {normal_(*this) * M_SQRT1_2, normal_(*this) * M_SQRT1_2};
    }

    std::size_t uniform_index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(*this); }

private:
    std::uint64_t state_;
    std::normal_distribution<double> normal_;
};

} // namespace stbc
