#pragma once

// Counter-based pseudorandom streams (Philox 4x32-10, Salmon et al. 2011).
// Every draw is addressed by (seed, stream, counter), so workers can be handed
// independent substreams and results stay bit-identical for any thread count.

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>

namespace rinqam {

namespace detail {

inline void philox_round(std::array<std::uint32_t, 4>& c, std::uint32_t k0, std::uint32_t k1) {
    const std::uint64_t p0 = 0xD2511F53ull * c[0];
    const std::uint64_t p1 = 0xCD9E8D57ull * c[2];
    c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k0,
         static_cast<std::uint32_t>(p1),
         static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k1,
         static_cast<std::uint32_t>(p0)};
}

}  // namespace detail

// One 128-bit Philox 4x32-10 block for the given key and 128-bit counter.
inline std::array<std::uint32_t, 4> philox4x32(std::uint64_t key, std::uint64_t ctr_lo,
                                               std::uint64_t ctr_hi) {
    std::array<std::uint32_t, 4> c{
        static_cast<std::uint32_t>(ctr_lo), static_cast<std::uint32_t>(ctr_lo >> 32),
        static_cast<std::uint32_t>(ctr_hi), static_cast<std::uint32_t>(ctr_hi >> 32)};
    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    for (int r = 0; r < 10; ++r) {
        detail::philox_round(c, k0, k1);
        k0 += 0x9E3779B9u;
        k1 += 0xBB67AE85u;
    }
    return c;
}

// A single addressable stream; consecutive draws advance a 64-bit counter.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream) {}

    std::uint64_t next_u64() {
        const auto b = philox4x32(seed_, counter_++, stream_);
        return static_cast<std::uint64_t>(b[0]) | (static_cast<std::uint64_t>(b[1]) << 32);
    }

    // Uniform index in [0, n); multiply-shift reduction, exact for powers of two.
    std::uint32_t uniform_index(std::uint32_t n) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    double uniform01() { return to_unit(next_u64()); }

    // Two independent standard normal draws from one counter tick (Box-Muller).
    std::pair<double, double> normal_pair() {
        const auto b = philox4x32(seed_, counter_++, stream_);
        const std::uint64_t ua =
            static_cast<std::uint64_t>(b[0]) | (static_cast<std::uint64_t>(b[1]) << 32);
        const std::uint64_t ub =
            static_cast<std::uint64_t>(b[2]) | (static_cast<std::uint64_t>(b[3]) << 32);
        const double r = std::sqrt(-2.0 * std::log(to_unit(ua)));
        const double t = 2.0 * kPi * to_unit(ub);
        return {r * std::cos(t), r * std::sin(t)};
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }
    std::uint64_t counter() const { return counter_; }

private:
    static constexpr double kPi = 3.14159265358979323846;

    // Maps to (0,1): 53 mantissa bits offset by half an ulp, so 0 and 1 never occur.
    static double to_unit(std::uint64_t x) {
        return (static_cast<double>(x >> 11) + 0.5) * 0x1p-53;
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

// Decorrelated child seed for a numbered subtask (SplitMix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace rinqam
