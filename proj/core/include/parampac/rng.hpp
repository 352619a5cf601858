#pragma once

#include <array>
#include <cstdint>

namespace parampac {

/// xoshiro256** (Blackman & Vigna), state seeded by four splitmix64 outputs of
/// the 64-bit seed. Uniform doubles take the top 53 bits: (next() >> 11) * 2^-53,
/// which lies in [0, 1).
class Xoshiro256ss {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256ss(std::uint64_t seed);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()();
    double uniform();  // [0, 1)

private:
    std::array<std::uint64_t, 4> s_{};
};

std::uint64_t splitmix64(std::uint64_t& state);

// Seed of an independent stream, e.g. per Monte Carlo chunk.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace parampac
