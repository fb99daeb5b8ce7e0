#pragma once

#include <cstdint>

namespace leachsim {

/// Deterministic pseudorandom generator used everywhere in the simulator.
///
/// Algorithm: xoshiro256** (Blackman & Vigna), state seeded by running
/// splitmix64 over the 64-bit scenario seed. Both generators are fully
/// specified by their reference code, so the same seed yields the same
/// stream on every platform and standard library.
///
/// Stream splitting: each simulation concern (deployment, election,
/// mobility, annealing) owns an independent substream, derived as
/// substream(seed, tag) with a fixed per-concern tag. Draw order within a
/// stream is fixed by iteration over node ids, so a trace is a pure
/// function of (config, seed).
class Rng {
  public:
    enum class Stream : std::uint64_t {
        Deployment = 1,
        Election = 2,
        Mobility = 3,
        Annealing = 4,
    };

    Rng() : Rng(0x853c49e6748fea9bULL) {}

    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) {
            word = splitmix64(sm);
        }
        // xoshiro256** must not start from the all-zero state.
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
            state_[0] = 0x9e3779b97f4a7c15ULL;
        }
    }

    static Rng substream(std::uint64_t seed, Stream tag) {
        std::uint64_t sm = seed;
        const std::uint64_t a = splitmix64(sm);
        return Rng(a ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(tag)));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53 mantissa bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + uniform01() * (hi - lo);
    }

    /// Uniform integer in [0, n). Fixed-point multiply keeps the mapping
    /// platform-independent.
    std::uint64_t uniform_index(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_[4];
};

} // namespace leachsim
