#pragma once

#include <cstdint>
#include <random>

namespace qloops {

/// Seeded 64-bit generator with platform-independent derived variates.
/// std:: distributions are implementation-defined, so uniform/exponential/index
/// draws are built directly from the raw engine output.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Independent stream for chain `index` of a run seeded with `seed`.
    static Rng for_stream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_pos() { return 1.0 - uniform(); }

    /// Uniform integer on [0, bound), unbiased by rejection.
    std::uint64_t index(std::uint64_t bound);

    double exponential(double rate);

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace qloops
