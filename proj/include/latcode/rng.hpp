#pragma once

#include <cstdint>
#include <string_view>

namespace latcode {

// Deterministic, splittable generator: xoshiro256** seeded through splitmix64.
// Every experiment derives a per-trial stream from (master seed, stream index),
// so runs reproduce bit-for-bit regardless of thread count or platform.
class SplitRng {
public:
    static constexpr std::string_view version = "splitmix64+xoshiro256**-v1";

    explicit SplitRng(std::uint64_t seed);

    // Independent stream derived from this generator's seed and an index.
    // Pure function of (seed, index): splitting does not advance the parent.
    SplitRng split(std::uint64_t index) const;

    std::uint64_t next();
    // Uniform in [0, bound) by rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound);
    double uniform01();

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t s_[4];
};

} // namespace latcode
