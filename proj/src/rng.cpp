#include "latcode/rng.hpp"

namespace latcode {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

} // namespace

SplitRng::SplitRng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t x = seed;
    for (auto& s : s_) s = splitmix64(x);
}

SplitRng SplitRng::split(std::uint64_t index) const {
    // Mix (seed, index) into a fresh seed; avoids any correlation between
    // stream 0 and the parent by inserting a fixed domain tag.
    std::uint64_t x = seed_ ^ 0xa0761d6478bd642fULL;
    std::uint64_t a = splitmix64(x);
    x ^= index;
    std::uint64_t b = splitmix64(x);
    return SplitRng(a ^ rotl(b, 17));
}

std::uint64_t SplitRng::next() {
    std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

std::uint64_t SplitRng::below(std::uint64_t bound) {
    // rejection sampling keeps the distribution exactly uniform
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        std::uint64_t r = next();
        if (r >= threshold) return r % bound;
    }
}

double SplitRng::uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

} // namespace latcode
