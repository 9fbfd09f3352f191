#include "skg/rng.hpp"

#include <cmath>
#include <numbers>

namespace skg {

namespace {

// SplitMix64 step; mixes weak seed material into well-spread words.
std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

RandomSource::RandomSource(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed), stream_id_(stream_id) {
    // Decorrelate nearby (seed, stream) pairs before seeding the engine;
    // consecutive integers would otherwise land in similar twister states.
    std::uint64_t state = master_seed;
    std::uint64_t mixed = splitmix64(state) ^ stream_id;
    state = mixed;
    std::uint32_t words[8];
    for (int i = 0; i < 4; ++i) {
        std::uint64_t w = splitmix64(state);
        words[2 * i] = static_cast<std::uint32_t>(w);
        words[2 * i + 1] = static_cast<std::uint32_t>(w >> 32);
    }
    std::seed_seq seq(words, words + 8);
    gen_.seed(seq);
}

std::uint64_t RandomSource::next_u64() { return gen_(); }

double RandomSource::uniform() {
    // Top 53 bits; the largest value is (2^53 - 1) / 2^53 < 1.
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomSource::uniform_angle() {
    return uniform() * (2.0 * std::numbers::pi);
}

std::complex<double> RandomSource::complex_normal(double variance) {
    if (variance == 0.0) return {0.0, 0.0};
    // Polar Box-Muller: |z|^2 exponential with mean = variance, phase uniform.
    double u1 = uniform();
    double u2 = uniform();
    double magnitude = std::sqrt(-variance * std::log1p(-u1));
    double angle = u2 * (2.0 * std::numbers::pi);
    return {magnitude * std::cos(angle), magnitude * std::sin(angle)};
}

std::uint64_t substream_id(std::uint64_t point_index,
                           std::uint64_t trial_index) {
    return (point_index << 32) | (trial_index & 0xffffffffULL);
}

}  // namespace skg
